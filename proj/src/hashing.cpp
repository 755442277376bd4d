#include "nxmds/hashing.hpp"

#include "nxmds/error.hpp"
#include "nxmds/rng.hpp"

namespace nxmds {

std::string_view to_string(RandomnessKind kind) noexcept {
    return kind == RandomnessKind::TrueRandom ? "true-random" : "pseudorandom";
}

namespace {

bool extension_large_enough(std::uint64_t q, unsigned m, std::size_t N) {
    const unsigned __int128 need = static_cast<unsigned __int128>(q - 1) * (N == 0 ? 0 : N - 1);
    unsigned __int128 have = 1;
    for (unsigned i = 0; i < m && have < need; ++i) have *= q;
    return have >= need;
}

}  // namespace

unsigned minimal_extension_degree(std::uint64_t q, std::size_t N) {
    unsigned m = 1;
    while (!extension_large_enough(q, m, N)) ++m;
    return m;
}

std::size_t PrgSeed::bit_count() const noexcept { return 2 * std::size_t{ext.degree()} * ext.base().bit_width(); }

PrgSeed draw_prg_seed(const Field& field, std::size_t N, Rng& rng) {
    ExtField ext(field, minimal_extension_degree(field.order(), N));
    ExtElem x = ext.random(rng);
    ExtElem y = ext.random(rng);
    return PrgSeed{std::move(ext), std::move(x), std::move(y)};
}

RandomVector RandomVector::fixed(const Field& field, std::vector<Elem> values) {
    for (Elem e : values)
        if (!field.contains(e)) throw Error(ErrorCode::InvalidArgument, "vector entry outside " + field.describe());
    RandomVector r;
    r.bits_consumed = values.size() * field.bit_width();
    r.values = std::move(values);
    r.kind = RandomnessKind::TrueRandom;
    r.stamp = logical_clock_tick();
    return r;
}

RandomVector draw_random_vector(std::size_t N, const Field& field, Rng& rng) {
    if (N < 1) throw Error(ErrorCode::InvalidArgument, "N must be >= 1");
    RandomVector r;
    r.values.resize(N);
    for (auto& v : r.values) v = field.random(rng);
    r.kind = RandomnessKind::TrueRandom;
    r.bits_consumed = N * field.bit_width();
    r.stamp = logical_clock_tick();
    return r;
}

RandomVector prg_expand(const PrgSeed& seed, std::size_t N, OpCounter* ops) {
    const ExtField& ext = seed.ext;
    const Field& F = ext.base();
    if (!extension_large_enough(F.order(), ext.degree(), N))
        throw Error(ErrorCode::ExtensionTooSmall, "q^m < (q-1)(N-1)");
    if (seed.x.size() != ext.degree() || seed.y.size() != ext.degree())
        throw Error(ErrorCode::ShapeMismatch, "seed elements must have m coordinates");

    const std::vector<Elem> y = ext.coords(seed.y);
    RandomVector r;
    r.values.resize(N);
    ExtElem power = ext.one();
    for (std::size_t i = 0; i < N; ++i) {
        const std::vector<Elem> c = ext.coords(power);
        Elem acc = F.zero();
        for (unsigned l = 0; l < ext.degree(); ++l) acc = F.add(acc, F.mul(c[l], y[l]));
        if (ops) {
            ops->muls += ext.degree();
            ops->adds += ext.degree();
        }
        r.values[i] = acc;
        if (i + 1 < N) power = ext.mul(power, seed.x, ops);
    }
    r.kind = RandomnessKind::Pseudorandom;
    r.seed = seed;
    r.bits_consumed = seed.bit_count();
    r.stamp = logical_clock_tick();
    return r;
}

std::vector<Elem> node_hash(const Field& field, const Matrix& content, const RandomVector& r) {
    if (content.cols() != r.values.size()) throw Error(ErrorCode::ShapeMismatch, "row length differs from r");
    std::vector<Elem> out(content.rows());
    for (std::size_t j = 0; j < content.rows(); ++j) out[j] = linalg::dot(field, content.row(j), r.values);
    return out;
}

std::size_t seed_bit_count(RandomnessKind kind, const CodeParams& params) {
    const std::size_t w = params.field.bit_width();
    if (kind == RandomnessKind::TrueRandom) return params.N * w;
    return 2 * std::size_t{minimal_extension_degree(params.field.order(), params.N)} * w;
}

}  // namespace nxmds
