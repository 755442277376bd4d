#include "nxmds/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nxmds/error.hpp"
#include "nxmds/rng.hpp"

namespace nxmds {

std::string_view to_string(VerifyStatus status) noexcept {
    switch (status) {
        case VerifyStatus::Clean: return "Clean";
        case VerifyStatus::ErrorsLocated: return "ErrorsLocated";
        case VerifyStatus::Undecodable: return "Undecodable";
    }
    return "Unknown";
}

std::string_view to_string(SizingMode mode) noexcept { return mode == SizingMode::Theorem1 ? "thm1" : "thm2"; }

HashVector collect_hashes(const SystemState& state, const RandomVector& r, const CollectOptions& options) {
    const auto& P = state.code().params();
    if (r.values.size() != P.N) throw Error(ErrorCode::ShapeMismatch, "r must have N entries");
    if (options.enforce_commitment) {
        if (auto stamp = state.last_commit_stamp(); stamp && *stamp > r.stamp)
            throw Error(ErrorCode::CommitmentViolation, "projection vector was drawn before the errors were committed");
    }
    std::vector<bool> adversarial(P.n + 1, false);
    if (options.response == ResponseMode::Lying) {
        if (!options.lying_rng) throw Error(ErrorCode::InvalidArgument, "lying responses need an rng");
        for (const auto& plan : state.plans())
            for (const auto& ne : plan.nodes) adversarial[ne.node] = true;
    }

    HashVector h{P.n, P.alpha(), {}};
    h.symbols.reserve(P.coded_rows());
    for (std::size_t i = 1; i <= P.n; ++i) {
        if (adversarial[i]) {
            for (std::size_t j = 0; j < P.alpha(); ++j) h.symbols.push_back(P.field.random(*options.lying_rng));
            continue;
        }
        const auto block = node_hash(P.field, state.node_content(i), r);
        h.symbols.insert(h.symbols.end(), block.begin(), block.end());
    }
    return h;
}

VerificationReport verify(const MdsCode& code, const HashVector& hashes, const RandomVector& r) {
    const auto& P = code.params();
    VerificationReport rep;
    rep.hash_bits = P.coded_rows() * P.field.bit_width();
    rep.seed_bits = r.bits_consumed;
    rep.kind = r.kind;
    const auto dec = code.hash_word_decode(hashes.symbols);
    if (dec.status == DecodeStatus::Undecodable) {
        rep.status = VerifyStatus::Undecodable;
        return rep;
    }
    rep.flagged = dec.error_nodes;
    rep.message_hash = dec.message_hash;
    rep.status = rep.flagged.empty() ? VerifyStatus::Clean : VerifyStatus::ErrorsLocated;
    return rep;
}

Matrix repair_node(const SystemState& state, std::size_t target, std::span<const std::size_t> helpers) {
    const auto& code = state.code();
    code.check_node(target);
    if (helpers.size() < code.params().k)
        throw Error(ErrorCode::TooFewHelpers,
                    "need " + std::to_string(code.params().k) + " helpers, got " + std::to_string(helpers.size()));
    std::vector<NodeContent> contents;
    contents.reserve(helpers.size());
    for (std::size_t h : helpers) contents.push_back({h, state.node_content(h)});
    Matrix data;
    try {
        data = code.erasure_decode(contents);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SingularSystem) throw Error(ErrorCode::CorruptHelper, e.what());
        throw;
    }
    return code.encode(data).slice_rows(code.node_offset(target), code.params().alpha());
}

AuditBudget accounting(const CodeParams& params, RandomnessKind kind) {
    const std::size_t w = params.field.bit_width();
    AuditBudget b;
    b.file_bits = params.data_rows() * params.N * w;
    b.hash_bits = params.coded_rows() * w;
    b.naive_bits = (params.n * b.file_bits + params.k - 1) / params.k;
    b.seed_bits = seed_bit_count(kind, params);
    b.seed_distribution_bits = params.n * b.seed_bits;
    const double t1 = static_cast<double>(params.t1());
    b.headline_bits = static_cast<double>(params.coded_rows()) *
                      (std::log2(static_cast<double>(b.file_bits)) + (t1 > 0 ? std::log2(t1) : 0.0));
    return b;
}

FieldChoice choose_field(std::uint64_t file_bits, std::size_t n, std::size_t k, SizingMode mode) {
    if (file_bits < 1) throw Error(ErrorCode::InvalidArgument, "file size must be >= 1 bit");
    if (k < 1 || k >= n) throw Error(ErrorCode::InvalidArgument, "need 1 <= k < n");
    const std::uint64_t alpha = n - k, t1 = alpha / 2;
    if (t1 == 0) throw Error(ErrorCode::DegenerateCode, "n - k = " + std::to_string(alpha) + " tolerates no errors");
    const std::uint64_t factor = mode == SizingMode::Theorem1 ? t1 : 2 * alpha * t1;
    const std::uint64_t target = std::max<std::uint64_t>(2, factor * file_bits);
    const PrimePower pp = next_prime_power(target);
    FieldChoice c{Field::make(pp.p, pp.s), target, static_cast<double>(factor) / static_cast<double>(pp.q)};
    return c;
}

}  // namespace nxmds
