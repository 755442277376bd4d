#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nxmds/code.hpp"
#include "nxmds/ext_field.hpp"
#include "nxmds/matrix.hpp"

namespace nxmds {

class Rng;

enum class RandomnessKind { TrueRandom, Pseudorandom };

std::string_view to_string(RandomnessKind kind) noexcept;

/// Smallest m >= 1 with q^m >= (q - 1)(N - 1).
unsigned minimal_extension_degree(std::uint64_t q, std::size_t N);

/// Seed of the small-bias generator: two elements of F_{q^m}.
struct PrgSeed {
    ExtField ext;
    ExtElem x;
    ExtElem y;

    /// 2 * m * ceil(log2 q).
    std::size_t bit_count() const noexcept;
};

PrgSeed draw_prg_seed(const Field& field, std::size_t N, Rng& rng);

/// The shared projection vector r of length N.
struct RandomVector {
    std::vector<Elem> values;
    RandomnessKind kind = RandomnessKind::TrueRandom;
    std::optional<PrgSeed> seed;
    /// Common-randomness bits the nodes had to share to build this vector.
    std::size_t bits_consumed = 0;
    /// Logical time at which the vector came into existence.
    std::uint64_t stamp = 0;

    /// A caller-chosen vector (e.g. all ones); accounted as true randomness.
    static RandomVector fixed(const Field& field, std::vector<Elem> values);
};

/// Each entry i.i.d. uniform over F_q.
RandomVector draw_random_vector(std::size_t N, const Field& field, Rng& rng);

/// r'_i = <coords(x^i), coords(y)> for i = 0..N-1, computed by repeated
/// multiplication by x. For every nonzero linear test the bias is at most
/// (q - 1)(N - 1) / q^m. Throws ExtensionTooSmall if q^m < (q - 1)(N - 1).
RandomVector prg_expand(const PrgSeed& seed, std::size_t N, OpCounter* ops = nullptr);

/// Inner product of every row of a node's slice with r.
std::vector<Elem> node_hash(const Field& field, const Matrix& content, const RandomVector& r);

/// N * ceil(log2 q) for true randomness, 2 * m * ceil(log2 q) for the generator.
std::size_t seed_bit_count(RandomnessKind kind, const CodeParams& params);

/// The n * alpha hash symbols, node-major: block i holds node i's alpha symbols.
struct HashVector {
    std::size_t n = 0;
    std::size_t alpha = 0;
    std::vector<Elem> symbols;

    std::span<const Elem> block(std::size_t node) const { return std::span(symbols).subspan((node - 1) * alpha, alpha); }
};

}  // namespace nxmds
