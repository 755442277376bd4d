#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "nxmds/code.hpp"
#include "nxmds/hashing.hpp"
#include "nxmds/storage.hpp"

namespace nxmds {

class Rng;

/// How a corrupted node answers a hash request: with the hash of what it
/// stores, or with arbitrary symbols.
enum class ResponseMode { Honest, Lying };

struct CollectOptions {
    ResponseMode response = ResponseMode::Honest;
    /// Refuse vectors drawn before the latest error plan was committed.
    bool enforce_commitment = true;
    /// Source of the arbitrary answers in Lying mode.
    Rng* lying_rng = nullptr;
};

/// Every node hashes its stored slice against r. Throws CommitmentViolation
/// when r predates the state's latest committed error plan.
HashVector collect_hashes(const SystemState& state, const RandomVector& r, const CollectOptions& options = {});

enum class VerifyStatus { Clean, ErrorsLocated, Undecodable };

std::string_view to_string(VerifyStatus status) noexcept;

struct VerificationReport {
    VerifyStatus status = VerifyStatus::Undecodable;
    std::vector<std::size_t> flagged;
    std::vector<Elem> message_hash;
    std::size_t hash_bits = 0;
    std::size_t seed_bits = 0;
    RandomnessKind kind = RandomnessKind::TrueRandom;
};

VerificationReport verify(const MdsCode& code, const HashVector& hashes, const RandomVector& r);

/// Decode-and-re-encode repair of one node from at least k helpers. With more
/// than k helpers a corrupted helper is caught and reported as CorruptHelper.
Matrix repair_node(const SystemState& state, std::size_t target, std::span<const std::size_t> helpers);

struct AuditBudget {
    /// Size of the stored object, k * alpha * N * ceil(log2 q).
    std::size_t file_bits = 0;
    /// n * alpha * ceil(log2 q).
    std::size_t hash_bits = 0;
    /// ceil(n / k * M): downloading every node.
    std::size_t naive_bits = 0;
    std::size_t seed_bits = 0;
    /// n * seed_bits, when the verifier broadcasts the seed.
    std::size_t seed_distribution_bits = 0;
    /// n * alpha * (log2 M + log2 t1), the real-valued headline figure.
    double headline_bits = 0.0;
};

AuditBudget accounting(const CodeParams& params, RandomnessKind kind);

enum class SizingMode { Theorem1, Theorem2 };

std::string_view to_string(SizingMode mode) noexcept;

struct FieldChoice {
    Field field;
    /// t1 * M or 2 * alpha * t1 * M before rounding up to a prime power.
    std::uint64_t target = 0;
    /// t1 / q or 2 * alpha * t1 / q.
    double failure_bound = 0.0;
};

/// Field size that drives the failure probability below 1 / M. Throws
/// DegenerateCode when n - k <= 1.
FieldChoice choose_field(std::uint64_t file_bits, std::size_t n, std::size_t k, SizingMode mode);

}  // namespace nxmds
