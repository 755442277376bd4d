#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "nxmds/code.hpp"
#include "nxmds/ext_field.hpp"
#include "nxmds/hashing.hpp"
#include "nxmds/storage.hpp"
#include "nxmds/verifier.hpp"

namespace nxmds {

/// Largest enumeration the exact routines will attempt.
inline constexpr std::uint64_t kEnumerationLimit = 10'000'000;

struct TrialResult {
    bool detected = false;
    std::vector<std::size_t> truth;
    std::vector<std::size_t> flagged;
    /// truth \ flagged
    std::vector<std::size_t> missed;
    /// flagged nodes that were never corrupted
    std::vector<std::size_t> false_accusations;
    VerifyStatus status = VerifyStatus::Undecodable;
    RandomnessKind kind = RandomnessKind::TrueRandom;
};

struct RateEstimate {
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    /// Trials in which an honest node was flagged.
    std::uint64_t unsound = 0;
    double estimate = 0.0;
    double sigma = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double bound = 0.0;

    /// The 3-sigma band does not lie entirely above the bound.
    bool consistent_with_bound() const noexcept { return ci_low <= bound; }
};

struct MonteCarloConfig {
    std::size_t n = 4;
    std::size_t k = 2;
    std::size_t N = 8;
    std::uint64_t q = 17;
    ErrorModel model;
    std::size_t t = 1;
    RandomnessKind kind = RandomnessKind::TrueRandom;
    ResponseMode response = ResponseMode::Honest;
    std::uint64_t trials = 1000;
    std::uint64_t master_seed = 1;
    /// 0 picks the hardware concurrency.
    unsigned threads = 0;
};

/// One audit: fresh data, committed error plan, then the projection vector,
/// hashes and decoding. Depends only on (config, index).
TrialResult run_trial(const std::shared_ptr<const MdsCode>& code, const MonteCarloConfig& config, std::uint64_t index);

/// Failure rate over independent trials; bit-reproducible for a given seed
/// regardless of thread count. The bound is t1/q for true randomness and
/// 2 alpha t1 / q for the generator.
RateEstimate mc_failure_rate(const MonteCarloConfig& config);

/// Fills point estimate, sigma and the 3-sigma interval from the counts.
void finish_estimate(RateEstimate& est);

struct ExactProbability {
    std::uint64_t favorable = 0;
    std::uint64_t total = 0;

    double value() const noexcept { return total == 0 ? 0.0 : static_cast<double>(favorable) / static_cast<double>(total); }
    friend bool operator==(const ExactProbability& a, const ExactProbability& b) noexcept {
        return static_cast<unsigned __int128>(a.favorable) * b.total ==
               static_cast<unsigned __int128>(b.favorable) * a.total;
    }
};

/// P[some node's error rows are all orthogonal to r] over every r in F_q^N.
ExactProbability exact_failure_small(const Field& field, std::size_t N, std::span<const Matrix> node_errors);

struct ExactBias {
    std::uint64_t zeros = 0;
    std::uint64_t total = 0;

    /// (q - 1) P[X = 0] - P[X != 0] = (q * zeros - total) / total.
    double bias(std::uint64_t q) const noexcept;
    double zero_probability() const noexcept { return static_cast<double>(zeros) / static_cast<double>(total); }
};

/// Bias of sum beta_i r'_i + c over all q^{2m} generator seeds.
ExactBias exact_bias(const Field& field, unsigned m, std::size_t N, std::span<const Elem> beta, Elem c);

/// Same statistic with r uniform over F_q^N.
ExactBias exact_bias_true_random(const Field& field, std::size_t N, std::span<const Elem> beta, Elem c);

struct BiasSweep {
    unsigned m = 0;
    std::uint64_t seeds = 0;
    std::uint64_t tests = 0;
    double max_abs_bias = 0.0;
    double max_zero_probability = 0.0;
    /// (q - 1)(N - 1) / q^m
    double bias_bound = 0.0;
};

/// Worst case over every nonzero beta in F_q^N and every c in F_q.
BiasSweep sweep_bias(const Field& field, std::size_t N, std::optional<unsigned> m = std::nullopt);

struct Lemma1Result {
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;
    bool uniform = false;
};

/// Exact distribution of a sum of `count` independent uniform F_q symbols.
Lemma1Result lemma1_check(const Field& field, std::size_t count);

struct CostRow {
    std::size_t N = 0;
    unsigned m = 0;
    OpCounter ops;
};

/// F_q operation counts of prg_expand; m defaults to the minimal degree per N.
std::vector<CostRow> cost_counter(const Field& field, std::span<const std::size_t> Ns,
                                  std::optional<unsigned> m = std::nullopt);

struct CostFit {
    double c = 0.0;
    /// Largest of ops / (c N m^2) and its reciprocal.
    double worst_ratio = 0.0;
};

/// Least-squares c in ops ~ c * N * m^2.
CostFit fit_cost(std::span<const CostRow> rows);

}  // namespace nxmds
