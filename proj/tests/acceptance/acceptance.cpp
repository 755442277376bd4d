// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "nxmds/experiments.hpp"
#include "nxmds/format.hpp"
#include "nxmds/report.hpp"
#include "nxmds/rng.hpp"
#include "nxmds/verifier.hpp"
#include "oracles.hpp"

using namespace nxmds;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

Matrix from_rows(std::initializer_list<std::initializer_list<std::uint64_t>> rows) {
    Matrix m(rows.size(), rows.begin()->size());
    std::size_t r = 0;
    for (const auto& row : rows) {
        std::size_t c = 0;
        for (auto v : row) m.at(r, c++) = Elem{v};
        ++r;
    }
    return m;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i + 1;
    while (true) {
        fn(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

Outcome mds_roundtrip() {
    std::uint64_t checks = 0, mismatches = 0;
    for (auto [n, k] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 2}, {6, 3}, {9, 5}}) {
        const Field F = Field::from_order(next_prime_power(n).q);
        const MdsCode code = MdsCode::make(n, k, F, 4);
        Rng rng(Rng::derive(1, "data", n));
        for (int trial = 0; trial < 100; ++trial) {
            const Matrix x = Matrix::random(F, code.params().data_rows(), 4, rng);
            const Matrix gx = code.encode(x);
            for_each_subset(n, k, [&](const std::vector<std::size_t>& subset) {
                std::vector<NodeContent> nodes;
                for (std::size_t i : subset) nodes.push_back({i, gx.slice_rows(code.node_offset(i), code.params().alpha())});
                ++checks;
                mismatches += !(code.erasure_decode(nodes) == x);
            });
        }
    }
    return {mismatches == 0, std::to_string(checks) + " reconstructions, " + std::to_string(mismatches) + " mismatches"};
}

Outcome soundness() {
    struct Case {
        std::size_t n, k;
        std::uint64_t q;
        ErrorModel model;
        std::size_t t;
        RandomnessKind kind;
        ResponseMode response;
    };
    std::vector<Case> cases;
    const std::vector<ErrorModelKind> kinds{ErrorModelKind::SingleCell, ErrorModelKind::RandomDense, ErrorModelKind::Rank1,
                                            ErrorModelKind::RankF, ErrorModelKind::NullAgainstVector};
    for (auto [n, k, q] : std::vector<std::tuple<std::size_t, std::size_t, std::uint64_t>>{{4, 2, 5}, {6, 3, 7}, {9, 5, 11}}) {
        const Field F = Field::from_order(q);
        const std::size_t t1 = (n - k) / 2;
        for (ErrorModelKind kind : kinds) {
            ErrorModel model;
            model.kind = kind;
            model.rank = kind == ErrorModelKind::RankF ? 2 : 1;
            if (kind == ErrorModelKind::NullAgainstVector) model.target.assign(8, F.one());
            for (std::size_t t = 0; t <= t1; ++t) {
                cases.push_back({n, k, q, model, t, RandomnessKind::TrueRandom, ResponseMode::Honest});
                cases.push_back({n, k, q, model, t, RandomnessKind::Pseudorandom, ResponseMode::Honest});
                cases.push_back({n, k, q, model, t, RandomnessKind::TrueRandom, ResponseMode::Lying});
            }
        }
    }
    const std::uint64_t total = 10000;
    const std::uint64_t per_case = (total + cases.size() - 1) / cases.size();
    std::uint64_t trials = 0, unsound = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const Case& c = cases[i];
        MonteCarloConfig cfg;
        cfg.n = c.n;
        cfg.k = c.k;
        cfg.q = c.q;
        cfg.N = 8;
        cfg.model = c.model;
        cfg.t = c.t;
        cfg.kind = c.kind;
        cfg.response = c.response;
        cfg.trials = per_case;
        cfg.master_seed = 1000 + i;
        const RateEstimate est = mc_failure_rate(cfg);
        trials += est.trials;
        unsound += est.unsound;
    }
    return {trials >= total && unsound == 0, std::to_string(trials) + " audits over " + std::to_string(cases.size()) +
                                                 " configurations, " + std::to_string(unsound) + " with an honest node flagged"};
}

Outcome rank1_rate() {
    bool ok = true;
    std::ostringstream detail;
    for (std::uint64_t q : {17ULL, 257ULL}) {
        MonteCarloConfig cfg;
        cfg.q = q;
        cfg.N = 8;
        cfg.model.kind = ErrorModelKind::Rank1;
        cfg.t = 1;
        cfg.trials = 200000;
        cfg.master_seed = 3 + q;
        const RateEstimate est = mc_failure_rate(cfg);
        const double p = 1.0 / static_cast<double>(q);
        const double sigma0 = std::sqrt(p * (1.0 - p) / static_cast<double>(est.trials));
        const bool exact = std::abs(est.estimate - p) <= 3.0 * sigma0;
        const bool bounded = est.consistent_with_bound();
        ok = ok && exact && bounded && est.unsound == 0;
        detail << "q=" << q << ": " << est.failures << "/" << est.trials << " = " << format_real(est.estimate)
               << " vs 1/q = " << format_real(p) << " (3 sigma " << format_real(3.0 * sigma0) << "), bound "
               << format_real(est.bound) << "; ";
    }
    return {ok, detail.str()};
}

Outcome rank_f_law() {
    const Field F = Field::make(3, 1);
    const std::vector<Matrix> rank1{from_rows({{1, 2, 0}, {2, 1, 0}})};
    const std::vector<Matrix> rank2{from_rows({{1, 2, 0}, {0, 1, 1}})};
    const ExactProbability p1 = exact_failure_small(F, 3, rank1);
    const ExactProbability p2 = exact_failure_small(F, 3, rank2);
    const bool ok = p1 == ExactProbability{1, 3} && p2 == ExactProbability{1, 9};
    return {ok, "rank 1: " + std::to_string(p1.favorable) + "/" + std::to_string(p1.total) +
                    ", rank 2: " + std::to_string(p2.favorable) + "/" + std::to_string(p2.total)};
}

Outcome lemma1() {
    std::size_t cases = 0, failures = 0;
    for (std::uint64_t q : {2ULL, 3ULL, 4ULL, 5ULL})
        for (std::size_t count : {1U, 2U, 3U, 5U}) {
            const Lemma1Result r = lemma1_check(Field::from_order(q), count);
            bool exact = r.uniform && r.counts.size() == q;
            for (auto c : r.counts) exact = exact && c * q == r.total;
            ++cases;
            failures += !exact;
        }
    return {failures == 0, std::to_string(cases) + " distributions, " + std::to_string(failures) + " non-uniform"};
}

Outcome small_bias() {
    const Field F = Field::make(2, 1);
    bool ok = true;
    std::ostringstream detail;
    for (std::size_t N = 3; N <= 9; ++N) {
        const BiasSweep sw = sweep_bias(F, N);
        ok = ok && sw.m == minimal_extension_degree(2, N) && sw.max_abs_bias <= sw.bias_bound + 1e-12 &&
             sw.bias_bound <= 1.0 + 1e-12 && sw.max_zero_probability <= 2.0 / 2.0 + 1e-12;
        detail << "N=" << N << " m=" << sw.m << " bias " << format_real(sw.max_abs_bias) << "<=" << format_real(sw.bias_bound)
               << "; ";
    }
    return {ok, detail.str()};
}

Outcome theorem2_rate() {
    MonteCarloConfig cfg;
    cfg.q = 17;
    cfg.N = 8;
    cfg.model.kind = ErrorModelKind::Rank1;
    cfg.t = 1;
    cfg.kind = RandomnessKind::Pseudorandom;
    cfg.trials = 200000;
    cfg.master_seed = 7;
    const RateEstimate est = mc_failure_rate(cfg);
    const bool ok = est.consistent_with_bound() && std::abs(est.bound - 4.0 / 17.0) < 1e-12 && est.unsound == 0;
    return {ok, std::to_string(est.failures) + "/" + std::to_string(est.trials) + " = " + format_real(est.estimate) +
                    " [" + format_real(est.ci_low) + ", " + format_real(est.ci_high) + "] vs bound " +
                    format_real(est.bound)};
}

Outcome communication() {
    const std::size_t n = 4, k = 2;
    bool ok = true;
    std::ostringstream detail;
    for (std::uint64_t M : {1000ULL, 1000000ULL}) {
        const std::size_t t1 = (n - k) / 2;
        const Field F = Field::from_order(next_prime_power(t1 * M).q);
        const std::uint64_t budget = n * (n - k) * (ceil_log2(M) + ceil_log2(t1) + 8);
        std::optional<std::size_t> first_bits;
        std::uint64_t prev_naive = 0;
        for (std::size_t N : {100U, 1000U, 10000U}) {
            const CodeParams P{n, k, N, F};
            Rng rng(Rng::derive(M, "verify", N));
            const RandomVector r = draw_random_vector(N, F, rng);
            const MdsCode code = MdsCode::make(n, k, F, N);
            const Matrix x = Matrix::random(F, P.data_rows(), N, rng);
            const Matrix gx = code.encode(x);
            std::size_t payload_bits = 0, header_bits = 0;
            for (std::size_t i = 1; i <= n; ++i) {
                const auto bytes = format::serialize_hash(
                    P, i, node_hash(F, gx.slice_rows(code.node_offset(i), P.alpha()), r));
                const std::size_t header = format::header_size(F.characteristic(), F.degree());
                header_bits += header * 8;
                payload_bits += (bytes.size() - header) * 8;
            }
            const AuditBudget b = accounting(P, RandomnessKind::TrueRandom);
            ok = ok && payload_bits <= budget && b.hash_bits <= budget;
            if (first_bits) ok = ok && *first_bits == payload_bits;
            first_bits = payload_bits;
            if (prev_naive) ok = ok && b.naive_bits == 10 * prev_naive;
            prev_naive = b.naive_bits;
            detail << "M=" << M << " q=" << F.order() << " N=" << N << ": hash " << payload_bits << " bits (+"
                   << header_bits << " header) <= " << budget << ", naive " << b.naive_bits << "; ";
        }
    }
    return {ok, detail.str()};
}

Outcome decoder_oracle() {
    const Field F = Field::make(7, 1);
    const MdsCode code = MdsCode::make(6, 3, F, 1);
    const oracle::TableField T(7, 1, oracle::IntPoly{0, 1});
    std::vector<std::uint64_t> points;
    for (Elem e : code.evaluation_points()) points.push_back(e.value);
    // evaluation points 0, 1, w, w^2, ... with w = 3, the least primitive root mod 7
    const bool points_ok = points == std::vector<std::uint64_t>{0, 1, 3, 2, 6, 4};
    const auto codewords = oracle::all_codewords(T, points, 3);
    const std::size_t t1 = code.params().t1();
    std::uint64_t cases = 0, mismatches = 0;
    for (std::uint64_t m = 0; m < 343; ++m) {
        const std::vector<Elem> message{Elem{m % 7}, Elem{(m / 7) % 7}, Elem{m / 49}};
        const std::vector<Elem> clean = code.encode_group(message);
        for (std::size_t pos = 0; pos <= 6; ++pos) {
            for (std::uint64_t v = (pos == 6 ? 0 : 1); v < (pos == 6 ? 1 : 7); ++v) {
                std::vector<Elem> word = clean;
                if (pos < 6) word[pos] = F.add(word[pos], Elem{v});
                std::vector<std::uint64_t> raw;
                for (Elem e : word) raw.push_back(e.value);
                const auto expected = oracle::nearest_within(codewords, raw, t1);
                const auto got = code.decode_group(word);
                ++cases;
                bool same = expected.has_value() == got.has_value();
                if (same && got) {
                    const std::vector<Elem> enc = code.encode_group(got->message);
                    std::vector<std::uint64_t> got_word;
                    for (Elem e : enc) got_word.push_back(e.value);
                    std::vector<std::size_t> diff;
                    for (std::size_t i = 0; i < 6; ++i)
                        if (raw[i] != (*expected)[i]) diff.push_back(i);
                    same = got_word == *expected && got->error_positions == diff;
                }
                mismatches += !same;
            }
        }
    }
    return {points_ok && mismatches == 0,
            std::to_string(cases) + " received words, " + std::to_string(mismatches) + " disagreements"};
}

Outcome cost_scaling() {
    std::vector<std::size_t> Ns;
    for (std::size_t N = 16; N <= 4096; N *= 2) Ns.push_back(N);
    const auto rows = cost_counter(Field::make(2, 1), Ns);
    const CostFit fit = fit_cost(rows);
    return {fit.worst_ratio <= 1.5, "c = " + format_real(fit.c) + ", worst ratio " + format_real(fit.worst_ratio) + " over " +
                                        std::to_string(rows.size()) + " sizes"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_seconds;
        Outcome (*run)();
    };
    const std::vector<Criterion> criteria{
        {1, "MDS roundtrip", 60, mds_roundtrip},
        {2, "soundness", 60, soundness},
        {3, "rank-1 miss rate with true randomness", 300, rank1_rate},
        {4, "exact rank-f law", 0, rank_f_law},
        {5, "uniform sums", 0, lemma1},
        {6, "small-bias exactness", 120, small_bias},
        {7, "miss rate with the small-bias generator", 0, theorem2_rate},
        {8, "communication accounting", 0, communication},
        {9, "decoder oracle equivalence", 0, decoder_oracle},
        {10, "generator cost scaling", 0, cost_scaling},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_seconds > 0 && secs > c.limit_seconds) {
            o.pass = false;
            o.detail += " exceeded " + format_real(c.limit_seconds) + " s";
        }
        failed += !o.pass;
        std::printf("%s %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
