#include "nxmds/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <thread>

#include "nxmds/error.hpp"
#include "nxmds/rng.hpp"

namespace nxmds {

namespace {

std::uint64_t checked_power(std::uint64_t base, std::uint64_t exp, std::uint64_t limit) {
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        acc *= base;
        if (acc > limit)
            throw Error(ErrorCode::TooLargeToEnumerate,
                        std::to_string(base) + "^" + std::to_string(exp) + " exceeds " + std::to_string(limit));
    }
    return static_cast<std::uint64_t>(acc);
}

// Advances a base-q odometer over symbol vectors; false after the last one.
bool next_vector(std::vector<Elem>& v, std::uint64_t q) {
    for (auto& e : v) {
        if (++e.value < q) return true;
        e.value = 0;
    }
    return false;
}

std::vector<std::size_t> set_difference(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::vector<std::size_t> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

TrialResult run_trial(const std::shared_ptr<const MdsCode>& code_ptr, const MonteCarloConfig& config,
                      std::uint64_t index) {
    const MdsCode& code = *code_ptr;
    const auto& P = code.params();
    const Field& F = P.field;

    Rng data_rng = Rng::derive(config.master_seed, "data", index);
    SystemState state(code_ptr, Matrix::random(F, P.data_rows(), P.N, data_rng));

    if (config.t > 0) {
        Rng adv_rng = Rng::derive(config.master_seed, "adversary", index);
        state.corrupt(sample_error_plan(config.model, config.t, adv_rng, code));
    }

    // randomness is drawn only after the plan is committed
    Rng verify_rng = Rng::derive(config.master_seed, "verify", index);
    const RandomVector r = config.kind == RandomnessKind::TrueRandom
                               ? draw_random_vector(P.N, F, verify_rng)
                               : prg_expand(draw_prg_seed(F, P.N, verify_rng), P.N);

    Rng lying_rng = Rng::derive(config.master_seed, "lying", index);
    CollectOptions opts;
    opts.response = config.response;
    opts.lying_rng = &lying_rng;
    const HashVector h = collect_hashes(state, r, opts);
    const VerificationReport rep = verify(code, h, r);

    TrialResult out;
    out.truth = true_error_set(state);
    out.flagged = rep.flagged;
    out.status = rep.status;
    out.kind = r.kind;
    out.missed = set_difference(out.truth, out.flagged);
    out.false_accusations = set_difference(out.flagged, out.truth);
    out.detected = out.missed.empty() && rep.status != VerifyStatus::Undecodable;
    return out;
}

void finish_estimate(RateEstimate& est) {
    if (est.trials == 0) return;
    const double T = static_cast<double>(est.trials);
    est.estimate = static_cast<double>(est.failures) / T;
    est.sigma = std::sqrt(est.estimate * (1.0 - est.estimate) / T);
    est.ci_low = std::max(0.0, est.estimate - 3.0 * est.sigma);
    est.ci_high = std::min(1.0, est.estimate + 3.0 * est.sigma);
}

RateEstimate mc_failure_rate(const MonteCarloConfig& config) {
    const Field field = Field::from_order(config.q);
    const auto code = std::make_shared<const MdsCode>(MdsCode::make(config.n, config.k, field, config.N));
    const auto& P = code->params();
    if (config.t > P.t1())
        throw Error(ErrorCode::InvalidArgument, "t = " + std::to_string(config.t) + " exceeds t1 = " + std::to_string(P.t1()));

    RateEstimate est;
    est.trials = config.trials;
    const double t1 = static_cast<double>(P.t1());
    const double q = static_cast<double>(config.q);
    est.bound = config.kind == RandomnessKind::TrueRandom ? t1 / q : 2.0 * static_cast<double>(P.alpha()) * t1 / q;
    if (config.trials == 0) return est;

    unsigned threads = config.threads != 0 ? config.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, config.trials));
    std::vector<std::uint64_t> failures(threads, 0), unsound(threads, 0);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::uint64_t i = w; i < config.trials; i += threads) {
                    const TrialResult tr = run_trial(code, config, i);
                    if (!tr.detected) ++failures[w];
                    if (!tr.false_accusations.empty()) ++unsound[w];
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    for (unsigned w = 0; w < threads; ++w) {
        est.failures += failures[w];
        est.unsound += unsound[w];
    }
    finish_estimate(est);
    return est;
}

ExactProbability exact_failure_small(const Field& field, std::size_t N, std::span<const Matrix> node_errors) {
    const std::uint64_t q = field.order();
    ExactProbability out;
    out.total = checked_power(q, N, kEnumerationLimit);
    for (const auto& e : node_errors)
        if (e.cols() != N) throw Error(ErrorCode::ShapeMismatch, "error rows must have N entries");
    std::vector<Elem> r(N, field.zero());
    do {
        bool missed = false;
        for (const auto& e : node_errors) {
            bool all_zero = true;
            for (std::size_t j = 0; j < e.rows() && all_zero; ++j) all_zero = linalg::dot(field, e.row(j), r).value == 0;
            if (all_zero) {
                missed = true;
                break;
            }
        }
        if (missed) ++out.favorable;
    } while (next_vector(r, q));
    return out;
}

double ExactBias::bias(std::uint64_t q) const noexcept {
    const double qz = static_cast<double>(q) * static_cast<double>(zeros);
    return (qz - static_cast<double>(total)) / static_cast<double>(total);
}

namespace {

// Generator outputs for every seed (x, y), flattened seed-major.
std::vector<Elem> all_generator_outputs(const ExtField& ext, std::size_t N, std::uint64_t& seeds) {
    const std::uint64_t order = ext.order();
    seeds = checked_power(order, 2, kEnumerationLimit);
    std::vector<Elem> out;
    out.reserve(seeds * N);
    for (std::uint64_t xi = 0; xi < order; ++xi) {
        for (std::uint64_t yi = 0; yi < order; ++yi) {
            const PrgSeed seed{ext, ext.element_at(xi), ext.element_at(yi)};
            const RandomVector r = prg_expand(seed, N);
            out.insert(out.end(), r.values.begin(), r.values.end());
        }
    }
    return out;
}

}  // namespace

ExactBias exact_bias(const Field& field, unsigned m, std::size_t N, std::span<const Elem> beta, Elem c) {
    if (beta.size() != N) throw Error(ErrorCode::ShapeMismatch, "beta must have N entries");
    const ExtField ext(field, m);
    std::uint64_t seeds = 0;
    const auto outputs = all_generator_outputs(ext, N, seeds);
    ExactBias b;
    b.total = seeds;
    for (std::uint64_t s = 0; s < seeds; ++s) {
        const Elem v = field.add(linalg::dot(field, beta, std::span(outputs).subspan(s * N, N)), c);
        if (v.value == 0) ++b.zeros;
    }
    return b;
}

ExactBias exact_bias_true_random(const Field& field, std::size_t N, std::span<const Elem> beta, Elem c) {
    if (beta.size() != N) throw Error(ErrorCode::ShapeMismatch, "beta must have N entries");
    ExactBias b;
    b.total = checked_power(field.order(), N, kEnumerationLimit);
    std::vector<Elem> r(N, field.zero());
    do {
        if (field.add(linalg::dot(field, beta, r), c).value == 0) ++b.zeros;
    } while (next_vector(r, field.order()));
    return b;
}

BiasSweep sweep_bias(const Field& field, std::size_t N, std::optional<unsigned> m) {
    const std::uint64_t q = field.order();
    BiasSweep sw;
    sw.m = m.value_or(minimal_extension_degree(q, N));
    const ExtField ext(field, sw.m);
    const auto outputs = all_generator_outputs(ext, N, sw.seeds);
    const std::uint64_t betas = checked_power(q, N, kEnumerationLimit);
    if (static_cast<unsigned __int128>(betas) * sw.seeds > static_cast<unsigned __int128>(kEnumerationLimit) * 100)
        throw Error(ErrorCode::TooLargeToEnumerate, "bias sweep over every test and seed is too large");
    sw.bias_bound = static_cast<double>(q - 1) * static_cast<double>(N - 1) / static_cast<double>(ext.order());

    std::vector<Elem> beta(N, field.zero());
    std::vector<std::uint64_t> hist(q);
    const double T = static_cast<double>(sw.seeds);
    while (next_vector(beta, q)) {
        std::fill(hist.begin(), hist.end(), 0);
        for (std::uint64_t s = 0; s < sw.seeds; ++s)
            ++hist[linalg::dot(field, beta, std::span(outputs).subspan(s * N, N)).value];
        // X = sum + c is zero exactly when sum = -c, so one histogram covers every c
        for (std::uint64_t v = 0; v < q; ++v) {
            const double zeros = static_cast<double>(hist[v]);
            sw.max_abs_bias = std::max(sw.max_abs_bias, std::abs(static_cast<double>(q) * zeros - T) / T);
            sw.max_zero_probability = std::max(sw.max_zero_probability, zeros / T);
            ++sw.tests;
        }
    }
    return sw;
}

Lemma1Result lemma1_check(const Field& field, std::size_t count) {
    if (count < 1) throw Error(ErrorCode::InvalidArgument, "need at least one summand");
    const std::uint64_t q = field.order();
    Lemma1Result res;
    res.counts.assign(q, 1);
    res.total = q;
    for (std::size_t step = 1; step < count; ++step) {
        std::vector<std::uint64_t> next(q, 0);
        for (std::uint64_t a = 0; a < q; ++a)
            for (std::uint64_t b = 0; b < q; ++b) next[field.add(Elem{a}, Elem{b}).value] += res.counts[a];
        res.counts = std::move(next);
        res.total *= q;
    }
    res.uniform = std::all_of(res.counts.begin(), res.counts.end(),
                              [&](std::uint64_t c) { return c * q == res.total; });
    return res;
}

std::vector<CostRow> cost_counter(const Field& field, std::span<const std::size_t> Ns, std::optional<unsigned> m) {
    std::vector<CostRow> rows;
    Rng rng(0x5eed);
    for (std::size_t N : Ns) {
        CostRow row;
        row.N = N;
        row.m = m.value_or(minimal_extension_degree(field.order(), N));
        const ExtField ext(field, row.m);
        const PrgSeed seed{ext, ext.random(rng), ext.random(rng)};
        prg_expand(seed, N, &row.ops);
        rows.push_back(row);
    }
    return rows;
}

CostFit fit_cost(std::span<const CostRow> rows) {
    double num = 0.0, den = 0.0;
    for (const auto& r : rows) {
        const double x = static_cast<double>(r.N) * r.m * r.m;
        num += static_cast<double>(r.ops.total()) * x;
        den += x * x;
    }
    CostFit fit;
    fit.c = den > 0 ? num / den : 0.0;
    for (const auto& r : rows) {
        const double ratio = static_cast<double>(r.ops.total()) / (fit.c * static_cast<double>(r.N) * r.m * r.m);
        fit.worst_ratio = std::max({fit.worst_ratio, ratio, 1.0 / ratio});
    }
    return fit;
}

}  // namespace nxmds
