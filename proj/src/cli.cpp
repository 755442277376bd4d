#include "nxmds/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nxmds/error.hpp"
#include "nxmds/experiments.hpp"
#include "nxmds/format.hpp"
#include "nxmds/report.hpp"
#include "nxmds/rng.hpp"
#include "nxmds/verifier.hpp"

namespace nxmds::cli {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) parts.push_back(cur);
    return parts;
}

std::uint64_t parse_uint(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const auto v = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidArgument, std::string("bad ") + what + " '" + s + "'");
    }
}

RandomnessKind kind_for(SizingMode mode) {
    return mode == SizingMode::Theorem1 ? RandomnessKind::TrueRandom : RandomnessKind::Pseudorandom;
}

SizingMode parse_mode(const std::string& s) {
    if (s == "thm1") return SizingMode::Theorem1;
    if (s == "thm2") return SizingMode::Theorem2;
    throw Error(ErrorCode::InvalidArgument, "mode must be thm1 or thm2, got '" + s + "'");
}

std::string node_path(const fs::path& dir, std::size_t i) { return (dir / ("node_" + std::to_string(i) + ".nxm")).string(); }
std::string hash_path(const fs::path& dir, std::size_t i) { return (dir / ("hash_" + std::to_string(i) + ".nxm")).string(); }
std::string data_path(const fs::path& dir) { return (dir / "data.nxm").string(); }
std::string seed_path(const fs::path& dir) { return (dir / "seed.nxm").string(); }
std::string vector_path(const fs::path& dir) { return (dir / "vector.nxm").string(); }

struct LoadedSystem {
    std::shared_ptr<const MdsCode> code;
    std::vector<NodeContent> nodes;
    std::optional<Matrix> data;
};

std::shared_ptr<const MdsCode> code_from(const CodeParams& p) {
    return std::make_shared<const MdsCode>(MdsCode::make(p.n, p.k, p.field, p.N));
}

void require_same_params(const CodeParams& a, const CodeParams& b, const std::string& path) {
    if (a.n != b.n || a.k != b.k || a.N != b.N || !(a.field == b.field))
        throw Error(ErrorCode::InvalidArgument, path + " has different code parameters");
}

LoadedSystem load_system(const fs::path& dir) {
    const auto first = format::deserialize(format::read_file(node_path(dir, 1)));
    LoadedSystem sys;
    sys.code = code_from(first.params);
    const auto& P = sys.code->params();
    for (std::size_t i = 1; i <= P.n; ++i) {
        const std::string path = node_path(dir, i);
        auto c = format::deserialize(format::read_file(path));
        require_same_params(P, c.params, path);
        if (c.header.kind != format::PayloadKind::NodeSlice || c.header.node != i)
            throw Error(ErrorCode::InvalidArgument, path + " is not the slice of node " + std::to_string(i));
        sys.nodes.push_back({i, std::move(c.symbols)});
    }
    if (fs::exists(data_path(dir))) {
        auto c = format::deserialize(format::read_file(data_path(dir)));
        require_same_params(P, c.params, data_path(dir));
        if (c.header.kind != format::PayloadKind::DataMatrix)
            throw Error(ErrorCode::InvalidArgument, data_path(dir) + " is not a data matrix");
        sys.data = std::move(c.symbols);
    }
    return sys;
}

std::vector<std::size_t> truth_from_files(const LoadedSystem& sys) {
    const Matrix gx = sys.code->encode(*sys.data);
    std::vector<std::size_t> out;
    for (const auto& nc : sys.nodes) {
        if (!(gx.slice_rows(sys.code->node_offset(nc.node), sys.code->params().alpha()) == nc.content))
            out.push_back(nc.node);
    }
    return out;
}

RandomVector draw_projection(const CodeParams& P, SizingMode mode, std::uint64_t seed) {
    Rng rng = Rng::derive(seed, "verify");
    if (mode == SizingMode::Theorem1) return draw_random_vector(P.N, P.field, rng);
    return prg_expand(draw_prg_seed(P.field, P.N, rng), P.N);
}

void add_params(ReportDocument& doc, const CodeParams& P) {
    doc.set("n", P.n);
    doc.set("k", P.k);
    doc.set("q", P.field.order());
    doc.set("N", P.N);
    doc.set("alpha", P.alpha());
    doc.set("t1", P.t1());
}

void add_budget(ReportDocument& doc, const CodeParams& P, RandomnessKind kind) {
    const AuditBudget b = accounting(P, kind);
    doc.set("file_bits", b.file_bits);
    doc.set("hash_bits", b.hash_bits);
    doc.set("naive_bits", b.naive_bits);
    doc.set("seed_bits", b.seed_bits);
    doc.set("seed_distribution_bits", b.seed_distribution_bits);
    doc.set_real("headline_bits", b.headline_bits);
    doc.set("hash_message_bytes", P.n * format::header_size(P.field.characteristic(), P.field.degree()) +
                                      P.coded_rows() * P.field.symbol_bytes());
    doc.set("hash_payload_bytes", P.coded_rows() * P.field.symbol_bytes());
}

int status_exit(VerifyStatus s) {
    switch (s) {
        case VerifyStatus::Clean: return kExitClean;
        case VerifyStatus::ErrorsLocated: return kExitErrorsLocated;
        case VerifyStatus::Undecodable: return kExitUndecodable;
    }
    return kExitMalformed;
}

std::string spec_label(const CorruptionSpec& c) {
    if (c.t == 0) return "none";
    std::string s = std::string(to_string(c.model.kind)) + " x" + std::to_string(c.t);
    if (c.model.kind == ErrorModelKind::RankF) s += " (f=" + std::to_string(c.model.rank) + ")";
    return s;
}

void report_verification(ReportDocument& doc, const VerificationReport& rep,
                         const std::optional<std::vector<std::size_t>>& truth, std::ostream& err) {
    doc.set("status", std::string(to_string(rep.status)));
    doc.set("flagged", rep.flagged);
    if (truth) {
        doc.set("true_errors", *truth);
        const bool agrees = rep.status != VerifyStatus::Undecodable && rep.flagged == *truth;
        doc.set("ground_truth_agrees", std::string(agrees ? "yes" : "no"));
        if (!agrees && rep.status != VerifyStatus::Undecodable)
            err << "warning: flagged " << format_ids(rep.flagged) << " but corrupted nodes are "
                << format_ids(*truth) << "\n";
    }
}

struct Common {
    std::size_t n = 4, k = 2, N = 0;
    std::uint64_t q = 0;
    std::uint64_t seed = 1;
    std::string mode = "thm1";
    std::string out;
};

}  // namespace

CorruptionSpec parse_corruption(const std::string& spec, const Field& field, std::size_t N) {
    CorruptionSpec c;
    if (spec == "none" || spec.empty()) return c;
    const auto parts = split(spec, ':');
    const std::string& name = parts[0];
    if (parts.size() < 2) throw Error(ErrorCode::BadModel, "corruption spec needs a node count: '" + spec + "'");
    c.t = parse_uint(parts[1], "node count");
    if (name == "single") {
        c.model.kind = ErrorModelKind::SingleCell;
    } else if (name == "dense") {
        c.model.kind = ErrorModelKind::RandomDense;
    } else if (name == "rank1") {
        c.model.kind = ErrorModelKind::Rank1;
    } else if (name == "rankf") {
        c.model.kind = ErrorModelKind::RankF;
        if (parts.size() < 3) throw Error(ErrorCode::BadModel, "rankf needs rankf:T:F");
        c.model.rank = parse_uint(parts[2], "rank");
    } else if (name == "null") {
        c.model.kind = ErrorModelKind::NullAgainstVector;
        c.model.target.assign(N, field.one());
    } else {
        throw Error(ErrorCode::BadModel, "unknown error model '" + name + "'");
    }
    if (parts.size() > (name == "rankf" ? 3U : 2U)) throw Error(ErrorCode::BadModel, "trailing fields in '" + spec + "'");
    return c;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hash-based integrity audits for N-extended MDS storage"};
    app.require_subcommand(1);

    Common enc;
    std::string enc_in;
    auto* encode = app.add_subcommand("encode", "Encode data into node files");
    encode->add_option("--n", enc.n, "Nodes")->required();
    encode->add_option("--k", enc.k, "Data blocks")->required();
    encode->add_option("--q", enc.q, "Field order (prime power)")->required();
    encode->add_option("--N", enc.N, "Columns; default fits the input");
    encode->add_option("--in", enc_in, "Input file; random data when absent");
    encode->add_option("--seed", enc.seed, "Seed for random data");
    encode->add_option("--out", enc.out, "Output directory")->required();

    std::string dir, corrupt_model = "rank1:1", corrupt_out;
    std::uint64_t corrupt_seed = 1;
    auto* corrupt = app.add_subcommand("corrupt", "Inject errors into node files");
    corrupt->add_option("--dir", dir, "Directory with node files")->required();
    corrupt->add_option("--model", corrupt_model, "none | single:T | dense:T | rank1:T | rankf:T:F | null:T");
    corrupt->add_option("--seed", corrupt_seed, "Adversary seed");
    corrupt->add_option("--out", corrupt_out, "Output directory (default: in place)");

    std::uint64_t hash_seed = 1;
    std::string hash_mode = "thm1";
    auto* hash = app.add_subcommand("hash", "Compute per-node hash messages");
    hash->add_option("--dir", dir, "Directory with node files")->required();
    hash->add_option("--seed", hash_seed, "Common randomness seed");
    hash->add_option("--mode", hash_mode, "thm1 (true random) | thm2 (small-bias generator)");

    auto* verify_cmd = app.add_subcommand("verify", "Decode hash messages and flag nodes");
    verify_cmd->add_option("--dir", dir, "Directory with hash files")->required();

    std::size_t repair_target = 0;
    std::string repair_helpers, repair_out;
    auto* repair = app.add_subcommand("repair", "Rebuild a node from helpers");
    repair->add_option("--dir", dir, "Directory with node files")->required();
    repair->add_option("--node", repair_target, "Node to rebuild")->required();
    repair->add_option("--helpers", repair_helpers, "Comma-separated helper ids")->required();
    repair->add_option("--out", repair_out, "Output file (default: overwrite the node file)");

    Common aud;
    aud.q = 257;
    aud.N = 16;
    std::string aud_corrupt = "none", aud_dir;
    bool aud_lying = false;
    auto* audit = app.add_subcommand("audit", "End-to-end audit of a simulated or on-disk system");
    audit->add_option("--n", aud.n, "Nodes");
    audit->add_option("--k", aud.k, "Data blocks");
    audit->add_option("--q", aud.q, "Field order");
    audit->add_option("--N", aud.N, "Columns");
    audit->add_option("--seed", aud.seed, "Master seed");
    audit->add_option("--mode", aud.mode, "thm1 | thm2");
    audit->add_option("--corrupt,--model", aud_corrupt, "Corruption spec, e.g. rank1:1");
    audit->add_option("--dir", aud_dir, "Audit node files instead of a simulation");
    audit->add_flag("--lying", aud_lying, "Corrupted nodes answer with arbitrary symbols");

    Common exp;
    exp.q = 0;
    exp.N = 8;
    std::string exp_qs = "17,101,257", exp_model = "rank1:1";
    std::uint64_t exp_trials = 10000;
    unsigned exp_threads = 0;
    auto* experiment = app.add_subcommand("experiment", "Monte Carlo failure-rate sweep to CSV");
    experiment->add_option("--n", exp.n, "Nodes");
    experiment->add_option("--k", exp.k, "Data blocks");
    experiment->add_option("--q", exp_qs, "Comma-separated field orders");
    experiment->add_option("--N", exp.N, "Columns");
    experiment->add_option("--trials", exp_trials, "Trials per grid point");
    experiment->add_option("--seed", exp.seed, "Master seed");
    experiment->add_option("--model", exp_model, "Corruption spec, e.g. rank1:1");
    experiment->add_option("--mode", exp.mode, "thm1 | thm2");
    experiment->add_option("--threads", exp_threads, "Worker threads (0 = all cores)");
    experiment->add_option("--out", exp.out, "CSV file (default: stdout)");

    std::uint64_t bias_q = 2;
    std::size_t bias_N = 9;
    unsigned bias_m = 0;
    auto* bias = app.add_subcommand("bias-check", "Exhaustive bias of the small-bias generator");
    bias->add_option("--q", bias_q, "Field order");
    bias->add_option("--N", bias_N, "Output length");
    bias->add_option("--m", bias_m, "Extension degree (default: minimal)");

    std::uint64_t params_M = 0;
    std::size_t params_n = 0, params_k = 0;
    std::string params_mode = "thm1";
    auto* params = app.add_subcommand("params", "Field sizing and communication budget");
    params->add_option("--M", params_M, "File size in bits")->required();
    params->add_option("--n", params_n, "Nodes")->required();
    params->add_option("--k", params_k, "Data blocks")->required();
    params->add_option("--mode", params_mode, "thm1 | thm2");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitClean : kExitMalformed;
    }

    try {
        if (*encode) {
            const Field field = Field::from_order(enc.q);
            std::vector<std::uint8_t> bytes;
            if (!enc_in.empty()) bytes = format::read_file(enc_in);
            std::size_t N = enc.N;
            if (N == 0) {
                const std::size_t per_column = (enc.n > enc.k ? enc.k * (enc.n - enc.k) : 1) * floor_log2(enc.q);
                N = std::max<std::size_t>(1, (bytes.size() * 8 + per_column - 1) / per_column);
            }
            const auto code = code_from(CodeParams{enc.n, enc.k, N, field});
            const auto& P = code->params();
            Matrix data;
            if (enc_in.empty()) {
                Rng rng = Rng::derive(enc.seed, "data");
                data = Matrix::random(field, P.data_rows(), P.N, rng);
            } else {
                data = ingest(bytes, P);
            }
            fs::create_directories(enc.out);
            const Matrix coded = code->encode(data);
            for (std::size_t i = 1; i <= P.n; ++i)
                format::write_file(node_path(enc.out, i),
                                   format::serialize_node(P, i, coded.slice_rows(code->node_offset(i), P.alpha())));
            format::write_file(data_path(enc.out), format::serialize_data(P, data));
            ReportDocument doc;
            doc.set("command", std::string("encode"));
            add_params(doc, P);
            doc.set("capacity_bits", capacity_bits(P));
            doc.set("input_bytes", bytes.size());
            doc.set("out", enc.out);
            out << doc.render();
            return kExitClean;
        }

        if (*corrupt) {
            LoadedSystem sys = load_system(dir);
            const auto& P = sys.code->params();
            const CorruptionSpec spec = parse_corruption(corrupt_model, P.field, P.N);
            SystemState state = SystemState::from_nodes(sys.code, sys.nodes);
            Rng rng = Rng::derive(corrupt_seed, "adversary");
            std::vector<std::size_t> hit;
            if (spec.t > 0) {
                ErrorPlan plan = sample_error_plan(spec.model, spec.t, rng, *sys.code);
                hit = plan.node_set();
                state.corrupt(std::move(plan));
            }
            const fs::path target = corrupt_out.empty() ? fs::path(dir) : fs::path(corrupt_out);
            fs::create_directories(target);
            for (std::size_t i = 1; i <= P.n; ++i)
                format::write_file(node_path(target, i), format::serialize_node(P, i, state.node_content(i)));
            if (target != fs::path(dir) && sys.data)
                format::write_file(data_path(target), format::serialize_data(P, *sys.data));
            ReportDocument doc;
            doc.set("command", std::string("corrupt"));
            add_params(doc, P);
            doc.set("model", spec_label(spec));
            doc.set("corrupted", hit);
            out << doc.render();
            return kExitClean;
        }

        if (*hash) {
            const SizingMode mode = parse_mode(hash_mode);
            LoadedSystem sys = load_system(dir);
            const auto& P = sys.code->params();
            const RandomVector r = draw_projection(P, mode, hash_seed);
            // the projection vector only exists now, after every node file was written
            for (const auto& nc : sys.nodes)
                format::write_file(hash_path(dir, nc.node),
                                   format::serialize_hash(P, nc.node, node_hash(P.field, nc.content, r)));
            if (r.seed) {
                format::write_file(seed_path(dir), format::serialize_seed(P, *r.seed));
                fs::remove(vector_path(dir));
            } else {
                format::write_file(vector_path(dir), format::serialize_vector(P, r.values));
                fs::remove(seed_path(dir));
            }
            ReportDocument doc;
            doc.set("command", std::string("hash"));
            add_params(doc, P);
            doc.set("randomness", std::string(to_string(r.kind)));
            doc.set("seed_bits", r.bits_consumed);
            doc.set("hash_payload_bytes", P.coded_rows() * P.field.symbol_bytes());
            out << doc.render();
            return kExitClean;
        }

        if (*verify_cmd) {
            const auto first = format::deserialize(format::read_file(hash_path(dir, 1)));
            const auto code = code_from(first.params);
            const auto& P = code->params();
            HashVector h{P.n, P.alpha(), {}};
            for (std::size_t i = 1; i <= P.n; ++i) {
                const std::string path = hash_path(dir, i);
                const auto c = format::deserialize(format::read_file(path));
                require_same_params(P, c.params, path);
                if (c.header.kind != format::PayloadKind::NodeHash || c.header.node != i)
                    throw Error(ErrorCode::InvalidArgument, path + " is not the hash of node " + std::to_string(i));
                h.symbols.insert(h.symbols.end(), c.symbols.data().begin(), c.symbols.data().end());
            }
            RandomVector r;
            if (fs::exists(seed_path(dir))) {
                auto c = format::deserialize(format::read_file(seed_path(dir)));
                if (!c.seed) throw Error(ErrorCode::InvalidArgument, "seed file holds no seed");
                r = prg_expand(*c.seed, P.N);
            } else if (fs::exists(vector_path(dir))) {
                auto c = format::deserialize(format::read_file(vector_path(dir)));
                r = RandomVector::fixed(P.field, {c.symbols.data().begin(), c.symbols.data().end()});
            }
            const VerificationReport rep = verify(*code, h, r);
            std::optional<std::vector<std::size_t>> truth;
            if (fs::exists(node_path(dir, 1)) && fs::exists(data_path(dir))) truth = truth_from_files(load_system(dir));
            ReportDocument doc;
            doc.set("command", std::string("verify"));
            add_params(doc, P);
            doc.set("randomness", std::string(to_string(r.kind)));
            report_verification(doc, rep, truth, err);
            add_budget(doc, P, r.kind);
            out << doc.render();
            return status_exit(rep.status);
        }

        if (*repair) {
            LoadedSystem sys = load_system(dir);
            const auto& P = sys.code->params();
            std::vector<std::size_t> helpers;
            for (const auto& part : split(repair_helpers, ',')) helpers.push_back(parse_uint(part, "helper id"));
            const SystemState state = SystemState::from_nodes(sys.code, sys.nodes);
            const Matrix rebuilt = repair_node(state, repair_target, helpers);
            const std::string target = repair_out.empty() ? node_path(dir, repair_target) : repair_out;
            format::write_file(target, format::serialize_node(P, repair_target, rebuilt));
            ReportDocument doc;
            doc.set("command", std::string("repair"));
            add_params(doc, P);
            doc.set("node", repair_target);
            doc.set("helpers", helpers);
            doc.set("changed", std::string(rebuilt == state.node_content(repair_target) ? "no" : "yes"));
            doc.set("out", target);
            out << doc.render();
            return kExitClean;
        }

        if (*audit) {
            const SizingMode mode = parse_mode(aud.mode);
            ReportDocument doc;
            doc.set("command", std::string("audit"));
            if (!aud_dir.empty()) {
                LoadedSystem sys = load_system(aud_dir);
                const auto& P = sys.code->params();
                const SystemState state = SystemState::from_nodes(sys.code, sys.nodes);
                const RandomVector r = draw_projection(P, mode, aud.seed);
                const HashVector h = collect_hashes(state, r);
                const VerificationReport rep = verify(*sys.code, h, r);
                std::optional<std::vector<std::size_t>> truth;
                if (sys.data) truth = truth_from_files(sys);
                add_params(doc, P);
                doc.set("mode", aud.mode);
                doc.set("randomness", std::string(to_string(r.kind)));
                doc.set("seed", aud.seed);
                report_verification(doc, rep, truth, err);
                add_budget(doc, P, r.kind);
                out << doc.render();
                return status_exit(rep.status);
            }

            const Field field = Field::from_order(aud.q);
            const auto code = code_from(CodeParams{aud.n, aud.k, aud.N, field});
            const auto& P = code->params();
            const CorruptionSpec spec = parse_corruption(aud_corrupt, field, P.N);
            Rng data_rng = Rng::derive(aud.seed, "data");
            SystemState state(code, Matrix::random(field, P.data_rows(), P.N, data_rng));
            if (spec.t > 0) {
                Rng adv_rng = Rng::derive(aud.seed, "adversary");
                state.corrupt(sample_error_plan(spec.model, spec.t, adv_rng, *code));
            }
            const RandomVector r = draw_projection(P, mode, aud.seed);
            Rng lying_rng = Rng::derive(aud.seed, "lying");
            CollectOptions opts;
            opts.response = aud_lying ? ResponseMode::Lying : ResponseMode::Honest;
            opts.lying_rng = &lying_rng;
            const HashVector h = collect_hashes(state, r, opts);
            const VerificationReport rep = verify(*code, h, r);
            add_params(doc, P);
            doc.set("mode", aud.mode);
            doc.set("randomness", std::string(to_string(r.kind)));
            doc.set("seed", aud.seed);
            doc.set("corruption", spec_label(spec));
            doc.set("responses", std::string(aud_lying ? "lying" : "honest"));
            report_verification(doc, rep, true_error_set(state), err);
            add_budget(doc, P, r.kind);
            doc.set_real("failure_bound", mode == SizingMode::Theorem1
                                              ? static_cast<double>(P.t1()) / static_cast<double>(aud.q)
                                              : 2.0 * static_cast<double>(P.alpha() * P.t1()) /
                                                    static_cast<double>(aud.q));
            out << doc.render();
            return status_exit(rep.status);
        }

        if (*experiment) {
            const SizingMode mode = parse_mode(exp.mode);
            std::vector<std::uint64_t> qs;
            for (const auto& part : split(exp_qs, ',')) qs.push_back(parse_uint(part, "field order"));
            if (qs.empty()) throw Error(ErrorCode::InvalidArgument, "empty q grid");
            std::ostringstream csv;
            csv << csv_header();
            for (std::uint64_t q : qs) {
                if (!as_prime_power(q)) throw Error(ErrorCode::InvalidArgument, std::to_string(q) + " is not a prime power");
            }
            if (exp_trials > 0) {
                for (std::uint64_t q : qs) {
                    const Field field = Field::from_order(q);
                    const CorruptionSpec spec = parse_corruption(exp_model, field, exp.N);
                    MonteCarloConfig cfg;
                    cfg.n = exp.n;
                    cfg.k = exp.k;
                    cfg.N = exp.N;
                    cfg.q = q;
                    cfg.model = spec.model;
                    cfg.t = spec.t;
                    cfg.kind = kind_for(mode);
                    cfg.trials = exp_trials;
                    cfg.master_seed = exp.seed;
                    cfg.threads = exp_threads;
                    const RateEstimate est = mc_failure_rate(cfg);
                    ExperimentRow row{exp.mode, exp.n, exp.k, q, exp.N, spec_label(spec), spec.t, est,
                                      est.consistent_with_bound() && est.unsound == 0};
                    csv << csv_row(row);
                }
            }
            if (exp.out.empty()) {
                out << csv.str();
            } else {
                const std::string s = csv.str();
                format::write_file(exp.out, std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
            }
            return kExitClean;
        }

        if (*bias) {
            const Field field = Field::from_order(bias_q);
            const BiasSweep sw = sweep_bias(field, bias_N, bias_m == 0 ? std::nullopt : std::optional<unsigned>(bias_m));
            const double zero_bound = 2.0 / static_cast<double>(bias_q);
            const bool ok = sw.max_abs_bias <= sw.bias_bound + 1e-12 && sw.bias_bound <= 1.0 + 1e-12 &&
                            sw.max_zero_probability <= zero_bound + 1e-12;
            ReportDocument doc;
            doc.set("command", std::string("bias-check"));
            doc.set("q", bias_q);
            doc.set("N", bias_N);
            doc.set("m", sw.m);
            doc.set("seeds", sw.seeds);
            doc.set("tests", sw.tests);
            doc.set_real("max_abs_bias", sw.max_abs_bias);
            doc.set_real("bias_bound", sw.bias_bound);
            doc.set_real("max_zero_probability", sw.max_zero_probability);
            doc.set_real("zero_probability_bound", zero_bound);
            doc.set("result", std::string(ok ? "pass" : "fail"));
            out << doc.render();
            return ok ? kExitClean : kExitErrorsLocated;
        }

        if (*params) {
            const SizingMode mode = parse_mode(params_mode);
            const FieldChoice choice = choose_field(params_M, params_n, params_k, mode);
            const std::size_t alpha = params_n - params_k;
            const std::size_t w = choice.field.bit_width();
            const std::size_t N = std::max<std::uint64_t>(1, (params_M + params_k * alpha * w - 1) / (params_k * alpha * w));
            const CodeParams P{params_n, params_k, N, choice.field};
            const AuditBudget b = accounting(P, kind_for(mode));
            ReportDocument doc;
            doc.set("command", std::string("params"));
            doc.set("mode", params_mode);
            doc.set("M", params_M);
            doc.set("n", params_n);
            doc.set("k", params_k);
            doc.set("t1", P.t1());
            doc.set("q_target", choice.target);
            doc.set("q", choice.field.order());
            doc.set("p", choice.field.characteristic());
            doc.set("s", choice.field.degree());
            doc.set("N", N);
            if (mode == SizingMode::Theorem2) doc.set("m", minimal_extension_degree(choice.field.order(), N));
            doc.set("file_bits", b.file_bits);
            doc.set("hash_bits", b.hash_bits);
            doc.set("naive_bits", b.naive_bits);
            doc.set("seed_bits", b.seed_bits);
            doc.set("seed_distribution_bits", b.seed_distribution_bits);
            doc.set_real("headline_bits", b.headline_bits);
            doc.set_real("hash_to_naive_ratio", static_cast<double>(b.hash_bits) / static_cast<double>(b.naive_bits));
            doc.set_real("failure_bound", choice.failure_bound);
            doc.set_real("target_bound", 1.0 / static_cast<double>(params_M));
            out << doc.render();
            return kExitClean;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitMalformed;
    }
    return kExitMalformed;
}

}  // namespace nxmds::cli
