#include "nxmds/storage.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "nxmds/error.hpp"
#include "nxmds/rng.hpp"

namespace nxmds {

std::string_view to_string(ErrorModelKind kind) noexcept {
    switch (kind) {
        case ErrorModelKind::SingleCell: return "single-cell";
        case ErrorModelKind::RandomDense: return "random-dense";
        case ErrorModelKind::Rank1: return "rank-1";
        case ErrorModelKind::RankF: return "rank-f";
        case ErrorModelKind::NullAgainstVector: return "null-against-vector";
    }
    return "unknown";
}

std::vector<std::size_t> ErrorPlan::node_set() const {
    std::vector<std::size_t> out;
    out.reserve(nodes.size());
    for (const auto& ne : nodes) out.push_back(ne.node);
    std::sort(out.begin(), out.end());
    return out;
}

void validate_plan(ErrorPlan& plan, const MdsCode& code) {
    const auto& P = code.params();
    std::vector<std::size_t> seen;
    for (auto& ne : plan.nodes) {
        code.check_node(ne.node);
        if (std::find(seen.begin(), seen.end(), ne.node) != seen.end())
            throw Error(ErrorCode::InvalidArgument, "node " + std::to_string(ne.node) + " appears twice in plan");
        seen.push_back(ne.node);
        if (ne.error.rows() != P.alpha() || ne.error.cols() != P.N)
            throw Error(ErrorCode::ShapeMismatch, "error block must be alpha x N");
        if (ne.error.is_zero())
            throw Error(ErrorCode::DegenerateError, "node " + std::to_string(ne.node) + " has an all-zero error block");
        const std::size_t r = linalg::rank(P.field, ne.error);
        if (ne.rank == 0) {
            ne.rank = r;
        } else if (ne.rank != r) {
            throw Error(ErrorCode::BadModel, "declared rank " + std::to_string(ne.rank) + " but block has rank " +
                                                 std::to_string(r));
        }
    }
    if (plan.model.kind == ErrorModelKind::NullAgainstVector) {
        if (plan.model.target.size() != P.N) throw Error(ErrorCode::ShapeMismatch, "target vector must have N entries");
        for (const auto& ne : plan.nodes)
            for (std::size_t j = 0; j < ne.error.rows(); ++j)
                if (linalg::dot(P.field, ne.error.row(j), plan.model.target).value != 0)
                    throw Error(ErrorCode::BadModel, "error row not orthogonal to target");
    }
}

namespace {

Matrix nonzero_rows(const Field& F, std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        do {
            for (auto& e : m.row(r)) e = F.random(rng);
        } while (m.row_is_zero(r));
    }
    return m;
}

Matrix rank_one_block(const Field& F, std::size_t alpha, std::size_t N, Rng& rng) {
    const Matrix base = nonzero_rows(F, 1, N, rng);
    std::vector<Elem> scalars(alpha);
    bool any = false;
    while (!any) {
        for (auto& s : scalars) {
            s = F.random(rng);
            any = any || s.value != 0;
        }
    }
    Matrix m(alpha, N);
    for (std::size_t j = 0; j < alpha; ++j)
        for (std::size_t c = 0; c < N; ++c) m.at(j, c) = F.mul(scalars[j], base.at(0, c));
    return m;
}

Matrix full_rank(const Field& F, std::size_t rows, std::size_t cols, Rng& rng) {
    const std::size_t want = std::min(rows, cols);
    for (;;) {
        Matrix m = Matrix::random(F, rows, cols, rng);
        if (linalg::rank(F, m) == want) return m;
    }
}

Matrix orthogonal_block(const Field& F, std::span<const Elem> target, std::size_t alpha, Rng& rng) {
    const std::size_t N = target.size();
    std::size_t pivot = N;
    for (std::size_t j = 0; j < N; ++j) {
        if (target[j].value != 0) {
            pivot = j;
            break;
        }
    }
    if (pivot != N && N == 1) throw Error(ErrorCode::BadModel, "no nonzero row is orthogonal to a nonzero 1-vector");
    Matrix m(alpha, N);
    do {
        for (std::size_t r = 0; r < alpha; ++r) {
            auto row = m.row(r);
            for (auto& e : row) e = F.random(rng);
            if (pivot == N) continue;
            row[pivot] = F.zero();
            const Elem partial = linalg::dot(F, row, target);
            row[pivot] = F.neg(F.div(partial, target[pivot]));
        }
    } while (m.is_zero());
    return m;
}

}  // namespace

ErrorPlan sample_error_plan(const ErrorModel& model, std::size_t t, Rng& rng, const MdsCode& code) {
    const auto& P = code.params();
    const Field& F = P.field;
    const std::size_t alpha = P.alpha(), N = P.N;
    if (t > P.n) throw Error(ErrorCode::InvalidArgument, "cannot corrupt more than n nodes");
    if (model.kind == ErrorModelKind::RankF && (model.rank < 1 || model.rank > std::min(alpha, N)))
        throw Error(ErrorCode::BadModel, "rank-f needs 1 <= f <= min(alpha, N)");
    if (model.kind == ErrorModelKind::NullAgainstVector && model.target.size() != N)
        throw Error(ErrorCode::BadModel, "null-against-vector needs a target of length N");

    std::vector<std::size_t> ids(P.n);
    std::iota(ids.begin(), ids.end(), std::size_t{1});
    for (std::size_t i = 0; i < t; ++i) std::swap(ids[i], ids[i + rng.uniform(P.n - i)]);
    ids.resize(t);
    std::sort(ids.begin(), ids.end());

    ErrorPlan plan;
    plan.model = model;
    for (std::size_t node : ids) {
        NodeError ne;
        ne.node = node;
        switch (model.kind) {
            case ErrorModelKind::SingleCell: {
                ne.error = Matrix(alpha, N);
                const std::size_t r = rng.uniform(alpha), c = rng.uniform(N);
                ne.error.at(r, c) = F.random_nonzero(rng);
                ne.rank = 1;
                break;
            }
            case ErrorModelKind::RandomDense:
                ne.error = nonzero_rows(F, alpha, N, rng);
                break;
            case ErrorModelKind::Rank1:
                ne.error = rank_one_block(F, alpha, N, rng);
                ne.rank = 1;
                break;
            case ErrorModelKind::RankF: {
                const Matrix basis = full_rank(F, model.rank, N, rng);
                const Matrix mix = full_rank(F, alpha, model.rank, rng);
                ne.error = linalg::multiply(F, mix, basis);
                ne.rank = model.rank;
                break;
            }
            case ErrorModelKind::NullAgainstVector:
                ne.error = orthogonal_block(F, model.target, alpha, rng);
                break;
        }
        plan.nodes.push_back(std::move(ne));
    }
    validate_plan(plan, code);
    return plan;
}

SystemState::SystemState(RawTag, std::shared_ptr<const MdsCode> code, Matrix stored)
    : code_(std::move(code)), stored_(std::move(stored)) {}

SystemState::SystemState(std::shared_ptr<const MdsCode> code, const Matrix& data, bool retain_truth)
    : code_(std::move(code)) {
    Matrix gx = code_->encode(data);
    stored_ = gx;
    if (retain_truth) {
        data_ = data;
        encoded_ = std::move(gx);
    }
}

SystemState SystemState::from_nodes(std::shared_ptr<const MdsCode> code, std::span<const NodeContent> nodes) {
    const auto& P = code->params();
    if (nodes.size() != P.n) throw Error(ErrorCode::TooFewNodes, "a full state needs every node");
    Matrix stored(P.coded_rows(), P.N);
    std::vector<bool> seen(P.n + 1, false);
    for (const auto& nc : nodes) {
        code->check_node(nc.node);
        if (seen[nc.node]) throw Error(ErrorCode::InvalidArgument, "node given twice");
        seen[nc.node] = true;
        if (nc.content.rows() != P.alpha() || nc.content.cols() != P.N)
            throw Error(ErrorCode::ShapeMismatch, "node slice must be alpha x N");
        stored.set_rows(code->node_offset(nc.node), nc.content);
    }
    return SystemState(RawTag{}, std::move(code), std::move(stored));
}

Matrix SystemState::node_content(std::size_t node) const {
    return stored_.slice_rows(code_->node_offset(node), code_->params().alpha());
}

const Matrix& SystemState::data() const {
    if (!data_) throw Error(ErrorCode::NoGroundTruth, "state has no retained data matrix");
    return *data_;
}

const Matrix& SystemState::encoded() const {
    if (!encoded_) throw Error(ErrorCode::NoGroundTruth, "state has no retained codeword matrix");
    return *encoded_;
}

void SystemState::corrupt(ErrorPlan plan) {
    validate_plan(plan, *code_);
    const Field& F = code_->field();
    const std::size_t alpha = code_->params().alpha();
    for (const auto& ne : plan.nodes) {
        const std::size_t off = code_->node_offset(ne.node);
        for (std::size_t j = 0; j < alpha; ++j) {
            auto dst = stored_.row(off + j);
            auto src = ne.error.row(j);
            for (std::size_t c = 0; c < dst.size(); ++c) dst[c] = F.add(dst[c], src[c]);
        }
    }
    plan.committed = true;
    plan.commit_stamp = logical_clock_tick();
    plans_.push_back(std::move(plan));
}

std::optional<std::uint64_t> SystemState::last_commit_stamp() const noexcept {
    if (plans_.empty()) return std::nullopt;
    return plans_.back().commit_stamp;
}

std::vector<std::size_t> true_error_set(const SystemState& state) {
    const Matrix& gx = state.encoded();
    const auto& code = state.code();
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i <= code.params().n; ++i) {
        const std::size_t off = code.node_offset(i);
        if (!(state.stored().slice_rows(off, code.params().alpha()) == gx.slice_rows(off, code.params().alpha())))
            out.push_back(i);
    }
    return out;
}

std::size_t capacity_bits(const CodeParams& params) {
    return params.data_rows() * params.N * floor_log2(params.field.order());
}

Matrix ingest(std::span<const std::uint8_t> bytes, const CodeParams& params) {
    const std::size_t cap = capacity_bits(params);
    if (bytes.size() * 8 > cap)
        throw Error(ErrorCode::DataTooLarge,
                    std::to_string(bytes.size() * 8) + " bits exceed capacity " + std::to_string(cap));
    const unsigned b = floor_log2(params.field.order());
    Matrix x(params.data_rows(), params.N);
    auto sym = x.data();
    for (std::size_t bit = 0; bit < bytes.size() * 8; ++bit) {
        if ((bytes[bit / 8] >> (bit % 8)) & 1U) sym[bit / b].value |= std::uint64_t{1} << (bit % b);
    }
    return x;
}

std::vector<std::uint8_t> extract(const Matrix& data, const CodeParams& params) {
    if (data.rows() != params.data_rows() || data.cols() != params.N)
        throw Error(ErrorCode::ShapeMismatch, "data matrix must be k*alpha x N");
    const unsigned b = floor_log2(params.field.order());
    std::vector<std::uint8_t> out(capacity_bits(params) / 8, 0);
    auto sym = data.data();
    for (std::size_t bit = 0; bit < out.size() * 8; ++bit) {
        if ((sym[bit / b].value >> (bit % b)) & 1U) out[bit / 8] |= static_cast<std::uint8_t>(1U << (bit % 8));
    }
    return out;
}

}  // namespace nxmds
