#include "nxmds/code.hpp"

#include <algorithm>
#include <string>

#include "nxmds/error.hpp"
#include "nxmds/poly.hpp"

namespace nxmds {

MdsCode MdsCode::make(std::size_t n, std::size_t k, Field field, std::size_t N) {
    if (k < 1 || k >= n) throw Error(ErrorCode::InvalidArgument, "need 1 <= k < n");
    if (N < 1) throw Error(ErrorCode::InvalidArgument, "need N >= 1");
    if (n > field.order())
        throw Error(ErrorCode::FieldTooSmall,
                    std::to_string(n) + " nodes need " + std::to_string(n) + " distinct points in " + field.describe());

    std::vector<Elem> points;
    points.reserve(n);
    points.push_back(field.zero());
    if (n > 1) {
        const Elem w = field.primitive_element();
        Elem cur = field.one();
        for (std::size_t i = 1; i < n; ++i) {
            points.push_back(cur);
            cur = field.mul(cur, w);
        }
    }
    return MdsCode(CodeParams{n, k, N, std::move(field)}, std::move(points));
}

MdsCode::MdsCode(CodeParams params, std::vector<Elem> points) : params_(std::move(params)), points_(std::move(points)) {
    const std::size_t n = params_.n, k = params_.k, alpha = params_.alpha();
    weights_ = interpolation_matrix(std::span(points_).first(k), points_);
    generator_ = Matrix(n * alpha, k * alpha);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t g = 0; g < alpha; ++g)
            for (std::size_t d = 0; d < k; ++d) generator_.at(i * alpha + g, g * k + d) = weights_.at(i, d);
}

Matrix MdsCode::interpolation_matrix(std::span<const Elem> sources, std::span<const Elem> targets) const {
    const Field& F = params_.field;
    Matrix w(targets.size(), sources.size());
    for (std::size_t t = 0; t < targets.size(); ++t) {
        for (std::size_t s = 0; s < sources.size(); ++s) {
            Elem num = F.one(), den = F.one();
            for (std::size_t l = 0; l < sources.size(); ++l) {
                if (l == s) continue;
                num = F.mul(num, F.sub(targets[t], sources[l]));
                den = F.mul(den, F.sub(sources[s], sources[l]));
            }
            w.at(t, s) = F.div(num, den);
        }
    }
    return w;
}

void MdsCode::check_node(std::size_t node) const {
    if (node < 1 || node > params_.n)
        throw Error(ErrorCode::BadNodeId, "node " + std::to_string(node) + " not in 1.." + std::to_string(params_.n));
}

std::vector<std::size_t> MdsCode::node_rows(std::size_t node) const {
    check_node(node);
    std::vector<std::size_t> rows(params_.alpha());
    for (std::size_t j = 0; j < rows.size(); ++j) rows[j] = (node - 1) * params_.alpha() + j + 1;
    return rows;
}

std::size_t MdsCode::node_offset(std::size_t node) const {
    check_node(node);
    return (node - 1) * params_.alpha();
}

std::vector<Elem> MdsCode::encode_group(std::span<const Elem> message) const {
    if (message.size() != params_.k) throw Error(ErrorCode::ShapeMismatch, "group message must have k symbols");
    return linalg::multiply(params_.field, weights_, message);
}

Matrix MdsCode::encode(const Matrix& data) const {
    const std::size_t n = params_.n, k = params_.k, alpha = params_.alpha(), N = params_.N;
    if (data.rows() != k * alpha || data.cols() != N)
        throw Error(ErrorCode::ShapeMismatch, "data matrix must be k*alpha x N");
    const Field& F = params_.field;
    Matrix out(n * alpha, N);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t g = 0; g < alpha; ++g) {
            auto dst = out.row(i * alpha + g);
            for (std::size_t d = 0; d < k; ++d) {
                const Elem w = weights_.at(i, d);
                if (w.value == 0) continue;
                auto src = data.row(g * k + d);
                for (std::size_t c = 0; c < N; ++c) dst[c] = F.add(dst[c], F.mul(w, src[c]));
            }
        }
    }
    return out;
}

Matrix MdsCode::erasure_decode(std::span<const NodeContent> nodes) const {
    const std::size_t k = params_.k, alpha = params_.alpha(), N = params_.N;
    std::vector<std::size_t> seen;
    for (const auto& nc : nodes) {
        check_node(nc.node);
        if (std::find(seen.begin(), seen.end(), nc.node) != seen.end())
            throw Error(ErrorCode::InvalidArgument, "node " + std::to_string(nc.node) + " given twice");
        seen.push_back(nc.node);
        if (nc.content.rows() != alpha || nc.content.cols() != N)
            throw Error(ErrorCode::ShapeMismatch, "node slice must be alpha x N");
    }
    if (nodes.size() < k)
        throw Error(ErrorCode::TooFewNodes, "need " + std::to_string(k) + " nodes, got " + std::to_string(nodes.size()));

    const Field& F = params_.field;
    std::vector<Elem> sources(k);
    for (std::size_t s = 0; s < k; ++s) sources[s] = points_[nodes[s].node - 1];
    const Matrix w = interpolation_matrix(sources, std::span(points_).first(k));

    Matrix data(k * alpha, N);
    for (std::size_t g = 0; g < alpha; ++g) {
        for (std::size_t d = 0; d < k; ++d) {
            auto dst = data.row(g * k + d);
            for (std::size_t s = 0; s < k; ++s) {
                const Elem c = w.at(d, s);
                if (c.value == 0) continue;
                auto src = nodes[s].content.row(g);
                for (std::size_t col = 0; col < N; ++col) dst[col] = F.add(dst[col], F.mul(c, src[col]));
            }
        }
    }

    if (nodes.size() > k) {
        const Matrix coded = encode(data);
        for (std::size_t s = k; s < nodes.size(); ++s) {
            if (!(coded.slice_rows(node_offset(nodes[s].node), alpha) == nodes[s].content))
                throw Error(ErrorCode::SingularSystem,
                            "node " + std::to_string(nodes[s].node) + " is inconsistent with the decoded data");
        }
    }
    return data;
}

std::optional<GroupDecode> MdsCode::decode_group(std::span<const Elem> word) const {
    const std::size_t n = params_.n, k = params_.k, e = params_.t1();
    if (word.size() != n) throw Error(ErrorCode::ShapeMismatch, "group word must have n symbols");
    const Field& F = params_.field;

    // Unknowns: E_0..E_{e-1} (E monic of degree e) then Q_0..Q_{e+k-1}.
    // Row i: Q(a_i) - w_i (E_0 + ... + E_{e-1} a_i^{e-1}) = w_i a_i^e.
    const std::size_t unknowns = 2 * e + k;
    Matrix a(n, unknowns);
    std::vector<Elem> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Elem x = points_[i];
        Elem xp = F.one();
        for (std::size_t l = 0; l < e + k; ++l) {
            if (l < e) a.at(i, l) = F.neg(F.mul(word[i], xp));
            a.at(i, e + l) = xp;
            xp = F.mul(xp, x);
        }
        rhs[i] = F.mul(word[i], F.pow(x, e));
    }
    auto sol = linalg::solve(F, std::move(a), std::move(rhs));
    if (!sol) return std::nullopt;

    poly::Poly E(e + 1), Q(e + k);
    for (std::size_t l = 0; l < e; ++l) E[l] = (*sol)[l];
    E[e] = F.one();
    for (std::size_t l = 0; l < e + k; ++l) Q[l] = (*sol)[e + l];
    poly::trim(Q);
    auto [quot, rem] = poly::divmod(F, Q, E);
    if (!rem.empty() || poly::degree(quot) >= static_cast<int>(k)) return std::nullopt;

    GroupDecode out;
    out.message.resize(k);
    for (std::size_t i = 0; i < n; ++i) {
        const Elem c = poly::eval(F, quot, points_[i]);
        if (i < k) out.message[i] = c;
        if (c != word[i]) out.error_positions.push_back(i);
    }
    if (out.error_positions.size() > e) return std::nullopt;
    return out;
}

HashDecodeResult MdsCode::hash_word_decode(std::span<const Elem> hashes) const {
    const std::size_t n = params_.n, k = params_.k, alpha = params_.alpha();
    if (hashes.size() != n * alpha) throw Error(ErrorCode::ShapeMismatch, "hash word must have n*alpha symbols");
    HashDecodeResult result;
    result.message_hash.resize(k * alpha);
    std::vector<Elem> word(n);
    for (std::size_t g = 0; g < alpha; ++g) {
        for (std::size_t i = 0; i < n; ++i) word[i] = hashes[i * alpha + g];
        auto dec = decode_group(word);
        if (!dec) {
            result.status = DecodeStatus::Undecodable;
            result.message_hash.clear();
            result.error_nodes.clear();
            return result;
        }
        for (std::size_t d = 0; d < k; ++d) result.message_hash[g * k + d] = dec->message[d];
        for (std::size_t pos : dec->error_positions) result.error_nodes.push_back(pos + 1);
    }
    std::sort(result.error_nodes.begin(), result.error_nodes.end());
    result.error_nodes.erase(std::unique(result.error_nodes.begin(), result.error_nodes.end()), result.error_nodes.end());
    // groups blaming different nodes leave no codeword within t1 blocks
    if (result.error_nodes.size() > params_.t1()) {
        result.message_hash.clear();
        result.error_nodes.clear();
        return result;
    }
    result.status = DecodeStatus::Decoded;
    return result;
}

}  // namespace nxmds
