#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nxmds/field.hpp"
#include "nxmds/matrix.hpp"

namespace nxmds {

/// Parameters of an (n, k) MDS code reused over N columns. Each node stores
/// alpha = n - k rows; up to t1 = floor(alpha / 2) erroneous nodes can be
/// located. Node ids are 1-based throughout.
struct CodeParams {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t N = 0;
    Field field;

    std::size_t alpha() const noexcept { return n - k; }
    std::size_t t1() const noexcept { return (n - k) / 2; }
    std::size_t data_rows() const noexcept { return k * alpha(); }
    std::size_t coded_rows() const noexcept { return n * alpha(); }
};

/// Contents of one node: its alpha x N slice of the coded matrix.
struct NodeContent {
    std::size_t node = 0;
    Matrix content;
};

enum class DecodeStatus { Decoded, Undecodable };

struct HashDecodeResult {
    DecodeStatus status = DecodeStatus::Undecodable;
    /// Corrected message-side hash (k * alpha symbols, message row order).
    std::vector<Elem> message_hash;
    /// Sorted 1-based ids of nodes whose block disagreed with the codeword.
    std::vector<std::size_t> error_nodes;
};

/// Result of decoding one sub-row group as an (n, k) Reed-Solomon word.
struct GroupDecode {
    /// Systematic message (k symbols).
    std::vector<Elem> message;
    /// 0-based positions where the received word differs from the codeword.
    std::vector<std::size_t> error_positions;
};

/// The N-extended (n, k) MDS code.
///
/// G is made of alpha independent systematic Reed-Solomon codes, one per
/// sub-row group: message row g*k + d (0-based) belongs to group g, and row
/// i*alpha + g of the coded matrix is symbol i of group g's codeword. The
/// evaluation points are 0, 1, w, w^2, ... for a primitive element w, and
/// the first k points carry the message symbols unchanged.
class MdsCode {
   public:
    static MdsCode make(std::size_t n, std::size_t k, Field field, std::size_t N);

    const CodeParams& params() const noexcept { return params_; }
    const Field& field() const noexcept { return params_.field; }
    const Matrix& generator() const noexcept { return generator_; }
    const std::vector<Elem>& evaluation_points() const noexcept { return points_; }

    /// 1-based row indices R_i = {(i-1)alpha + 1, ..., i*alpha}.
    std::vector<std::size_t> node_rows(std::size_t node) const;
    /// 0-based first row of node i's block.
    std::size_t node_offset(std::size_t node) const;
    void check_node(std::size_t node) const;

    Matrix encode(const Matrix& data) const;
    std::vector<Elem> encode_group(std::span<const Elem> message) const;

    /// Recovers the data matrix from at least k uncorrupted node slices.
    /// Slices beyond the first k are checked for consistency.
    Matrix erasure_decode(std::span<const NodeContent> nodes) const;

    /// Berlekamp-Welch decoding of one group's n received symbols with up to
    /// t1 errors. nullopt when no codeword lies within distance t1.
    std::optional<GroupDecode> decode_group(std::span<const Elem> word) const;

    /// Locates erroneous nodes from the n*alpha hash symbols.
    HashDecodeResult hash_word_decode(std::span<const Elem> hashes) const;

   private:
    MdsCode(CodeParams params, std::vector<Elem> points);

    // W[t][s] = value at targets[t] of the Lagrange basis polynomial of sources[s].
    Matrix interpolation_matrix(std::span<const Elem> sources, std::span<const Elem> targets) const;

    CodeParams params_;
    std::vector<Elem> points_;
    // n x k: symbol of node i is sum_d weights_(i, d) * message_d
    Matrix weights_;
    Matrix generator_;
};

}  // namespace nxmds
