#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nxmds/code.hpp"
#include "nxmds/matrix.hpp"

namespace nxmds {

class Rng;

enum class ErrorModelKind { SingleCell, RandomDense, Rank1, RankF, NullAgainstVector };

std::string_view to_string(ErrorModelKind kind) noexcept;

struct ErrorModel {
    ErrorModelKind kind = ErrorModelKind::Rank1;
    /// Row rank for RankF.
    std::size_t rank = 1;
    /// Vector every error row is made orthogonal to (NullAgainstVector only).
    std::vector<Elem> target;
};

/// Error block added to one node's alpha x N slice.
struct NodeError {
    std::size_t node = 0;
    Matrix error;
    /// Declared row rank; 0 means "not declared" and is filled in on validation.
    std::size_t rank = 0;
};

/// The adversary's move: which nodes are hit and by how much. A plan is
/// committed when it is applied to a SystemState, which must happen before
/// the verification randomness of the same trial is drawn.
struct ErrorPlan {
    ErrorModel model;
    std::vector<NodeError> nodes;
    bool committed = false;
    std::uint64_t commit_stamp = 0;

    std::vector<std::size_t> node_set() const;
};

/// Checks ids, shapes and declared ranks; fills undeclared ranks. Throws
/// DegenerateError for an all-zero block, BadModel for a wrong declared rank.
void validate_plan(ErrorPlan& plan, const MdsCode& code);

/// Samples t distinct nodes uniformly and an error block for each per the model.
ErrorPlan sample_error_plan(const ErrorModel& model, std::size_t t, Rng& rng, const MdsCode& code);

/// Stored state Y = GX + E of the simulated cluster.
class SystemState {
   public:
    /// Encodes data; retains X and GX as ground truth when asked.
    SystemState(std::shared_ptr<const MdsCode> code, const Matrix& data, bool retain_truth = true);
    /// State assembled from node slices with no ground truth (e.g. read from disk).
    static SystemState from_nodes(std::shared_ptr<const MdsCode> code, std::span<const NodeContent> nodes);

    const MdsCode& code() const noexcept { return *code_; }
    std::shared_ptr<const MdsCode> code_ptr() const noexcept { return code_; }

    const Matrix& stored() const noexcept { return stored_; }
    Matrix node_content(std::size_t node) const;

    bool has_ground_truth() const noexcept { return data_.has_value(); }
    const Matrix& data() const;
    const Matrix& encoded() const;

    /// Adds the plan's error blocks to the stored slices and commits the plan.
    void corrupt(ErrorPlan plan);

    const std::vector<ErrorPlan>& plans() const noexcept { return plans_; }
    /// Stamp of the latest committed plan, if any.
    std::optional<std::uint64_t> last_commit_stamp() const noexcept;

   private:
    struct RawTag {};
    SystemState(RawTag, std::shared_ptr<const MdsCode> code, Matrix stored);

    std::shared_ptr<const MdsCode> code_;
    Matrix stored_;
    std::optional<Matrix> data_;
    std::optional<Matrix> encoded_;
    std::vector<ErrorPlan> plans_;
};

/// Nodes whose stored slice differs from GX; throws NoGroundTruth.
std::vector<std::size_t> true_error_set(const SystemState& state);

/// Payload capacity in bits: k * alpha * N * floor(log2 q).
std::size_t capacity_bits(const CodeParams& params);

/// Packs bytes into X, floor(log2 q) bits per symbol, LSB first, row-major.
Matrix ingest(std::span<const std::uint8_t> bytes, const CodeParams& params);

/// Inverse of ingest; returns floor(capacity / 8) bytes (zero padded).
std::vector<std::uint8_t> extract(const Matrix& data, const CodeParams& params);

}  // namespace nxmds
