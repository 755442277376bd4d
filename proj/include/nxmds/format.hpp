#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nxmds/code.hpp"
#include "nxmds/hashing.hpp"
#include "nxmds/matrix.hpp"

// Container layout (all integers little-endian):
//
//   offset  size        field
//   0       6           magic "NXMDS1"
//   6       1           format version (1)
//   7       5 x 8       p, s, n, k, N
//   47      (s+1) x w   modulus coefficients over F_p, ascending;
//                       w = ceil(ceil(log2 p) / 8) bytes each (1 when p <= 255)
//   ..      8           node id (0 when the payload is not per node)
//   ..      1           payload kind
//   ..      ...         payload, symbols row-major, ceil(ceil(log2 q) / 8) bytes each
//
// Payloads: node slice alpha x N; data matrix k*alpha x N; node hash alpha
// symbols; projection vector N symbols; generator seed = m as u64, then the
// m coordinates of x, then the m coordinates of y.
namespace nxmds::format {

inline constexpr char kMagic[6] = {'N', 'X', 'M', 'D', 'S', '1'};
inline constexpr std::uint8_t kVersion = 1;

enum class PayloadKind : std::uint8_t {
    NodeSlice = 1,
    DataMatrix = 2,
    NodeHash = 3,
    Vector = 4,
    Seed = 5,
};

struct ContainerHeader {
    std::uint64_t p = 0;
    std::uint64_t s = 0;
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    std::uint64_t N = 0;
    std::vector<std::uint64_t> modulus;
    std::uint64_t node = 0;
    PayloadKind kind = PayloadKind::NodeSlice;
};

struct Container {
    ContainerHeader header;
    CodeParams params;
    /// NodeSlice / DataMatrix as stored; NodeHash as alpha x 1; Vector as 1 x N.
    Matrix symbols;
    std::optional<PrgSeed> seed;
};

std::size_t header_size(std::uint64_t p, std::uint64_t s);

std::vector<std::uint8_t> serialize_node(const CodeParams& params, std::size_t node, const Matrix& slice);
std::vector<std::uint8_t> serialize_data(const CodeParams& params, const Matrix& data);
std::vector<std::uint8_t> serialize_hash(const CodeParams& params, std::size_t node, std::span<const Elem> block);
std::vector<std::uint8_t> serialize_vector(const CodeParams& params, std::span<const Elem> r);
std::vector<std::uint8_t> serialize_seed(const CodeParams& params, const PrgSeed& seed);

/// Throws BadMagic, VersionMismatch or TruncatedPayload without returning a
/// partial value.
Container deserialize(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::uint8_t> bytes);

}  // namespace nxmds::format
