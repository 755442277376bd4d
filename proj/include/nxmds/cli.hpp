#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>

#include "nxmds/storage.hpp"

namespace nxmds::cli {

inline constexpr int kExitClean = 0;
inline constexpr int kExitMalformed = 1;
inline constexpr int kExitErrorsLocated = 2;
inline constexpr int kExitUndecodable = 3;

struct CorruptionSpec {
    ErrorModel model;
    std::size_t t = 0;
};

/// Parses "none", "single:T", "dense:T", "rank1:T", "rankf:T:F" or "null:T".
/// The null model targets the all-ones vector of length N.
CorruptionSpec parse_corruption(const std::string& spec, const Field& field, std::size_t N);

/// Entry point shared by the tool and the tests. Subcommands: encode,
/// corrupt, hash, verify, repair, audit, experiment, bias-check, params.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nxmds::cli
