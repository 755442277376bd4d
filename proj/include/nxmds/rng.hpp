#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace nxmds {

/// Deterministic random source. Every consumer gets its own stream derived
/// from a master seed, a label and a counter, so results do not depend on
/// the order in which streams are created or consumed.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng derive(std::uint64_t master, std::string_view label, std::uint64_t counter = 0);

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be nonzero.
    std::uint64_t uniform(std::uint64_t bound);

   private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Process-wide logical clock. Orders error commitment against the drawing
/// of verification randomness; it never feeds any random stream.
std::uint64_t logical_clock_tick() noexcept;

}  // namespace nxmds
