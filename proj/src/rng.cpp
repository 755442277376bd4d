#include "nxmds/rng.hpp"

#include <atomic>
#include <limits>

namespace nxmds {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t logical_clock_tick() noexcept {
    static std::atomic<std::uint64_t> clock{0};
    return clock.fetch_add(1, std::memory_order_relaxed) + 1;
}

Rng Rng::derive(std::uint64_t master, std::string_view label, std::uint64_t counter) {
    // FNV-1a over the label
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::uint64_t s = splitmix64(master);
    s = splitmix64(s ^ h);
    s = splitmix64(s ^ counter);
    return Rng(s);
}

std::uint64_t Rng::uniform(std::uint64_t bound) {
    if (bound <= 1) return 0;
    // reject the tail so every residue is equally likely
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v;
    do {
        v = engine_();
    } while (v >= limit);
    return v % bound;
}

}  // namespace nxmds
