#pragma once

#include <cstdint>
#include <string>

namespace bestshot::detail {

// Seed-stable hashing; std::hash and the standard distributions are not
// portable across library implementations, and golden outputs must be.
inline std::uint64_t fnv1a64(const std::string& data,
                             std::uint64_t seed = 14695981039346656037ull) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// Deterministic value in [-1, 1) derived from the hash of `key`.
inline double signed_unit_hash(const std::string& key) {
    std::uint64_t h = fnv1a64(key);
    return static_cast<double>(h >> 11) / static_cast<double>(1ull << 53) * 2.0 - 1.0;
}

struct XorShift {
    std::uint64_t state;
    explicit XorShift(std::uint64_t seed)
        : state(seed * 6364136223846793005ull + 1442695040888963407ull) {}
    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
};

}  // namespace bestshot::detail
