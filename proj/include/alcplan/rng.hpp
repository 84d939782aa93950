#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace alcplan {

/// splitmix64 step; used to derive independent per-attempt seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t s = base ^ (0x6a09e667f3bcc909ULL + index * 0x9e3779b97f4a7c15ULL);
    return splitmix64(s);
}

/// Fisher-Yates with an explicit modulo draw. std::shuffle and
/// std::uniform_int_distribution are implementation-defined, which would
/// make seeded runs differ across standard libraries; this keeps byte-level
/// reproducibility. The modulo bias is irrelevant for shuffling short
/// adjacency lists.
template <typename T>
void deterministic_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace alcplan
