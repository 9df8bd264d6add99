#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace firedes {

// 64-bit FNV-1a. Seeds derived through it are stable across platforms and
// independent of std::hash.
inline std::uint64_t fnv1a64(std::string_view bytes,
                             std::uint64_t h = 14695981039346656037ull) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t fnv1a64_mix(std::uint64_t h, std::uint64_t value) {
    for (int i = 0; i < 8; ++i) {
        h ^= (value >> (8 * i)) & 0xffu;
        h *= 1099511628211ull;
    }
    return h;
}

// Per-cell seed for an experiment grid: a stable hash of the global seed, the
// dataset name and the fold id, so cells can run in any order.
inline std::uint32_t derive_seed(std::uint64_t global_seed,
                                 std::string_view dataset_name,
                                 std::uint64_t fold_id) {
    std::uint64_t h = fnv1a64(dataset_name);
    h = fnv1a64_mix(h, global_seed);
    h = fnv1a64_mix(h, fold_id);
    return static_cast<std::uint32_t>(h ^ (h >> 32));
}

// Bounded draw with explicit arithmetic; the tiny modulo bias is irrelevant
// for the sample counts involved and the result does not depend on the
// standard library's distribution implementations.
inline std::size_t draw_index(std::mt19937& rng, std::size_t bound) {
    return static_cast<std::size_t>(rng() % bound);
}

// Fisher-Yates with draw_index, for the same reproducibility reason.
template <typename T>
void shuffle_in_place(std::vector<T>& values, std::mt19937& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        std::swap(values[i - 1], values[draw_index(rng, i)]);
    }
}

// Standard normal deviate via Box-Muller on explicitly constructed uniforms.
inline double draw_normal(std::mt19937& rng) {
    const double u1 = (static_cast<double>(rng()) + 0.5) / 4294967296.0;
    const double u2 = (static_cast<double>(rng()) + 0.5) / 4294967296.0;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

}  // namespace firedes
