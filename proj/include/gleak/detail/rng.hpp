#pragma once

#include <cstdint>

namespace gleak::detail {

// splitmix64 finalizer; keeps trivially related seeds decorrelated.
inline std::uint64_t mix_seed(std::uint64_t seed) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Fixed splitting rule for worker/restart streams: the index is folded into
// the root seed state.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
    return mix_seed(root ^ ((index + 1) * 0xD1B54A32D192ED03ULL));
}

} // namespace gleak::detail
