#pragma once

#include <cstdint>
#include <random>

namespace sparsectrl {

/// Counter-based stream derivation: mixes (master_seed, stream_index) through
/// the splitmix64 finalizer and seeds an independent mt19937_64. Streams for
/// distinct indices are independent for practical purposes and the mapping is
/// stable, so trial results never depend on evaluation order.
inline std::mt19937_64 derive_stream(std::uint64_t master_seed, std::uint64_t stream_index) {
    std::uint64_t z = master_seed + 0x9e3779b97f4a7c15ULL * (stream_index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return std::mt19937_64(z);
}

} // namespace sparsectrl
