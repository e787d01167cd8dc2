#pragma once

#include <cstdint>
#include <random>

namespace sensel {

/// One SplitMix64 output step applied to `z`:
///     z += 0x9e3779b97f4a7c15
///     z  = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
///     z  = (z ^ (z >> 27)) * 0x94d049bb133111eb
///     return z ^ (z >> 31)
std::uint64_t splitmix64(std::uint64_t z) noexcept;

/// Child seed for stream (a, b) under `master`:
///     splitmix64(splitmix64(splitmix64(master) ^ a) ^ b)
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) noexcept;

/// Uniform double in (0, 1] from one 64-bit draw: ((x >> 11) + 1) * 2^-53.
double unit_open_closed(std::mt19937_64& rng) noexcept;

} // namespace sensel
