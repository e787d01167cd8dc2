#include "sensel/seeding.hpp"

namespace sensel {

std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) noexcept {
    return splitmix64(splitmix64(splitmix64(master) ^ a) ^ b);
}

double unit_open_closed(std::mt19937_64& rng) noexcept {
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

} // namespace sensel
