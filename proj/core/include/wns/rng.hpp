#pragma once

#include <array>
#include <cstdint>

namespace wns {

/// Philox 4x32-10 counter-based generator: a pure function of (key,
/// counter), so draws are reproducible and independent of evaluation order
/// or parallel schedule.
std::array<std::uint32_t, 4> philox4x32(std::uint64_t key, std::uint64_t ctr_hi,
                                        std::uint64_t ctr_lo);

/// Two iid standard normals keyed by (seed, stream, step) via Box-Muller.
struct NormalPair {
    double a, b;
};
NormalPair normal_pair(std::uint64_t seed, std::uint64_t stream, std::uint64_t step);

/// One uniform in [0,1).
double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t step);

}  // namespace wns
