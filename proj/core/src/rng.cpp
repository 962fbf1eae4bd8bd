#include "wns/rng.hpp"

#include <cmath>

namespace wns {

namespace {

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = std::uint64_t(a) * b;
    hi = std::uint32_t(p >> 32);
    lo = std::uint32_t(p);
}

constexpr std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::uint64_t key, std::uint64_t ctr_hi,
                                        std::uint64_t ctr_lo) {
    std::uint32_t c0 = std::uint32_t(ctr_lo), c1 = std::uint32_t(ctr_lo >> 32);
    std::uint32_t c2 = std::uint32_t(ctr_hi), c3 = std::uint32_t(ctr_hi >> 32);
    std::uint32_t k0 = std::uint32_t(key), k1 = std::uint32_t(key >> 32);
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kM0, c0, hi0, lo0);
        mulhilo(kM1, c2, hi1, lo1);
        const std::uint32_t n0 = hi1 ^ c1 ^ k0;
        const std::uint32_t n1 = lo1;
        const std::uint32_t n2 = hi0 ^ c3 ^ k1;
        const std::uint32_t n3 = lo0;
        c0 = n0; c1 = n1; c2 = n2; c3 = n3;
        k0 += kW0;
        k1 += kW1;
    }
    return {c0, c1, c2, c3};
}

NormalPair normal_pair(std::uint64_t seed, std::uint64_t stream, std::uint64_t step) {
    const auto r = philox4x32(seed, stream, step);
    // u1 in (0,1], u2 in [0,1)
    const double u1 = (double(r[0]) + 1.0) * (1.0 / 4294967296.0);
    const double u2 = double(r[1]) * (1.0 / 4294967296.0);
    const double m = std::sqrt(-2.0 * std::log(u1));
    return {m * std::cos(2.0 * M_PI * u2), m * std::sin(2.0 * M_PI * u2)};
}

double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t step) {
    const auto r = philox4x32(seed, stream, step);
    return double(r[0]) * (1.0 / 4294967296.0);
}

}  // namespace wns
