// Counter-based random numbers (Philox-4x32-10).  Every Gaussian increment
// is a pure function of (seed, step, channel), so trajectories are
// reproducible bit for bit no matter how work is scheduled, and a refined
// time grid can reuse the same logical path by summing increments.

#pragma once

#include <cstdint>
#include <cmath>
#include <numbers>

namespace hpe {

struct PhiloxOut {
    std::uint32_t v[4];
};

// One 10-round Philox-4x32 block: counter (4 words) + key (2 words).
inline PhiloxOut philox4x32(std::uint32_t c0, std::uint32_t c1, std::uint32_t c2,
                            std::uint32_t c3, std::uint32_t k0, std::uint32_t k1) {
    constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
    constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        std::uint64_t p0 = std::uint64_t(M0) * c0;
        std::uint64_t p1 = std::uint64_t(M1) * c2;
        std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
        std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
        std::uint32_t n0 = hi1 ^ c1 ^ k0;
        std::uint32_t n1 = lo1;
        std::uint32_t n2 = hi0 ^ c3 ^ k1;
        std::uint32_t n3 = lo0;
        c0 = n0; c1 = n1; c2 = n2; c3 = n3;
        k0 += W0; k1 += W1;
    }
    return {{c0, c1, c2, c3}};
}

inline double uniform_from_bits(std::uint32_t hi, std::uint32_t lo) {
    std::uint64_t u = (std::uint64_t(hi) << 32) | lo;
    double x = double(u >> 11) * 0x1.0p-53;
    return (x > 0.0) ? x : 0x1.0p-53; // keep log() finite
}

// Standard normal draw for logical coordinates (seed, step, channel).
inline double gaussian(std::uint64_t seed, std::uint64_t step, std::uint64_t channel) {
    PhiloxOut r = philox4x32(std::uint32_t(step), std::uint32_t(step >> 32),
                             std::uint32_t(channel), std::uint32_t(channel >> 32),
                             std::uint32_t(seed), std::uint32_t(seed >> 32));
    double u1 = uniform_from_bits(r.v[0], r.v[1]);
    double u2 = uniform_from_bits(r.v[2], r.v[3]);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace hpe
