// rng.hpp — counter-based random streams (Philox4x32-10).
//
// Every random quantity in the project is addressed by
// (seed, stream class, id, index, subindex); there is no mutable generator
// state, so ensembles are reproducible under any parallel schedule.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "snls/common.hpp"

namespace snls::rng {

// Stream classes keep independent uses of the same seed disjoint.
enum : std::uint32_t {
    kStreamBrownian = 0,
    kStreamField = 1,
    kStreamScalarSamples = 2,
    kStreamGaussianSeries = 3,
    kStreamBootstrap = 4,
};

struct Block {
    std::array<std::uint32_t, 4> x;
};

namespace detail {
inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    std::uint64_t p = std::uint64_t(a) * std::uint64_t(b);
    hi = std::uint32_t(p >> 32);
    lo = std::uint32_t(p);
}
}  // namespace detail

// Philox4x32-10, as specified by Salmon et al.; validated against the
// published known-answer vectors in the unit tests.
inline Block philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        detail::mulhilo(kM0, ctr[0], hi0, lo0);
        detail::mulhilo(kM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kW0;
        key[1] += kW1;
    }
    return Block{ctr};
}

inline double u64_to_unit(std::uint64_t v) {
    // 53-bit mantissa, result in (0, 1].
    return double((v >> 11) + 1) * (1.0 / 9007199254740992.0);
}

// One standard normal per counter address.
inline double gaussian(std::uint64_t seed, std::uint32_t stream, std::uint32_t id,
                       std::uint32_t index, std::uint32_t subindex) {
    Block b = philox4x32({stream, id, index, subindex},
                         {std::uint32_t(seed), std::uint32_t(seed >> 32)});
    double u1 = u64_to_unit((std::uint64_t(b.x[0]) << 32) | b.x[1]);
    double u2 = u64_to_unit((std::uint64_t(b.x[2]) << 32) | b.x[3]);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

// Uniform in (0,1].  The top bit of the stream word keeps uniform draws on a
// counter range disjoint from the gaussian ones.
inline double uniform(std::uint64_t seed, std::uint32_t stream, std::uint32_t id,
                      std::uint32_t index, std::uint32_t subindex) {
    Block b = philox4x32({stream | 0x80000000u, id, index, subindex},
                         {std::uint32_t(seed), std::uint32_t(seed >> 32)});
    return u64_to_unit((std::uint64_t(b.x[0]) << 32) | b.x[1]);
}

}  // namespace snls::rng
