#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace martdim {

/// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
/// A pure function of (counter, key): any sample can be produced without
/// generator state, so output never depends on generation order.
struct Philox4x32 {
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
            const auto lo0 = static_cast<std::uint32_t>(p0);
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const auto lo1 = static_cast<std::uint32_t>(p1);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }
};

namespace rng_detail {

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Maps 64 random bits to (0, 1); never returns an endpoint, so log() below
/// is always finite.
inline double to_open_unit(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1p-53;
}

}  // namespace rng_detail

/// Two standard normals for (seed, stream, pair) via the trigonometric
/// Box-Muller transform of one Philox block. stream is the path index; the
/// mapping is frozen and recorded in the path-file header.
inline void normal_pair(std::uint64_t seed, std::uint64_t stream, std::uint64_t pair,
                        double& n0, double& n1) {
    const auto x = Philox4x32::block(
        {static_cast<std::uint32_t>(pair), static_cast<std::uint32_t>(pair >> 32),
         static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)},
        {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
    const std::uint64_t a = x[0] | (static_cast<std::uint64_t>(x[1]) << 32);
    const std::uint64_t b = x[2] | (static_cast<std::uint64_t>(x[3]) << 32);
    const double u1 = rng_detail::to_open_unit(a);
    const double u2 = rng_detail::to_open_unit(b);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = rng_detail::kTwoPi * u2;
    n0 = r * std::cos(theta);
    n1 = r * std::sin(theta);
}

/// Fills out[0..count) with normals q0, q0+1, ... of the given stream, where
/// normal q is member (q mod 2) of pair (q / 2).
inline void fill_normals(std::uint64_t seed, std::uint64_t stream, std::uint64_t q0,
                         std::int64_t count, double* out) {
    std::int64_t written = 0;
    std::uint64_t q = q0;
    while (written < count) {
        double n0 = 0.0, n1 = 0.0;
        normal_pair(seed, stream, q >> 1, n0, n1);
        if ((q & 1u) == 0) {
            out[written++] = n0;
            if (written < count) {
                out[written++] = n1;
                q += 2;
            } else {
                ++q;
            }
        } else {
            out[written++] = n1;
            ++q;
        }
    }
}

}  // namespace martdim
