#pragma once

#include <array>
#include <cstdint>

namespace takagi {

// Philox 4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw,
// SC'11).  Stateless: each 128-bit counter/64-bit key pair maps to an
// independent 128-bit block, which is what makes sampling order
// independent and shardable.
struct Philox4x32 {
    static constexpr std::uint32_t kW32A = 0x9E3779B9u;
    static constexpr std::uint32_t kW32B = 0xBB67AE85u;
    static constexpr std::uint32_t kM4x32A = 0xD2511F53u;
    static constexpr std::uint32_t kM4x32B = 0xCD9E8D57u;

    static void mulhilo(std::uint32_t a, std::uint32_t b,
                        std::uint32_t& hi, std::uint32_t& lo) {
        std::uint64_t p = (std::uint64_t)a * b;
        hi = (std::uint32_t)(p >> 32);
        lo = (std::uint32_t)p;
    }

    static std::array<std::uint32_t, 4> round(std::array<std::uint32_t, 4> c,
                                              std::array<std::uint32_t, 2> k) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kM4x32A, c[0], hi0, lo0);
        mulhilo(kM4x32B, c[2], hi1, lo1);
        return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        for (int r = 0; r < 10; ++r) {
            if (r > 0) {
                key[0] += kW32A;
                key[1] += kW32B;
            }
            ctr = round(ctr, key);
        }
        return ctr;
    }
};

} // namespace takagi
