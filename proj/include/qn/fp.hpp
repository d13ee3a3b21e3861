#pragma once

#include <cstdint>
#include <stdexcept>

namespace qn {

bool is_prime(int n);

/* Prime field context for p <= 97. Values are residues in [0, p). */
struct FpCtx {
    uint16_t p = 2;
    uint16_t magic = 1u << 15; /* floor(2^16 / p), Barrett constant for the SIMD lanes */

    FpCtx() = default;
    explicit FpCtx(int prime);

    uint16_t add(uint16_t a, uint16_t b) const
    {
        uint16_t s = static_cast<uint16_t>(a + b);
        return s >= p ? static_cast<uint16_t>(s - p) : s;
    }
    uint16_t sub(uint16_t a, uint16_t b) const
    {
        return a >= b ? static_cast<uint16_t>(a - b) : static_cast<uint16_t>(a + p - b);
    }
    uint16_t neg(uint16_t a) const { return a ? static_cast<uint16_t>(p - a) : 0; }
    uint16_t mul(uint16_t a, uint16_t b) const
    {
        return static_cast<uint16_t>((uint32_t(a) * uint32_t(b)) % p);
    }
    uint16_t pow(uint16_t a, uint32_t e) const;
    uint16_t inv(uint16_t a) const; /* a != 0 */
    /* arbitrary integer -> [0, p) */
    uint16_t reduce_int(long long v) const
    {
        long long r = v % p;
        if (r < 0)
            r += p;
        return static_cast<uint16_t>(r);
    }

    bool operator==(const FpCtx&) const = default;
};

} // namespace qn
