#include "qn/fp.hpp"

namespace qn {

bool is_prime(int n)
{
    if (n < 2)
        return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

FpCtx::FpCtx(int prime)
{
    if (prime < 2 || prime > 97 || !is_prime(prime))
        throw std::invalid_argument("FpCtx: prime must satisfy 2 <= p <= 97 and be prime");
    p = static_cast<uint16_t>(prime);
    magic = static_cast<uint16_t>(65536u / p);
}

uint16_t FpCtx::pow(uint16_t a, uint32_t e) const
{
    uint16_t r = 1 % p;
    uint16_t b = static_cast<uint16_t>(a % p);
    while (e) {
        if (e & 1)
            r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

uint16_t FpCtx::inv(uint16_t a) const
{
    if (a % p == 0)
        throw std::domain_error("FpCtx::inv of zero");
    return pow(a, static_cast<uint32_t>(p - 2));
}

} // namespace qn
