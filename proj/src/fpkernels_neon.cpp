/* NEON variants; same Barrett scheme as the AVX2 kernels, 8 lanes of u16. */
#if defined(__aarch64__) || defined(__ARM_NEON)

#include "qn/fp.hpp"

#include <arm_neon.h>
#include <cstddef>
#include <cstdint>

namespace qn::detail {

namespace {

inline uint16x8_t barrett16(uint16x8_t x, uint16x8_t vp, uint16x8_t vm)
{
    uint32x4_t lo = vmull_u16(vget_low_u16(x), vget_low_u16(vm));
    uint32x4_t hi = vmull_u16(vget_high_u16(x), vget_high_u16(vm));
    uint16x8_t q = vcombine_u16(vshrn_n_u32(lo, 16), vshrn_n_u32(hi, 16));
    uint16x8_t r = vsubq_u16(x, vmulq_u16(q, vp));
    return vminq_u16(r, vsubq_u16(r, vp));
}

} // namespace

void axpy_neon(uint16_t* dst, const uint16_t* src, size_t n, uint16_t c, FpCtx f)
{
    if (c == 0)
        return;
    const uint16x8_t vc = vdupq_n_u16(c);
    const uint16x8_t vp = vdupq_n_u16(f.p);
    const uint16x8_t vm = vdupq_n_u16(f.magic);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        uint16x8_t d = vld1q_u16(dst + i);
        uint16x8_t s = vld1q_u16(src + i);
        uint16x8_t x = vmlaq_u16(d, s, vc);
        vst1q_u16(dst + i, barrett16(x, vp, vm));
    }
    for (; i < n; ++i)
        dst[i] = static_cast<uint16_t>((dst[i] + uint32_t(c) * src[i]) % f.p);
}

void scale_neon(uint16_t* dst, size_t n, uint16_t c, FpCtx f)
{
    if (c == 1)
        return;
    const uint16x8_t vc = vdupq_n_u16(c);
    const uint16x8_t vp = vdupq_n_u16(f.p);
    const uint16x8_t vm = vdupq_n_u16(f.magic);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        uint16x8_t d = vld1q_u16(dst + i);
        uint16x8_t x = vmulq_u16(d, vc);
        vst1q_u16(dst + i, barrett16(x, vp, vm));
    }
    for (; i < n; ++i)
        dst[i] = static_cast<uint16_t>((uint32_t(c) * dst[i]) % f.p);
}

} // namespace qn::detail

#endif
