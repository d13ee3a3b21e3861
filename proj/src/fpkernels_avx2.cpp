/*
 * AVX2 variants of the F_p row kernels. 16-bit lanes; products stay below
 * 2^14 for p <= 97, so a single Barrett step with magic = floor(2^16/p)
 * reduces exactly:
 *   q = mulhi_epu16(x, magic)  ->  q in {floor(x/p)-1, floor(x/p)}
 *   r = x - q*p                ->  r in [0, 2p), one conditional subtract.
 *
 * This translation unit is compiled with -mavx2 and only reached after a
 * runtime cpuid check in kernels_for().
 */
#if defined(__x86_64__) || defined(_M_X64)

#include "qn/fp.hpp"

#include <cstddef>
#include <cstdint>
#include <immintrin.h>

namespace qn::detail {

namespace {

inline __m256i barrett16(__m256i x, __m256i vp, __m256i vm)
{
    __m256i q = _mm256_mulhi_epu16(x, vm);
    __m256i r = _mm256_sub_epi16(x, _mm256_mullo_epi16(q, vp));
    return _mm256_min_epu16(r, _mm256_sub_epi16(r, vp));
}

} // namespace

void axpy_avx2(uint16_t* dst, const uint16_t* src, size_t n, uint16_t c, FpCtx f)
{
    if (c == 0)
        return;
    const __m256i vc = _mm256_set1_epi16(static_cast<short>(c));
    const __m256i vp = _mm256_set1_epi16(static_cast<short>(f.p));
    const __m256i vm = _mm256_set1_epi16(static_cast<short>(f.magic));
    size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        __m256i x = _mm256_add_epi16(d, _mm256_mullo_epi16(s, vc));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), barrett16(x, vp, vm));
    }
    for (; i < n; ++i)
        dst[i] = static_cast<uint16_t>((dst[i] + uint32_t(c) * src[i]) % f.p);
}

void scale_avx2(uint16_t* dst, size_t n, uint16_t c, FpCtx f)
{
    if (c == 1)
        return;
    const __m256i vc = _mm256_set1_epi16(static_cast<short>(c));
    const __m256i vp = _mm256_set1_epi16(static_cast<short>(f.p));
    const __m256i vm = _mm256_set1_epi16(static_cast<short>(f.magic));
    size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i x = _mm256_mullo_epi16(d, vc);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), barrett16(x, vp, vm));
    }
    for (; i < n; ++i)
        dst[i] = static_cast<uint16_t>((uint32_t(c) * dst[i]) % f.p);
}

} // namespace qn::detail

#endif
