#include "qn/fpkernels.hpp"

#include <atomic>
#include <stdexcept>

#if defined(__x86_64__) || defined(_M_X64)
#define QN_ARCH_X86 1
#else
#define QN_ARCH_X86 0
#endif
#if defined(__aarch64__) || defined(__ARM_NEON)
#define QN_ARCH_NEON 1
#else
#define QN_ARCH_NEON 0
#endif

namespace qn {

namespace {

void axpy_scalar(uint16_t* dst, const uint16_t* src, size_t n, uint16_t c, FpCtx f)
{
    if (c == 0)
        return;
    for (size_t i = 0; i < n; ++i)
        dst[i] = static_cast<uint16_t>((dst[i] + uint32_t(c) * src[i]) % f.p);
}

void scale_scalar(uint16_t* dst, size_t n, uint16_t c, FpCtx f)
{
    if (c == 1)
        return;
    for (size_t i = 0; i < n; ++i)
        dst[i] = static_cast<uint16_t>((uint32_t(c) * dst[i]) % f.p);
}

constexpr FpRowKernels kScalar{axpy_scalar, scale_scalar};

} // namespace

#if QN_ARCH_X86
namespace detail {
void axpy_avx2(uint16_t* dst, const uint16_t* src, size_t n, uint16_t c, FpCtx f);
void scale_avx2(uint16_t* dst, size_t n, uint16_t c, FpCtx f);
} // namespace detail
#endif
#if QN_ARCH_NEON
namespace detail {
void axpy_neon(uint16_t* dst, const uint16_t* src, size_t n, uint16_t c, FpCtx f);
void scale_neon(uint16_t* dst, size_t n, uint16_t c, FpCtx f);
} // namespace detail
#endif

bool isa_available(Isa isa)
{
    switch (isa) {
    case Isa::Scalar:
        return true;
    case Isa::Avx2:
#if QN_ARCH_X86
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    case Isa::Neon:
        return QN_ARCH_NEON != 0;
    }
    return false;
}

const char* isa_name(Isa isa)
{
    switch (isa) {
    case Isa::Scalar:
        return "scalar";
    case Isa::Avx2:
        return "avx2";
    case Isa::Neon:
        return "neon";
    }
    return "?";
}

std::vector<Isa> available_isas()
{
    std::vector<Isa> out{Isa::Scalar};
    if (isa_available(Isa::Avx2))
        out.push_back(Isa::Avx2);
    if (isa_available(Isa::Neon))
        out.push_back(Isa::Neon);
    return out;
}

const FpRowKernels& kernels_for(Isa isa)
{
    if (!isa_available(isa))
        throw std::runtime_error(std::string("ISA not available on this CPU: ") + isa_name(isa));
    switch (isa) {
    case Isa::Scalar:
        return kScalar;
#if QN_ARCH_X86
    case Isa::Avx2: {
        static const FpRowKernels k{detail::axpy_avx2, detail::scale_avx2};
        return k;
    }
#endif
#if QN_ARCH_NEON
    case Isa::Neon: {
        static const FpRowKernels k{detail::axpy_neon, detail::scale_neon};
        return k;
    }
#endif
    default:
        return kScalar;
    }
}

namespace {

Isa pick_default()
{
    if (isa_available(Isa::Avx2))
        return Isa::Avx2;
    if (isa_available(Isa::Neon))
        return Isa::Neon;
    return Isa::Scalar;
}

std::atomic<Isa> g_isa{pick_default()};

} // namespace

Isa active_isa()
{
    return g_isa.load(std::memory_order_relaxed);
}

void select_isa(Isa isa)
{
    (void)kernels_for(isa); /* validates availability */
    g_isa.store(isa, std::memory_order_relaxed);
}

const FpRowKernels& active_kernels()
{
    return kernels_for(active_isa());
}

} // namespace qn
