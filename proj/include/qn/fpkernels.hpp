#pragma once

#include "qn/fp.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace qn {

/*
 * Row-arithmetic kernels over F_p, the inner loop of every reduction in
 * fplinalg. Scalar reference plus SIMD variants selected at runtime;
 * all variants are exact and bit-identical (equivalence-tested).
 *
 * Preconditions: all entries and the multiplier c are reduced mod p.
 */
enum class Isa { Scalar, Avx2, Neon };

struct FpRowKernels {
    /* dst[i] = (dst[i] + c * src[i]) mod p */
    void (*axpy)(uint16_t* dst, const uint16_t* src, size_t n, uint16_t c, FpCtx f);
    /* dst[i] = (c * dst[i]) mod p */
    void (*scale)(uint16_t* dst, size_t n, uint16_t c, FpCtx f);
};

bool isa_available(Isa isa);
const char* isa_name(Isa isa);
std::vector<Isa> available_isas();

/* Kernel table for a specific ISA; throws std::runtime_error if unavailable. */
const FpRowKernels& kernels_for(Isa isa);

/* Process-wide selection. Defaults to the best available ISA. */
Isa active_isa();
void select_isa(Isa isa);
const FpRowKernels& active_kernels();

} // namespace qn
