#pragma once

#include "qn/ops.hpp"

namespace qn::marg {

struct MargolisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegreeHomology {
    int degree = 0;
    int dim_kernel = 0;
    int dim_image = 0; /* image of Q_n from degree - (2p^n - 1) */
    int dim_homology = 0;
    std::vector<alg::Element> representatives; /* echelon-canonical */
};

struct MargolisResult {
    int n = 0;
    int d_max = 0; /* safe window: kernels exact for degrees <= d_max */
    std::vector<DegreeHomology> rows;
};

/*
 * H(A; Q_n) = ker Q_n / im Q_n degree by degree. d_max must satisfy
 * d_max + (2p^n - 1) <= N so kernels are exactly computable.
 */
MargolisResult margolis_homology(const alg::CompiledAlgebra& A, const ops::OperationTable& T,
                                 int n, int d_max);

} // namespace qn::marg
