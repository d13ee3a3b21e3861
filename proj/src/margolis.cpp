#include "qn/margolis.hpp"

namespace qn::marg {

using alg::CompiledAlgebra;
using alg::Element;

namespace {

/* matrix of Q_n : H^d -> H^{d+q}; column j = image of basis_j */
FpMatrix q_matrix(const CompiledAlgebra& A, const ops::OperationTable& T, int n, int d)
{
    const int q = ops::q_shift(A.prime(), n);
    FpMatrix m(A.dim(d + q), A.dim(d), A.field());
    for (int j = 0; j < A.dim(d); ++j) {
        auto r = ops::apply_q(A, T, n, A.basis_element(d, j));
        if (r.overflow)
            throw MargolisError("margolis: operation overflowed the truncation window");
        FpVec col = A.coords(d + q, r.value);
        for (int i = 0; i < m.rows(); ++i)
            m.set(i, j, col[i]);
    }
    return m;
}

} // namespace

MargolisResult margolis_homology(const CompiledAlgebra& A, const ops::OperationTable& T, int n,
                                 int d_max)
{
    const int q = ops::q_shift(A.prime(), n);
    if (n < 0 || n > T.nmax)
        throw MargolisError("margolis: n exceeds the table's nmax");
    if (d_max < 0 || d_max + q > A.truncation())
        throw MargolisError("margolis: d_max + (2p^n - 1) must stay within the truncation");

    MargolisResult out;
    out.n = n;
    out.d_max = d_max;
    const FpCtx f = A.field();
    for (int d = 0; d <= d_max; ++d) {
        DegreeHomology row;
        row.degree = d;
        FpMatrix Qd = q_matrix(A, T, n, d);
        auto ker = kernel_basis(Qd);
        FpMatrix ker_span = ker.empty() ? FpMatrix(0, A.dim(d), f)
                                        : row_space(FpMatrix::from_rows(ker, A.dim(d), f));
        FpMatrix im_span(0, A.dim(d), f);
        if (d >= q) {
            FpMatrix Qprev = q_matrix(A, T, n, d - q);
            im_span = row_space(transpose(Qprev));
        }
        /* d^2 = 0 prerequisite */
        if (!span_contains(ker_span, im_span))
            throw MargolisError("margolis: image not contained in kernel (Q_n^2 != 0?)");
        row.dim_kernel = ker_span.rows();
        row.dim_image = im_span.rows();
        row.dim_homology = row.dim_kernel - row.dim_image;
        for (const FpVec& v : complement_reps(im_span, ker_span))
            row.representatives.push_back(A.from_coords(d, v));
        out.rows.push_back(std::move(row));
    }
    return out;
}

} // namespace qn::marg
