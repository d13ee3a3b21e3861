#pragma once

#include "qn/fp.hpp"

#include <optional>
#include <vector>

namespace qn {

using FpVec = std::vector<uint16_t>;

/*
 * Dense matrix over F_p. Row reduction is deterministic: the pivot is the
 * first nonzero column, then the lowest row index, so every echelon basis
 * downstream is byte-reproducible.
 */
class FpMatrix {
public:
    FpMatrix() = default;
    FpMatrix(int rows, int cols, FpCtx f) : rows_(rows), cols_(cols), f_(f), a_(size_t(rows) * cols, 0) {}

    static FpMatrix identity(int n, FpCtx f);
    static FpMatrix from_rows(const std::vector<FpVec>& rows, int cols, FpCtx f);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    FpCtx field() const { return f_; }

    uint16_t at(int r, int c) const { return a_[size_t(r) * cols_ + c]; }
    void set(int r, int c, uint16_t v) { a_[size_t(r) * cols_ + c] = v; }
    uint16_t* row(int r) { return a_.data() + size_t(r) * cols_; }
    const uint16_t* row(int r) const { return a_.data() + size_t(r) * cols_; }
    FpVec row_vec(int r) const { return FpVec(row(r), row(r) + cols_); }
    void swap_rows(int r1, int r2);
    void append_row(const FpVec& v);

    bool operator==(const FpMatrix&) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    FpCtx f_{};
    std::vector<uint16_t> a_;
};

struct RrefResult {
    FpMatrix mat;
    std::vector<int> pivots; /* pivot column per pivot row */
};

RrefResult rref(FpMatrix m);
int rank(const FpMatrix& m);

/* Basis of {v : m v = 0}; size = cols - rank; deterministic order. */
std::vector<FpVec> kernel_basis(const FpMatrix& m);

/* One solution of m x = b with free variables zeroed, or nullopt. */
std::optional<FpVec> solve(const FpMatrix& m, const FpVec& b);

FpVec matvec(const FpMatrix& m, const FpVec& x);

/*
 * Subspaces are canonically represented as the nonzero rows of an rref
 * matrix ("row_space"). All helpers below expect/produce that form.
 */
FpMatrix row_space(const FpMatrix& m);
FpMatrix transpose(const FpMatrix& m);
FpMatrix stack(const FpMatrix& a, const FpMatrix& b);
FpMatrix span_union(const FpMatrix& a, const FpMatrix& b);
FpMatrix span_intersection(const FpMatrix& a, const FpMatrix& b); /* Zassenhaus */
bool in_span(const FpMatrix& basis, const FpVec& v);
bool span_contains(const FpMatrix& big, const FpMatrix& small);

/*
 * Echelon complement: representatives of whole/sub, taken from the canonical
 * basis rows of `whole` reduced against `sub`, leading coefficient 1.
 */
std::vector<FpVec> complement_reps(const FpMatrix& sub, const FpMatrix& whole);

} // namespace qn
