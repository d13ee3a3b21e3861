#include "qn/fpmatrix.hpp"

#include "qn/fpkernels.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace qn {

FpMatrix FpMatrix::identity(int n, FpCtx f)
{
    FpMatrix m(n, n, f);
    for (int i = 0; i < n; ++i)
        m.set(i, i, 1);
    return m;
}

FpMatrix FpMatrix::from_rows(const std::vector<FpVec>& rows, int cols, FpCtx f)
{
    FpMatrix m(static_cast<int>(rows.size()), cols, f);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (static_cast<int>(rows[i].size()) != cols)
            throw std::invalid_argument("from_rows: ragged row");
        std::memcpy(m.row(static_cast<int>(i)), rows[i].data(), sizeof(uint16_t) * cols);
    }
    return m;
}

void FpMatrix::swap_rows(int r1, int r2)
{
    if (r1 == r2)
        return;
    std::swap_ranges(row(r1), row(r1) + cols_, row(r2));
}

void FpMatrix::append_row(const FpVec& v)
{
    if (static_cast<int>(v.size()) != cols_)
        throw std::invalid_argument("append_row: wrong length");
    a_.insert(a_.end(), v.begin(), v.end());
    ++rows_;
}

RrefResult rref(FpMatrix m)
{
    const FpCtx f = m.field();
    const FpRowKernels& K = active_kernels();
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int pr = -1;
        for (int i = r; i < m.rows(); ++i) {
            if (m.at(i, c) != 0) {
                pr = i;
                break;
            }
        }
        if (pr < 0)
            continue;
        m.swap_rows(r, pr);
        /* columns < c of row r are zero already */
        uint16_t piv = m.at(r, c);
        if (piv != 1)
            K.scale(m.row(r) + c, static_cast<size_t>(m.cols() - c), f.inv(piv), f);
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r)
                continue;
            uint16_t v = m.at(i, c);
            if (v != 0)
                K.axpy(m.row(i) + c, m.row(r) + c, static_cast<size_t>(m.cols() - c), f.neg(v), f);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

int rank(const FpMatrix& m)
{
    return static_cast<int>(rref(m).pivots.size());
}

std::vector<FpVec> kernel_basis(const FpMatrix& m)
{
    auto [R, piv] = rref(m);
    const FpCtx f = m.field();
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : piv)
        is_pivot[c] = true;
    std::vector<FpVec> out;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[c])
            continue;
        FpVec v(m.cols(), 0);
        v[c] = 1;
        for (size_t i = 0; i < piv.size(); ++i)
            v[piv[i]] = f.neg(R.at(static_cast<int>(i), c));
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<FpVec> solve(const FpMatrix& m, const FpVec& b)
{
    if (static_cast<int>(b.size()) != m.rows())
        throw std::invalid_argument("solve: b length != rows");
    FpMatrix aug(m.rows(), m.cols() + 1, m.field());
    for (int i = 0; i < m.rows(); ++i) {
        std::memcpy(aug.row(i), m.row(i), sizeof(uint16_t) * m.cols());
        aug.set(i, m.cols(), b[i]);
    }
    auto [R, piv] = rref(std::move(aug));
    FpVec x(m.cols(), 0);
    for (size_t i = 0; i < piv.size(); ++i) {
        if (piv[i] == m.cols())
            return std::nullopt;
        x[piv[i]] = R.at(static_cast<int>(i), m.cols());
    }
    return x;
}

FpVec matvec(const FpMatrix& m, const FpVec& x)
{
    if (static_cast<int>(x.size()) != m.cols())
        throw std::invalid_argument("matvec: length mismatch");
    const FpCtx f = m.field();
    FpVec y(m.rows(), 0);
    for (int i = 0; i < m.rows(); ++i) {
        uint32_t acc = 0;
        for (int j = 0; j < m.cols(); ++j)
            acc = (acc + uint32_t(m.at(i, j)) * x[j]) % f.p;
        y[i] = static_cast<uint16_t>(acc);
    }
    return y;
}

FpMatrix row_space(const FpMatrix& m)
{
    auto [R, piv] = rref(m);
    FpMatrix out(static_cast<int>(piv.size()), m.cols(), m.field());
    for (size_t i = 0; i < piv.size(); ++i)
        std::memcpy(out.row(static_cast<int>(i)), R.row(static_cast<int>(i)), sizeof(uint16_t) * m.cols());
    return out;
}

FpMatrix transpose(const FpMatrix& m)
{
    FpMatrix t(m.cols(), m.rows(), m.field());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            t.set(j, i, m.at(i, j));
    return t;
}

FpMatrix stack(const FpMatrix& a, const FpMatrix& b)
{
    if (a.cols() != b.cols())
        throw std::invalid_argument("stack: column mismatch");
    FpMatrix out(a.rows() + b.rows(), a.cols(), a.field());
    for (int i = 0; i < a.rows(); ++i)
        std::memcpy(out.row(i), a.row(i), sizeof(uint16_t) * a.cols());
    for (int i = 0; i < b.rows(); ++i)
        std::memcpy(out.row(a.rows() + i), b.row(i), sizeof(uint16_t) * a.cols());
    return out;
}

FpMatrix span_union(const FpMatrix& a, const FpMatrix& b)
{
    return row_space(stack(a, b));
}

FpMatrix span_intersection(const FpMatrix& a, const FpMatrix& b)
{
    /* Zassenhaus: rref of [A|A; B|0]; rows with zero left half carry the
       intersection in the right half. */
    const int n = a.cols();
    if (b.cols() != n)
        throw std::invalid_argument("span_intersection: column mismatch");
    FpMatrix big(a.rows() + b.rows(), 2 * n, a.field());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < n; ++j) {
            big.set(i, j, a.at(i, j));
            big.set(i, n + j, a.at(i, j));
        }
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < n; ++j)
            big.set(a.rows() + i, j, b.at(i, j));
    auto [R, piv] = rref(std::move(big));
    std::vector<FpVec> rows;
    for (size_t i = 0; i < piv.size(); ++i) {
        if (piv[i] >= n)
            rows.push_back(FpVec(R.row(static_cast<int>(i)) + n, R.row(static_cast<int>(i)) + 2 * n));
    }
    return row_space(FpMatrix::from_rows(rows, n, a.field()));
}

namespace {

/* Reduce v against canonical rref rows; returns the residue. */
FpVec reduce_against(const FpMatrix& basis, FpVec v)
{
    const FpCtx f = basis.field();
    const FpRowKernels& K = active_kernels();
    for (int i = 0; i < basis.rows(); ++i) {
        int pc = -1;
        for (int j = 0; j < basis.cols(); ++j) {
            if (basis.at(i, j) != 0) {
                pc = j;
                break;
            }
        }
        if (pc < 0)
            continue;
        uint16_t c = v[pc];
        if (c != 0)
            K.axpy(v.data(), basis.row(i), v.size(), f.neg(c), f);
    }
    return v;
}

} // namespace

bool in_span(const FpMatrix& basis, const FpVec& v)
{
    FpVec r = reduce_against(basis, v);
    return std::all_of(r.begin(), r.end(), [](uint16_t x) { return x == 0; });
}

bool span_contains(const FpMatrix& big, const FpMatrix& small)
{
    for (int i = 0; i < small.rows(); ++i)
        if (!in_span(big, small.row_vec(i)))
            return false;
    return true;
}

std::vector<FpVec> complement_reps(const FpMatrix& sub, const FpMatrix& whole)
{
    const FpCtx f = whole.field();
    FpMatrix acc = sub;
    std::vector<FpVec> out;
    for (int i = 0; i < whole.rows(); ++i) {
        FpVec r = reduce_against(row_space(acc), whole.row_vec(i));
        bool zero = std::all_of(r.begin(), r.end(), [](uint16_t x) { return x == 0; });
        if (zero)
            continue;
        int lead = 0;
        while (r[lead] == 0)
            ++lead;
        if (r[lead] != 1) {
            uint16_t inv = f.inv(r[lead]);
            for (auto& x : r)
                x = f.mul(x, inv);
        }
        acc.append_row(r);
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace qn
