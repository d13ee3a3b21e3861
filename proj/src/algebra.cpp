#include "qn/algebra.hpp"

#include <algorithm>

namespace qn::alg {

int Presentation::gen_index(std::string_view name) const
{
    for (size_t i = 0; i < gens.size(); ++i)
        if (gens[i].name == name)
            return static_cast<int>(i);
    return -1;
}

int Presentation::mono_degree(const Monomial& m) const
{
    int d = 0;
    for (size_t i = 0; i < gens.size(); ++i)
        d += int(m.exps[i]) * gens[i].degree;
    return d;
}

int Presentation::mono_weight(const Monomial& m) const
{
    int w = 0;
    for (size_t i = 0; i < gens.size(); ++i)
        w += int(m.exps[i]) * gens[i].weight;
    return w;
}

Element el_mono(const Monomial& m, uint16_t c)
{
    Element e;
    if (c != 0)
        e.terms.emplace(m, c);
    return e;
}

void el_add_term(Element& a, const Monomial& m, uint16_t c, FpCtx f)
{
    if (c == 0)
        return;
    auto it = a.terms.find(m);
    if (it == a.terms.end()) {
        a.terms.emplace(m, c);
        return;
    }
    uint16_t s = f.add(it->second, c);
    if (s == 0)
        a.terms.erase(it);
    else
        it->second = s;
}

Element el_add(const Element& a, const Element& b, FpCtx f)
{
    Element out = a;
    for (const auto& [m, c] : b.terms)
        el_add_term(out, m, c, f);
    return out;
}

Element el_sub(const Element& a, const Element& b, FpCtx f)
{
    Element out = a;
    for (const auto& [m, c] : b.terms)
        el_add_term(out, m, f.neg(c), f);
    return out;
}

Element el_scale(const Element& a, uint16_t c, FpCtx f)
{
    Element out;
    if (c % f.p == 0)
        return out;
    for (const auto& [m, k] : a.terms)
        out.terms.emplace(m, f.mul(k, c));
    return out;
}

Element el_neg(const Element& a, FpCtx f)
{
    return el_scale(a, f.neg(1), f);
}

std::optional<int> el_degree(const Presentation& P, const Element& a)
{
    std::optional<int> d;
    for (const auto& [m, c] : a.terms) {
        int md = P.mono_degree(m);
        if (!d)
            d = md;
        else if (*d != md)
            return std::nullopt;
    }
    return d ? d : std::optional<int>(0);
}

bool mono_mul(const Presentation& P, const Monomial& a, const Monomial& b, Monomial& out,
              uint16_t& sign)
{
    const size_t n = P.gens.size();
    out.exps.assign(n, 0);
    sign = 1;
    bool odd_p = P.prime != 2;
    long inversions = 0;
    if (odd_p) {
        /* exterior factors of b jump over the later exterior factors of a */
        long tail_ext_a = 0;
        for (size_t i = n; i-- > 0;) {
            if (P.gens[i].kind == GenKind::Ext && b.exps[i])
                inversions += tail_ext_a;
            if (P.gens[i].kind == GenKind::Ext && a.exps[i])
                ++tail_ext_a;
        }
    }
    for (size_t i = 0; i < n; ++i) {
        int e = a.exps[i] + b.exps[i];
        if (odd_p && P.gens[i].kind == GenKind::Ext && e > 1)
            return false;
        out.exps[i] = static_cast<uint16_t>(e);
    }
    if (odd_p && (inversions & 1))
        sign = P.field().neg(1);
    return true;
}

Element el_mul_free(const Presentation& P, const Element& a, const Element& b)
{
    const FpCtx f = P.field();
    Element out;
    Monomial m;
    uint16_t sg;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            if (!mono_mul(P, ma, mb, m, sg))
                continue;
            el_add_term(out, m, f.mul(f.mul(ca, cb), sg), f);
        }
    return out;
}

std::vector<Monomial> enumerate_monomials(const Presentation& P, int degree)
{
    std::vector<Monomial> out;
    Monomial cur = Monomial::one(P.gens.size());
    const bool odd_p = P.prime != 2;
    auto rec = [&](auto&& self, size_t i, int rem) -> void {
        if (i == P.gens.size()) {
            if (rem == 0)
                out.push_back(cur);
            return;
        }
        const Generator& g = P.gens[i];
        int cap = g.degree > 0 ? rem / g.degree : 0;
        if (odd_p && g.kind == GenKind::Ext)
            cap = std::min(cap, 1);
        for (int e = 0; e <= cap; ++e) {
            cur.exps[i] = static_cast<uint16_t>(e);
            self(self, i + 1, rem - e * g.degree);
        }
        cur.exps[i] = 0;
    };
    rec(rec, 0, degree);
    std::sort(out.begin(), out.end(), [](const Monomial& x, const Monomial& y) {
        return MonoBefore{}(x, y);
    });
    return out;
}

CompiledAlgebra CompiledAlgebra::compile(Presentation pres)
{
    if (pres.truncation < 0)
        throw CompileError("truncation must be non-negative");
    if (!is_prime(pres.prime))
        throw CompileError("prime expected");
    for (const auto& g : pres.gens) {
        if (g.degree <= 0)
            throw CompileError("generator " + g.name + ": degree must be positive");
        if (g.weight < 0 || g.weight > g.degree)
            throw CompileError("generator " + g.name + ": weight must lie in [0, degree]");
        if (pres.prime == 2 && g.kind == GenKind::Ext)
            throw CompileError("generator " + g.name + ": p = 2 generators are polynomial");
        if (pres.prime != 2 && (g.kind == GenKind::Ext) != (g.degree % 2 != 0))
            throw CompileError("generator " + g.name +
                               ": odd p requires exterior <=> odd degree");
        if (g.chow && (g.degree % 2 != 0 || g.weight * 2 != g.degree))
            throw CompileError("generator " + g.name +
                               ": chow requires even degree and weight = degree/2");
    }
    const FpCtx f = pres.field();
    for (const auto& r : pres.relations) {
        auto d = el_degree(pres, r);
        if (!d)
            throw CompileError("relation is not homogeneous");
        if (r.is_zero())
            continue;
        if (*d > pres.truncation)
            throw CompileError("truncation bound is below a relation degree");
    }

    CompiledAlgebra A;
    A.pres_ = std::move(pres);
    const Presentation& P = A.pres_;
    A.degs_.resize(P.truncation + 1);
    for (int d = 0; d <= P.truncation; ++d) {
        DegreeData& D = A.degs_[d];
        D.free_monos = enumerate_monomials(P, d);
        for (size_t i = 0; i < D.free_monos.size(); ++i)
            D.index.emplace(D.free_monos[i], static_cast<int>(i));
        const int cols = static_cast<int>(D.free_monos.size());

        std::vector<FpVec> rows;
        for (const auto& rel : P.relations) {
            if (rel.is_zero())
                continue;
            int rd = *el_degree(P, rel);
            if (rd > d)
                continue;
            for (const Monomial& m : enumerate_monomials(P, d - rd)) {
                Element prod = el_mul_free(P, rel, el_mono(m));
                if (prod.is_zero())
                    continue;
                FpVec row(cols, 0);
                for (const auto& [mm, c] : prod.terms)
                    row[D.index.at(mm)] = c;
                rows.push_back(std::move(row));
            }
        }
        std::vector<int> piv;
        FpMatrix R(0, cols, f);
        if (!rows.empty()) {
            auto rr = rref(FpMatrix::from_rows(rows, cols, f));
            R = std::move(rr.mat);
            piv = std::move(rr.pivots);
        }
        std::vector<bool> is_piv(cols, false);
        for (int c : piv)
            is_piv[c] = true;
        D.col_to_basis.assign(cols, -1);
        for (int c = 0; c < cols; ++c) {
            if (!is_piv[c]) {
                D.col_to_basis[c] = static_cast<int>(D.basis_cols.size());
                D.basis_cols.push_back(c);
                D.basis_monos.push_back(D.free_monos[c]);
            }
        }
        for (size_t i = 0; i < piv.size(); ++i) {
            FpVec exp(D.basis_cols.size(), 0);
            for (size_t b = 0; b < D.basis_cols.size(); ++b)
                exp[b] = f.neg(R.at(static_cast<int>(i), D.basis_cols[b]));
            D.pivot_expansion.emplace(piv[i], std::move(exp));
        }
    }
    return A;
}

int CompiledAlgebra::dim(int d) const
{
    if (d < 0 || d > truncation())
        throw CompileError("degree out of range");
    return static_cast<int>(degs_[d].basis_cols.size());
}

const std::vector<Monomial>& CompiledAlgebra::basis(int d) const
{
    if (d < 0 || d > truncation())
        throw CompileError("degree out of range");
    return degs_[d].basis_monos;
}

Element CompiledAlgebra::basis_element(int d, int i) const
{
    const DegreeData& D = degs_[d];
    return el_mono(D.free_monos[D.basis_cols[i]]);
}

Element CompiledAlgebra::reduce_mono(const Monomial& m, bool& overflow) const
{
    int d = pres_.mono_degree(m);
    if (d > truncation()) {
        overflow = true;
        return {};
    }
    const DegreeData& D = degs_[d];
    auto it = D.index.find(m);
    if (it == D.index.end())
        throw CompileError("reduce_mono: monomial not in the free basis");
    int col = it->second;
    if (D.col_to_basis[col] >= 0)
        return el_mono(m);
    const FpVec& exp = D.pivot_expansion.at(col);
    Element out;
    for (size_t b = 0; b < exp.size(); ++b)
        if (exp[b])
            out.terms.emplace(D.free_monos[D.basis_cols[b]], exp[b]);
    return out;
}

Element CompiledAlgebra::reduce(const Element& raw, bool& overflow) const
{
    const FpCtx f = field();
    Element out;
    for (const auto& [m, c] : raw.terms) {
        Element r = reduce_mono(m, overflow);
        for (const auto& [mm, cc] : r.terms)
            el_add_term(out, mm, f.mul(c, cc), f);
    }
    return out;
}

Element CompiledAlgebra::mul(const Element& a, const Element& b, bool* overflow) const
{
    const FpCtx f = field();
    Element out;
    Monomial m;
    uint16_t sg;
    bool of = false;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            if (!mono_mul(pres_, ma, mb, m, sg))
                continue;
            bool local = false;
            Element r = reduce_mono(m, local);
            if (local) {
                of = true;
                continue;
            }
            uint16_t c = f.mul(f.mul(ca, cb), sg);
            for (const auto& [mm, cc] : r.terms)
                el_add_term(out, mm, f.mul(c, cc), f);
        }
    if (overflow)
        *overflow = *overflow || of;
    return out;
}

Element CompiledAlgebra::mul_mono(const Element& a, const Monomial& m, bool* overflow) const
{
    return mul(a, el_mono(m), overflow);
}

FpVec CompiledAlgebra::coords(int d, const Element& a) const
{
    const DegreeData& D = degs_[d];
    FpVec v(D.basis_cols.size(), 0);
    for (const auto& [m, c] : a.terms) {
        auto it = D.index.find(m);
        if (it == D.index.end() || D.col_to_basis[it->second] < 0)
            throw CompileError("coords: element is not reduced in this degree");
        v[D.col_to_basis[it->second]] = c;
    }
    return v;
}

Element CompiledAlgebra::from_coords(int d, const FpVec& v) const
{
    const DegreeData& D = degs_[d];
    if (v.size() != D.basis_cols.size())
        throw CompileError("from_coords: wrong length");
    Element out;
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i])
            out.terms.emplace(D.free_monos[D.basis_cols[i]], v[i]);
    return out;
}

FpMatrix CompiledAlgebra::ideal_slice(const std::vector<Element>& gens, int d) const
{
    const FpCtx f = field();
    std::vector<FpVec> rows;
    for (const auto& g : gens) {
        if (g.is_zero())
            continue;
        auto gd = el_degree(pres_, g);
        if (!gd)
            throw CompileError("ideal_slice: generator not homogeneous");
        if (*gd > d)
            continue;
        for (int i = 0; i < dim(d - *gd); ++i) {
            bool of = false;
            Element prod = mul(g, basis_element(d - *gd, i), &of);
            if (prod.is_zero())
                continue;
            rows.push_back(coords(d, prod));
        }
    }
    if (rows.empty())
        return FpMatrix(0, dim(d), f);
    return row_space(FpMatrix::from_rows(rows, dim(d), f));
}

std::vector<int> CompiledAlgebra::dimension_vector() const
{
    std::vector<int> v(truncation() + 1);
    for (int d = 0; d <= truncation(); ++d)
        v[d] = dim(d);
    return v;
}

} // namespace qn::alg
