#include "qn/ops.hpp"

#include "qn/expr.hpp"

#include <map>

namespace qn::ops {

using alg::CompiledAlgebra;
using alg::Element;
using alg::Monomial;

int q_shift(int p, int n)
{
    int pn = 1;
    for (int i = 0; i < n; ++i)
        pn *= p;
    return 2 * pn - 1;
}

namespace {

int ipow(int b, int e)
{
    int r = 1;
    while (e--)
        r *= b;
    return r;
}

/* components of a total power, indexed by k; exact for k <= kcap */
struct Series {
    std::vector<Element> comp;
    bool higher_dropped = false;
};

Series series_one(const CompiledAlgebra& A, int kcap)
{
    Series s;
    s.comp.assign(kcap + 1, {});
    s.comp[0] = alg::el_mono(Monomial::one(A.pres().gens.size()));
    return s;
}

Series series_mul(const CompiledAlgebra& A, const Series& a, const Series& b, int kcap)
{
    Series out;
    out.comp.assign(kcap + 1, {});
    out.higher_dropped = a.higher_dropped || b.higher_dropped;
    const FpCtx f = A.field();
    for (size_t i = 0; i < a.comp.size(); ++i) {
        if (a.comp[i].is_zero())
            continue;
        for (size_t j = 0; j < b.comp.size(); ++j) {
            if (b.comp[j].is_zero())
                continue;
            if (i + j > static_cast<size_t>(kcap)) {
                out.higher_dropped = true;
                continue;
            }
            bool of = false;
            Element prod = A.mul(a.comp[i], b.comp[j], &of);
            if (of)
                out.higher_dropped = true;
            out.comp[i + j] = alg::el_add(out.comp[i + j], prod, f);
        }
    }
    return out;
}

Series series_for_gen(const CompiledAlgebra& A, const OperationTable& T, int gi, int kcap)
{
    Series s;
    s.comp.assign(kcap + 1, {});
    const auto& pw = T.gen[gi].power;
    s.higher_dropped = T.gen[gi].power_higher_dropped;
    for (size_t k = 0; k < pw.size(); ++k) {
        if (static_cast<int>(k) > kcap) {
            if (!pw[k].is_zero())
                s.higher_dropped = true;
            continue;
        }
        s.comp[k] = pw[k];
    }
    return s;
}

Series series_for_monomial(const CompiledAlgebra& A, const OperationTable& T,
                           const Monomial& m, int kcap)
{
    Series acc = series_one(A, kcap);
    for (size_t gi = 0; gi < m.exps.size(); ++gi) {
        if (!m.exps[gi])
            continue;
        Series g = series_for_gen(A, T, static_cast<int>(gi), kcap);
        for (int e = 0; e < m.exps[gi]; ++e)
            acc = series_mul(A, acc, g, kcap);
    }
    return acc;
}

/* odd-derivation extension of a per-generator table row */
OpResult derive(const CompiledAlgebra& A, const std::vector<Element>& row,
                const std::vector<bool>& row_overflow, const Element& a)
{
    const alg::Presentation& P = A.pres();
    const FpCtx f = A.field();
    OpResult out;
    for (const auto& [m, c] : a.terms) {
        int prefix_deg = 0;
        for (size_t i = 0; i < P.gens.size(); ++i) {
            uint16_t e = m.exps[i];
            if (!e) {
                continue;
            }
            uint16_t coef = f.reduce_int(e);
            if (coef != 0 && !row[i].is_zero()) {
                Monomial ma = Monomial::one(P.gens.size());
                Monomial mb = Monomial::one(P.gens.size());
                for (size_t j = 0; j < P.gens.size(); ++j) {
                    if (j < i)
                        ma.exps[j] = m.exps[j];
                    else if (j == i)
                        ma.exps[j] = static_cast<uint16_t>(e - 1);
                    else
                        mb.exps[j] = m.exps[j];
                }
                uint16_t sign = (prefix_deg % 2) ? f.neg(1) : 1;
                bool of = false;
                Element t = A.reduce(alg::el_mono(ma), of);
                t = A.mul(t, row[i], &of);
                t = A.mul(t, alg::el_mono(mb), &of);
                if (of)
                    out.overflow = true;
                out.value = alg::el_add(out.value, alg::el_scale(t, f.mul(f.mul(c, coef), sign), f), f);
            }
            if (coef != 0 && row_overflow[i])
                out.overflow = true;
            prefix_deg += int(e) * P.gens[i].degree;
        }
    }
    return out;
}

std::vector<Element> table_row(const OperationTable& T, int n)
{
    std::vector<Element> row;
    row.reserve(T.gen.size());
    for (const auto& g : T.gen)
        row.push_back(g.q[n]);
    return row;
}

std::vector<bool> table_row_overflow(const OperationTable& T, int n)
{
    std::vector<bool> row;
    row.reserve(T.gen.size());
    for (const auto& g : T.gen)
        row.push_back(g.q_overflow[n]);
    return row;
}

/* split into homogeneous parts, degree -> element */
std::map<int, Element> by_degree(const alg::Presentation& P, const Element& a)
{
    std::map<int, Element> parts;
    for (const auto& [m, c] : a.terms)
        parts[P.mono_degree(m)].terms.emplace(m, c);
    return parts;
}

} // namespace

OperationTable OperationTable::build(const CompiledAlgebra& A,
                                     const std::vector<Element>& beta,
                                     const std::vector<bool>& beta_overflow,
                                     const std::vector<Element>& ptotal,
                                     const std::vector<bool>& ptotal_overflow, int nmax)
{
    const alg::Presentation& P = A.pres();
    const int p = P.prime;
    if (beta.size() != P.gens.size() || ptotal.size() != P.gens.size())
        throw OpsError("operation table needs one beta/ptotal entry per generator");
    OperationTable T;
    T.nmax = nmax;
    T.gen.resize(P.gens.size());
    for (size_t i = 0; i < P.gens.size(); ++i) {
        GenOps& G = T.gen[i];
        G.beta = beta[i];
        G.beta_overflow = beta_overflow[i];
        G.power_higher_dropped = ptotal_overflow[i];
        const int dg = P.gens[i].degree;
        /* split the total power by component degree dg + 2k(p-1) */
        for (const auto& [m, c] : ptotal[i].terms) {
            int d = P.mono_degree(m);
            int num = d - dg;
            int den = 2 * (p - 1);
            if (num < 0 || num % den != 0)
                throw OpsError("ptotal(" + P.gens[i].name +
                               "): term of degree " + std::to_string(d) +
                               " is not at a reduced-power degree");
            int k = num / den;
            if (static_cast<int>(G.power.size()) <= k)
                G.power.resize(k + 1);
            alg::el_add_term(G.power[k], m, c, A.field());
        }
        if (G.power.empty())
            G.power.resize(1);
    }
    /* derive the Milnor primitives by the commutator recursion */
    for (size_t i = 0; i < P.gens.size(); ++i) {
        T.gen[i].q.assign(nmax + 1, {});
        T.gen[i].q_overflow.assign(nmax + 1, false);
        T.gen[i].q[0] = T.gen[i].beta;
        T.gen[i].q_overflow[0] = T.gen[i].beta_overflow;
    }
    for (int n = 1; n <= nmax; ++n) {
        const int pk = ipow(p, n - 1);
        for (size_t i = 0; i < P.gens.size(); ++i) {
            Monomial mg = Monomial::one(P.gens.size());
            mg.exps[i] = 1;
            bool of = false;
            Element gen_el = A.reduce(alg::el_mono(mg), of);
            OpResult qn_prev = apply_q(A, T, n - 1, gen_el);
            OpResult t1 = apply_power(A, T, pk, qn_prev.value);
            OpResult pg = apply_power(A, T, pk, gen_el);
            OpResult t2 = apply_q(A, T, n - 1, pg.value);
            T.gen[i].q[n] = alg::el_sub(t1.value, t2.value, A.field());
            T.gen[i].q_overflow[n] =
                of || qn_prev.overflow || t1.overflow || pg.overflow || t2.overflow;
        }
    }
    return T;
}

std::vector<std::string> OperationTable::validate(const CompiledAlgebra& A) const
{
    const alg::Presentation& P = A.pres();
    const int p = P.prime;
    std::vector<std::string> problems;
    auto complain = [&](const std::string& s) { problems.push_back(s); };

    for (size_t i = 0; i < P.gens.size(); ++i) {
        const auto& G = gen[i];
        const auto& g = P.gens[i];
        Monomial mg = Monomial::one(P.gens.size());
        mg.exps[i] = 1;
        bool of = false;
        Element gen_el = A.reduce(alg::el_mono(mg), of);

        /* P^0 = identity on generators */
        if (G.power.empty() || !(G.power[0] == gen_el))
            complain(g.name + ": P^0 component must equal the generator");

        /* unstability */
        for (size_t k = 1; k < G.power.size(); ++k) {
            if (G.power[k].is_zero())
                continue;
            int twok = 2 * static_cast<int>(k);
            if (twok > g.degree)
                complain(g.name + ": P^" + std::to_string(k) +
                         " is nonzero above the unstable range");
            if (twok == g.degree) {
                bool of2 = false;
                Element gp = gen_el;
                for (int t = 1; t < p; ++t)
                    gp = A.mul(gp, gen_el, &of2);
                if (!of2 && !(G.power[k] == gp))
                    complain(g.name + ": top reduced power must be the p-th power");
            }
        }
        if (p == 2 && g.degree % 2 == 1) {
            /* odd top square rides on beta: beta(Sq^{deg-1} g) = g^2 */
            int k = (g.degree - 1) / 2;
            if (k < static_cast<int>(G.power.size())) {
                OpResult b = apply_beta(A, *this, G.power[k]);
                bool of2 = false;
                Element g2 = A.mul(gen_el, gen_el, &of2);
                if (!b.overflow && !of2 && !(b.value == g2))
                    complain(g.name + ": beta of the top even square must be the square");
            }
        }

        /* beta degree and beta^2 = 0 */
        if (!G.beta.is_zero()) {
            auto bd = alg::el_degree(P, G.beta);
            if (!bd || *bd != g.degree + 1)
                complain(g.name + ": beta image must be homogeneous of degree deg+1");
        }
        if (!G.beta_overflow) {
            OpResult b2 = apply_beta(A, *this, G.beta);
            if (!b2.overflow && !b2.value.is_zero())
                complain(g.name + ": beta^2 != 0");
        }

        /* Q_n image degrees */
        for (int n = 0; n <= nmax; ++n) {
            if (G.q_overflow[n] || G.q[n].is_zero())
                continue;
            auto qd = alg::el_degree(P, G.q[n]);
            if (!qd || *qd != g.degree + q_shift(p, n))
                complain(g.name + ": Q_" + std::to_string(n) + " image has wrong degree");
        }
    }
    return problems;
}

OpResult apply_beta(const CompiledAlgebra& A, const OperationTable& T, const Element& a)
{
    return apply_q(A, T, 0, a);
}

OpResult apply_q(const CompiledAlgebra& A, const OperationTable& T, int n, const Element& a)
{
    if (n < 0 || n > T.nmax)
        throw OpsError("apply_q: n exceeds nmax = " + std::to_string(T.nmax));
    return derive(A, table_row(T, n), table_row_overflow(T, n), a);
}

OpResult apply_power(const CompiledAlgebra& A, const OperationTable& T, int k, const Element& a)
{
    if (k < 0)
        throw OpsError("apply_power: negative k");
    if (a.is_zero())
        return {};
    const alg::Presentation& P = A.pres();
    const int p = P.prime;
    const FpCtx f = A.field();
    OpResult out;
    for (const auto& [d, part] : by_degree(P, a)) {
        if (2 * k > d)
            continue; /* unstable vanishing */
        int kcap = (A.truncation() - d) / (2 * (p - 1));
        if (k > kcap) {
            out.overflow = true;
            continue;
        }
        for (const auto& [m, c] : part.terms) {
            Series s = series_for_monomial(A, T, m, kcap);
            out.value = alg::el_add(out.value, alg::el_scale(s.comp[k], c, f), f);
        }
    }
    return out;
}

OpResult q_via_commutator(const CompiledAlgebra& A, const OperationTable& T, int n,
                          const Element& a)
{
    if (n < 0 || n > T.nmax)
        throw OpsError("q_via_commutator: n exceeds nmax");
    if (n == 0) {
        /* base case: the Bockstein row only */
        std::vector<Element> row;
        std::vector<bool> rowof;
        for (const auto& g : T.gen) {
            row.push_back(g.beta);
            rowof.push_back(g.beta_overflow);
        }
        return derive(A, row, rowof, a);
    }
    const int pk = [&] {
        int r = 1;
        for (int i = 0; i < n - 1; ++i)
            r *= A.prime();
        return r;
    }();
    OpResult prev = q_via_commutator(A, T, n - 1, a);
    OpResult t1 = apply_power(A, T, pk, prev.value);
    OpResult pa = apply_power(A, T, pk, a);
    OpResult t2 = q_via_commutator(A, T, n - 1, pa.value);
    OpResult out;
    out.value = alg::el_sub(t1.value, t2.value, A.field());
    out.overflow = prev.overflow || t1.overflow || pa.overflow || t2.overflow;
    return out;
}

} // namespace qn::ops
