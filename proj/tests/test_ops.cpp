#include "doctest.h"

#include "qn/expr.hpp"
#include "qn/ops.hpp"

#include <random>

using namespace qn;
using namespace qn::alg;
using namespace qn::ops;

namespace {

struct Entry {
    CompiledAlgebra A;
    OperationTable T;
};

Entry make_zp(int p, int n, int N, int nmax = 2)
{
    Presentation P;
    P.prime = p;
    P.truncation = N;
    for (int i = 1; i <= n; ++i)
        P.gens.push_back({"y" + std::to_string(i), 2, GenKind::Poly, 1, true, true});
    for (int i = 1; i <= n; ++i)
        P.gens.push_back({"x" + std::to_string(i), 1,
                          p == 2 ? GenKind::Poly : GenKind::Ext, 1, false, false});
    if (p == 2)
        for (int i = 1; i <= n; ++i)
            P.relations.push_back(expr::parse_element(
                P, "x" + std::to_string(i) + "^2 + y" + std::to_string(i)));
    auto A = CompiledAlgebra::compile(P);
    std::vector<Element> beta, ptotal;
    std::vector<bool> bof, pof;
    for (int i = 0; i < 2 * n; ++i) {
        bool of = false;
        const auto& g = A.pres().gens[i];
        if (g.name[0] == 'y') {
            beta.push_back({});
            Element pt = A.reduce(
                expr::parse_element(A.pres(), g.name + " + " + g.name + "^" + std::to_string(p)),
                of);
            ptotal.push_back(pt);
        } else {
            beta.push_back(A.reduce(expr::parse_element(A.pres(), "y" + g.name.substr(1)), of));
            ptotal.push_back(A.reduce(expr::parse_element(A.pres(), g.name), of));
        }
        bof.push_back(false);
        pof.push_back(of);
    }
    OperationTable T = OperationTable::build(A, beta, bof, ptotal, pof, nmax);
    return {std::move(A), std::move(T)};
}

Entry make_so3(int N = 12)
{
    Presentation P;
    P.prime = 2;
    P.truncation = N;
    P.gens.push_back({"w2", 2, GenKind::Poly, 2, false, false});
    P.gens.push_back({"w3", 3, GenKind::Poly, 3, false, false});
    auto A = CompiledAlgebra::compile(P);
    bool of = false;
    std::vector<Element> beta = {A.reduce(expr::parse_element(P, "w3"), of), {}};
    std::vector<Element> ptotal = {A.reduce(expr::parse_element(P, "w2 + w2^2"), of),
                                   A.reduce(expr::parse_element(P, "w3 + w2*w3"), of)};
    OperationTable T = OperationTable::build(A, beta, {false, false}, ptotal, {false, false}, 2);
    return {std::move(A), std::move(T)};
}

Entry make_g2(int N = 16)
{
    Presentation P;
    P.prime = 2;
    P.truncation = N;
    P.gens.push_back({"w4", 4, GenKind::Poly, 3, false, true});
    P.gens.push_back({"w6", 6, GenKind::Poly, 4, false, false});
    P.gens.push_back({"w7", 7, GenKind::Poly, 4, false, false});
    auto A = CompiledAlgebra::compile(P);
    bool of = false;
    std::vector<Element> beta = {{}, A.reduce(expr::parse_element(P, "w7"), of), {}};
    std::vector<Element> ptotal = {
        A.reduce(expr::parse_element(P, "w4 + w6 + w4^2"), of),
        A.reduce(expr::parse_element(P, "w6 + w4*w6 + w6^2"), of),
        A.reduce(expr::parse_element(P, "w7 + w4*w7 + w6*w7"), of)};
    OperationTable T =
        OperationTable::build(A, beta, {false, false, false}, ptotal, {false, false, false}, 2);
    return {std::move(A), std::move(T)};
}

Element parse_in(const Entry& e, const char* s)
{
    bool of = false;
    return e.A.reduce(expr::parse_element(e.A.pres(), s), of);
}

} // namespace

TEST_CASE("the operation tables validate cleanly")
{
    for (auto* e : {new Entry(make_zp(3, 3, 12)), new Entry(make_zp(2, 2, 10)),
                    new Entry(make_so3()), new Entry(make_g2())}) {
        auto problems = e->T.validate(e->A);
        for (const auto& s : problems)
            FAIL_CHECK(s);
        CHECK(problems.empty());
        delete e;
    }
}

TEST_CASE("Bockstein on generators, unit and the triple product")
{
    Entry e = make_zp(3, 3, 12);
    CHECK(apply_beta(e.A, e.T, parse_in(e, "x1")).value == parse_in(e, "y1"));
    CHECK(apply_beta(e.A, e.T, parse_in(e, "1")).value.is_zero());
    Element alpha = apply_beta(e.A, e.T, parse_in(e, "x1*x2*x3")).value;
    CHECK(alpha == parse_in(e, "y1*x2*x3 - y2*x1*x3 + y3*x1*x2"));
    CHECK(expr::print_element(e.A.pres(), alpha) == "y1*x2*x3 - y2*x1*x3 + y3*x1*x2");
}

TEST_CASE("reduced powers: P^1(y) = y^p, P^k kills degree-1 exterior classes")
{
    Entry e = make_zp(3, 1, 12);
    CHECK(apply_power(e.A, e.T, 1, parse_in(e, "y1")).value == parse_in(e, "y1^3"));
    for (int k = 1; k <= 3; ++k) {
        auto r = apply_power(e.A, e.T, k, parse_in(e, "x1"));
        CHECK(r.value.is_zero());
        CHECK(!r.overflow);
    }
}

TEST_CASE("P^1(w4) = w6 in the G_2 ring")
{
    Entry e = make_g2();
    CHECK(apply_power(e.A, e.T, 1, parse_in(e, "w4")).value == parse_in(e, "w6"));
}

TEST_CASE("Q_1 of the Bockstein triple class is the displayed 6-term element")
{
    Entry e = make_zp(3, 3, 12);
    Element alpha = parse_in(e, "y1*x2*x3 - y2*x1*x3 + y3*x1*x2");
    Element q1 = apply_q(e.A, e.T, 1, alpha).value;
    Element expect = parse_in(
        e, "y1*y2^3*x3 - y1*y3^3*x2 - y2*y1^3*x3 + y2*y3^3*x1 + y3*y1^3*x2 - y3*y2^3*x1");
    CHECK(q1 == expect);
    CHECK(!q1.is_zero());
}

TEST_CASE("Q_1(w3) = w3^2 in the SO_3 ring; Q_1(w2) = w2*w3")
{
    Entry e = make_so3();
    CHECK(apply_q(e.A, e.T, 1, parse_in(e, "w3")).value == parse_in(e, "w3^2"));
    CHECK(apply_q(e.A, e.T, 1, parse_in(e, "w2")).value == parse_in(e, "w2*w3"));
    /* Q_0 Q_1 (w2) = c3 */
    Element q1w2 = apply_q(e.A, e.T, 1, parse_in(e, "w2")).value;
    CHECK(apply_beta(e.A, e.T, q1w2).value == parse_in(e, "w3^2"));
}

TEST_CASE("commutator oracle examples")
{
    Entry e = make_zp(3, 1, 12);
    CHECK(q_via_commutator(e.A, e.T, 1, parse_in(e, "x1")).value == parse_in(e, "y1^3"));
    CHECK(q_via_commutator(e.A, e.T, 0, parse_in(e, "x1*y1")).value ==
          apply_beta(e.A, e.T, parse_in(e, "x1*y1")).value);

    Entry g = make_g2();
    auto r = q_via_commutator(g.A, g.T, 2, parse_in(g, "w7"));
    CHECK(!r.overflow);
    CHECK(r.value == parse_in(g, "w7^2"));
    CHECK(apply_q(g.A, g.T, 2, parse_in(g, "w7")).value == parse_in(g, "w7^2"));
    /* Q_1(w4) = w7 */
    CHECK(apply_q(g.A, g.T, 1, parse_in(g, "w4")).value == parse_in(g, "w7"));
}

TEST_CASE("Q_n(1) = 0 and Q_n degree shifts")
{
    Entry e = make_zp(3, 2, 12);
    for (int n = 0; n <= 2; ++n)
        CHECK(apply_q(e.A, e.T, n, parse_in(e, "1")).value.is_zero());
    CHECK(q_shift(3, 0) == 1);
    CHECK(q_shift(3, 1) == 5);
    CHECK(q_shift(2, 2) == 7);
}

TEST_CASE("operation laws on full catalog-style bases")
{
    for (Entry e : {make_zp(3, 2, 12), make_zp(2, 2, 12), make_so3(), make_g2()}) {
        const int p = e.A.prime();
        const int N = e.A.truncation();
        const FpCtx f = e.A.field();
        /* Q_n^2 = 0 and anticommutation, wherever degrees fit */
        for (int n = 0; n <= 2; ++n) {
            int q = q_shift(p, n);
            for (int d = 0; d + 2 * q <= N; ++d)
                for (int i = 0; i < e.A.dim(d); ++i) {
                    auto once = apply_q(e.A, e.T, n, e.A.basis_element(d, i));
                    auto twice = apply_q(e.A, e.T, n, once.value);
                    if (!once.overflow && !twice.overflow)
                        CHECK(twice.value.is_zero());
                }
        }
        for (int m = 0; m <= 2; ++m)
            for (int n = m + 1; n <= 2; ++n) {
                int q = q_shift(p, m) + q_shift(p, n);
                for (int d = 0; d + q <= N; ++d)
                    for (int i = 0; i < e.A.dim(d); ++i) {
                        Element a = e.A.basis_element(d, i);
                        auto mn = apply_q(e.A, e.T, m, apply_q(e.A, e.T, n, a).value);
                        auto nm = apply_q(e.A, e.T, n, apply_q(e.A, e.T, m, a).value);
                        CHECK(el_add(mn.value, nm.value, f).is_zero());
                    }
            }
        /* table route == commutator route */
        for (int n = 0; n <= 2; ++n) {
            int q = q_shift(p, n);
            for (int d = 0; d + q <= N; ++d)
                for (int i = 0; i < e.A.dim(d); ++i) {
                    Element a = e.A.basis_element(d, i);
                    auto t = apply_q(e.A, e.T, n, a);
                    auto c = q_via_commutator(e.A, e.T, n, a);
                    if (!t.overflow && !c.overflow)
                        CHECK(t.value == c.value);
                }
        }
    }
}

TEST_CASE("derivation law and Cartan formula on random homogeneous pairs")
{
    std::mt19937 rng(99);
    for (Entry e : {make_zp(3, 3, 12), make_zp(2, 3, 12)}) {
        const int p = e.A.prime();
        const FpCtx f = e.A.field();
        int done = 0;
        while (done < 500) {
            int da = 1 + int(rng() % 4), db = 1 + int(rng() % 4);
            int n = int(rng() % 2); /* Q_0, Q_1 */
            if (da + db + q_shift(p, n) > e.A.truncation())
                continue;
            if (e.A.dim(da) == 0 || e.A.dim(db) == 0)
                continue;
            Element a = e.A.basis_element(da, int(rng() % e.A.dim(da)));
            Element b = e.A.basis_element(db, int(rng() % e.A.dim(db)));
            Element ab = e.A.mul(a, b);
            Element lhs = apply_q(e.A, e.T, n, ab).value;
            Element qa_b = e.A.mul(apply_q(e.A, e.T, n, a).value, b);
            Element a_qb = e.A.mul(a, apply_q(e.A, e.T, n, b).value);
            Element rhs = (da % 2) ? el_sub(qa_b, a_qb, f) : el_add(qa_b, a_qb, f);
            CHECK(lhs == rhs);

            /* Cartan for P^1 */
            if (da + db + 2 * (p - 1) <= e.A.truncation()) {
                Element c_lhs = apply_power(e.A, e.T, 1, ab).value;
                Element c_rhs =
                    el_add(e.A.mul(apply_power(e.A, e.T, 1, a).value, b),
                           e.A.mul(a, apply_power(e.A, e.T, 1, b).value), f);
                CHECK(c_lhs == c_rhs);
            }
            ++done;
        }
    }
}

TEST_CASE("operations flag truncation overflow")
{
    Entry e = make_zp(3, 1, 6);
    /* Q_1(x1) = y1^3 has degree 6 (fits); Q_1(y1*x1) lands in degree 9 */
    auto fit = apply_q(e.A, e.T, 1, parse_in(e, "x1"));
    CHECK(!fit.overflow);
    auto burst = apply_q(e.A, e.T, 1, parse_in(e, "y1*x1"));
    CHECK(burst.overflow);
    CHECK(burst.value.is_zero());
    CHECK_THROWS_AS(apply_q(e.A, e.T, 5, parse_in(e, "x1")), OpsError);
}
