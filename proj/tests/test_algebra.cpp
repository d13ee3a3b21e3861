#include "doctest.h"

#include "qn/algebra.hpp"
#include "qn/expr.hpp"

#include <algorithm>
#include <random>

using namespace qn;
using namespace qn::alg;

namespace {

Presentation zp_rank(int p, int n, int N)
{
    Presentation P;
    P.prime = p;
    P.truncation = N;
    for (int i = 1; i <= n; ++i)
        P.gens.push_back({"y" + std::to_string(i), 2, GenKind::Poly, 1, true, true});
    for (int i = 1; i <= n; ++i) {
        if (p == 2)
            P.gens.push_back({"x" + std::to_string(i), 1, GenKind::Poly, 1, false, false});
        else
            P.gens.push_back({"x" + std::to_string(i), 1, GenKind::Ext, 1, false, false});
    }
    if (p == 2)
        for (int i = 1; i <= n; ++i)
            P.relations.push_back(expr::parse_element(
                P, "x" + std::to_string(i) + "^2 + y" + std::to_string(i)));
    return P;
}

Presentation q8_pres(int N)
{
    Presentation P;
    P.prime = 2;
    P.truncation = N;
    P.gens.push_back({"x1", 1, GenKind::Poly, 1, false, false});
    P.gens.push_back({"x2", 1, GenKind::Poly, 1, false, false});
    P.gens.push_back({"y1", 2, GenKind::Poly, 1, true, true});
    P.gens.push_back({"y2", 2, GenKind::Poly, 1, true, true});
    P.gens.push_back({"c2", 4, GenKind::Poly, 2, true, true});
    for (const char* r : {"x1^2 + y1", "x2^2 + y2", "x1*x2 + y1 + y2", "x1*y2 + x2*y1"})
        P.relations.push_back(expr::parse_element(P, r));
    return P;
}

/* independent count of monomials of the given degree by exponent loops */
int count_monos_zp3_deg(int d)
{
    /* Z/3[y1,y2,y3] (x) Lambda(x1,x2,x3): 2a + b = d with b <= 3 square-free x's */
    int count = 0;
    for (int b = 0; b <= 3; ++b) {
        if ((d - b) % 2 != 0 || d - b < 0)
            continue;
        int a = (d - b) / 2;
        int ycount = (a + 2) * (a + 1) / 2; /* monomials of degree a in 3 variables */
        int xcount = b == 0 ? 1 : (b == 1 ? 3 : (b == 2 ? 3 : 1));
        count += ycount * xcount;
    }
    return count;
}

} // namespace

TEST_CASE("Z/3[y] (x) Lambda(x): one basis element per degree")
{
    Presentation P = zp_rank(3, 1, 6);
    auto A = CompiledAlgebra::compile(P);
    CHECK(A.dimension_vector() == std::vector<int>{1, 1, 1, 1, 1, 1, 1});
}

TEST_CASE("free (Z/3)^3 dimensions match the enumeration oracle")
{
    auto A = CompiledAlgebra::compile(zp_rank(3, 3, 12));
    CHECK(A.dim(4) == 15);
    CHECK(count_monos_zp3_deg(4) == 15);
    for (int d = 0; d <= 12; ++d)
        CHECK(A.dim(d) == count_monos_zp3_deg(d));
}

TEST_CASE("Q_8 presentation compiles to the module form of its cohomology")
{
    auto A = CompiledAlgebra::compile(q8_pres(10));
    /* Z/2{1,x1,y1,x2,y2,w} (x) Z/2[c2] */
    CHECK(A.dimension_vector() == std::vector<int>{1, 2, 2, 1, 1, 2, 2, 1, 1, 2, 2});
    REQUIRE(A.dim(3) == 1);
    bool of = false;
    Element w = A.basis_element(3, 0);
    Element y1x2 = A.reduce(expr::parse_element(A.pres(), "y1*x2"), of);
    Element y2x1 = A.reduce(expr::parse_element(A.pres(), "y2*x1"), of);
    CHECK(!of);
    CHECK(y1x2 == w);
    CHECK(y2x1 == w);
    CHECK(!w.is_zero());
    /* x1^3 dies */
    Element x1cubed = A.reduce(expr::parse_element(A.pres(), "x1^3"), of);
    CHECK(x1cubed.is_zero());
}

TEST_CASE("Q_8 products: x1*x2 = y1 + y2")
{
    auto A = CompiledAlgebra::compile(q8_pres(10));
    bool of = false;
    Element x1 = A.reduce(expr::parse_element(A.pres(), "x1"), of);
    Element x2 = A.reduce(expr::parse_element(A.pres(), "x2"), of);
    Element prod = A.mul(x1, x2);
    Element y1y2 = A.reduce(expr::parse_element(A.pres(), "y1 + y2"), of);
    CHECK(prod == y1y2);
}

TEST_CASE("Koszul signs: x1*x2 = -x2*x1, x1*x1 = 0 at p = 3")
{
    Presentation P = zp_rank(3, 2, 8);
    auto A = CompiledAlgebra::compile(P);
    bool of = false;
    Element x1 = A.reduce(expr::parse_element(P, "x1"), of);
    Element x2 = A.reduce(expr::parse_element(P, "x2"), of);
    Element ab = A.mul(x1, x2);
    Element ba = A.mul(x2, x1);
    CHECK(ab == el_neg(ba, A.field()));
    CHECK(A.mul(x1, x1).is_zero());
    /* parser applies factors in written order */
    CHECK(expr::parse_element(P, "x2*x1") ==
          el_neg(expr::parse_element(P, "x1*x2"), A.field()));
}

TEST_CASE("graded commutativity on random homogeneous pairs")
{
    auto A = CompiledAlgebra::compile(zp_rank(3, 3, 10));
    const FpCtx f = A.field();
    std::mt19937 rng(7);
    int done = 0;
    while (done < 200) {
        int da = 1 + int(rng() % 5), db = 1 + int(rng() % 5);
        if (da + db > 10 || A.dim(da) == 0 || A.dim(db) == 0)
            continue;
        Element a = A.basis_element(da, int(rng() % A.dim(da)));
        Element b = A.basis_element(db, int(rng() % A.dim(db)));
        Element ab = A.mul(a, b);
        Element ba = A.mul(b, a);
        Element expect = (da % 2 && db % 2) ? el_neg(ba, f) : ba;
        CHECK(ab == expect);
        ++done;
    }
}

TEST_CASE("associativity on basis monomials of a relation-bearing algebra")
{
    auto A = CompiledAlgebra::compile(q8_pres(8));
    for (int da = 1; da <= 3; ++da)
        for (int db = 1; db <= 3; ++db)
            for (int dc = 1; dc <= 3; ++dc) {
                if (da + db + dc > 8)
                    continue;
                for (int i = 0; i < A.dim(da); ++i)
                    for (int j = 0; j < A.dim(db); ++j)
                        for (int k = 0; k < A.dim(dc); ++k) {
                            Element a = A.basis_element(da, i);
                            Element b = A.basis_element(db, j);
                            Element c = A.basis_element(dc, k);
                            CHECK(A.mul(A.mul(a, b), c) == A.mul(a, A.mul(b, c)));
                        }
            }
}

TEST_CASE("compile dimensions are invariant under generator/relation permutation")
{
    auto A = CompiledAlgebra::compile(q8_pres(10));
    Presentation P2;
    P2.prime = 2;
    P2.truncation = 10;
    P2.gens.push_back({"c2", 4, GenKind::Poly, 2, true, true});
    P2.gens.push_back({"y2", 2, GenKind::Poly, 1, true, true});
    P2.gens.push_back({"x1", 1, GenKind::Poly, 1, false, false});
    P2.gens.push_back({"y1", 2, GenKind::Poly, 1, true, true});
    P2.gens.push_back({"x2", 1, GenKind::Poly, 1, false, false});
    for (const char* r : {"x1*y2 + x2*y1", "x1*x2 + y1 + y2", "x2^2 + y2", "x1^2 + y1"})
        P2.relations.push_back(expr::parse_element(P2, r));
    auto B = CompiledAlgebra::compile(P2);
    CHECK(A.dimension_vector() == B.dimension_vector());
}

TEST_CASE("ideal slices")
{
    auto A = CompiledAlgebra::compile(zp_rank(3, 3, 10));
    const Presentation& P = A.pres();
    std::vector<Element> ys = {expr::parse_element(P, "y1"), expr::parse_element(P, "y2"),
                               expr::parse_element(P, "y3")};
    FpMatrix s3 = A.ideal_slice(ys, 3);
    CHECK(s3.rows() == 9); /* all y_i x_j */
    bool of = false;
    Element y1x2x3 = A.reduce(expr::parse_element(P, "y1*x2*x3"), of);
    CHECK(!in_span(s3, A.coords(3, A.reduce(expr::parse_element(P, "x1*x2*x3"), of))));
    CHECK(in_span(A.ideal_slice(ys, 4), A.coords(4, y1x2x3)));

    CHECK(A.ideal_slice({}, 3).rows() == 0);

    auto Q8 = CompiledAlgebra::compile(q8_pres(10));
    Element c2 = expr::parse_element(Q8.pres(), "c2");
    FpMatrix s4 = Q8.ideal_slice({c2}, 4);
    REQUIRE(s4.rows() == 1);
    CHECK(s4.row_vec(0) == Q8.coords(4, Q8.reduce(c2, of)));
}

TEST_CASE("compile rejects bad presentations")
{
    Presentation P = zp_rank(3, 1, 6);
    P.relations.push_back(expr::parse_element(P, "y1 + x1")); /* inhomogeneous */
    CHECK_THROWS_AS(CompiledAlgebra::compile(P), CompileError);

    Presentation P2 = zp_rank(3, 1, 6);
    P2.relations.push_back(expr::parse_element(P2, "y1^4")); /* degree 8 > N = 6 */
    CHECK_THROWS_AS(CompiledAlgebra::compile(P2), CompileError);

    Presentation P3 = zp_rank(3, 1, 6);
    P3.gens[0].kind = GenKind::Ext; /* even exterior at odd p */
    CHECK_THROWS_AS(CompiledAlgebra::compile(P3), CompileError);
}

TEST_CASE("truncation overflow is flagged, not fatal")
{
    auto A = CompiledAlgebra::compile(zp_rank(3, 1, 4));
    bool of = false;
    Element y2 = A.reduce(expr::parse_element(A.pres(), "y1^2"), of);
    CHECK(!of);
    Element prod = A.mul(y2, y2, &of); /* degree 8 > 4 */
    CHECK(of);
    CHECK(prod.is_zero());
}

TEST_CASE("expression round-trip on catalog-style elements")
{
    auto A = CompiledAlgebra::compile(zp_rank(3, 3, 10));
    const Presentation& P = A.pres();
    const char* alpha = "y1*x2*x3 - y2*x1*x3 + y3*x1*x2";
    Element e = expr::parse_element(P, alpha);
    CHECK(expr::print_element(P, e) == alpha);
    CHECK(expr::parse_element(P, expr::print_element(P, e)) == e);
    CHECK(expr::print_element(P, Element{}) == "0");
    CHECK(expr::parse_element(P, "0").is_zero());
    Element c = expr::parse_element(P, "2*y1^2 + 1");
    CHECK(expr::print_element(P, c) == "-y1^2 + 1");
    CHECK(expr::parse_element(P, expr::print_element(P, c)) == c);
}
