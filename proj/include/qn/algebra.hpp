#pragma once

#include "qn/fpmatrix.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qn::alg {

struct CompileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class GenKind { Poly, Ext };

struct Generator {
    std::string name;
    int degree = 0;
    GenKind kind = GenKind::Poly;
    int weight = 0; /* motivic weight, <= degree */
    bool chow = false;
    bool integral = false;
};

/*
 * Canonical monomial: one exponent per generator, declaration order.
 * Exterior factors are implicitly sorted by declaration order; the Koszul
 * sign of a product is the parity of the merge inversions.
 */
struct Monomial {
    std::vector<uint16_t> exps;

    static Monomial one(size_t ngens) { return Monomial{std::vector<uint16_t>(ngens, 0)}; }
    bool is_one() const
    {
        for (auto e : exps)
            if (e)
                return false;
        return true;
    }
    bool operator==(const Monomial&) const = default;
};

/* Total order on monomials: larger exponent vectors (lex) come first. */
struct MonoBefore {
    bool operator()(const Monomial& a, const Monomial& b) const { return a.exps > b.exps; }
};

struct Element {
    std::map<Monomial, uint16_t, MonoBefore> terms; /* zero coefficients absent */

    bool is_zero() const { return terms.empty(); }
    bool operator==(const Element&) const = default;
};

struct Presentation {
    int prime = 2;
    int truncation = 0;
    std::vector<Generator> gens;
    std::vector<Element> relations;

    FpCtx field() const { return FpCtx(prime); }
    int gen_index(std::string_view name) const;
    int mono_degree(const Monomial& m) const;
    int mono_weight(const Monomial& m) const;
    int mono_slack(const Monomial& m) const { return mono_degree(m) - mono_weight(m); }
    /* parity of the topological degree (for Koszul signs) */
    bool gen_odd(int i) const { return gens[i].degree % 2 != 0; }
};

/* ---- element arithmetic (free, no reduction) ---- */

Element el_mono(const Monomial& m, uint16_t c = 1);
void el_add_term(Element& a, const Monomial& m, uint16_t c, FpCtx f);
Element el_add(const Element& a, const Element& b, FpCtx f);
Element el_sub(const Element& a, const Element& b, FpCtx f);
Element el_scale(const Element& a, uint16_t c, FpCtx f);
Element el_neg(const Element& a, FpCtx f);

/* all-terms degree; nullopt if inhomogeneous; zero element reports any */
std::optional<int> el_degree(const Presentation& P, const Element& a);

/*
 * Free product of canonical monomials with Koszul sign. Returns false when
 * the product vanishes (repeated exterior factor at odd p); sign is +1 or
 * p-1 as an F_p scalar.
 */
bool mono_mul(const Presentation& P, const Monomial& a, const Monomial& b, Monomial& out,
              uint16_t& sign);

/* Free product of elements (no relation reduction, no truncation). */
Element el_mul_free(const Presentation& P, const Element& a, const Element& b);

/* All free monomials of the given degree, canonical order. */
std::vector<Monomial> enumerate_monomials(const Presentation& P, int degree);

/*
 * Degree-truncated quotient by the relation ideal, compiled degree by
 * degree: basis = echelon complement of span{relation * monomial}, with a
 * reduction map on raw monomials.
 */
class CompiledAlgebra {
public:
    static CompiledAlgebra compile(Presentation pres);

    const Presentation& pres() const { return pres_; }
    int prime() const { return pres_.prime; }
    int truncation() const { return pres_.truncation; }
    FpCtx field() const { return pres_.field(); }

    int dim(int d) const;
    const std::vector<Monomial>& basis(int d) const;
    Element basis_element(int d, int i) const;

    /* raw monomial -> reduced element; overflow set when degree > N */
    Element reduce_mono(const Monomial& m, bool& overflow) const;
    Element reduce(const Element& raw, bool& overflow) const;

    Element mul(const Element& a, const Element& b, bool* overflow = nullptr) const;
    Element mul_mono(const Element& a, const Monomial& m, bool* overflow = nullptr) const;

    /* coordinates w.r.t. basis(d); element must be reduced and homogeneous */
    FpVec coords(int d, const Element& a) const;
    Element from_coords(int d, const FpVec& v) const;

    /* canonical basis (rref rows) of the degree-d slice of the ideal (gens) */
    FpMatrix ideal_slice(const std::vector<Element>& gens, int d) const;

    /* dimensions as a vector for d = 0..N */
    std::vector<int> dimension_vector() const;

private:
    struct DegreeData {
        std::vector<Monomial> free_monos;
        std::map<Monomial, int, MonoBefore> index;
        std::vector<int> basis_cols;           /* non-pivot columns, ascending */
        std::vector<Monomial> basis_monos;     /* free_monos[basis_cols[i]] */
        std::vector<int> col_to_basis;         /* -1 for pivot columns */
        std::map<int, FpVec> pivot_expansion;  /* pivot column -> basis coords */
    };
    Presentation pres_;
    std::vector<DegreeData> degs_;
};

} // namespace qn::alg
