#pragma once

#include "qn/algebra.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace qn::expr {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/*
 * Expression grammar (shared by presentation files and the CLI):
 *   expr   := ['-'] term (('+'|'-') term)*
 *   term   := [coeff '*'] factor ('*' factor)* | coeff
 *   factor := name ['^' int]
 * Coefficients are integers reduced mod p. Factors multiply in written
 * order, so Koszul signs of out-of-order exterior factors are honored.
 */
struct RawFactor {
    std::string name;
    int exp = 1;
};
struct RawTerm {
    long long coeff = 1;
    bool negated = false;
    std::vector<RawFactor> factors;
};
struct RawExpr {
    std::vector<RawTerm> terms;
};

RawExpr parse_raw(std::string_view text);

/* Free (unreduced) element; unknown names raise ParseError. */
alg::Element to_element(const alg::Presentation& P, const RawExpr& e);
alg::Element parse_element(const alg::Presentation& P, std::string_view text);

/* Canonical printing; parse(print(x)) == x. */
std::string print_monomial(const alg::Presentation& P, const alg::Monomial& m);
std::string print_element(const alg::Presentation& P, const alg::Element& a);

} // namespace qn::expr
