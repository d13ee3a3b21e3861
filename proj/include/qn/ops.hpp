#pragma once

#include "qn/algebra.hpp"

#include <string>
#include <vector>

namespace qn::ops {

struct OpsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* degree shift of Q_n: 2p^n - 1 */
int q_shift(int p, int n);

struct OpResult {
    alg::Element value;
    bool overflow = false; /* some image term fell above the truncation bound */
};

/*
 * Per-generator actions: Bockstein beta, total reduced power split into
 * P^k components (Sq^{2k} at p = 2; odd squares ride on beta), and the
 * Milnor primitives Q_n derived by the commutator recursion
 * Q_{n+1} = P^{p^n} Q_n - Q_n P^{p^n}.
 */
class OperationTable {
public:
    struct GenOps {
        alg::Element beta;
        bool beta_overflow = false;
        std::vector<alg::Element> power; /* P^k(g), k = 0..cap */
        bool power_higher_dropped = false;
        std::vector<alg::Element> q; /* Q_n(g), n = 0..nmax (derived) */
        std::vector<bool> q_overflow;
    };

    int nmax = 2;
    std::vector<GenOps> gen;

    static OperationTable build(const alg::CompiledAlgebra& A,
                                const std::vector<alg::Element>& beta,
                                const std::vector<bool>& beta_overflow,
                                const std::vector<alg::Element>& ptotal,
                                const std::vector<bool>& ptotal_overflow, int nmax);

    /* unstability, degree and beta^2 checks; returns problems (empty = ok) */
    std::vector<std::string> validate(const alg::CompiledAlgebra& A) const;
};

/* beta extended by the Leibniz rule beta(ab) = beta(a)b + (-1)^|a| a beta(b) */
OpResult apply_beta(const alg::CompiledAlgebra& A, const OperationTable& T,
                    const alg::Element& a);

/* P^k extended by the Cartan formula; exact for all representable components */
OpResult apply_power(const alg::CompiledAlgebra& A, const OperationTable& T, int k,
                     const alg::Element& a);

/* Q_n extended as an odd derivation from the generator table */
OpResult apply_q(const alg::CompiledAlgebra& A, const OperationTable& T, int n,
                 const alg::Element& a);

/* Independent oracle: Q_n by recursion from Q_0 = beta, never reading the
 * derived q rows. */
OpResult q_via_commutator(const alg::CompiledAlgebra& A, const OperationTable& T, int n,
                          const alg::Element& a);

} // namespace qn::ops
