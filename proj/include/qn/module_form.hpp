#pragma once

#include "qn/fpmatrix.hpp"
#include "qn/presentation_io.hpp"

#include <map>
#include <string>
#include <vector>

namespace qn::mod {

struct ModuleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/*
 * Additive model for cohomologies given as direct sums of free modules over
 * polynomial central subrings: each summand is central-gens (x) {basis},
 * with a Q-action table on the basis extended centrally. No global products
 * are defined; the analyzer only needs spans and the Q-action.
 */
struct CentralGen {
    std::string name;
    int degree = 0, weight = 0;
    bool chow = false, integral = false;
};

struct BasisGen {
    std::string name;
    int degree = 0, weight = 0;
    bool chow = false, integral = false, torsion = false;
    int summand = 0;
};

struct ModMono {
    int summand = 0;
    std::vector<uint16_t> cexps; /* exponents of that summand's central gens */
    int basis = 0;               /* global basis index */
    auto operator<=>(const ModMono&) const = default;
};

struct ModElement {
    std::map<ModMono, uint16_t> terms;
    bool is_zero() const { return terms.empty(); }
    bool operator==(const ModElement&) const = default;
};

class CompiledModule {
public:
    static CompiledModule build(const io::ParsedEntry& E);

    int prime() const { return prime_; }
    int truncation() const { return truncation_; }
    int nmax() const { return nmax_; }
    FpCtx field() const { return FpCtx(prime_); }

    int dim(int d) const;
    const std::vector<ModMono>& monos(int d) const;
    int mono_degree(const ModMono& m) const;
    int mono_slack(const ModMono& m) const;

    ModElement parse(const std::string& text) const;
    std::string print(const ModElement& e) const;
    std::string print_coords(int d, const FpVec& v) const;

    FpVec coords(int d, const ModElement& e) const;
    ModElement from_coords(int d, const FpVec& v) const;

    /* Q_n applied coordinatewise; overflow when an image leaves truncation */
    std::pair<FpVec, bool> q_coords(int n, int d, const FpVec& v) const;
    ModElement q_apply(int n, const ModElement& e, bool& overflow) const;

    FpMatrix slack_span(int c, int d) const;
    FpMatrix integral_span(int d) const;
    FpMatrix chow_span(int d, bool integral_mode) const;
    FpMatrix im_q0(int d) const;
    FpMatrix torsion_span(int d) const; /* basis-flag driven */

    /* independent Hilbert count per degree (free-module dimension law) */
    int hilbert(int d) const;

    std::vector<std::string> validate() const;

    const std::vector<BasisGen>& basis_gens() const { return basis_; }
    const std::vector<std::vector<CentralGen>>& centrals() const { return central_; }

private:
    int ops_shift(int n) const;
    static FpVec unit(int i, int n);

    int prime_ = 3, truncation_ = 0, nmax_ = 1;
    std::vector<std::vector<CentralGen>> central_; /* per summand */
    std::vector<BasisGen> basis_;                  /* global list */
    std::vector<std::vector<int>> summand_basis_;  /* summand -> global indices */
    std::vector<std::vector<ModElement>> qtab_;    /* qtab_[n][basis] */
    std::vector<std::vector<ModMono>> by_degree_;
    std::vector<std::map<ModMono, int>> index_;
};

} // namespace qn::mod
