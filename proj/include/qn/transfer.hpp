#pragma once

#include "qn/ops.hpp"

#include <optional>

namespace qn::xfer {

struct TransferError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CheckReport {
    std::string model;
    std::string law;
    int checked = 0;
    int not_checkable = 0;
    bool pass = true;
    std::string failure; /* first counterexample, if any */
};

/*
 * Modeled Gysin map for a closed codimension-1 embedding: the source is the
 * target ring with one extra relation (invisible when its degree exceeds the
 * truncation), r is the quotient map, lift the deterministic echelon section,
 * and transfer(z) = euler * lift(z).
 */
class DivisorModel {
public:
    static DivisorModel build(const alg::CompiledAlgebra& target,
                              const ops::OperationTable& target_table, std::string name,
                              const alg::Element& euler, const alg::Element& kill_free,
                              int nmax);

    const std::string& name() const { return name_; }
    const alg::CompiledAlgebra& source() const { return source_; }
    const ops::OperationTable& source_table() const { return source_table_; }
    const alg::Element& euler() const { return euler_; }

    alg::Element to_source(const alg::Element& a) const; /* r */
    alg::Element lift(const alg::Element& z) const;      /* r(lift(z)) = z */
    ops::OpResult apply(const alg::Element& z) const;    /* euler * lift(z) */

    /* image span {apply(z)} for z running over a span of source classes
       at source degree d; result lives in target degree d + 2 */
    FpMatrix image_span(int source_degree, const FpMatrix& source_span) const;

    CheckReport check_frobenius(int degree_cap) const;
    CheckReport check_qn_commutation(int n) const;
    CheckReport check_grothendieck() const; /* n = 1 */

private:
    std::string name_;
    const alg::CompiledAlgebra* target_ = nullptr;
    const ops::OperationTable* target_table_ = nullptr;
    alg::CompiledAlgebra source_;
    ops::OperationTable source_table_;
    alg::Element euler_;
    std::vector<FpMatrix> restriction_; /* per degree: source coords of target basis */
};

/*
 * Explicit transfer table: images of finitely many source classes, extended
 * linearly over declared central pairs (src generator -> target element).
 * The target may be a quotient of the entry ring (target_kill); images
 * certify entry-level classes only in degrees where that quotient map is an
 * isomorphism (iso_limit, checked by dimension equality).
 */
class TableModel {
public:
    static TableModel build(const alg::CompiledAlgebra& entry,
                            const ops::OperationTable& entry_table, std::string name, int shift,
                            alg::CompiledAlgebra source, ops::OperationTable source_table,
                            const alg::Element& target_kill_free,
                            const std::vector<std::pair<alg::Element, alg::Element>>& maps_src_dst,
                            const std::vector<std::pair<int, alg::Element>>& extends, int nmax);

    const std::string& name() const { return name_; }
    int shift() const { return shift_; }
    const alg::CompiledAlgebra& source() const { return source_; }
    const ops::OperationTable& source_table() const { return source_table_; }
    const alg::CompiledAlgebra& target() const { return target_; }
    int iso_limit() const { return iso_limit_; }

    /* image in the (possibly quotient) target; nullopt when z leaves the
       tabulated span */
    std::optional<ops::OpResult> apply(const alg::Element& z) const;

    /* entry-level certified span at entry degree d (within the iso window) */
    FpMatrix entry_image_span(int source_degree, const FpMatrix& source_span) const;

    CheckReport check_qn_commutation(int n) const;
    CheckReport check_injectivity() const; /* rank check per degree */

private:
    std::string name_;
    int shift_ = 2;
    const alg::CompiledAlgebra* entry_ = nullptr;
    alg::CompiledAlgebra target_;
    ops::OperationTable target_table_;
    alg::CompiledAlgebra source_;
    ops::OperationTable source_table_;
    std::vector<std::pair<alg::Monomial, alg::Element>> maps_;
    std::vector<uint16_t> is_extend_gen_;
    std::vector<alg::Element> extend_vals_;
    int iso_limit_ = -1;
    std::vector<FpMatrix> quotient_; /* per degree: target coords of entry basis */
};

/* rebuild an operation table inside a quotient of the algebra it was built on */
ops::OperationTable retable(const alg::CompiledAlgebra& quotient, const ops::OperationTable& t,
                            int nmax);

} // namespace qn::xfer
