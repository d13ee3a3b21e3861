#include "qn/transfer.hpp"

#include "qn/expr.hpp"

namespace qn::xfer {

using alg::CompiledAlgebra;
using alg::Element;
using alg::Monomial;

ops::OperationTable retable(const CompiledAlgebra& quotient, const ops::OperationTable& t,
                            int nmax)
{
    std::vector<Element> beta, ptotal;
    std::vector<bool> bof, pof;
    const FpCtx f = quotient.field();
    for (const auto& g : t.gen) {
        bool of = false;
        beta.push_back(quotient.reduce(g.beta, of));
        bof.push_back(g.beta_overflow || of);
        Element total;
        bool ofp = false;
        for (const auto& comp : g.power)
            total = alg::el_add(total, quotient.reduce(comp, ofp), f);
        ptotal.push_back(total);
        pof.push_back(g.power_higher_dropped || ofp);
    }
    return ops::OperationTable::build(quotient, beta, bof, ptotal, pof, nmax);
}

/* ------------------------------ DivisorModel ----------------------------- */

DivisorModel DivisorModel::build(const CompiledAlgebra& target,
                                 const ops::OperationTable& target_table, std::string name,
                                 const Element& euler, const Element& kill_free, int nmax)
{
    DivisorModel M;
    M.name_ = std::move(name);
    M.target_ = &target;
    M.target_table_ = &target_table;
    M.euler_ = euler;
    auto ed = alg::el_degree(target.pres(), euler);
    if (euler.is_zero() || !ed || *ed != 2)
        throw TransferError("divisor model " + M.name_ + ": euler class must have degree 2");

    alg::Presentation spres = target.pres();
    if (!kill_free.is_zero()) {
        auto kd = alg::el_degree(spres, kill_free);
        if (!kd)
            throw TransferError("divisor model " + M.name_ + ": kill expression not homogeneous");
        if (*kd <= spres.truncation)
            spres.relations.push_back(kill_free);
        /* a kill above the truncation bound is invisible: source = target */
    }
    M.source_ = CompiledAlgebra::compile(spres);
    M.source_table_ = retable(M.source_, target_table, nmax);

    const int N = target.truncation();
    M.restriction_.reserve(N + 1);
    for (int d = 0; d <= N; ++d) {
        FpMatrix R(M.source_.dim(d), target.dim(d), target.field());
        for (int j = 0; j < target.dim(d); ++j) {
            bool of = false;
            Element img = M.source_.reduce(target.basis_element(d, j), of);
            FpVec col = M.source_.coords(d, img);
            for (int i = 0; i < R.rows(); ++i)
                R.set(i, j, col[i]);
        }
        /* r must be surjective degreewise */
        if (rank(R) != M.source_.dim(d))
            throw TransferError("divisor model " + M.name_ + ": restriction not surjective");
        M.restriction_.push_back(std::move(R));
    }
    return M;
}

Element DivisorModel::to_source(const Element& a) const
{
    bool of = false;
    Element r = source_.reduce(a, of);
    if (of)
        throw TransferError("to_source: unexpected overflow");
    return r;
}

Element DivisorModel::lift(const Element& z) const
{
    if (z.is_zero())
        return {};
    auto zd = alg::el_degree(source_.pres(), z);
    if (!zd)
        throw TransferError("lift: element must be homogeneous");
    auto x = solve(restriction_[*zd], source_.coords(*zd, z));
    if (!x)
        throw TransferError("lift: restriction unexpectedly not surjective");
    return target_->from_coords(*zd, *x);
}

ops::OpResult DivisorModel::apply(const Element& z) const
{
    ops::OpResult out;
    if (z.is_zero())
        return out;
    /* split by degree so inhomogeneous inputs still transfer linearly */
    std::map<int, Element> parts;
    for (const auto& [m, c] : z.terms)
        parts[source_.pres().mono_degree(m)].terms.emplace(m, c);
    for (auto& [d, part] : parts) {
        (void)d;
        bool of = false;
        Element t = target_->mul(euler_, lift(part), &of);
        out.overflow = out.overflow || of;
        out.value = alg::el_add(out.value, t, target_->field());
    }
    return out;
}

FpMatrix DivisorModel::image_span(int source_degree, const FpMatrix& source_span) const
{
    const int dt = source_degree + 2;
    if (dt > target_->truncation())
        return FpMatrix(0, 0, target_->field());
    std::vector<FpVec> rows;
    for (int i = 0; i < source_span.rows(); ++i) {
        Element z = source_.from_coords(source_degree, source_span.row_vec(i));
        ops::OpResult r = apply(z);
        if (r.overflow || r.value.is_zero())
            continue;
        rows.push_back(target_->coords(dt, r.value));
    }
    if (rows.empty())
        return FpMatrix(0, target_->dim(dt), target_->field());
    return row_space(FpMatrix::from_rows(rows, target_->dim(dt), target_->field()));
}

CheckReport DivisorModel::check_frobenius(int degree_cap) const
{
    CheckReport rep{name_, "frobenius", 0, 0, true, ""};
    const int N = std::min(target_->truncation(), degree_cap);
    for (int da = 0; da <= N; ++da)
        for (int dz = 0; da + dz + 2 <= N; ++dz)
            for (int i = 0; i < target_->dim(da); ++i)
                for (int j = 0; j < source_.dim(dz); ++j) {
                    Element a = target_->basis_element(da, i);
                    Element z = source_.basis_element(dz, j);
                    bool of = false;
                    Element lhs = apply(source_.mul(to_source(a), z, &of)).value;
                    Element rhs = target_->mul(a, apply(z).value, &of);
                    ++rep.checked;
                    if (!(lhs == rhs)) {
                        rep.pass = false;
                        if (rep.failure.empty())
                            rep.failure = "a = " + expr::print_element(target_->pres(), a) +
                                          ", z = " + expr::print_element(source_.pres(), z);
                    }
                }
    return rep;
}

CheckReport DivisorModel::check_qn_commutation(int n) const
{
    CheckReport rep{name_, "q" + std::to_string(n) + "-commutation", 0, 0, true, ""};
    const int N = target_->truncation();
    const int q = ops::q_shift(target_->prime(), n);
    for (int dz = 0; dz + 2 + q <= N; ++dz)
        for (int j = 0; j < source_.dim(dz); ++j) {
            Element z = source_.basis_element(dz, j);
            auto qz = ops::apply_q(source_, source_table_, n, z);
            auto fz = apply(z);
            auto q_fz = ops::apply_q(*target_, *target_table_, n, fz.value);
            auto f_qz = apply(qz.value);
            if (qz.overflow || fz.overflow || q_fz.overflow || f_qz.overflow) {
                ++rep.not_checkable;
                continue;
            }
            ++rep.checked;
            if (!(q_fz.value == f_qz.value)) {
                rep.pass = false;
                if (rep.failure.empty())
                    rep.failure = "z = " + expr::print_element(source_.pres(), z);
            }
        }
    return rep;
}

CheckReport DivisorModel::check_grothendieck() const
{
    CheckReport rep{name_, "grothendieck-p1", 0, 0, true, ""};
    const int N = target_->truncation();
    const int p = target_->prime();
    const FpCtx f = target_->field();
    /* c_{p-1} of the normal line bundle is euler^{p-1} */
    Element c = to_source(euler_);
    Element cpow = alg::el_mono(Monomial::one(source_.pres().gens.size()));
    bool ofp = false;
    for (int t = 0; t < p - 1; ++t)
        cpow = source_.mul(cpow, c, &ofp);
    for (int dz = 0; dz + 2 + 2 * (p - 1) <= N && !ofp; ++dz)
        for (int j = 0; j < source_.dim(dz); ++j) {
            Element x = source_.basis_element(dz, j);
            bool of = false;
            auto fx = apply(x);
            auto lhs = ops::apply_power(*target_, *target_table_, 1, fx.value);
            auto p1x = ops::apply_power(source_, source_table_, 1, x);
            Element inner = alg::el_add(source_.mul(cpow, x, &of), p1x.value, f);
            auto rhs = apply(inner);
            if (fx.overflow || lhs.overflow || p1x.overflow || rhs.overflow || of) {
                ++rep.not_checkable;
                continue;
            }
            ++rep.checked;
            if (!(lhs.value == rhs.value)) {
                rep.pass = false;
                if (rep.failure.empty())
                    rep.failure = "x = " + expr::print_element(source_.pres(), x);
            }
        }
    return rep;
}

/* ------------------------------- TableModel ------------------------------ */

TableModel TableModel::build(const CompiledAlgebra& entry, const ops::OperationTable& entry_table,
                             std::string name, int shift, CompiledAlgebra source,
                             ops::OperationTable source_table, const Element& target_kill_free,
                             const std::vector<std::pair<Element, Element>>& maps_src_dst,
                             const std::vector<std::pair<int, Element>>& extends, int nmax)
{
    TableModel M;
    M.name_ = std::move(name);
    M.shift_ = shift;
    M.entry_ = &entry;
    M.source_ = std::move(source);
    M.source_table_ = std::move(source_table);

    alg::Presentation tpres = entry.pres();
    if (!target_kill_free.is_zero()) {
        auto kd = alg::el_degree(tpres, target_kill_free);
        if (!kd)
            throw TransferError("table model " + M.name_ + ": target_kill not homogeneous");
        if (*kd <= tpres.truncation)
            tpres.relations.push_back(target_kill_free);
    }
    M.target_ = CompiledAlgebra::compile(tpres);
    M.target_table_ = retable(M.target_, entry_table, nmax);

    M.is_extend_gen_.assign(M.source_.pres().gens.size(), 0);
    M.extend_vals_.assign(M.source_.pres().gens.size(), {});
    for (const auto& [gi, val] : extends) {
        bool of = false;
        M.is_extend_gen_[gi] = 1;
        M.extend_vals_[gi] = M.target_.reduce(val, of);
    }
    for (const auto& [src, dst] : maps_src_dst) {
        if (src.terms.size() != 1 || src.terms.begin()->second != 1)
            throw TransferError("table model " + M.name_ +
                                ": map sources must be single monomials");
        Monomial m = src.terms.begin()->first;
        for (size_t gi = 0; gi < M.is_extend_gen_.size(); ++gi)
            if (M.is_extend_gen_[gi] && m.exps[gi])
                throw TransferError("table model " + M.name_ +
                                    ": map source contains an extension generator");
        bool of = false;
        Element d = M.target_.reduce(dst, of);
        auto dd = alg::el_degree(M.target_.pres(), d);
        int sd = M.source_.pres().mono_degree(m);
        if (!d.is_zero() && (!dd || *dd != sd + M.shift_))
            throw TransferError("table model " + M.name_ + ": map image degree != src + shift");
        M.maps_.emplace_back(m, d);
    }

    const int N = entry.truncation();
    M.quotient_.reserve(N + 1);
    int iso = -1;
    bool contiguous = true;
    for (int d = 0; d <= N; ++d) {
        FpMatrix Q(M.target_.dim(d), entry.dim(d), entry.field());
        for (int j = 0; j < entry.dim(d); ++j) {
            bool of = false;
            Element img = M.target_.reduce(entry.basis_element(d, j), of);
            FpVec col = M.target_.coords(d, img);
            for (int i = 0; i < Q.rows(); ++i)
                Q.set(i, j, col[i]);
        }
        M.quotient_.push_back(std::move(Q));
        if (contiguous && M.target_.dim(d) == entry.dim(d))
            iso = d;
        else
            contiguous = false;
    }
    M.iso_limit_ = iso;
    return M;
}

std::optional<ops::OpResult> TableModel::apply(const Element& z) const
{
    ops::OpResult out;
    const FpCtx f = target_.field();
    for (const auto& [m, c] : z.terms) {
        Monomial core = m;
        Monomial ext = Monomial::one(m.exps.size());
        for (size_t gi = 0; gi < is_extend_gen_.size(); ++gi) {
            if (is_extend_gen_[gi]) {
                ext.exps[gi] = core.exps[gi];
                core.exps[gi] = 0;
            }
        }
        const Element* img = nullptr;
        for (const auto& [mm, val] : maps_)
            if (mm == core) {
                img = &val;
                break;
            }
        if (!img)
            return std::nullopt;
        Element acc = *img;
        bool of = false;
        for (size_t gi = 0; gi < is_extend_gen_.size(); ++gi)
            for (int e = 0; e < ext.exps[gi]; ++e)
                acc = target_.mul(extend_vals_[gi], acc, &of);
        out.overflow = out.overflow || of;
        out.value = alg::el_add(out.value, alg::el_scale(acc, c, f), f);
    }
    return out;
}

FpMatrix TableModel::entry_image_span(int source_degree, const FpMatrix& source_span) const
{
    const int dt = source_degree + shift_;
    if (dt > entry_->truncation() || dt > iso_limit_)
        return FpMatrix(0, dt <= entry_->truncation() ? entry_->dim(dt) : 0, entry_->field());
    std::vector<FpVec> rows;
    for (int i = 0; i < source_span.rows(); ++i) {
        Element z = source_.from_coords(source_degree, source_span.row_vec(i));
        auto r = apply(z);
        if (!r || r->overflow || r->value.is_zero())
            continue;
        /* pull back through the degreewise isomorphism */
        auto x = solve(quotient_[dt], target_.coords(dt, r->value));
        if (!x)
            continue;
        rows.push_back(*x);
    }
    if (rows.empty())
        return FpMatrix(0, entry_->dim(dt), entry_->field());
    return row_space(FpMatrix::from_rows(rows, entry_->dim(dt), entry_->field()));
}

CheckReport TableModel::check_qn_commutation(int n) const
{
    CheckReport rep{name_, "q" + std::to_string(n) + "-commutation", 0, 0, true, ""};
    const int N = target_.truncation();
    const int q = ops::q_shift(target_.prime(), n);
    for (int dz = 0; dz + shift_ + q <= N; ++dz)
        for (int j = 0; j < source_.dim(dz); ++j) {
            Element z = source_.basis_element(dz, j);
            auto fz = apply(z);
            if (!fz) {
                ++rep.not_checkable;
                continue;
            }
            auto qz = ops::apply_q(source_, source_table_, n, z);
            auto f_qz = apply(qz.value);
            if (!f_qz) {
                ++rep.not_checkable;
                continue;
            }
            auto q_fz = ops::apply_q(target_, target_table_, n, fz->value);
            if (qz.overflow || fz->overflow || f_qz->overflow || q_fz.overflow) {
                ++rep.not_checkable;
                continue;
            }
            ++rep.checked;
            if (!(q_fz.value == f_qz->value)) {
                rep.pass = false;
                if (rep.failure.empty())
                    rep.failure = "z = " + expr::print_element(source_.pres(), z);
            }
        }
    return rep;
}

CheckReport TableModel::check_injectivity() const
{
    CheckReport rep{name_, "injectivity", 0, 0, true, ""};
    const int N = target_.truncation();
    for (int dz = 0; dz + shift_ <= N; ++dz) {
        if (source_.dim(dz) == 0)
            continue;
        std::vector<FpVec> rows;
        bool all_mapped = true;
        for (int j = 0; j < source_.dim(dz); ++j) {
            auto r = apply(source_.basis_element(dz, j));
            if (!r) {
                all_mapped = false;
                break;
            }
            rows.push_back(target_.coords(dz + shift_, r->value));
        }
        if (!all_mapped) {
            ++rep.not_checkable;
            continue;
        }
        ++rep.checked;
        FpMatrix img = FpMatrix::from_rows(rows, target_.dim(dz + shift_), target_.field());
        if (rank(img) != source_.dim(dz) && dz + shift_ > 4) {
            rep.pass = false;
            if (rep.failure.empty())
                rep.failure = "rank drop at source degree " + std::to_string(dz);
        }
    }
    return rep;
}

} // namespace qn::xfer
