#include "qn/module_form.hpp"

#include "qn/expr.hpp"

#include <algorithm>
#include <functional>

namespace qn::mod {

CompiledModule CompiledModule::build(const io::ParsedEntry& E)
{
    CompiledModule M;
    M.prime_ = E.prime;
    M.truncation_ = E.truncation;
    M.nmax_ = E.nmax;
    if (!is_prime(E.prime))
        throw ModuleError("module form: prime expected");
    for (size_t s = 0; s < E.summands.size(); ++s) {
        const io::Summand& S = E.summands[s];
        std::vector<CentralGen> cg;
        for (const auto& g : S.central) {
            if (g.degree <= 0 || g.degree % 2 != 0)
                throw ModuleError("central generator " + g.name +
                                  " must have positive even degree");
            cg.push_back({g.name, g.degree, g.weight, g.chow, g.integral});
        }
        M.central_.push_back(std::move(cg));
        std::vector<int> idxs;
        for (const auto& b : S.basis) {
            if (b.degree < 0)
                throw ModuleError("basis element " + b.name + ": negative degree");
            idxs.push_back(static_cast<int>(M.basis_.size()));
            M.basis_.push_back({b.name, b.degree, b.weight, b.chow, b.integral, b.torsion,
                                static_cast<int>(s)});
        }
        M.summand_basis_.push_back(std::move(idxs));
    }
    /* reject duplicate names across centrals and basis */
    {
        std::vector<std::string> names;
        for (const auto& cs : M.central_)
            for (const auto& c : cs)
                names.push_back(c.name);
        for (const auto& b : M.basis_)
            names.push_back(b.name);
        std::sort(names.begin(), names.end());
        if (std::adjacent_find(names.begin(), names.end()) != names.end())
            throw ModuleError("module form: duplicate generator/basis name");
    }

    /* enumerate monomials per degree */
    M.by_degree_.resize(M.truncation_ + 1);
    M.index_.resize(M.truncation_ + 1);
    for (size_t s = 0; s < M.central_.size(); ++s) {
        const auto& cg = M.central_[s];
        std::vector<uint16_t> cur(cg.size(), 0);
        std::function<void(size_t, int)> rec = [&](size_t i, int deg) {
            if (deg > M.truncation_)
                return;
            if (i == cg.size()) {
                for (int bi : M.summand_basis_[s]) {
                    int d = deg + M.basis_[bi].degree;
                    if (d <= M.truncation_)
                        M.by_degree_[d].push_back({static_cast<int>(s), cur, bi});
                }
                return;
            }
            for (int e = 0;; ++e) {
                cur[i] = static_cast<uint16_t>(e);
                int nd = deg + e * cg[i].degree;
                if (nd > M.truncation_)
                    break;
                rec(i + 1, nd);
            }
            cur[i] = 0;
        };
        rec(0, 0);
    }
    for (int d = 0; d <= M.truncation_; ++d) {
        auto& v = M.by_degree_[d];
        std::sort(v.begin(), v.end());
        for (size_t i = 0; i < v.size(); ++i)
            M.index_[d].emplace(v[i], static_cast<int>(i));
    }

    /* Q-table */
    M.qtab_.assign(M.nmax_ + 1, std::vector<ModElement>(M.basis_.size()));
    for (const io::QLine& q : E.mod_q_lines) {
        if (q.n < 0 || q.n > M.nmax_)
            throw ModuleError("q line: n out of range");
        int bi = -1;
        for (size_t i = 0; i < M.basis_.size(); ++i)
            if (M.basis_[i].name == q.gen)
                bi = static_cast<int>(i);
        if (bi < 0)
            throw ModuleError("q line names unknown basis element " + q.gen);
        ModElement val = M.parse(q.expr);
        for (const auto& [m, c] : val.terms) {
            (void)c;
            if (m.summand != M.basis_[bi].summand)
                throw ModuleError("q(" + q.gen + "): image leaves the summand");
        }
        M.qtab_[q.n][bi] = std::move(val);
    }
    return M;
}

int CompiledModule::dim(int d) const
{
    if (d < 0 || d > truncation_)
        throw ModuleError("degree out of range");
    return static_cast<int>(by_degree_[d].size());
}

const std::vector<ModMono>& CompiledModule::monos(int d) const
{
    if (d < 0 || d > truncation_)
        throw ModuleError("degree out of range");
    return by_degree_[d];
}

int CompiledModule::mono_degree(const ModMono& m) const
{
    int d = basis_[m.basis].degree;
    const auto& cg = central_[m.summand];
    for (size_t i = 0; i < cg.size(); ++i)
        d += int(m.cexps[i]) * cg[i].degree;
    return d;
}

int CompiledModule::mono_slack(const ModMono& m) const
{
    int s = basis_[m.basis].degree - basis_[m.basis].weight;
    const auto& cg = central_[m.summand];
    for (size_t i = 0; i < cg.size(); ++i)
        s += int(m.cexps[i]) * (cg[i].degree - cg[i].weight);
    return s;
}

ModElement CompiledModule::parse(const std::string& text) const
{
    const FpCtx f = field();
    expr::RawExpr raw = expr::parse_raw(text);
    ModElement out;
    for (const auto& term : raw.terms) {
        uint16_t c = f.reduce_int(term.coeff);
        if (term.negated)
            c = f.neg(c);
        if (c == 0)
            continue;
        int summand = -1, basis = -1;
        std::map<std::string, int> cexp;
        for (const auto& fac : term.factors) {
            bool matched = false;
            for (size_t bi = 0; bi < basis_.size(); ++bi) {
                if (basis_[bi].name == fac.name) {
                    if (basis >= 0 || fac.exp != 1)
                        throw ModuleError("module term needs exactly one basis factor: " + text);
                    basis = static_cast<int>(bi);
                    matched = true;
                    break;
                }
            }
            if (matched)
                continue;
            for (size_t s = 0; s < central_.size(); ++s)
                for (const auto& cgen : central_[s])
                    if (cgen.name == fac.name) {
                        cexp[fac.name] += fac.exp;
                        matched = true;
                    }
            if (!matched)
                throw ModuleError("unknown name '" + fac.name + "' in module expression");
        }
        if (basis < 0) {
            /* bare central monomial: resolve through a degree-0 basis element */
            for (size_t bi = 0; bi < basis_.size() && basis < 0; ++bi)
                if (basis_[bi].degree == 0)
                    basis = static_cast<int>(bi);
            if (basis < 0)
                throw ModuleError("module term lacks a basis factor: " + text);
        }
        int s = basis_[basis].summand;
        ModMono m{s, std::vector<uint16_t>(central_[s].size(), 0), basis};
        for (const auto& [nm, e] : cexp) {
            bool ok = false;
            for (size_t i = 0; i < central_[s].size(); ++i)
                if (central_[s][i].name == nm) {
                    m.cexps[i] = static_cast<uint16_t>(m.cexps[i] + e);
                    ok = true;
                }
            if (!ok)
                throw ModuleError("central factor '" + nm + "' does not act on summand of '" +
                                  basis_[basis].name + "'");
        }
        if (mono_degree(m) > truncation_)
            throw ModuleError("module expression exceeds the truncation bound: " + text);
        auto it = out.terms.find(m);
        uint16_t v = f.add(it == out.terms.end() ? 0 : it->second, c);
        if (it != out.terms.end())
            out.terms.erase(it);
        if (v)
            out.terms.emplace(m, v);
    }
    return out;
}

std::string CompiledModule::print(const ModElement& e) const
{
    if (e.is_zero())
        return "0";
    const FpCtx f = field();
    std::string out;
    bool first = true;
    for (const auto& [m, c] : e.terms) {
        bool neg = f.p > 2 && c > f.p / 2;
        uint16_t mag = neg ? f.neg(c) : c;
        out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
        first = false;
        std::string ms;
        const auto& cg = central_[m.summand];
        for (size_t i = 0; i < cg.size(); ++i) {
            if (!m.cexps[i])
                continue;
            if (!ms.empty())
                ms += "*";
            ms += cg[i].name;
            if (m.cexps[i] > 1)
                ms += "^" + std::to_string(m.cexps[i]);
        }
        if (basis_[m.basis].degree != 0 || ms.empty()) {
            if (!ms.empty())
                ms += "*";
            ms += basis_[m.basis].degree == 0 && !ms.empty() ? "" : basis_[m.basis].name;
            if (basis_[m.basis].degree == 0 && ms.back() == '*')
                ms.pop_back();
        }
        if (ms.empty())
            ms = "1";
        if (basis_[m.basis].degree == 0 && m.cexps == std::vector<uint16_t>(cg.size(), 0))
            ms = "1";
        if (mag != 1)
            out += std::to_string(mag) + (ms == "1" ? "" : "*" + ms);
        else
            out += ms;
    }
    return out;
}

std::string CompiledModule::print_coords(int d, const FpVec& v) const
{
    return print(from_coords(d, v));
}

FpVec CompiledModule::coords(int d, const ModElement& e) const
{
    FpVec v(by_degree_[d].size(), 0);
    for (const auto& [m, c] : e.terms) {
        auto it = index_[d].find(m);
        if (it == index_[d].end())
            throw ModuleError("coords: term of wrong degree");
        v[it->second] = c;
    }
    return v;
}

ModElement CompiledModule::from_coords(int d, const FpVec& v) const
{
    ModElement out;
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i])
            out.terms.emplace(by_degree_[d][i], v[i]);
    return out;
}

ModElement CompiledModule::q_apply(int n, const ModElement& e, bool& overflow) const
{
    if (n < 0 || n > nmax_)
        throw ModuleError("q_apply: n out of range");
    const FpCtx f = field();
    ModElement out;
    for (const auto& [m, c] : e.terms) {
        const ModElement& val = qtab_[n][m.basis];
        for (const auto& [vm, vc] : val.terms) {
            ModMono t = vm;
            for (size_t i = 0; i < t.cexps.size(); ++i)
                t.cexps[i] = static_cast<uint16_t>(t.cexps[i] + m.cexps[i]);
            if (mono_degree(t) > truncation_) {
                overflow = true;
                continue;
            }
            auto it = out.terms.find(t);
            uint16_t v = f.add(it == out.terms.end() ? 0 : it->second, f.mul(c, vc));
            if (it != out.terms.end())
                out.terms.erase(it);
            if (v)
                out.terms.emplace(t, v);
        }
    }
    return out;
}

std::pair<FpVec, bool> CompiledModule::q_coords(int n, int d, const FpVec& v) const
{
    bool of = false;
    int dq = d + ops_shift(n);
    ModElement img = q_apply(n, from_coords(d, v), of);
    if (dq > truncation_)
        return {FpVec{}, true};
    return {coords(dq, img), of};
}

int CompiledModule::ops_shift(int n) const
{
    int pn = 1;
    for (int i = 0; i < n; ++i)
        pn *= prime_;
    return 2 * pn - 1;
}

namespace {

FpMatrix unit_span(const std::vector<int>& idxs, int dim, FpCtx f)
{
    FpMatrix m(static_cast<int>(idxs.size()), dim, f);
    for (size_t i = 0; i < idxs.size(); ++i)
        m.set(static_cast<int>(i), idxs[i], 1);
    return row_space(m);
}

} // namespace

FpMatrix CompiledModule::slack_span(int c, int d) const
{
    std::vector<int> idxs;
    for (int i = 0; i < dim(d); ++i)
        if (mono_slack(by_degree_[d][i]) >= c)
            idxs.push_back(i);
    return unit_span(idxs, dim(d), field());
}

FpMatrix CompiledModule::integral_span(int d) const
{
    std::vector<int> idxs;
    for (int i = 0; i < dim(d); ++i) {
        const ModMono& m = by_degree_[d][i];
        if (!basis_[m.basis].integral)
            continue;
        bool ok = true;
        for (size_t j = 0; j < m.cexps.size(); ++j)
            if (m.cexps[j] && !central_[m.summand][j].integral)
                ok = false;
        if (ok)
            idxs.push_back(i);
    }
    return unit_span(idxs, dim(d), field());
}

FpMatrix CompiledModule::chow_span(int d, bool integral_mode) const
{
    std::vector<int> idxs;
    for (int i = 0; i < dim(d); ++i) {
        const ModMono& m = by_degree_[d][i];
        bool has_chow_central = false, centrals_integral = true;
        for (size_t j = 0; j < m.cexps.size(); ++j) {
            if (!m.cexps[j])
                continue;
            if (central_[m.summand][j].chow)
                has_chow_central = true;
            if (!central_[m.summand][j].integral)
                centrals_integral = false;
        }
        bool qual;
        if (integral_mode)
            qual = (basis_[m.basis].chow && centrals_integral) ||
                   (basis_[m.basis].integral && has_chow_central && centrals_integral);
        else
            qual = basis_[m.basis].chow || has_chow_central;
        if (qual && mono_degree(m) > 0)
            idxs.push_back(i);
    }
    return unit_span(idxs, dim(d), field());
}

FpMatrix CompiledModule::im_q0(int d) const
{
    const FpCtx f = field();
    if (d < 1 || d > truncation_)
        return FpMatrix(0, d <= truncation_ ? dim(d) : 0, f);
    std::vector<FpVec> rows;
    for (int i = 0; i < dim(d - 1); ++i) {
        bool of = false;
        ModElement img = q_apply(0, from_coords(d - 1, unit(i, dim(d - 1))), of);
        if (of || img.is_zero())
            continue;
        rows.push_back(coords(d, img));
    }
    if (rows.empty())
        return FpMatrix(0, dim(d), f);
    return row_space(FpMatrix::from_rows(rows, dim(d), f));
}

FpVec CompiledModule::unit(int i, int n)
{
    FpVec v(n, 0);
    v[i] = 1;
    return v;
}

FpMatrix CompiledModule::torsion_span(int d) const
{
    std::vector<int> idxs;
    for (int i = 0; i < dim(d); ++i)
        if (basis_[by_degree_[d][i].basis].torsion)
            idxs.push_back(i);
    return unit_span(idxs, dim(d), field());
}

int CompiledModule::hilbert(int d) const
{
    /* independent count: coefficient extraction by direct convolution */
    int total = 0;
    for (size_t s = 0; s < central_.size(); ++s) {
        std::vector<long long> series(truncation_ + 1, 0);
        series[0] = 1;
        for (const auto& c : central_[s]) {
            std::vector<long long> next(truncation_ + 1, 0);
            for (int a = 0; a <= truncation_; ++a)
                for (int k = 0; a + k * c.degree <= truncation_; ++k)
                    next[a + k * c.degree] += series[a];
            series = std::move(next);
        }
        for (int bi : summand_basis_[s]) {
            int off = basis_[bi].degree;
            if (d - off >= 0 && d - off <= truncation_)
                total += static_cast<int>(series[d - off]);
        }
    }
    return total;
}

std::vector<std::string> CompiledModule::validate() const
{
    std::vector<std::string> problems;
    const FpCtx f = field();
    for (int d = 0; d <= truncation_; ++d)
        if (dim(d) != hilbert(d))
            problems.push_back("degree " + std::to_string(d) +
                               ": enumerated dimension disagrees with the Hilbert count");
    /* q degrees, Q_n^2 = 0, anticommutation on basis elements */
    for (int n = 0; n <= nmax_; ++n)
        for (size_t bi = 0; bi < basis_.size(); ++bi) {
            const ModElement& v = qtab_[n][bi];
            if (v.is_zero())
                continue;
            for (const auto& [m, c] : v.terms) {
                (void)c;
                if (mono_degree(m) != basis_[bi].degree + ops_shift(n))
                    problems.push_back("q" + std::to_string(n) + "(" + basis_[bi].name +
                                       "): wrong image degree");
            }
            bool of = false;
            ModElement sq = q_apply(n, v, of);
            if (!of && !sq.is_zero())
                problems.push_back("q" + std::to_string(n) + "^2 (" + basis_[bi].name +
                                   ") != 0");
        }
    for (int m = 0; m <= nmax_; ++m)
        for (int n = m + 1; n <= nmax_; ++n)
            for (size_t bi = 0; bi < basis_.size(); ++bi) {
                bool of = false;
                ModMono mono{basis_[bi].summand,
                             std::vector<uint16_t>(central_[basis_[bi].summand].size(), 0),
                             static_cast<int>(bi)};
                ModElement e;
                e.terms.emplace(mono, 1);
                ModElement mn = q_apply(m, q_apply(n, e, of), of);
                ModElement nm = q_apply(n, q_apply(m, e, of), of);
                if (of)
                    continue;
                ModElement sum;
                for (const auto& [mm, c] : mn.terms)
                    sum.terms.emplace(mm, c);
                for (const auto& [mm, c] : nm.terms) {
                    auto it = sum.terms.find(mm);
                    uint16_t v = f.add(it == sum.terms.end() ? 0 : it->second, c);
                    if (it != sum.terms.end())
                        sum.terms.erase(it);
                    if (v)
                        sum.terms.emplace(mm, v);
                }
                if (!sum.is_zero())
                    problems.push_back("Q_" + std::to_string(m) + " Q_" + std::to_string(n) +
                                       " anticommutation fails on " + basis_[bi].name);
            }
    return problems;
}

} // namespace qn::mod
