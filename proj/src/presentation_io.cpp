#include "qn/presentation_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace qn::io {

namespace {

std::string trim(const std::string& s)
{
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string t;
    while (is >> t)
        out.push_back(t);
    return out;
}

struct LineCtx {
    const std::string& file;
    int lineno;
    [[noreturn]] void fail(const std::string& what) const
    {
        throw FileError(file + ":" + std::to_string(lineno) + ": " + what);
    }
};

int to_int(const LineCtx& ctx, const std::string& s)
{
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size())
            ctx.fail("malformed integer '" + s + "'");
        return v;
    } catch (const std::exception&) {
        ctx.fail("malformed integer '" + s + "'");
    }
}

std::vector<int> int_list(const LineCtx& ctx, const std::string& s)
{
    std::vector<int> out;
    if (s.empty())
        return out;
    std::istringstream is(s);
    std::string part;
    while (std::getline(is, part, ','))
        out.push_back(to_int(ctx, trim(part)));
    return out;
}

/* gen / central / basis attribute list: name deg=<d> [kind=...] [weight=<w>] flags */
alg::Generator parse_gen_attrs(const LineCtx& ctx, const std::vector<std::string>& toks,
                               size_t start, bool* torsion_flag = nullptr)
{
    if (toks.size() <= start)
        ctx.fail("generator name expected");
    alg::Generator g;
    g.name = toks[start];
    bool have_deg = false;
    for (size_t i = start + 1; i < toks.size(); ++i) {
        const std::string& t = toks[i];
        auto eq = t.find('=');
        if (eq != std::string::npos) {
            std::string key = t.substr(0, eq), val = t.substr(eq + 1);
            if (key == "deg") {
                g.degree = to_int(ctx, val);
                have_deg = true;
            } else if (key == "kind") {
                if (val == "poly")
                    g.kind = alg::GenKind::Poly;
                else if (val == "ext")
                    g.kind = alg::GenKind::Ext;
                else
                    ctx.fail("kind must be poly or ext");
            } else if (key == "weight") {
                g.weight = to_int(ctx, val);
            } else {
                ctx.fail("unknown attribute '" + key + "'");
            }
        } else if (t == "chow") {
            g.chow = true;
        } else if (t == "integral") {
            g.integral = true;
        } else if (t == "torsion" && torsion_flag) {
            *torsion_flag = true;
        } else {
            ctx.fail("unknown flag '" + t + "'");
        }
    }
    if (!have_deg)
        ctx.fail("generator " + g.name + " needs deg=<d>");
    return g;
}

/* `q <n> <gen> = <expr>` after the keyword */
QLine parse_q_line(const LineCtx& ctx, const std::string& rest)
{
    std::istringstream is(rest);
    QLine q;
    std::string eq;
    if (!(is >> q.n >> q.gen >> eq) || eq != "=")
        ctx.fail("expected: q <n> <gen> = <expr>");
    std::getline(is, q.expr);
    q.expr = trim(q.expr);
    if (q.expr.empty())
        ctx.fail("q line needs an expression");
    return q;
}

std::pair<std::string, std::string> parse_ptotal_line(const LineCtx& ctx, const std::string& rest)
{
    std::istringstream is(rest);
    std::string gen, eq, expr;
    if (!(is >> gen >> eq) || eq != "=")
        ctx.fail("expected: ptotal <gen> = <expr>");
    std::getline(is, expr);
    expr = trim(expr);
    if (expr.empty())
        ctx.fail("ptotal line needs an expression");
    return {gen, expr};
}

std::pair<std::string, std::string> parse_arrow(const LineCtx& ctx, const std::string& rest)
{
    auto pos = rest.find("->");
    if (pos == std::string::npos)
        ctx.fail("expected: <lhs> -> <rhs>");
    std::string lhs = trim(rest.substr(0, pos));
    std::string rhs = trim(rest.substr(pos + 2));
    if (lhs.empty() || rhs.empty())
        ctx.fail("'->' needs both sides");
    return {lhs, rhs};
}

} // namespace

ParsedEntry parse_presentation(std::istream& in, const std::string& filename)
{
    ParsedEntry E;
    E.file = filename;

    enum class Block { None, Table, Summand };
    Block block = Block::None;
    TableBlock table;
    Summand summand;

    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        LineCtx ctx{filename, lineno};
        auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw = raw.substr(0, hash);
        std::string line = trim(raw);
        if (line.empty())
            continue;
        std::istringstream is(line);
        std::string kw;
        is >> kw;
        std::string rest = trim(line.substr(kw.size()));

        if (block == Block::Table) {
            if (kw == "end") {
                E.tables.push_back(std::move(table));
                table = {};
                block = Block::None;
            } else if (kw == "source") {
                std::istringstream ss(rest);
                std::string sub;
                ss >> sub;
                std::string srest = trim(rest.substr(sub.size()));
                if (sub == "gen")
                    table.source.gens.push_back(parse_gen_attrs(ctx, split_ws(srest), 0));
                else if (sub == "rel")
                    table.source.rels.push_back(srest);
                else if (sub == "q")
                    table.source.q_lines.push_back(parse_q_line(ctx, srest));
                else if (sub == "ptotal")
                    table.source.ptotal_lines.push_back(parse_ptotal_line(ctx, srest));
                else if (sub == "isub")
                    table.source.isub.push_back(srest);
                else if (sub == "imod")
                    table.source.imod.push_back(srest);
                else
                    ctx.fail("unknown source line '" + sub + "'");
            } else if (kw == "maps") {
                table.maps.push_back(parse_arrow(ctx, rest));
            } else if (kw == "extend") {
                table.extends.push_back(parse_arrow(ctx, rest));
            } else {
                ctx.fail("unknown line inside transfer table block: '" + kw + "'");
            }
            continue;
        }
        if (block == Block::Summand) {
            if (kw == "end") {
                E.summands.push_back(std::move(summand));
                summand = {};
                block = Block::None;
            } else if (kw == "central") {
                summand.central.push_back(parse_gen_attrs(ctx, split_ws(rest), 0));
            } else if (kw == "basis") {
                bool torsion = false;
                alg::Generator g = parse_gen_attrs(ctx, split_ws(rest), 0, &torsion);
                summand.basis.push_back(
                    {g.name, g.degree, g.weight, g.chow, g.integral, torsion});
            } else {
                ctx.fail("unknown line inside summand block: '" + kw + "'");
            }
            continue;
        }

        if (kw == "group") {
            E.id = rest;
        } else if (kw == "prime") {
            E.prime = to_int(ctx, rest);
        } else if (kw == "truncate") {
            E.truncation = to_int(ctx, rest);
        } else if (kw == "nmax") {
            E.nmax = to_int(ctx, rest);
        } else if (kw == "flag") {
            if (rest == "all_torsion")
                E.all_torsion = true;
            else if (rest == "weight_exact")
                E.weight_exact = true;
            else if (rest == "abelian_sylow")
                E.abelian_sylow = true;
            else if (rest == "integral_matches_kerq0")
                E.integral_matches_kerq0 = true;
            else
                ctx.fail("unknown flag '" + rest + "'");
        } else if (kw == "module_form") {
            E.module_form = true;
        } else if (kw == "stub") {
            E.stub = true;
        } else if (kw == "stubgen") {
            auto toks = split_ws(rest);
            if (toks.size() != 2 || toks[1].rfind("deg=", 0) != 0)
                ctx.fail("expected: stubgen <name> deg=<d>");
            E.stub_gens.emplace_back(toks[0], to_int(ctx, toks[1].substr(4)));
        } else if (kw == "gen") {
            E.gens.push_back(parse_gen_attrs(ctx, split_ws(rest), 0));
        } else if (kw == "rel") {
            E.rels.push_back(rest);
        } else if (kw == "q") {
            if (E.module_form)
                E.mod_q_lines.push_back(parse_q_line(ctx, rest));
            else
                E.q_lines.push_back(parse_q_line(ctx, rest));
        } else if (kw == "ptotal") {
            E.ptotal_lines.push_back(parse_ptotal_line(ctx, rest));
        } else if (kw == "chow") {
            E.chow_exprs.push_back(rest);
        } else if (kw == "isub") {
            E.isub.push_back(rest);
        } else if (kw == "imod") {
            E.imod.push_back(rest);
        } else if (kw == "n1") {
            auto pos = rest.find("::");
            N1Line n1;
            if (pos == std::string::npos) {
                n1.expr = trim(rest);
            } else {
                n1.expr = trim(rest.substr(0, pos));
                n1.cite = trim(rest.substr(pos + 2));
            }
            if (n1.expr.empty())
                ctx.fail("n1 line needs an expression");
            E.n1.push_back(std::move(n1));
        } else if (kw == "torsion") {
            E.torsion_exprs.push_back(rest);
        } else if (kw == "transfer") {
            auto toks = split_ws(rest);
            if (toks.empty())
                ctx.fail("transfer kind expected (divisor | table)");
            std::string kind = toks[0];
            if (kind == "divisor") {
                DivisorLine d;
                for (size_t i = 1; i < toks.size(); ++i) {
                    auto eq = toks[i].find('=');
                    if (eq == std::string::npos)
                        ctx.fail("divisor attributes are key=value");
                    std::string key = toks[i].substr(0, eq), val = toks[i].substr(eq + 1);
                    if (key == "name")
                        d.name = val;
                    else if (key == "euler")
                        d.euler = val;
                    else if (key == "kill")
                        d.kill = val;
                    else
                        ctx.fail("unknown divisor attribute '" + key + "'");
                }
                if (d.name.empty() || d.euler.empty())
                    ctx.fail("divisor needs name= and euler=");
                E.divisors.push_back(std::move(d));
            } else if (kind == "table") {
                table = {};
                for (size_t i = 1; i < toks.size(); ++i) {
                    auto eq = toks[i].find('=');
                    if (eq == std::string::npos)
                        ctx.fail("table attributes are key=value");
                    std::string key = toks[i].substr(0, eq), val = toks[i].substr(eq + 1);
                    if (key == "name")
                        table.name = val;
                    else if (key == "shift")
                        table.shift = to_int(ctx, val);
                    else if (key == "target_kill")
                        table.target_kill = val;
                    else
                        ctx.fail("unknown table attribute '" + key + "'");
                }
                if (table.name.empty())
                    ctx.fail("table needs name=");
                block = Block::Table;
            } else {
                ctx.fail("unknown transfer kind '" + kind + "'");
            }
        } else if (kw == "summand") {
            summand = {};
            summand.name = rest;
            if (summand.name.empty())
                ctx.fail("summand needs a name");
            block = Block::Summand;
        } else if (kw == "assert_op") {
            auto colon = rest.find(':');
            if (colon == std::string::npos)
                ctx.fail("expected: assert_op <op> : <lhs> = <rhs>");
            AssertOp a;
            a.op = trim(rest.substr(0, colon));
            std::string body = rest.substr(colon + 1);
            auto eq = body.find('=');
            if (eq == std::string::npos)
                ctx.fail("assert_op needs '='");
            a.lhs = trim(body.substr(0, eq));
            a.rhs = trim(body.substr(eq + 1));
            if (a.op.empty() || a.lhs.empty() || a.rhs.empty())
                ctx.fail("assert_op is incomplete");
            E.assert_ops.push_back(std::move(a));
        } else if (kw == "assert_dim") {
            auto toks = split_ws(rest);
            if (toks.size() != 2)
                ctx.fail("expected: assert_dim <degree> <dim>");
            E.assert_dims.emplace_back(to_int(ctx, toks[0]), to_int(ctx, toks[1]));
        } else if (kw == "assert_hilbert") {
            HilbertBlock h;
            for (const std::string& t : split_ws(rest)) {
                auto eq = t.find('=');
                if (eq == std::string::npos)
                    ctx.fail("assert_hilbert attributes are key=value");
                std::string key = t.substr(0, eq), val = t.substr(eq + 1);
                if (key == "central")
                    h.central_degrees = int_list(ctx, val);
                else if (key == "module")
                    h.module_degrees = int_list(ctx, val);
                else
                    ctx.fail("unknown assert_hilbert attribute '" + key + "'");
            }
            if (h.module_degrees.empty())
                ctx.fail("assert_hilbert needs module=");
            E.hilberts.push_back(std::move(h));
        } else if (kw == "note") {
            E.notes.push_back(rest);
        } else {
            ctx.fail("unknown keyword '" + kw + "'");
        }
    }
    if (block != Block::None)
        throw FileError(filename + ": unterminated block (missing 'end')");
    if (E.id.empty())
        throw FileError(filename + ": missing 'group <id>' line");
    if (!E.stub) {
        if (E.prime == 0)
            throw FileError(filename + ": missing 'prime'");
        if (E.truncation < 0)
            throw FileError(filename + ": missing 'truncate'");
    }
    return E;
}

ParsedEntry parse_presentation_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw FileError("cannot open " + path);
    return parse_presentation(in, path);
}

} // namespace qn::io
