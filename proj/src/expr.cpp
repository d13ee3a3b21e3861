#include "qn/expr.hpp"

#include <cctype>

namespace qn::expr {

namespace {

struct Lexer {
    std::string_view s;
    size_t i = 0;

    void skip()
    {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
    }
    bool done()
    {
        skip();
        return i >= s.size();
    }
    char peek()
    {
        skip();
        return i < s.size() ? s[i] : '\0';
    }
    char take() { return s[i++]; }
    [[noreturn]] void fail(const std::string& what)
    {
        throw ParseError("expression error at position " + std::to_string(i) + ": " + what +
                         " in \"" + std::string(s) + "\"");
    }
    long long integer()
    {
        skip();
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            ++i;
        if (i == start)
            fail("integer expected");
        return std::stoll(std::string(s.substr(start, i - start)));
    }
    std::string name()
    {
        skip();
        size_t start = i;
        if (i >= s.size() ||
            !(std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_'))
            fail("name expected");
        while (i < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
            ++i;
        return std::string(s.substr(start, i - start));
    }
};

} // namespace

RawExpr parse_raw(std::string_view text)
{
    Lexer lx{text};
    RawExpr out;
    if (lx.done())
        lx.fail("empty expression");
    bool neg = false;
    if (lx.peek() == '-') {
        lx.take();
        neg = true;
    } else if (lx.peek() == '+') {
        lx.take();
    }
    for (;;) {
        RawTerm term;
        term.negated = neg;
        char c = lx.peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            term.coeff = lx.integer();
            if (lx.peek() == '*') {
                lx.take();
                c = lx.peek();
            } else {
                c = '\0'; /* bare integer term */
            }
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            for (;;) {
                RawFactor fac;
                fac.name = lx.name();
                if (lx.peek() == '^') {
                    lx.take();
                    long long e = lx.integer();
                    if (e < 0)
                        lx.fail("negative exponent");
                    fac.exp = static_cast<int>(e);
                }
                term.factors.push_back(std::move(fac));
                if (lx.peek() == '*')
                    lx.take();
                else
                    break;
            }
        }
        out.terms.push_back(std::move(term));
        if (lx.done())
            break;
        char sep = lx.peek();
        if (sep == '+')
            neg = false;
        else if (sep == '-')
            neg = true;
        else
            lx.fail("'+' or '-' expected");
        lx.take();
        if (lx.done())
            lx.fail("trailing operator");
    }
    return out;
}

alg::Element to_element(const alg::Presentation& P, const RawExpr& e)
{
    const FpCtx f = P.field();
    alg::Element out;
    for (const RawTerm& t : e.terms) {
        uint16_t c = f.reduce_int(t.coeff);
        if (t.negated)
            c = f.neg(c);
        alg::Element acc = alg::el_mono(alg::Monomial::one(P.gens.size()), c);
        for (const RawFactor& fac : t.factors) {
            int gi = P.gen_index(fac.name);
            if (gi < 0)
                throw ParseError("unknown generator: " + fac.name);
            alg::Monomial m = alg::Monomial::one(P.gens.size());
            if (fac.exp > 0) {
                if (P.prime != 2 && P.gens[gi].kind == alg::GenKind::Ext && fac.exp > 1) {
                    acc = {};
                    break;
                }
                m.exps[gi] = static_cast<uint16_t>(fac.exp);
            }
            acc = alg::el_mul_free(P, acc, alg::el_mono(m));
        }
        out = alg::el_add(out, acc, f);
    }
    return out;
}

alg::Element parse_element(const alg::Presentation& P, std::string_view text)
{
    return to_element(P, parse_raw(text));
}

std::string print_monomial(const alg::Presentation& P, const alg::Monomial& m)
{
    std::string out;
    for (size_t i = 0; i < P.gens.size(); ++i) {
        if (!m.exps[i])
            continue;
        if (!out.empty())
            out += "*";
        out += P.gens[i].name;
        if (m.exps[i] > 1)
            out += "^" + std::to_string(m.exps[i]);
    }
    return out.empty() ? "1" : out;
}

std::string print_element(const alg::Presentation& P, const alg::Element& a)
{
    if (a.is_zero())
        return "0";
    const FpCtx f = P.field();
    std::string out;
    bool first = true;
    for (const auto& [m, c] : a.terms) {
        bool neg = f.p > 2 && c > f.p / 2;
        uint16_t mag = neg ? f.neg(c) : c;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        first = false;
        std::string ms = print_monomial(P, m);
        if (mag != 1)
            out += std::to_string(mag) + (ms == "1" ? "" : "*" + ms);
        else
            out += ms;
    }
    return out;
}

} // namespace qn::expr
