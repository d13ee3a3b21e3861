#pragma once

#include "qn/algebra.hpp"

#include <istream>
#include <string>
#include <tuple>
#include <vector>

namespace qn::io {

struct FileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/*
 * Line-oriented presentation format, UTF-8, '#' comments.
 * Core lines:   prime, truncate, gen, rel, q, ptotal, transfer blocks.
 * Catalog data: group, nmax, flag, chow, isub, imod, n1, torsion,
 *               assert_op/assert_dim/assert_hilbert, note, stub/stubgen,
 *               summand/central/basis blocks for module-form entries.
 */

struct QLine {
    int n = 0;
    std::string gen;
    std::string expr;
};

struct SourceData {
    std::vector<alg::Generator> gens;
    std::vector<std::string> rels;
    std::vector<QLine> q_lines;
    std::vector<std::pair<std::string, std::string>> ptotal_lines;
    std::vector<std::string> isub, imod;
};

struct DivisorLine {
    std::string name;
    std::string euler;
    std::string kill; /* empty = no visible extra relation */
};

struct TableBlock {
    std::string name;
    int shift = 2;
    std::string target_kill;
    SourceData source;
    std::vector<std::pair<std::string, std::string>> maps;    /* src -> dst */
    std::vector<std::pair<std::string, std::string>> extends; /* gen -> dst */
};

struct AssertOp {
    std::string op; /* q0, q1, q2, beta, p1, p2, ... */
    std::string lhs, rhs;
};

struct HilbertBlock {
    std::vector<int> central_degrees;
    std::vector<int> module_degrees;
};

struct ModuleBasisLine {
    std::string name;
    int degree = 0, weight = 0;
    bool chow = false, integral = false, torsion = false;
};

struct Summand {
    std::string name;
    std::vector<alg::Generator> central;
    std::vector<ModuleBasisLine> basis;
};

struct N1Line {
    std::string expr;
    std::string cite;
};

struct ParsedEntry {
    std::string id;
    std::string file;
    int prime = 0;
    int truncation = -1;
    int nmax = 2;
    bool stub = false;
    bool module_form = false;

    bool all_torsion = false;
    bool weight_exact = false;
    bool abelian_sylow = false;
    bool integral_matches_kerq0 = false;

    std::vector<alg::Generator> gens;
    std::vector<std::string> rels;
    std::vector<QLine> q_lines;
    std::vector<std::pair<std::string, std::string>> ptotal_lines;

    std::vector<std::string> chow_exprs;
    std::vector<std::string> isub, imod;
    std::vector<N1Line> n1;
    std::vector<std::string> torsion_exprs;

    std::vector<DivisorLine> divisors;
    std::vector<TableBlock> tables;

    std::vector<AssertOp> assert_ops;
    std::vector<std::pair<int, int>> assert_dims;
    std::vector<HilbertBlock> hilberts;
    std::vector<std::string> notes;

    std::vector<Summand> summands;
    std::vector<QLine> mod_q_lines;

    std::vector<std::pair<std::string, int>> stub_gens;
};

ParsedEntry parse_presentation(std::istream& in, const std::string& filename);
ParsedEntry parse_presentation_file(const std::string& path);

} // namespace qn::io
