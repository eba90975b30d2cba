#pragma once

// Hand-derived expected verdicts for a fixed set of languages, shared by
// the unit tests and the acceptance binary.

#include "boolcsp/classification.hpp"
#include "boolcsp/verdict.hpp"

#include <optional>
#include <string>
#include <vector>

namespace matrix {

using boolcsp::Approximability;
using boolcsp::NamedRelation;
using boolcsp::VerdictBranch;

struct Endpoint {
    std::string problem;
    Approximability annotation;
};

struct Expected {
    VerdictBranch branch;
    std::optional<int> w, k;
    std::optional<Endpoint> lower, upper;
    bool tag = false;
};

struct Row {
    std::string name;
    std::vector<NamedRelation> language;
    Expected d3, d25, unbounded;
};

inline boolcsp::Relation example_formula_relation() {
    return boolcsp::normalize_formula(boolcsp::FormulaKind::OrConj, 7, {{0, 0}, {1, 1}}, {{2, 3, 4, 5}, {4, 6}})
        .evaluate();
}

inline std::vector<Row> rows() {
    namespace rel = boolcsp::rel;
    using A = Approximability;
    using B = VerdictBranch;
    const Expected fp{B::FpAffine};
    const Expected bis{B::BisEquivalent};
    const Expected sat{B::SatEquivalent};
    const Expected sat_tag{B::SatEquivalent, {}, {}, {}, {}, true};
    auto his = [](int w, int k, int d, A lo, A up, bool tag) {
        return Expected{B::HisInterval,
                        w,
                        k,
                        Endpoint{"#" + std::to_string(w) + "HIS_" + std::to_string(d), lo},
                        Endpoint{"#" + std::to_string(w) + "HIS_" + std::to_string(k * d), up},
                        tag};
    };
    const auto chain = boolcsp::Relation::from_strings({"000", "001", "011", "111"});
    const A nf = A::NoFprasUnlessNpEqRp;
    return {
        {"eq", {{"eq", rel::eq(2)}}, fp, fp, fp},
        {"eq+neq", {{"eq", rel::eq(2)}, {"neq", rel::neq()}}, fp, fp, fp},
        {"eq3", {{"eq3", rel::eq(3)}}, fp, fp, fp},
        {"pins", {{"one", rel::one()}, {"zero", rel::zero()}}, fp, fp, fp},
        {"imp", {{"imp", rel::implies()}}, bis, bis, bis},
        {"eq+imp", {{"eq", rel::eq(2)}, {"imp", rel::implies()}}, bis, bis, bis},
        {"chain", {{"chain", chain}}, bis, bis, bis},
        {"or", {{"or", rel::or_(2)}}, his(2, 1, 3, A::Fpras, A::Fpras, false), his(2, 1, 25, nf, nf, true), sat},
        {"nand", {{"nand", rel::nand(2)}}, his(2, 1, 3, A::Fpras, A::Fpras, false), his(2, 1, 25, nf, nf, true), sat},
        {"or3", {{"or3", rel::or_(3)}}, his(3, 1, 3, A::Fpras, A::Fpras, false), his(3, 1, 25, nf, nf, true), sat},
        {"or+or3+one", {{"one", rel::one()}, {"or", rel::or_(2)}, {"or3", rel::or_(3)}},
         his(3, 1, 3, A::Fpras, A::Fpras, false), his(3, 1, 25, nf, nf, true), sat},
        {"example", {{"ex", example_formula_relation()}}, his(4, 2, 3, A::Open, A::McmcLikelyFails, false),
         his(4, 2, 25, nf, nf, true), sat},
        {"or+nand", {{"nand", rel::nand(2)}, {"or", rel::or_(2)}}, sat, sat_tag, sat},
        {"imp+or", {{"imp", rel::implies()}, {"or", rel::or_(2)}}, sat, sat_tag, sat},
        {"neq+or", {{"neq", rel::neq()}, {"or", rel::or_(2)}}, sat, sat_tag, sat},
        {"eq+or", {{"eq", rel::eq(2)}, {"or", rel::or_(2)}}, sat, sat_tag, sat},
    };
}

/// Empty string when the verdict matches, else a description of the first mismatch.
inline std::string mismatch(const boolcsp::LanguageVerdict& v, const Expected& e) {
    using boolcsp::to_string;
    if (v.branch != e.branch) return "branch " + to_string(v.branch) + " != " + to_string(e.branch);
    if (v.no_fpras_unless_np_eq_rp != e.tag) return "no-FPRAS tag differs";
    if (v.width != e.w) return "width differs";
    if (v.repetition != e.k) return "repetition differs";
    auto same = [](const std::optional<boolcsp::HisEndpoint>& a, const std::optional<Endpoint>& b) {
        if (a.has_value() != b.has_value()) return false;
        return !a || (a->problem() == b->problem && a->annotation == b->annotation);
    };
    if (!same(v.lower, e.lower)) return "lower endpoint differs";
    if (!same(v.upper, e.upper)) return "upper endpoint differs";
    if (e.branch == VerdictBranch::SatEquivalent && v.degree) {
        if (!v.equality_witness) return "missing equality witness";
        if (!v.witness_report || !v.witness_report->passed) return "equality witness not verified";
    }
    if (e.branch == VerdictBranch::BisEquivalent && v.degree && !v.implies_recipe) return "missing implication recipe";
    return {};
}

/// Every (d, w) cell of the table for d <= 30, w <= 8, written out row by row.
inline Approximability expected_cell(int w, int d) {
    using A = Approximability;
    if (d == 1) return A::Fp;
    if (d == 2) return w == 2 ? A::Fp : A::Fpras;
    if (d == 3 && w <= 3) return A::Fpras;
    if (d <= 5) return w == 2 ? A::Ptas : A::Open;
    if (d <= 24) return A::McmcLikelyFails;
    return A::NoFprasUnlessNpEqRp;
}

} // namespace matrix
