#pragma once

#include "boolcsp/classify.hpp"
#include "boolcsp/csp.hpp"
#include "boolcsp/gadgets.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace boolcsp {

enum class VerdictBranch {
    FpAffine,
    BisEquivalent,
    HisInterval,
    SatEquivalent,
    FpDegreeOne,    // d = 1
    OpenDegreeTwo,  // d = 2, non-affine
};

std::string to_string(VerdictBranch b);

enum class Approximability { Fp, Fpras, Ptas, McmcLikelyFails, NoFprasUnlessNpEqRp, Open };

std::string to_string(Approximability a);

/// One row of the #wHIS_d approximability table; an absent upper end means
/// unbounded.
struct Table1Row {
    int d_min;
    std::optional<int> d_max;
    int w_min;
    std::optional<int> w_max;
    Approximability annotation;
};

const std::vector<Table1Row>& table1_rows();

/// First matching row in table order; Open when no row covers (w, d).
Approximability table1_annotation(int w, int d);

struct HisEndpoint {
    int w = 2;
    int d = 3;
    Approximability annotation = Approximability::Open;

    std::string problem() const;  // e.g. "#3HIS_3"
};

struct LanguageVerdict {
    std::optional<int> degree;  // absent: unbounded degree
    VerdictBranch branch = VerdictBranch::FpAffine;

    std::optional<int> width;
    std::optional<int> repetition;
    std::optional<HisEndpoint> lower;
    std::optional<HisEndpoint> upper;

    bool no_fpras_unless_np_eq_rp = false;

    std::vector<NamedRelation> language;
    std::vector<RelationClass> classes;  // parallel to language

    std::optional<GadgetWitness> equality_witness;  // SAT branch at bounded degree
    std::optional<GadgetReport> witness_report;
    std::optional<std::string> implies_relation;  // BIS branch at bounded degree
    std::optional<PppRecipe> implies_recipe;
};

/// Unbounded degree: FP-affine, BIS-equivalent or SAT-equivalent.
LanguageVerdict classify_language(std::span<const NamedRelation> language);

/// Degree d >= 3; OutOfScope below that.
LanguageVerdict classify_language_bounded(std::span<const NamedRelation> language, int d);

/// Any d >= 1: d = 1 is always FP, d = 2 is FP for affine languages and
/// otherwise reported as open, d >= 3 defers to classify_language_bounded.
LanguageVerdict classify_language_at_degree(std::span<const NamedRelation> language, int d);

} // namespace boolcsp
