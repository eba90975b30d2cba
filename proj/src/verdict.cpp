#include "boolcsp/verdict.hpp"

#include "boolcsp/errors.hpp"
#include "boolcsp/reductions.hpp"

#include <algorithm>

namespace boolcsp {

std::string to_string(VerdictBranch b) {
    switch (b) {
    case VerdictBranch::FpAffine: return "FP-affine";
    case VerdictBranch::BisEquivalent: return "BIS-equivalent";
    case VerdictBranch::HisInterval: return "HIS-interval";
    case VerdictBranch::SatEquivalent: return "SAT-equivalent";
    case VerdictBranch::FpDegreeOne: return "FP-degree-1";
    case VerdictBranch::OpenDegreeTwo: return "open-degree-2";
    }
    return "?";
}

std::string to_string(Approximability a) {
    switch (a) {
    case Approximability::Fp: return "FP";
    case Approximability::Fpras: return "FPRAS";
    case Approximability::Ptas: return "PTAS";
    case Approximability::McmcLikelyFails: return "MCMC-likely-fails";
    case Approximability::NoFprasUnlessNpEqRp: return "no-FPRAS-unless-NP=RP";
    case Approximability::Open: return "open";
    }
    return "?";
}

const std::vector<Table1Row>& table1_rows() {
    static const std::vector<Table1Row> rows = {
        {1, 1, 2, std::nullopt, Approximability::Fp},
        {2, 2, 2, 2, Approximability::Fp},
        {2, 2, 3, std::nullopt, Approximability::Fpras},
        {3, 3, 2, 3, Approximability::Fpras},
        {3, 5, 2, 2, Approximability::Ptas},
        {6, 24, 2, std::nullopt, Approximability::McmcLikelyFails},
        {25, std::nullopt, 2, std::nullopt, Approximability::NoFprasUnlessNpEqRp},
    };
    return rows;
}

Approximability table1_annotation(int w, int d) {
    if (w < 2 || d < 1) throw InvalidArgument("table lookup needs w >= 2 and d >= 1");
    for (const auto& row : table1_rows()) {
        const bool d_ok = d >= row.d_min && (!row.d_max || d <= *row.d_max);
        const bool w_ok = w >= row.w_min && (!row.w_max || w <= *row.w_max);
        if (d_ok && w_ok) return row.annotation;
    }
    return Approximability::Open;
}

std::string HisEndpoint::problem() const { return "#" + std::to_string(w) + "HIS_" + std::to_string(d); }

namespace {

LanguageVerdict start(std::span<const NamedRelation> language, std::optional<int> degree) {
    if (language.empty()) throw InvalidArgument("the language is empty");
    LanguageVerdict v;
    v.degree = degree;
    v.language.assign(language.begin(), language.end());
    for (const auto& nr : language) v.classes.push_back(classify_relation(nr.relation, 3, nr.name));
    return v;
}

bool all_affine(const LanguageVerdict& v) {
    return std::all_of(v.classes.begin(), v.classes.end(), [](const auto& c) { return c.is_affine; });
}

bool all_imconj(const LanguageVerdict& v) {
    return std::all_of(v.classes.begin(), v.classes.end(), [](const auto& c) { return c.imconj.has_value(); });
}

} // namespace

LanguageVerdict classify_language(std::span<const NamedRelation> language) {
    LanguageVerdict v = start(language, std::nullopt);
    if (all_affine(v))
        v.branch = VerdictBranch::FpAffine;
    else if (all_imconj(v))
        v.branch = VerdictBranch::BisEquivalent;
    else
        v.branch = VerdictBranch::SatEquivalent;
    return v;
}

LanguageVerdict classify_language_bounded(std::span<const NamedRelation> language, int d) {
    if (d < 3) throw OutOfScope("the bounded-degree classification starts at d = 3");
    LanguageVerdict v = start(language, d);

    if (all_affine(v)) {
        v.branch = VerdictBranch::FpAffine;
        return v;
    }
    if (all_imconj(v)) {
        v.branch = VerdictBranch::BisEquivalent;
        for (std::size_t i = 0; i < v.classes.size(); ++i)
            if (!v.classes[i].is_affine) {
                v.implies_relation = v.language[i].name;
                v.implies_recipe = imconj_extract_implies(v.language[i].relation);
                break;
            }
        return v;
    }

    const bool all_or = std::all_of(v.classes.begin(), v.classes.end(), [](const auto& c) { return c.orconj.has_value(); });
    const bool all_nand =
        std::all_of(v.classes.begin(), v.classes.end(), [](const auto& c) { return c.nandconj.has_value(); });
    if (all_or || all_nand) {
        int w = 0, k = 1;
        for (const auto& c : v.classes) {
            const auto& f = all_or ? *c.orconj : *c.nandconj;
            w = std::max(w, f.width());
            k = std::max(k, f.repetition());
        }
        v.branch = VerdictBranch::HisInterval;
        v.width = w;
        v.repetition = k;
        v.lower = HisEndpoint{w, d, table1_annotation(w, d)};
        v.upper = HisEndpoint{w, k * d, table1_annotation(w, k * d)};
        v.no_fpras_unless_np_eq_rp = v.lower->annotation == Approximability::NoFprasUnlessNpEqRp;
        return v;
    }

    v.branch = VerdictBranch::SatEquivalent;
    v.equality_witness = equality_witness(language, 3, d);
    if (v.equality_witness->instance.variable_count() <= brute_force_budget())
        v.witness_report = verify_gadget(*v.equality_witness);
    v.no_fpras_unless_np_eq_rp = d >= 25;
    return v;
}

LanguageVerdict classify_language_at_degree(std::span<const NamedRelation> language, int d) {
    if (d < 1) throw InvalidArgument("degree bound must be at least 1");
    if (d >= 3) return classify_language_bounded(language, d);
    LanguageVerdict v = start(language, d);
    if (d == 1)
        v.branch = VerdictBranch::FpDegreeOne;
    else
        v.branch = all_affine(v) ? VerdictBranch::FpAffine : VerdictBranch::OpenDegreeTwo;
    return v;
}

} // namespace boolcsp
