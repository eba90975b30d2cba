#pragma once

#include "boolcsp/relation.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace boolcsp {

enum class FormulaKind { OrConj, NandConj, ImConj };

std::string to_string(FormulaKind kind);

/// Pins plus OR clauses, NAND clauses or binary implications over the
/// variables x1..x_arity (stored zero-based).
///
/// A normalized formula never mentions a pinned variable in a clause or
/// implication, has distinct clause arguments, no clause of size < 2, no
/// clause contained in another, and no implication x->x. Clauses are kept
/// sorted, so two normalized formulas are equal iff they are identical.
///
/// `unsatisfiable` marks the contradictory formula (conflicting pins or
/// an emptied clause); it is the only way to describe the empty relation.
struct NormalizedFormula {
    FormulaKind kind = FormulaKind::OrConj;
    int arity = 1;
    std::map<int, int> pins;
    std::vector<std::vector<int>> clauses;
    std::vector<std::pair<int, int>> implications;
    bool unsatisfiable = false;

    Relation evaluate() const;

    /// Largest clause size; 0 when there are no clauses. Implications count as 2.
    int width() const;
    /// Greatest number of pin/clause/implication occurrences of one variable.
    int repetition() const;

    friend bool operator==(const NormalizedFormula&, const NormalizedFormula&) = default;
};

/// Rewrites an arbitrary pins-and-clauses formula into normal form:
/// deduplicate clause arguments, drop clauses satisfied by a pin, strip
/// pinned-away arguments, promote unit clauses to pins, drop subsumed
/// clauses, repeated until nothing changes.
NormalizedFormula normalize_formula(FormulaKind kind, int arity, std::map<int, int> pins,
                                    std::vector<std::vector<int>> clauses);

/// Pins-and-implications rewriting: drop x->x, resolve implications that
/// touch a pinned variable into pins or nothing.
NormalizedFormula normalize_implications(int arity, std::map<int, int> pins,
                                         std::vector<std::pair<int, int>> implications);

struct AffineEquation {
    std::vector<int> vars;  // sorted, zero-based
    int constant = 0;

    friend bool operator==(const AffineEquation&, const AffineEquation&) = default;
};

/// Row-reduced GF(2) system: each equation's smallest variable is its
/// pivot and appears in no other equation. The empty relation is the
/// single equation 0 = 1.
struct AffineSystem {
    int arity = 1;
    std::vector<AffineEquation> equations;

    Relation solutions() const;
    bool row_reduced() const;

    friend bool operator==(const AffineSystem&, const AffineSystem&) = default;
};

bool is_affine(const Relation& r);
AffineSystem affine_system(const Relation& r);

bool is_pseudo_monotone(const Relation& r);
bool is_pseudo_antitone(const Relation& r);

/// Unique normalized OR-conj formula; NotInClass if r is not OR-conj.
NormalizedFormula normalize_orconj(const Relation& r);
/// Unique normalized NAND-conj formula; NotInClass if r is not NAND-conj.
NormalizedFormula normalize_nandconj(const Relation& r);
/// Maximal normalized IM-conj formula (every pin and implication that all
/// of r satisfies); NotInClass if that formula defines a strict superset.
NormalizedFormula normalize_imconj(const Relation& r);

bool is_orconj(const Relation& r);
bool is_nandconj(const Relation& r);
bool is_imconj(const Relation& r);

} // namespace boolcsp
