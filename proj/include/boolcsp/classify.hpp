#pragma once

#include "boolcsp/classification.hpp"
#include "boolcsp/gadgets.hpp"

#include <optional>

namespace boolcsp {

/// Everything the library knows about one relation. At least one of
/// orconj, nandconj and equality_witness is present.
struct RelationClass {
    bool is_affine = false;
    std::optional<AffineSystem> affine;
    std::optional<NormalizedFormula> orconj;
    std::optional<NormalizedFormula> nandconj;
    std::optional<NormalizedFormula> imconj;
    std::optional<GadgetWitness> equality_witness;
    std::optional<GadgetReport> witness_report;
    // From the OR-conj formula when present, else the NAND-conj one.
    std::optional<int> width;
    std::optional<int> repetition;
};

/// Fills every membership flag; when the relation is neither OR-conj nor
/// NAND-conj, synthesizes an Eq_k witness and verifies it.
RelationClass classify_relation(const Relation& r, int k = 3, const std::string& name = "R");

} // namespace boolcsp
