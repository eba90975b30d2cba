#pragma once

#include "boolcsp/bigint.hpp"
#include "boolcsp/counting.hpp"
#include "boolcsp/csp.hpp"
#include "boolcsp/relation.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace boolcsp {

enum class BinaryTarget { Eq, Neq, Implies, Or, Nand };

std::string to_string(BinaryTarget t);
Relation target_relation(BinaryTarget t);

/// Searches all ordered column pairs and all pin/project choices for the
/// remaining columns. The returned recipe uses the identity permutation,
/// keeps exactly the two chosen columns (so the result is the target in
/// its own orientation) and is pin-maximal: pinning any further column
/// loses the target.
std::optional<PppRecipe> find_binary_ppp(const Relation& r, BinaryTarget target);

/// Numbers of source tuples extending each relevant two-column prefix
/// (together with the recipe's pins).
struct ExtensionCounts {
    std::string relation;
    BinaryTarget target = BinaryTarget::Eq;
    PppRecipe recipe;
    std::uint64_t alpha = 0;
    std::uint64_t beta = 0;
    std::uint64_t gamma = 0;
};

enum class GadgetRoute { EqualityCycle, ImplicationCycle, DisequalityChain, OrNandXi };

std::string to_string(GadgetRoute r);

/// An instance template over distinguished variables x1..xk (variables
/// 0..k-1 of `instance`) and auxiliaries, with exactly `multiplicity`
/// solutions for each constant value of the distinguished block and none
/// otherwise.
struct GadgetWitness {
    std::vector<NamedRelation> language;
    CspInstance instance;
    int k = 2;
    int d = 3;
    BigInt multiplicity = 1;
    std::map<std::string, std::size_t> degree_profile;
    GadgetRoute route = GadgetRoute::EqualityCycle;
    std::vector<ExtensionCounts> extensions;

    std::vector<std::size_t> distinguished() const;
};

struct GadgetReport {
    SolutionTally tally;
    BigInt multiplicity;
    std::size_t template_degree = 0;
    std::size_t distinguished_degree = 0;
    bool counts_match = false;      // all-zero and all-one counts both equal m
    bool stray_free = false;
    bool template_degree_ok = false;
    bool distinguished_degree_ok = false;
    bool passed = false;
};

GadgetWitness simulate_eq_from_binary(const NamedRelation& r, BinaryTarget target, const PppRecipe& recipe, int k);
GadgetWitness simulate_eq_from_binary(const Relation& r, BinaryTarget target, const PppRecipe& recipe, int k);

GadgetWitness simulate_eq_or_nand(const NamedRelation& or_side, const NamedRelation& nand_side, int k);
GadgetWitness simulate_eq_or_nand(const Relation& or_side, const Relation& nand_side, int k);

GadgetWitness simulate_eq_valid(const NamedRelation& r, int k);
GadgetWitness simulate_eq_valid(const Relation& r, int k);

/// Witness for a single relation that is neither OR-conj nor NAND-conj,
/// trying an equality projection, then implication, then disequality,
/// then the OR/NAND template with the relation on both sides.
GadgetWitness relation_equality_witness(const NamedRelation& r, int k);

/// Verified witness that the language d-simulates Eq_k. NoWitness when
/// every relation is OR-conj or NAND-conj and the language lacks a
/// width >= 2 relation of each kind.
GadgetWitness equality_witness(std::span<const NamedRelation> language, int k, int d = 3);

/// Brute-force check of the witness; ResourceLimit past the budget.
GadgetReport verify_gadget(const GadgetWitness& w);

} // namespace boolcsp
