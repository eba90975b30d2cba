#pragma once

#include "boolcsp/bigint.hpp"
#include "boolcsp/csp.hpp"
#include "boolcsp/gadgets.hpp"
#include "boolcsp/relation.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace boolcsp {

/// A CSP produced from some input: Z(instance) = multiplier * (count of
/// the input), with every variable of degree at most degree_bound.
struct CspReduction {
    CspInstance instance;
    BigInt multiplier = 1;
    std::size_t degree_bound = 0;
};

/// A hypergraph produced from a CSP: Z(input) = multiplier * IS(graph).
/// The multiplier is 0 exactly when the input is contradictory.
struct HisReduction {
    Hypergraph graph;
    BigInt multiplier = 1;
    std::size_t degree_bound = 0;
    std::size_t width_bound = 0;
    std::vector<std::string> vertex_names;
};

using WitnessFactory = std::function<GadgetWitness(int k)>;

/// Splits every variable with more than d occurrences into one copy per
/// occurrence, tied together by an Eq_c gadget from the factory. The
/// factory is only invoked when some variable needs splitting.
CspReduction inflate_degree(const CspInstance& inst, int d, const WitnessFactory& factory);
/// Uses equality_witness(language, k, d) as the factory.
CspReduction inflate_degree(const CspInstance& inst, std::span<const NamedRelation> language, int d);

/// One variable v<i> per vertex; each edge becomes OR_w over its vertices
/// padded with constant zeros.
CspInstance his_to_orcsp(const Hypergraph& h, int w);

/// Accepts constraints whose relation is OR_s for some s >= 2, {0} or {1}.
/// Zero-pinned vertices leave their edges, one-pinned vertices delete
/// them, and pinned vertices are dropped from the graph.
HisReduction orcsp_to_his(const CspInstance& inst);

/// Every relation used must be OR-conj (or every one NAND-conj). Each
/// constraint is replaced by its normalized formula, clauses padded to
/// the common width, and the result goes through orcsp_to_his (after
/// complementing all variables in the NAND case). degree_bound is
/// k * degree(inst) for the largest repetition k.
HisReduction relationcsp_to_his(const CspInstance& inst);

/// Each edge becomes one R-constraint: the first widest clause of R's
/// normalized formula receives the edge's vertices and padding constants,
/// pinned columns their pins, and the remaining columns the value that
/// satisfies every other clause.
CspReduction his_to_relationcsp(const Hypergraph& h, const NamedRelation& r);
CspReduction his_to_relationcsp(const Hypergraph& h, const Relation& r);

/// Recipe defining R_-> from an IM-conj, non-affine relation. Columns in
/// the equivalence class of either kept column are projected and every
/// other column is pinned, so R(x..x, y..y, consts) is x -> y.
PppRecipe imconj_extract_implies(const Relation& r);

} // namespace boolcsp
