#pragma once

// Small builders shared by the test files.

#include "boolcsp/csp.hpp"
#include "boolcsp/relation.hpp"

#include <random>
#include <string>
#include <utility>
#include <vector>

namespace fixture {

using boolcsp::CspInstance;
using boolcsp::NamedRelation;
using boolcsp::Relation;
using boolcsp::Term;

inline Term V(std::size_t v) { return Term::variable(v); }
inline Term C(int bit) { return Term::constant(bit); }

struct Use {
    std::string relation;
    std::vector<Term> scope;
};

/// Variables x1..xn (indices 0..n-1) and the listed constraints.
inline CspInstance build(std::size_t n, const std::vector<NamedRelation>& rels, const std::vector<Use>& uses) {
    CspInstance inst;
    for (std::size_t i = 0; i < n; ++i) inst.add_variable("x" + std::to_string(i + 1));
    for (const auto& r : rels) inst.add_relation(r.name, r.relation);
    for (const auto& u : uses) inst.add_constraint(u.relation, u.scope);
    return inst;
}

/// m constraints over n variables drawn from `pool`, scopes uniform
/// (repeats allowed); with probability `constants` a scope entry is a constant.
inline CspInstance random_csp(std::size_t n, std::size_t m, const std::vector<NamedRelation>& pool,
                              std::mt19937_64& rng, double constants = 0.0) {
    CspInstance inst;
    for (std::size_t i = 0; i < n; ++i) inst.add_variable("x" + std::to_string(i + 1));
    for (const auto& r : pool) inst.add_relation(r.name, r.relation);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1), var(0, n - 1);
    std::bernoulli_distribution constant(constants), bit(0.5);
    for (std::size_t c = 0; c < m; ++c) {
        const auto& r = pool[pick(rng)];
        std::vector<Term> scope;
        for (int j = 0; j < r.relation.arity(); ++j)
            scope.push_back(constant(rng) ? C(bit(rng) ? 1 : 0) : V(var(rng)));
        inst.add_constraint(r.name, scope);
    }
    return inst;
}

/// Random instance in which every variable occurs at most `max_degree`
/// times; the attempt budget bounds the constraint count.
inline CspInstance random_bounded_csp(std::size_t n, std::size_t attempts, std::size_t max_degree,
                                      const std::vector<NamedRelation>& pool, std::mt19937_64& rng) {
    CspInstance inst;
    for (std::size_t i = 0; i < n; ++i) inst.add_variable("x" + std::to_string(i + 1));
    for (const auto& r : pool) inst.add_relation(r.name, r.relation);
    std::vector<std::size_t> occ(n, 0);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1), var(0, n - 1);
    for (std::size_t a = 0; a < attempts; ++a) {
        const auto& r = pool[pick(rng)];
        std::vector<Term> scope;
        std::vector<std::size_t> extra(n, 0);
        bool ok = true;
        for (int j = 0; j < r.relation.arity(); ++j) {
            const std::size_t v = var(rng);
            ok = ok && occ[v] + ++extra[v] <= max_degree;
            scope.push_back(V(v));
        }
        if (!ok) continue;
        for (std::size_t v = 0; v < n; ++v) occ[v] += extra[v];
        inst.add_constraint(r.name, scope);
    }
    return inst;
}

/// OR(x_i, y_i) and NAND(y_i, x_{i+1}) for i = 1..k, indices mod k; the x
/// block is variables 0..k-1, the y block k..2k-1.
inline CspInstance xi(int k) {
    CspInstance inst;
    for (int i = 1; i <= k; ++i) inst.add_variable("x" + std::to_string(i));
    for (int i = 1; i <= k; ++i) inst.add_variable("y" + std::to_string(i));
    inst.add_relation("or", boolcsp::rel::or_(2));
    inst.add_relation("nand", boolcsp::rel::nand(2));
    const auto K = static_cast<std::size_t>(k);
    for (std::size_t i = 0; i < K; ++i) {
        inst.add_constraint("or", {V(i), V(K + i)});
        inst.add_constraint("nand", {V(K + i), V((i + 1) % K)});
    }
    return inst;
}

} // namespace fixture
