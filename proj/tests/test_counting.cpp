#include "boolcsp/counting.hpp"
#include "boolcsp/errors.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <chrono>

using namespace boolcsp;
using fixture::C;
using fixture::V;

namespace {

BigInt big(std::uint64_t x) { return BigInt(x); }

std::vector<NamedRelation> affine_pool(std::mt19937_64& rng) {
    std::vector<NamedRelation> pool;
    for (int i = 0; i < 4; ++i) {
        const int arity = 1 + i % 3;
        Relation r = oracle::random_affine(arity, rng);
        pool.push_back({"a" + std::to_string(i), r});
    }
    pool.push_back({"eq", rel::eq(2)});
    pool.push_back({"neq", rel::neq()});
    return pool;
}

/// Each variable used at most once across all scopes. No constants: a
/// desugared constant has degree two.
CspInstance random_degree1(std::size_t n, std::mt19937_64& rng) {
    const std::vector<NamedRelation> pool{
        {"or", rel::or_(2)}, {"nand3", rel::nand(3)}, {"imp", rel::implies()}, {"one", rel::one()}};
    CspInstance inst;
    for (std::size_t i = 0; i < n; ++i) inst.add_variable("x" + std::to_string(i + 1));
    for (const auto& r : pool) inst.add_relation(r.name, r.relation);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t next = 0;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    while (true) {
        const auto& r = pool[pick(rng)];
        if (next + static_cast<std::size_t>(r.relation.arity()) > n) break;
        std::vector<Term> scope;
        for (int j = 0; j < r.relation.arity(); ++j)
            scope.push_back(V(order[next++]));
        inst.add_constraint(r.name, scope);
        if (rng() % 5 == 0) ++next;  // leave some variables free
    }
    return inst;
}

} // namespace

TEST_SUITE("counting") {

TEST_CASE("brute_force_count") {
    CHECK(brute_force_count(fixture::build(2, {{"or", rel::or_(2)}}, {{"or", {V(0), V(1)}}})) == 3);
    CHECK(brute_force_count(fixture::xi(2)) == 2);
    CHECK(brute_force_count(fixture::build(1, {{"zero", rel::zero()}, {"one", rel::one()}},
                                           {{"zero", {V(0)}}, {"one", {V(0)}}})) == 0);
    CHECK(brute_force_count(CspInstance{}) == 1);
    // Constants in scopes behave as pins.
    CHECK(brute_force_count(fixture::build(2, {{"or3", rel::or_(3)}}, {{"or3", {V(0), V(1), C(0)}}})) == 3);
}

TEST_CASE("budget") {
    const std::size_t saved = brute_force_budget();
    set_brute_force_budget(4);
    CHECK_THROWS_AS(brute_force_count(fixture::build(5, {}, {})), ResourceLimit);
    CHECK_THROWS_AS(hypergraph_is_count(Hypergraph(5)), ResourceLimit);
    set_brute_force_budget(saved);
    CHECK_THROWS_AS(set_brute_force_budget(0), InvalidArgument);
    CHECK_THROWS_AS(set_brute_force_budget(kMaxBruteForceVariables + 1), InvalidArgument);
}

TEST_CASE("degree") {
    const Relation r = rel::eq(2);
    CHECK(degree(fixture::build(1, {{"R", r}}, {{"R", {V(0), V(0)}}})) == 2);
    CHECK(degree(fixture::xi(4)) == 2);
    CHECK(degree(CspInstance{}) == 0);
    // A scope constant becomes a fresh variable with one extra pin occurrence.
    CHECK(degree(fixture::build(1, {{"or", rel::or_(2)}}, {{"or", {V(0), C(1)}}})) == 2);
    const auto desugared = desugar_constants(fixture::build(1, {{"or", rel::or_(2)}}, {{"or", {V(0), C(1)}}}));
    CHECK(desugared.variable_count() == 2);
    CHECK_FALSE(desugared.has_constants());
    CHECK(brute_force_count(desugared) == 2);
}

TEST_CASE("degree1_count") {
    auto inst = fixture::build(5, {{"or", rel::or_(2)}, {"nand", rel::nand(2)}},
                               {{"or", {V(0), V(1)}}, {"nand", {V(2), V(3)}}});
    CHECK(degree1_count(inst) == 18);
    CHECK(degree1_count(fixture::build(3, {}, {})) == 8);
    CHECK_THROWS_AS(degree1_count(fixture::build(1, {{"R", rel::eq(2)}}, {{"R", {V(0), V(0)}}})),
                    InvalidArgument);

    std::mt19937_64 rng(21);
    for (int i = 0; i < 100; ++i) {
        const auto x = random_degree1(4 + static_cast<std::size_t>(i % 16), rng);
        REQUIRE(degree(x) <= 1);
        CHECK(degree1_count(x) == brute_force_count(x));
    }
}

TEST_CASE("affine_count") {
    auto chain = fixture::build(3, {{"eq", rel::eq(2)}}, {{"eq", {V(0), V(1)}}, {"eq", {V(1), V(2)}}});
    CHECK(affine_count(chain) == 2);
    CHECK(affine_count(fixture::build(1, {{"neq", rel::neq()}}, {{"neq", {V(0), V(0)}}})) == 0);
    CHECK_THROWS_AS(affine_count(fixture::build(2, {{"or", rel::or_(2)}}, {{"or", {V(0), V(1)}}})),
                    InvalidArgument);

    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        const auto pool = affine_pool(rng);
        const std::size_t n = 3 + static_cast<std::size_t>(i % 18);
        const auto x = fixture::random_csp(n, n / 2 + static_cast<std::size_t>(i % 5), pool, rng, 0.1);
        CHECK(affine_count(x) == brute_force_count_serial(x));
    }
}

TEST_CASE("affine_count scales to hundreds of variables") {
    std::mt19937_64 rng(29);
    std::vector<NamedRelation> pool{{"eq", rel::eq(2)}, {"neq", rel::neq()}, {"xor3", oracle::relation_of(3, [](const std::vector<int>& b) {
                                                                                   return (b[0] ^ b[1] ^ b[2]) == 0;
                                                                               })}};
    const auto x = fixture::random_csp(200, 300, pool, rng);
    const auto start = std::chrono::steady_clock::now();
    const BigInt z = affine_count(x);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(secs < 1.0);
    CHECK((z == 0 || z >= 1));
}

TEST_CASE("hypergraph_is_count") {
    Hypergraph tri(3);
    tri.add_edge({0, 1});
    tri.add_edge({1, 2});
    tri.add_edge({0, 2});
    CHECK(hypergraph_is_count(tri) == 4);
    Hypergraph one(3);
    one.add_edge({0, 1, 2});
    CHECK(hypergraph_is_count(one) == 7);
    CHECK(hypergraph_is_count(Hypergraph(6)) == 64);
    Hypergraph loop(2);
    loop.add_edge({0});
    CHECK(hypergraph_is_count(loop) == 2);
    CHECK(tri.width() == 2);
    CHECK(tri.degree() == 2);
    CHECK_THROWS_AS(tri.add_edge({}), InvalidArgument);
    CHECK_THROWS_AS(tri.add_edge({3}), InvalidArgument);
}

TEST_CASE("parallel kernels agree with the serial references and the oracle") {
    std::mt19937_64 rng(31);
    const std::vector<NamedRelation> pool{{"or", rel::or_(2)},      {"nand3", rel::nand(3)}, {"imp", rel::implies()},
                                          {"neq", rel::neq()},      {"one", rel::one()},     {"odd", oracle::random_relation(3, rng)}};
    for (int i = 0; i < 60; ++i) {
        const std::size_t n = 1 + static_cast<std::size_t>(i % 14);
        const auto x = fixture::random_csp(n, n + static_cast<std::size_t>(i % 4), pool, rng, 0.1);
        const BigInt z = brute_force_count(x);
        CHECK(z == brute_force_count_serial(x));
        CHECK(z == big(oracle::count(x)));

        const std::size_t k = std::min<std::size_t>(n, 3);
        std::vector<std::size_t> dist(k);
        std::iota(dist.begin(), dist.end(), 0);
        const SolutionTally t = tally_solutions(x, dist);
        CHECK(t == tally_solutions_serial(x, dist));
        const auto [z0, z1, other] = oracle::split_count(x, static_cast<int>(k));
        CHECK(t.all_zero == z0);
        CHECK(t.all_one == z1);
        CHECK(t.stray == other);
        CHECK(t.total == z0 + z1 + other);

        const Hypergraph h = oracle::random_hypergraph(n, 3, 3, 2 * n, rng);
        CHECK(hypergraph_is_count(h) == hypergraph_is_count_serial(h));
        CHECK(hypergraph_is_count(h) == big(oracle::is_count(h)));
    }
}

} // TEST_SUITE
