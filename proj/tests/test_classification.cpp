#include "boolcsp/classification.hpp"
#include "boolcsp/classify.hpp"
#include "boolcsp/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace boolcsp;

namespace {

Relation rs(std::initializer_list<std::string_view> rows) { return Relation::from_strings(rows); }

// (x1=0) & (x2=1) & OR(x3,x4,x5,x6) & OR(x5,x7)
Relation example_formula_relation() {
    return oracle::relation_of(7, [](const std::vector<int>& b) {
        return b[0] == 0 && b[1] == 1 && (b[2] || b[3] || b[4] || b[5]) && (b[4] || b[6]);
    });
}

void for_all_relations(int max_arity, const std::function<void(const Relation&)>& f) {
    for (int n = 1; n <= max_arity; ++n)
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << (1U << n)); ++m) f(oracle::from_mask(n, m));
}

} // namespace

TEST_SUITE("classification") {

TEST_CASE("is_affine") {
    CHECK(is_affine(rel::eq(2)));
    CHECK_FALSE(is_affine(rel::or_(2)));
    CHECK(is_affine(rel::empty(2)));
    CHECK(is_affine(rel::neq()));
    CHECK_FALSE(is_affine(rel::implies()));
}

TEST_CASE("is_affine agrees with the affine-span and triple-XOR oracles") {
    for_all_relations(3, [](const Relation& r) {
        const bool a = is_affine(r);
        CHECK(a == oracle::equals_affine_span(r));
        CHECK(a == oracle::triple_xor_closed(r));
    });
    std::mt19937_64 rng(3);
    for (int i = 0; i < 300; ++i) {
        const Relation r = i % 2 ? oracle::random_affine(4 + i % 2, rng) : oracle::random_relation(4, rng);
        CHECK(is_affine(r) == oracle::equals_affine_span(r));
    }
}

TEST_CASE("affine_system") {
    const AffineSystem eq3 = affine_system(rel::eq(3));
    CHECK(eq3.row_reduced());
    CHECK(eq3.solutions() == rel::eq(3));
    CHECK(eq3.equations.size() == 2);
    // Lowest-index pivots: x1 and x2 each appear in one equation only.
    CHECK(eq3.equations[0] == AffineEquation{{0, 2}, 0});
    CHECK(eq3.equations[1] == AffineEquation{{1, 2}, 0});

    const AffineSystem one = affine_system(rel::one());
    REQUIRE(one.equations.size() == 1);
    CHECK(one.equations[0] == AffineEquation{{0}, 1});

    const AffineSystem neq = affine_system(rel::neq());
    REQUIRE(neq.equations.size() == 1);
    CHECK(neq.equations[0] == AffineEquation{{0, 1}, 1});

    const AffineSystem none = affine_system(rel::empty(2));
    REQUIRE(none.equations.size() == 1);
    CHECK(none.equations[0] == AffineEquation{{}, 1});
    CHECK(none.solutions().empty());

    CHECK(affine_system(Relation::full(3)).equations.empty());
    CHECK_THROWS_AS(affine_system(rel::or_(2)), NotAffine);

    for_all_relations(3, [](const Relation& r) {
        if (!is_affine(r)) return;
        const AffineSystem s = affine_system(r);
        CHECK(s.row_reduced());
        CHECK(s.solutions() == r);
    });
}

TEST_CASE("pseudo-monotone") {
    CHECK(is_pseudo_monotone(rel::or_(2)));
    CHECK_FALSE(is_pseudo_monotone(rel::implies()));
    CHECK(is_pseudo_antitone(rel::nand(2)));
    // Constant columns are ignored.
    CHECK(is_pseudo_monotone(rs({"011", "101", "111"})));
    CHECK_FALSE(is_pseudo_monotone(rs({"001", "011", "101"})));
    for_all_relations(3, [](const Relation& r) {
        CHECK(is_pseudo_monotone(r) == is_pseudo_antitone(bitwise_complement(r)));
    });
}

TEST_CASE("normalize_orconj") {
    const NormalizedFormula f = normalize_orconj(rel::or_(3));
    CHECK(f.pins.empty());
    CHECK(f.clauses == std::vector<std::vector<int>>{{0, 1, 2}});
    CHECK(f.width() == 3);
    CHECK(f.repetition() == 1);
    CHECK_THROWS_AS(normalize_orconj(rel::nand(2)), NotInClass);
    CHECK_THROWS_AS(normalize_nandconj(rel::or_(2)), NotInClass);

    const NormalizedFormula g = normalize_nandconj(rel::nand(3));
    CHECK(g.kind == FormulaKind::NandConj);
    CHECK(g.clauses == std::vector<std::vector<int>>{{0, 1, 2}});
}

TEST_CASE("a mixed pins-and-clauses formula round-trips") {
    const NormalizedFormula built =
        normalize_formula(FormulaKind::OrConj, 7, {{0, 0}, {1, 1}}, {{2, 3, 4, 5}, {4, 6}});
    CHECK(built.evaluate() == example_formula_relation());
    const NormalizedFormula back = normalize_orconj(built.evaluate());
    CHECK(back == built);
    CHECK(back.width() == 4);
    CHECK(back.repetition() == 2);
}

TEST_CASE("normalize_formula rewriting steps") {
    // A clause with a 1-pinned variable disappears.
    auto f = normalize_formula(FormulaKind::OrConj, 3, {{0, 1}}, {{0, 1}});
    CHECK(f.clauses.empty());
    CHECK(f.pins == std::map<int, int>{{0, 1}});
    // 0-pinned variables leave clauses; the unit clause becomes a pin.
    f = normalize_formula(FormulaKind::OrConj, 3, {{0, 0}}, {{0, 1}});
    CHECK(f.clauses.empty());
    CHECK(f.pins == std::map<int, int>{{0, 0}, {1, 1}});
    // Repeated arguments collapse, subsumed clauses go.
    f = normalize_formula(FormulaKind::OrConj, 3, {}, {{0, 0, 1}, {0, 1, 2}});
    CHECK(f.clauses == std::vector<std::vector<int>>{{0, 1}});
    // Conflicting pins.
    f = normalize_formula(FormulaKind::OrConj, 2, {{0, 0}}, {{0}});
    CHECK(f.unsatisfiable);
    CHECK(f.evaluate().empty());
    // NAND: a 0-pinned variable satisfies the clause.
    f = normalize_formula(FormulaKind::NandConj, 3, {{2, 0}}, {{0, 1, 2}});
    CHECK(f.clauses.empty());
}

TEST_CASE("normal forms never contain unit clauses") {
    for_all_relations(3, [](const Relation& r) {
        if (!is_orconj(r)) return;
        for (const auto& c : normalize_orconj(r).clauses) CHECK(c.size() >= 2);
    });
}

TEST_CASE("OR-conj and NAND-conj formulas are dual") {
    for_all_relations(3, [](const Relation& r) {
        const bool o = is_orconj(r);
        CHECK(o == is_pseudo_monotone(r));
        CHECK(o == is_nandconj(bitwise_complement(r)));
        if (!o || r.empty()) return;
        const auto f = normalize_orconj(r);
        const auto g = normalize_nandconj(bitwise_complement(r));
        CHECK(f.clauses == g.clauses);
        REQUIRE(f.pins.size() == g.pins.size());
        for (auto [v, c] : f.pins) CHECK(g.pins.at(v) == 1 - c);
    });
}

TEST_CASE("normalized OR formulas are unique up to arity 3") {
    std::map<std::pair<int, std::vector<Tuple>>, int> seen;
    for (int n = 1; n <= 3; ++n)
        for (const auto& f : oracle::all_normalized_or_formulas(n)) {
            const Relation r = oracle::evaluate_or(n, f);
            const auto key = std::make_pair(n, r.tuples());
            ++seen[key];
            const NormalizedFormula mine = normalize_orconj(r);
            CHECK(mine.pins == f.pins);
            CHECK(mine.clauses == f.clauses);
        }
    for (const auto& [key, count] : seen) CHECK(count == 1);
}

TEST_CASE("normalize_imconj") {
    const NormalizedFormula f = normalize_imconj(rel::implies());
    CHECK(f.pins.empty());
    CHECK(f.implications == std::vector<std::pair<int, int>>{{0, 1}});
    const NormalizedFormula e = normalize_imconj(rel::eq(2));
    CHECK(e.implications == std::vector<std::pair<int, int>>{{0, 1}, {1, 0}});
    CHECK_THROWS_AS(normalize_imconj(rel::or_(2)), NotInClass);
    CHECK(normalize_imconj(rs({"10", "11"})).pins == std::map<int, int>{{0, 1}});
}

TEST_CASE("equivalent IM-conj formulas for the 3-cycle") {
    const auto cycle = normalize_implications(3, {}, {{0, 1}, {1, 2}, {2, 0}}).evaluate();
    const auto reversed = normalize_implications(3, {}, {{0, 2}, {2, 1}, {1, 0}}).evaluate();
    const auto pairs = normalize_implications(3, {}, {{0, 1}, {1, 0}, {0, 2}, {2, 0}}).evaluate();
    CHECK(cycle == rel::eq(3));
    CHECK(reversed == rel::eq(3));
    CHECK(pairs == rel::eq(3));
    // A near miss: x->z, z->y, y->z only ties y and z together.
    const auto near_miss = normalize_implications(3, {}, {{0, 2}, {2, 1}, {1, 2}}).evaluate();
    CHECK(near_miss == rs({"000", "011", "111"}));

    const NormalizedFormula maximal = normalize_imconj(rel::eq(3));
    CHECK(maximal.implications.size() == 6);
    CHECK(maximal.evaluate() == rel::eq(3));
}

TEST_CASE("normalize_implications resolves pinned endpoints") {
    auto f = normalize_implications(3, {{1, 0}}, {{0, 1}, {1, 2}, {2, 2}});
    CHECK(f.implications.empty());
    CHECK(f.pins == std::map<int, int>{{0, 0}, {1, 0}});
    f = normalize_implications(2, {{0, 1}}, {{0, 1}});
    CHECK(f.pins == std::map<int, int>{{0, 1}, {1, 1}});
}

TEST_CASE("IM-conj membership matches a definition-level oracle") {
    // R is IM-conj iff it is closed under coordinatewise min and max and
    // contains its constant columns; for arity <= 3 we instead compare with
    // the set of relations generated by every pins-and-implications formula.
    std::set<std::pair<int, std::vector<Tuple>>> generated;
    for (int n = 1; n <= 3; ++n) {
        std::vector<std::pair<int, int>> all;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (a != b) all.emplace_back(a, b);
        int pow3 = 1;
        for (int i = 0; i < n; ++i) pow3 *= 3;
        for (int code = 0; code < pow3; ++code)
            for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << all.size()); ++pick) {
                const Relation r = oracle::relation_of(n, [&](const std::vector<int>& b) {
                    int c = code;
                    for (int v = 0; v < n; ++v, c /= 3)
                        if (c % 3 < 2 && b[static_cast<std::size_t>(v)] != c % 3) return false;
                    for (std::size_t i = 0; i < all.size(); ++i)
                        if ((pick >> i) & 1U)
                            if (b[static_cast<std::size_t>(all[i].first)] && !b[static_cast<std::size_t>(all[i].second)])
                                return false;
                    return true;
                });
                generated.insert({n, r.tuples()});
            }
    }
    for_all_relations(3, [&](const Relation& r) {
        if (r.empty()) return;
        CHECK(is_imconj(r) == (generated.count({r.arity(), r.tuples()}) > 0));
    });
}

TEST_CASE("classify_relation") {
    const RelationClass imp = classify_relation(rel::implies());
    CHECK_FALSE(imp.is_affine);
    CHECK(imp.imconj.has_value());
    REQUIRE(imp.equality_witness.has_value());
    CHECK(imp.witness_report->passed);

    const RelationClass eq3 = classify_relation(rel::eq(3));
    CHECK(eq3.is_affine);
    CHECK_FALSE(eq3.orconj.has_value());
    CHECK_FALSE(eq3.nandconj.has_value());
    CHECK(eq3.equality_witness.has_value());

    const RelationClass nand3 = classify_relation(rel::nand(3));
    REQUIRE(nand3.nandconj.has_value());
    CHECK(nand3.width == 3);
    CHECK_FALSE(nand3.equality_witness.has_value());

    const RelationClass ex = classify_relation(example_formula_relation());
    CHECK(ex.width == 4);
    CHECK(ex.repetition == 2);
}

} // TEST_SUITE
