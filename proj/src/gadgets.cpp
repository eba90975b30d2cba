#include "boolcsp/gadgets.hpp"

#include "boolcsp/classification.hpp"
#include "boolcsp/errors.hpp"

#include <algorithm>
#include <numeric>

namespace boolcsp {

std::string to_string(BinaryTarget t) {
    switch (t) {
    case BinaryTarget::Eq: return "eq";
    case BinaryTarget::Neq: return "neq";
    case BinaryTarget::Implies: return "imp";
    case BinaryTarget::Or: return "or";
    case BinaryTarget::Nand: return "nand";
    }
    return "?";
}

Relation target_relation(BinaryTarget t) {
    switch (t) {
    case BinaryTarget::Eq: return rel::eq(2);
    case BinaryTarget::Neq: return rel::neq();
    case BinaryTarget::Implies: return rel::implies();
    case BinaryTarget::Or: return rel::or_(2);
    case BinaryTarget::Nand: return rel::nand(2);
    }
    throw InvalidArgument("unknown binary target");
}

std::string to_string(GadgetRoute r) {
    switch (r) {
    case GadgetRoute::EqualityCycle: return "equality-cycle";
    case GadgetRoute::ImplicationCycle: return "implication-cycle";
    case GadgetRoute::DisequalityChain: return "disequality-chain";
    case GadgetRoute::OrNandXi: return "or-nand-xi";
    }
    return "?";
}

std::vector<std::size_t> GadgetWitness::distinguished() const {
    std::vector<std::size_t> v(static_cast<std::size_t>(k));
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
}

namespace {

// Bit 2*a+b of a pair mask stands for the pair ab.
unsigned pair_mask(const Relation& binary) {
    unsigned m = 0;
    binary.for_each([&](Tuple t) { m |= 1U << t; });
    return m;
}

struct Entry {
    std::vector<int> rest;  // values on the non-pair columns
    unsigned pair;          // single bit
};

class PairSearch {
public:
    PairSearch(const Relation& r, int i, int j, unsigned target) : target_(target) {
        const int n = r.arity();
        for (int c = 0; c < n; ++c)
            if (c != i && c != j) cols_.push_back(c);
        r.for_each([&](Tuple t) {
            Entry e{{}, 1U << (2 * tuple_bit(t, n, i) + tuple_bit(t, n, j))};
            for (int c : cols_) e.rest.push_back(tuple_bit(t, n, c));
            entries_.push_back(std::move(e));
        });
    }

    // 0/1 = pinned, 2 = projected; empty if no choice yields the target.
    std::optional<std::vector<int>> run() {
        std::vector<const Entry*> all;
        for (const auto& e : entries_) all.push_back(&e);
        std::vector<int> cube(cols_.size(), 2);
        if (!dfs(0, all, cube)) return std::nullopt;
        // Pin further columns while the target survives.
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t t = 0; t < cube.size() && !changed; ++t) {
                if (cube[t] != 2) continue;
                for (int v = 0; v < 2 && !changed; ++v) {
                    cube[t] = v;
                    if (mask_of(cube) == target_)
                        changed = true;
                    else
                        cube[t] = 2;
                }
            }
        }
        return cube;
    }

    const std::vector<int>& columns() const { return cols_; }

private:
    unsigned mask_of(const std::vector<int>& cube) const {
        unsigned m = 0;
        for (const auto& e : entries_) {
            bool match = true;
            for (std::size_t t = 0; t < cube.size() && match; ++t)
                if (cube[t] != 2 && cube[t] != e.rest[t]) match = false;
            if (match) m |= e.pair;
        }
        return m;
    }

    bool dfs(std::size_t t, const std::vector<const Entry*>& live, std::vector<int>& cube) {
        unsigned m = 0;
        for (auto* e : live) m |= e->pair;
        if ((m & target_) != target_) return false;
        if (t == cols_.size()) return m == target_;
        for (int v : {0, 1, 2}) {
            std::vector<const Entry*> next;
            if (v == 2) {
                next = live;
            } else {
                for (auto* e : live)
                    if (e->rest[t] == v) next.push_back(e);
            }
            cube[t] = v;
            if (dfs(t + 1, next, cube)) return true;
        }
        cube[t] = 2;
        return false;
    }

    unsigned target_;
    std::vector<int> cols_;
    std::vector<Entry> entries_;
};

// Source relation with the recipe's permutation applied, plus the pins and
// the two kept columns, all in post-permutation coordinates.
struct Setup {
    Relation permuted;
    std::vector<int> permutation;
    std::map<int, int> pins;
    int c1 = 0;
    int c2 = 1;

    std::vector<int> rest() const {
        std::vector<int> out;
        for (int c = 0; c < permuted.arity(); ++c)
            if (c != c1 && c != c2 && !pins.count(c)) out.push_back(c);
        return out;
    }

    bool matches_pins(Tuple t) const {
        for (auto [c, v] : pins)
            if (tuple_bit(t, permuted.arity(), c) != v) return false;
        return true;
    }

    std::vector<Tuple> extensions(int v1, int v2) const {
        std::vector<Tuple> out;
        const int n = permuted.arity();
        permuted.for_each([&](Tuple t) {
            if (matches_pins(t) && tuple_bit(t, n, c1) == v1 && tuple_bit(t, n, c2) == v2) out.push_back(t);
        });
        return out;
    }

    std::uint64_t count(int v1, int v2) const { return extensions(v1, v2).size(); }

    PppRecipe recipe() const { return PppRecipe{permutation, pins, {c1, c2}}; }

    // Pins the smallest rest column on which the two smallest majority
    // tuples differ to the value it takes in the smallest minority tuple.
    void balance(std::pair<int, int> majority, std::pair<int, int> minority) {
        const auto big = extensions(majority.first, majority.second);
        const auto small = extensions(minority.first, minority.second);
        const int n = permuted.arity();
        for (int c : rest())
            if (tuple_bit(big[0], n, c) != tuple_bit(big[1], n, c)) {
                pins[c] = tuple_bit(small[0], n, c);
                return;
            }
        throw Error("balancing found no discriminating column");
    }
};

Setup make_setup(const Relation& r, const PppRecipe& recipe) {
    recipe.validate(r.arity());
    if (recipe.kept.size() != 2) throw InvalidArgument("recipe must keep exactly two columns");
    Setup s;
    s.permutation = recipe.permutation;
    s.permuted = permute(r, recipe.permutation);
    s.pins = recipe.pins;
    s.c1 = recipe.kept[0];
    s.c2 = recipe.kept[1];
    return s;
}

// Emits the source-relation constraint whose kept columns hold u and v.
void emit(CspInstance& inst, std::size_t rel_index, const Setup& s, Term u, Term v) {
    const int n = s.permuted.arity();
    std::vector<Term> post(static_cast<std::size_t>(n));
    post[static_cast<std::size_t>(s.c1)] = u;
    post[static_cast<std::size_t>(s.c2)] = v;
    for (auto [c, val] : s.pins) post[static_cast<std::size_t>(c)] = Term::constant(val);
    for (int c : s.rest()) post[static_cast<std::size_t>(c)] = Term::variable(inst.fresh_variable("z"));
    std::vector<Term> scope(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) scope[static_cast<std::size_t>(j)] = post[static_cast<std::size_t>(s.permutation[j])];
    inst.add_constraint(rel_index, std::move(scope));
}

void add_language(GadgetWitness& w, const NamedRelation& r) {
    for (const auto& existing : w.language)
        if (existing.name == r.name) {
            if (existing.relation != r.relation)
                throw InvalidArgument("two different relations share the name '" + r.name + "'");
            return;
        }
    w.language.push_back(r);
}

GadgetWitness start(int k, std::initializer_list<const NamedRelation*> rels, bool with_y) {
    if (k < 2) throw InvalidArgument("k must be at least 2");
    GadgetWitness w;
    w.k = k;
    for (auto* r : rels) add_language(w, *r);
    for (int i = 1; i <= k; ++i) w.instance.add_variable("x" + std::to_string(i));
    if (with_y)
        for (int i = 1; i <= k; ++i) w.instance.add_variable("y" + std::to_string(i));
    return w;
}

void finish(GadgetWitness& w) { w.degree_profile = degree_profile(w.instance); }

NamedRelation named(const Relation& r, const char* name) { return NamedRelation{name, r}; }

} // namespace

std::optional<PppRecipe> find_binary_ppp(const Relation& r, BinaryTarget target) {
    const int n = r.arity();
    if (n < 2) return std::nullopt;
    const unsigned want = pair_mask(target_relation(target));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            PairSearch search(r, i, j, want);
            auto cube = search.run();
            if (!cube) continue;
            PppRecipe recipe = PppRecipe::identity(n);
            recipe.kept = {i, j};
            const auto& cols = search.columns();
            for (std::size_t t = 0; t < cols.size(); ++t)
                if ((*cube)[t] != 2) recipe.pins[cols[t]] = (*cube)[t];
            return recipe;
        }
    return std::nullopt;
}

GadgetWitness simulate_eq_from_binary(const NamedRelation& r, BinaryTarget target, const PppRecipe& recipe, int k) {
    if (target != BinaryTarget::Eq && target != BinaryTarget::Neq && target != BinaryTarget::Implies)
        throw InvalidArgument("target must be eq, neq or imp");
    if (apply_recipe(r.relation, recipe) != target_relation(target))
        throw InvalidArgument("recipe does not define " + to_string(target) + " from '" + r.name + "'");
    Setup s = make_setup(r.relation, recipe);

    if (target == BinaryTarget::Neq) {
        GadgetWitness w = start(k, {&r}, true);
        const std::size_t ri = w.instance.add_relation(r.name, r.relation);
        const auto alpha = s.count(0, 1), beta = s.count(1, 0);
        for (int i = 0; i < k; ++i) {
            const auto x = Term::variable(static_cast<std::size_t>(i));
            const auto y = Term::variable(static_cast<std::size_t>(k + i));
            const auto x_next = Term::variable(static_cast<std::size_t>((i + 1) % k));
            emit(w.instance, ri, s, x, y);
            emit(w.instance, ri, s, y, x_next);
        }
        w.route = GadgetRoute::DisequalityChain;
        w.multiplicity = ipow(BigInt(alpha), k) * ipow(BigInt(beta), k);
        w.extensions.push_back({r.name, target, s.recipe(), alpha, beta, 0});
        finish(w);
        return w;
    }

    // Pin discriminating columns until the 00 and 11 extension counts agree.
    for (;;) {
        const auto alpha = s.count(0, 0), gamma = s.count(1, 1);
        if (alpha == gamma) break;
        if (alpha > gamma)
            s.balance({0, 0}, {1, 1});
        else
            s.balance({1, 1}, {0, 0});
    }
    const auto alpha = s.count(0, 0), beta = s.count(0, 1), gamma = s.count(1, 1);

    GadgetWitness w = start(k, {&r}, false);
    const std::size_t ri = w.instance.add_relation(r.name, r.relation);
    for (int i = 0; i < k; ++i)
        emit(w.instance, ri, s, Term::variable(static_cast<std::size_t>(i)),
             Term::variable(static_cast<std::size_t>((i + 1) % k)));
    const Relation shape = apply_recipe(r.relation, s.recipe());
    w.route = shape == rel::eq(2) ? GadgetRoute::EqualityCycle : GadgetRoute::ImplicationCycle;
    w.multiplicity = ipow(BigInt(alpha), k);
    w.extensions.push_back({r.name, shape == rel::eq(2) ? BinaryTarget::Eq : BinaryTarget::Implies, s.recipe(),
                            alpha, beta, gamma});
    finish(w);
    return w;
}

GadgetWitness simulate_eq_from_binary(const Relation& r, BinaryTarget target, const PppRecipe& recipe, int k) {
    return simulate_eq_from_binary(named(r, "R"), target, recipe, k);
}

namespace {

// For a pin-maximal OR (or NAND) recipe with unequal 01/10 counts, pins one
// more column to leave exactly the disequality.
PppRecipe neq_recipe(const NamedRelation& r, const Setup& s0) {
    Setup s = s0;
    if (s.count(0, 1) > s.count(1, 0))
        s.balance({0, 1}, {1, 0});
    else
        s.balance({1, 0}, {0, 1});
    PppRecipe out = s.recipe();
    if (apply_recipe(r.relation, out) != rel::neq())
        throw Error("derived recipe for '" + r.name + "' does not define disequality");
    return out;
}

} // namespace

GadgetWitness simulate_eq_or_nand(const NamedRelation& or_side, const NamedRelation& nand_side, int k) {
    if (k < 2) throw InvalidArgument("k must be at least 2");
    const auto or_recipe = find_binary_ppp(or_side.relation, BinaryTarget::Or);
    if (!or_recipe) throw InvalidArgument("'" + or_side.name + "' does not ppp-define OR");
    const auto nand_recipe = find_binary_ppp(nand_side.relation, BinaryTarget::Nand);
    if (!nand_recipe) throw InvalidArgument("'" + nand_side.name + "' does not ppp-define NAND");

    const Setup so = make_setup(or_side.relation, *or_recipe);
    const Setup sn = make_setup(nand_side.relation, *nand_recipe);
    const auto alpha = so.count(0, 1), beta = so.count(1, 0), gamma = so.count(1, 1);
    if (alpha != beta)
        return simulate_eq_from_binary(or_side, BinaryTarget::Neq, neq_recipe(or_side, so), k);
    const auto alpha2 = sn.count(0, 1), beta2 = sn.count(1, 0), gamma2 = sn.count(0, 0);
    if (alpha2 != beta2)
        return simulate_eq_from_binary(nand_side, BinaryTarget::Neq, neq_recipe(nand_side, sn), k);

    GadgetWitness w = start(k, {&or_side, &nand_side}, true);
    const std::size_t ro = w.instance.add_relation(or_side.name, or_side.relation);
    const std::size_t rn = w.instance.add_relation(nand_side.name, nand_side.relation);
    for (int i = 0; i < k; ++i) {
        const auto x = Term::variable(static_cast<std::size_t>(i));
        const auto y = Term::variable(static_cast<std::size_t>(k + i));
        const auto x_next = Term::variable(static_cast<std::size_t>((i + 1) % k));
        emit(w.instance, ro, so, x, y);
        emit(w.instance, rn, sn, y, x_next);
    }
    w.route = GadgetRoute::OrNandXi;
    w.multiplicity = ipow(BigInt(alpha) * BigInt(alpha2), k);
    w.extensions.push_back({or_side.name, BinaryTarget::Or, so.recipe(), alpha, beta, gamma});
    w.extensions.push_back({nand_side.name, BinaryTarget::Nand, sn.recipe(), alpha2, beta2, gamma2});
    finish(w);
    return w;
}

GadgetWitness simulate_eq_or_nand(const Relation& or_side, const Relation& nand_side, int k) {
    if (or_side == nand_side) {
        const auto r = named(or_side, "R");
        return simulate_eq_or_nand(r, r, k);
    }
    return simulate_eq_or_nand(named(or_side, "R"), named(nand_side, "S"), k);
}

GadgetWitness simulate_eq_valid(const NamedRelation& r, int k) {
    const Relation& src = r.relation;
    if (src.arity() < 2 || !is_c_valid(src, 0) || !is_c_valid(src, 1) || src.complete())
        throw InvalidArgument("relation must be 0-valid, 1-valid, not complete and of arity at least 2");

    PppRecipe recipe = PppRecipe::identity(src.arity());
    Relation cur = src;
    for (;;) {
        const int n = cur.arity();
        if (n == 2) {
            if (cur == rel::eq(2)) return simulate_eq_from_binary(r, BinaryTarget::Eq, recipe, k);
            if (cur == rel::implies()) return simulate_eq_from_binary(r, BinaryTarget::Implies, recipe, k);
            const PppRecipe swap{{0, 1}, {}, {1, 0}};
            return simulate_eq_from_binary(r, BinaryTarget::Implies, compose_recipes(recipe, swap), k);
        }
        if (cur == rel::eq(n)) {
            PppRecipe first_two = PppRecipe::identity(n);
            first_two.kept = {0, 1};
            return simulate_eq_from_binary(r, BinaryTarget::Eq, compose_recipes(recipe, first_two), k);
        }
        bool stepped = false;
        for (Tuple a : cur.tuples()) {
            if (a == 0 || a == static_cast<Tuple>(cur.tuple_space() - 1)) continue;
            for (int c = 0; c < 2 && !stepped; ++c) {
                const Relation next = restrict_by_tuple(cur, a, c);
                if (next.complete()) continue;
                PppRecipe step = PppRecipe::identity(n);
                step.kept.clear();
                for (int col = 0; col < n; ++col) {
                    if (tuple_bit(a, n, col) == c)
                        step.pins[col] = c;
                    else
                        step.kept.push_back(col);
                }
                recipe = compose_recipes(recipe, step);
                cur = next;
                stepped = true;
            }
            if (stepped) break;
        }
        if (!stepped) throw Error("no non-complete restriction found");
    }
}

GadgetWitness simulate_eq_valid(const Relation& r, int k) { return simulate_eq_valid(named(r, "R"), k); }

GadgetWitness relation_equality_witness(const NamedRelation& r, int k) {
    for (auto t : {BinaryTarget::Eq, BinaryTarget::Implies, BinaryTarget::Neq})
        if (auto recipe = find_binary_ppp(r.relation, t)) return simulate_eq_from_binary(r, t, *recipe, k);
    if (find_binary_ppp(r.relation, BinaryTarget::Or) && find_binary_ppp(r.relation, BinaryTarget::Nand))
        return simulate_eq_or_nand(r, r, k);
    throw NoWitness("'" + r.name + "' ppp-defines none of eq, neq, imp or the pair or/nand");
}

GadgetWitness equality_witness(std::span<const NamedRelation> language, int k, int d) {
    if (d < 3) throw OutOfScope("equality simulation is only constructed for d >= 3");
    if (k < 2) throw InvalidArgument("k must be at least 2");

    std::optional<GadgetWitness> w;
    for (const auto& r : language)
        if (!is_orconj(r.relation) && !is_nandconj(r.relation)) {
            w = relation_equality_witness(r, k);
            break;
        }
    if (!w) {
        const NamedRelation* or_side = nullptr;
        const NamedRelation* nand_side = nullptr;
        for (const auto& r : language) {
            if (!or_side && is_orconj(r.relation) && normalize_orconj(r.relation).width() >= 2) or_side = &r;
            if (!nand_side && is_nandconj(r.relation) && normalize_nandconj(r.relation).width() >= 2) nand_side = &r;
        }
        if (!or_side || !nand_side)
            throw NoWitness("every relation is OR-conj or NAND-conj and the language lacks a width >= 2 relation of "
                            "one of the two kinds");
        w = simulate_eq_or_nand(*or_side, *nand_side, k);
    }
    w->d = d;
    if (w->instance.variable_count() <= brute_force_budget()) {
        const GadgetReport report = verify_gadget(*w);
        if (!report.passed) throw Error("synthesized gadget failed verification");
    }
    return std::move(*w);
}

GadgetReport verify_gadget(const GadgetWitness& w) {
    GadgetReport rep;
    const auto dist = w.distinguished();
    rep.tally = tally_solutions(w.instance, dist);
    rep.multiplicity = w.multiplicity;
    rep.template_degree = degree(w.instance);
    const auto occ = w.instance.occurrences();
    for (auto v : dist) rep.distinguished_degree = std::max(rep.distinguished_degree, occ[v]);
    rep.counts_match = BigInt(rep.tally.all_zero) == w.multiplicity && BigInt(rep.tally.all_one) == w.multiplicity;
    rep.stray_free = rep.tally.stray == 0;
    rep.template_degree_ok = rep.template_degree <= static_cast<std::size_t>(w.d);
    rep.distinguished_degree_ok = rep.distinguished_degree + 1 <= static_cast<std::size_t>(w.d);
    rep.passed = rep.counts_match && rep.stray_free && rep.template_degree_ok && rep.distinguished_degree_ok &&
                 w.multiplicity >= 1;
    return rep;
}

} // namespace boolcsp
