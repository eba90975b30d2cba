#include "boolcsp/reductions.hpp"

#include "boolcsp/classification.hpp"
#include "boolcsp/errors.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace boolcsp {

namespace {

std::size_t add_unique_variable(CspInstance& inst, const std::string& name) {
    if (inst.find_variable(name)) throw InvalidArgument("generated variable name '" + name + "' is already in use");
    return inst.add_variable(name);
}

} // namespace

CspReduction inflate_degree(const CspInstance& inst, int d, const WitnessFactory& factory) {
    if (d < 3) throw InvalidArgument("inflate_degree needs d >= 3");
    const auto occ = inst.occurrences();
    const std::size_t n = inst.variable_count();
    if (std::none_of(occ.begin(), occ.end(), [&](std::size_t c) { return c > static_cast<std::size_t>(d); }))
        return {inst, 1, degree(inst)};

    CspReduction out;
    for (const auto& nr : inst.relations()) out.instance.add_relation(nr.name, nr.relation);

    // first_copy[v]: index of v (or of its first copy) in the output
    std::vector<std::size_t> first_copy(n);
    for (std::size_t v = 0; v < n; ++v) {
        const std::string& name = inst.variables()[v];
        if (occ[v] > static_cast<std::size_t>(d)) {
            first_copy[v] = out.instance.variable_count();
            for (std::size_t j = 1; j <= occ[v]; ++j) add_unique_variable(out.instance, name + "." + std::to_string(j));
        } else {
            first_copy[v] = add_unique_variable(out.instance, name);
        }
    }

    std::vector<std::size_t> used(n, 0);
    for (const auto& c : inst.constraints()) {
        std::vector<Term> scope = c.scope;
        for (Term& t : scope) {
            if (t.is_constant()) continue;
            const auto v = static_cast<std::size_t>(t.var);
            std::size_t target = first_copy[v];
            if (occ[v] > static_cast<std::size_t>(d)) target += used[v]++;
            t = Term::variable(target);
        }
        out.instance.add_constraint(c.relation, std::move(scope));
    }

    std::map<int, GadgetWitness> gadgets;
    for (std::size_t v = 0; v < n; ++v) {
        if (occ[v] <= static_cast<std::size_t>(d)) continue;
        const int k = static_cast<int>(occ[v]);
        auto it = gadgets.find(k);
        if (it == gadgets.end()) {
            GadgetWitness w = factory(k);
            if (w.k != k) throw Error("witness factory returned a gadget of the wrong size");
            it = gadgets.emplace(k, std::move(w)).first;
        }
        const GadgetWitness& w = it->second;
        const CspInstance& tmpl = w.instance;
        std::vector<std::size_t> map(tmpl.variable_count());
        for (std::size_t t = 0; t < tmpl.variable_count(); ++t)
            map[t] = t < static_cast<std::size_t>(k)
                         ? first_copy[v] + t
                         : add_unique_variable(out.instance, inst.variables()[v] + "." + tmpl.variables()[t]);
        for (const auto& c : tmpl.constraints()) {
            const auto& nr = tmpl.relations()[c.relation];
            const std::size_t ri = out.instance.add_relation(nr.name, nr.relation);
            std::vector<Term> scope = c.scope;
            for (Term& t : scope)
                if (!t.is_constant()) t = Term::variable(map[static_cast<std::size_t>(t.var)]);
            out.instance.add_constraint(ri, std::move(scope));
        }
        out.multiplier *= w.multiplicity;
    }
    out.degree_bound = static_cast<std::size_t>(d);
    if (degree(out.instance) > out.degree_bound) throw Error("inflated instance exceeds the degree bound");
    return out;
}

CspReduction inflate_degree(const CspInstance& inst, std::span<const NamedRelation> language, int d) {
    std::vector<NamedRelation> lang(language.begin(), language.end());
    return inflate_degree(inst, d, [lang, d](int k) { return equality_witness(lang, k, d); });
}

CspInstance his_to_orcsp(const Hypergraph& h, int w) {
    if (w < 2) throw InvalidArgument("OR width must be at least 2");
    if (h.width() > static_cast<std::size_t>(w))
        throw InvalidArgument("hypergraph width " + std::to_string(h.width()) + " exceeds " + std::to_string(w));
    CspInstance inst;
    const std::size_t ri = inst.add_relation("or" + std::to_string(w), rel::or_(w));
    for (std::size_t v = 0; v < h.vertex_count(); ++v) inst.add_variable("v" + std::to_string(v));
    for (const auto& e : h.edges()) {
        std::vector<Term> scope;
        for (auto v : e) scope.push_back(Term::variable(v));
        while (scope.size() < static_cast<std::size_t>(w)) scope.push_back(Term::constant(0));
        inst.add_constraint(ri, std::move(scope));
    }
    return inst;
}

namespace {

enum class Shape { Or, Zero, One };

Shape shape_of(const NamedRelation& nr) {
    const Relation& r = nr.relation;
    if (r == rel::zero()) return Shape::Zero;
    if (r == rel::one()) return Shape::One;
    if (r.arity() >= 2 && r == rel::or_(r.arity())) return Shape::Or;
    throw InvalidArgument("relation '" + nr.name + "' is neither an OR nor a pin");
}

} // namespace

HisReduction orcsp_to_his(const CspInstance& inst) {
    std::vector<Shape> shapes;
    for (const auto& nr : inst.relations()) {
        // Unused relations are ignored.
        try {
            shapes.push_back(shape_of(nr));
        } catch (const InvalidArgument&) {
            shapes.push_back(Shape::Or);
        }
    }
    for (const auto& c : inst.constraints()) shape_of(inst.relations()[c.relation]);

    HisReduction out;
    auto contradiction = [&] {
        out.graph = Hypergraph(0);
        out.multiplier = 0;
        out.vertex_names.clear();
        return out;
    };

    std::vector<std::optional<int>> pinned(inst.variable_count());
    for (const auto& c : inst.constraints()) {
        const Shape s = shapes[c.relation];
        if (s == Shape::Or) continue;
        const int value = s == Shape::One ? 1 : 0;
        const Term& t = c.scope[0];
        if (t.is_constant()) {
            if (t.value != value) return contradiction();
            continue;
        }
        auto& p = pinned[static_cast<std::size_t>(t.var)];
        if (p && *p != value) return contradiction();
        p = value;
    }

    std::vector<std::size_t> vertex(inst.variable_count(), 0);
    std::size_t count = 0;
    for (std::size_t v = 0; v < inst.variable_count(); ++v)
        if (!pinned[v]) {
            vertex[v] = count++;
            out.vertex_names.push_back(inst.variables()[v]);
        }
    out.graph = Hypergraph(count);

    for (const auto& c : inst.constraints()) {
        if (shapes[c.relation] != Shape::Or) continue;
        out.width_bound = std::max(out.width_bound, c.scope.size());
        std::vector<std::size_t> edge;
        bool satisfied = false;
        for (const Term& t : c.scope) {
            const int fixed = t.is_constant() ? t.value : pinned[static_cast<std::size_t>(t.var)].value_or(-1);
            if (fixed == 1) {
                satisfied = true;
                break;
            }
            if (fixed == -1) edge.push_back(vertex[static_cast<std::size_t>(t.var)]);
        }
        if (satisfied) continue;
        if (edge.empty()) return contradiction();
        out.graph.add_edge(std::move(edge));
    }
    out.degree_bound = degree(inst);
    return out;
}

HisReduction relationcsp_to_his(const CspInstance& inst) {
    std::vector<bool> used(inst.relations().size(), false);
    for (const auto& c : inst.constraints()) used[c.relation] = true;

    bool all_or = true, all_nand = true;
    for (std::size_t i = 0; i < used.size(); ++i) {
        if (!used[i]) continue;
        all_or = all_or && is_orconj(inst.relations()[i].relation);
        all_nand = all_nand && is_nandconj(inst.relations()[i].relation);
    }
    if (!all_or && !all_nand) throw InvalidArgument("relations are neither all OR-conj nor all NAND-conj");
    const bool flip = !all_or;

    std::vector<NormalizedFormula> formulas;
    int w = 2, k = 1;
    for (std::size_t i = 0; i < used.size(); ++i) {
        const Relation& r = inst.relations()[i].relation;
        formulas.push_back(!used[i] ? NormalizedFormula{} : flip ? normalize_nandconj(r) : normalize_orconj(r));
        if (!used[i]) continue;
        w = std::max(w, formulas.back().width());
        k = std::max(k, formulas.back().repetition());
    }

    CspInstance mid;
    const std::size_t r_or = mid.add_relation("or" + std::to_string(w), rel::or_(w));
    const std::size_t r_zero = mid.add_relation("zero", rel::zero());
    const std::size_t r_one = mid.add_relation("one", rel::one());
    for (const auto& v : inst.variables()) mid.add_variable(v);

    auto term = [&](const Term& t) { return t.is_constant() && flip ? Term::constant(1 - t.value) : t; };
    for (const auto& c : inst.constraints()) {
        const NormalizedFormula& f = formulas[c.relation];
        if (f.unsatisfiable) {
            mid.add_constraint(r_zero, {Term::constant(1)});
            continue;
        }
        for (auto [col, value] : f.pins) {
            const int v = flip ? 1 - value : value;
            mid.add_constraint(v ? r_one : r_zero, {term(c.scope[static_cast<std::size_t>(col)])});
        }
        for (const auto& clause : f.clauses) {
            std::vector<Term> scope;
            for (int col : clause) scope.push_back(term(c.scope[static_cast<std::size_t>(col)]));
            while (scope.size() < static_cast<std::size_t>(w)) scope.push_back(Term::constant(0));
            mid.add_constraint(r_or, std::move(scope));
        }
    }

    HisReduction out = orcsp_to_his(mid);
    out.degree_bound = static_cast<std::size_t>(k) * degree(inst);
    out.width_bound = static_cast<std::size_t>(w);
    if (out.graph.degree() > out.degree_bound) throw Error("hypergraph exceeds the k*d degree bound");
    return out;
}

CspReduction his_to_relationcsp(const Hypergraph& h, const NamedRelation& r) {
    std::optional<NormalizedFormula> f;
    bool nand = false;
    if (is_orconj(r.relation)) {
        f = normalize_orconj(r.relation);
    } else if (is_nandconj(r.relation)) {
        f = normalize_nandconj(r.relation);
        nand = true;
    } else {
        throw InvalidArgument("'" + r.name + "' is neither OR-conj nor NAND-conj");
    }
    if (f->unsatisfiable) throw InvalidArgument("'" + r.name + "' is empty");
    const int w = f->width();
    if (h.width() > static_cast<std::size_t>(w))
        throw InvalidArgument("hypergraph width " + std::to_string(h.width()) + " exceeds the width " +
                              std::to_string(w) + " of '" + r.name + "'");

    CspReduction out;
    const std::size_t ri = out.instance.add_relation(r.name, r.relation);
    for (std::size_t v = 0; v < h.vertex_count(); ++v) out.instance.add_variable("v" + std::to_string(v));
    if (!h.edges().empty()) {
        const auto& widest = *std::find_if(f->clauses.begin(), f->clauses.end(),
                                           [&](const auto& c) { return static_cast<int>(c.size()) == w; });
        const int pad = nand ? 1 : 0;
        for (const auto& e : h.edges()) {
            std::vector<Term> scope(static_cast<std::size_t>(r.relation.arity()), Term::constant(1 - pad));
            for (auto [col, value] : f->pins) scope[static_cast<std::size_t>(col)] = Term::constant(value);
            for (std::size_t i = 0; i < widest.size(); ++i)
                scope[static_cast<std::size_t>(widest[i])] =
                    i < e.size() ? Term::variable(e[i]) : Term::constant(pad);
            out.instance.add_constraint(ri, std::move(scope));
        }
    }
    out.degree_bound = degree(out.instance);
    return out;
}

CspReduction his_to_relationcsp(const Hypergraph& h, const Relation& r) {
    return his_to_relationcsp(h, NamedRelation{"R", r});
}

PppRecipe imconj_extract_implies(const Relation& r) {
    if (!is_imconj(r)) throw InvalidArgument("relation " + r.literal() + " is not in IM-conj");
    if (is_affine(r)) throw InvalidArgument("relation " + r.literal() + " is affine");
    const NormalizedFormula f = normalize_imconj(r);
    const int n = r.arity();
    std::vector<std::vector<char>> imp(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
    for (auto [a, b] : f.implications) imp[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
    auto implies = [&](int a, int b) { return imp[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] != 0; };
    auto equiv = [&](int a, int b) { return a == b || (implies(a, b) && implies(b, a)); };

    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (!implies(x, y) || implies(y, x)) continue;
            bool covering = true;
            for (int z = 0; z < n && covering; ++z)
                if (!f.pins.count(z) && implies(x, z) && implies(z, y) && !equiv(z, x) && !equiv(z, y))
                    covering = false;
            if (!covering) continue;

            PppRecipe recipe = PppRecipe::identity(n);
            recipe.kept = {x, y};
            for (int c = 0; c < n; ++c) {
                if (auto p = f.pins.find(c); p != f.pins.end())
                    recipe.pins[c] = p->second;
                else if (!equiv(c, x) && !equiv(c, y))
                    recipe.pins[c] = implies(c, y) ? 0 : 1;
            }
            if (apply_recipe(r, recipe) != rel::implies()) throw Error("extracted recipe does not define implication");
            return recipe;
        }
    throw Error("no strict implication found in a non-affine IM-conj relation");
}

} // namespace boolcsp
