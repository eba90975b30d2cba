#include "boolcsp/csp.hpp"

#include "boolcsp/errors.hpp"

#include <algorithm>

namespace boolcsp {

std::size_t CspInstance::add_relation(const std::string& name, const Relation& r) {
    if (auto it = relation_index_.find(name); it != relation_index_.end()) {
        if (!(relations_[it->second].relation == r))
            throw InvalidArgument("relation name '" + name + "' already bound to a different relation");
        return it->second;
    }
    relations_.push_back({name, r});
    relation_index_.emplace(name, relations_.size() - 1);
    return relations_.size() - 1;
}

std::size_t CspInstance::add_variable(const std::string& name) {
    if (name.empty() || name == "0" || name == "1")
        throw InvalidArgument("invalid variable name '" + name + "'");
    if (variable_index_.count(name)) throw InvalidArgument("duplicate variable '" + name + "'");
    variables_.push_back(name);
    variable_index_.emplace(name, variables_.size() - 1);
    return variables_.size() - 1;
}

std::size_t CspInstance::fresh_variable(const std::string& prefix) {
    for (std::size_t n = 0;; ++n) {
        std::string name = prefix + std::to_string(n);
        if (!variable_index_.count(name)) return add_variable(name);
    }
}

void CspInstance::add_constraint(std::size_t relation, std::vector<Term> scope) {
    if (relation >= relations_.size()) throw InvalidArgument("unknown relation index");
    const auto& r = relations_[relation];
    if (static_cast<int>(scope.size()) != r.relation.arity())
        throw InvalidArgument("scope length " + std::to_string(scope.size()) + " does not match arity of '" +
                              r.name + "'");
    for (const Term& t : scope) {
        if (t.is_constant()) {
            if (t.value > 1) throw InvalidArgument("constant must be 0 or 1");
        } else if (static_cast<std::size_t>(t.var) >= variables_.size()) {
            throw InvalidArgument("scope refers to an unknown variable");
        }
    }
    constraints_.push_back({relation, std::move(scope)});
}

void CspInstance::add_constraint(const std::string& relation_name, std::vector<Term> scope) {
    auto idx = find_relation(relation_name);
    if (!idx) throw InvalidArgument("unknown relation '" + relation_name + "'");
    add_constraint(*idx, std::move(scope));
}

std::optional<std::size_t> CspInstance::find_relation(const std::string& name) const {
    if (auto it = relation_index_.find(name); it != relation_index_.end()) return it->second;
    return std::nullopt;
}

std::optional<std::size_t> CspInstance::find_variable(const std::string& name) const {
    if (auto it = variable_index_.find(name); it != variable_index_.end()) return it->second;
    return std::nullopt;
}

std::vector<std::size_t> CspInstance::occurrences() const {
    std::vector<std::size_t> occ(variables_.size(), 0);
    for (const auto& c : constraints_)
        for (const Term& t : c.scope)
            if (!t.is_constant()) ++occ[static_cast<std::size_t>(t.var)];
    return occ;
}

bool CspInstance::has_constants() const {
    for (const auto& c : constraints_)
        for (const Term& t : c.scope)
            if (t.is_constant()) return true;
    return false;
}

CspInstance desugar_constants(const CspInstance& inst) {
    CspInstance out;
    for (const auto& r : inst.relations()) out.add_relation(r.name, r.relation);
    for (const auto& v : inst.variables()) out.add_variable(v);
    std::vector<std::pair<std::size_t, int>> pins;
    for (const auto& c : inst.constraints()) {
        std::vector<Term> scope = c.scope;
        for (Term& t : scope) {
            if (!t.is_constant()) continue;
            const int value = t.value;
            const std::size_t v = out.fresh_variable("_pin");
            pins.emplace_back(v, value);
            t = Term::variable(v);
        }
        out.add_constraint(c.relation, std::move(scope));
    }
    if (!pins.empty()) {
        // The names are reserved for the pin relations; a clash with a
        // different relation is reported by add_relation.
        const std::size_t zero = out.add_relation("zero", rel::zero());
        const std::size_t one = out.add_relation("one", rel::one());
        for (auto [v, value] : pins) out.add_constraint(value ? one : zero, {Term::variable(v)});
    }
    return out;
}

std::size_t degree(const CspInstance& inst) {
    auto occ = inst.occurrences();
    std::size_t d = occ.empty() ? 0 : *std::max_element(occ.begin(), occ.end());
    // Every desugared constant is a variable with exactly two occurrences.
    if (inst.has_constants()) d = std::max<std::size_t>(d, 2);
    return d;
}

std::map<std::string, std::size_t> degree_profile(const CspInstance& inst) {
    std::map<std::string, std::size_t> out;
    const CspInstance plain = desugar_constants(inst);
    const auto occ = plain.occurrences();
    for (std::size_t i = 0; i < occ.size(); ++i) out[plain.variables()[i]] = occ[i];
    return out;
}

void Hypergraph::add_edge(std::vector<std::size_t> edge) {
    if (edge.empty()) throw InvalidArgument("hyper-edges must be non-empty");
    std::sort(edge.begin(), edge.end());
    edge.erase(std::unique(edge.begin(), edge.end()), edge.end());
    if (edge.back() >= vertices_) throw InvalidArgument("edge refers to a vertex out of range");
    edges_.push_back(std::move(edge));
}

std::size_t Hypergraph::width() const {
    std::size_t w = 0;
    for (const auto& e : edges_) w = std::max(w, e.size());
    return w;
}

std::size_t Hypergraph::degree(std::size_t v) const {
    std::size_t d = 0;
    for (const auto& e : edges_)
        if (std::binary_search(e.begin(), e.end(), v)) ++d;
    return d;
}

std::size_t Hypergraph::degree() const {
    std::vector<std::size_t> deg(vertices_, 0);
    for (const auto& e : edges_)
        for (auto v : e) ++deg[v];
    return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

} // namespace boolcsp
