#pragma once

#include "boolcsp/relation.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace boolcsp {

/// A scope entry: either a variable index or a constant bit.
struct Term {
    std::int32_t var = -1;
    std::uint8_t value = 0;

    static Term variable(std::size_t v) { return Term{static_cast<std::int32_t>(v), 0}; }
    static Term constant(int bit) { return Term{-1, static_cast<std::uint8_t>(bit)}; }

    bool is_constant() const noexcept { return var < 0; }

    friend bool operator==(const Term&, const Term&) = default;
};

struct Constraint {
    std::size_t relation = 0;  // index into CspInstance::relations()
    std::vector<Term> scope;

    friend bool operator==(const Constraint&, const Constraint&) = default;
};

struct NamedRelation {
    std::string name;
    Relation relation;

    friend bool operator==(const NamedRelation&, const NamedRelation&) = default;
};

/// Variables, a catalog of named relations, and constraints over them.
/// Scopes may repeat variables and may contain constants.
class CspInstance {
public:
    /// Returns the index of the named relation, adding it if new. Re-adding
    /// a name with different content is an InvalidArgument.
    std::size_t add_relation(const std::string& name, const Relation& r);
    std::size_t add_variable(const std::string& name);
    /// Fresh variable named `<prefix><n>` for the smallest unused n.
    std::size_t fresh_variable(const std::string& prefix);
    void add_constraint(std::size_t relation, std::vector<Term> scope);
    void add_constraint(const std::string& relation_name, std::vector<Term> scope);

    std::size_t variable_count() const noexcept { return variables_.size(); }
    const std::vector<std::string>& variables() const noexcept { return variables_; }
    const std::vector<NamedRelation>& relations() const noexcept { return relations_; }
    const std::vector<Constraint>& constraints() const noexcept { return constraints_; }

    const Relation& relation_of(const Constraint& c) const { return relations_[c.relation].relation; }
    std::optional<std::size_t> find_relation(const std::string& name) const;
    std::optional<std::size_t> find_variable(const std::string& name) const;

    /// Occurrences of each variable across scopes, with multiplicity.
    std::vector<std::size_t> occurrences() const;

    bool has_constants() const;

    friend bool operator==(const CspInstance& a, const CspInstance& b) {
        return a.variables_ == b.variables_ && a.relations_ == b.relations_ &&
               a.constraints_ == b.constraints_;
    }

private:
    std::vector<std::string> variables_;
    std::map<std::string, std::size_t> variable_index_;
    std::vector<NamedRelation> relations_;
    std::map<std::string, std::size_t> relation_index_;
    std::vector<Constraint> constraints_;
};

/// Replaces every constant in a scope by a fresh variable carrying a
/// `zero`/`one` pin. Each introduced variable occurs exactly twice.
CspInstance desugar_constants(const CspInstance& inst);

/// Greatest number of occurrences of any variable, computed after
/// desugaring constants. Zero for an instance without variables.
std::size_t degree(const CspInstance& inst);

/// Occurrence count per variable after desugaring, keyed by name.
std::map<std::string, std::size_t> degree_profile(const CspInstance& inst);

/// Vertices 0..n-1 and a list of non-empty edges (sorted vertex sets).
/// Duplicate edges are allowed and count toward vertex degree.
class Hypergraph {
public:
    Hypergraph() = default;
    explicit Hypergraph(std::size_t vertices) : vertices_(vertices) {}

    void add_edge(std::vector<std::size_t> edge);

    std::size_t vertex_count() const noexcept { return vertices_; }
    const std::vector<std::vector<std::size_t>>& edges() const noexcept { return edges_; }

    std::size_t width() const;
    std::size_t degree() const;
    std::size_t degree(std::size_t v) const;

    friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

private:
    std::size_t vertices_ = 0;
    std::vector<std::vector<std::size_t>> edges_;
};

} // namespace boolcsp
