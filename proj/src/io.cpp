#include "boolcsp/io.hpp"

#include "boolcsp/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace boolcsp {

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        std::istringstream in{std::string(raw)};
        Line line{number, {}};
        for (std::string tok; in >> tok;) line.tokens.push_back(tok);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
        if (end == text.size()) break;
        pos = end + 1;
    }
    return lines;
}

long parse_int(const std::string& s, std::size_t line, const char* what) {
    long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) throw ParseError(std::string("expected ") + what + ", got '" + s + "'", line);
    return v;
}

bool is_keyword(const std::string& t) {
    static const std::set<std::string> keywords = {"relation", "builtin", "instance", "vars",
                                                   "var",      "constraint", "hypergraph", "edge"};
    return keywords.count(t) > 0;
}

Tuple parse_bits(const std::string& s, int arity, std::size_t line) {
    if (static_cast<int>(s.size()) != arity)
        throw ParseError("tuple '" + s + "' has length " + std::to_string(s.size()) + ", expected " +
                             std::to_string(arity),
                         line);
    Tuple t = 0;
    for (char ch : s) {
        if (ch != '0' && ch != '1') throw ParseError("tuple '" + s + "' contains a character other than 0/1", line);
        t = (t << 1) | static_cast<Tuple>(ch - '0');
    }
    return t;
}

// Parses the relation block whose header is lines[i]; advances i past it.
NamedRelation parse_block(const std::vector<Line>& lines, std::size_t& i) {
    const Line& head = lines[i];
    if (head.tokens.size() != 3) throw ParseError("expected 'relation <name> <arity>'", head.number);
    const long arity = parse_int(head.tokens[2], head.number, "an arity");
    if (arity < 1) throw ParseError("arity must be at least 1", head.number);
    if (arity > arity_cap())
        throw ParseError("arity " + std::to_string(arity) + " exceeds the cap " + std::to_string(arity_cap()),
                         head.number);
    NamedRelation nr{head.tokens[1], Relation(static_cast<int>(arity))};
    for (++i; i < lines.size() && !is_keyword(lines[i].tokens[0]); ++i) {
        const Line& l = lines[i];
        if (l.tokens.size() != 1) throw ParseError("expected one bitstring per line", l.number);
        const Tuple t = parse_bits(l.tokens[0], static_cast<int>(arity), l.number);
        if (nr.relation.contains(t)) throw ParseError("duplicate tuple '" + l.tokens[0] + "'", l.number);
        nr.relation.insert(t);
    }
    return nr;
}

Relation builtin_or_throw(const std::string& name, std::size_t line) {
    std::optional<Relation> r;
    try {
        r = rel::builtin(name);
    } catch (const Error& e) {
        throw ParseError(e.what(), line);
    }
    if (!r) throw ParseError("unknown builtin relation '" + name + "'", line);
    return *r;
}

void add_named(std::vector<NamedRelation>& out, NamedRelation nr, std::size_t line) {
    for (const auto& existing : out)
        if (existing.name == nr.name) throw ParseError("relation '" + nr.name + "' defined twice", line);
    out.push_back(std::move(nr));
}

} // namespace

Relation parse_relation_literal(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw ParseError("empty relation literal", 1);
    if (s.front() != '{') return builtin_or_throw(s, 1);
    if (s.back() != '}') throw ParseError("relation literal must end with '}'", 1);
    const std::string body = s.substr(1, s.size() - 2);
    if (body.empty()) throw ParseError("'{}' has no arity; write emptyK instead", 1);
    std::vector<std::string> rows;
    std::stringstream in(body);
    for (std::string row; std::getline(in, row, ',');) rows.push_back(row);
    const int arity = static_cast<int>(rows.front().size());
    if (arity < 1) throw ParseError("empty tuple in relation literal", 1);
    if (arity > arity_cap()) throw ParseError("arity " + std::to_string(arity) + " exceeds the cap", 1);
    Relation r(arity);
    for (const auto& row : rows) {
        const Tuple t = parse_bits(row, arity, 1);
        if (r.contains(t)) throw ParseError("duplicate tuple '" + row + "'", 1);
        r.insert(t);
    }
    return r;
}

NamedRelation parse_relation_file(std::string_view text) {
    const auto lines = tokenize(text);
    if (lines.empty()) throw ParseError("no relation found", 0);
    if (lines[0].tokens[0].starts_with("{")) {
        std::string joined;
        for (const auto& l : lines)
            for (const auto& t : l.tokens) joined += t;
        return NamedRelation{"R", parse_relation_literal(joined)};
    }
    if (lines[0].tokens[0] != "relation") throw ParseError("expected 'relation <name> <arity>'", lines[0].number);
    std::size_t i = 0;
    NamedRelation nr = parse_block(lines, i);
    if (i != lines.size()) throw ParseError("unexpected content after the relation", lines[i].number);
    return nr;
}

std::vector<NamedRelation> parse_language(std::string_view text) {
    const auto lines = tokenize(text);
    std::vector<NamedRelation> out;
    for (std::size_t i = 0; i < lines.size();) {
        const Line& l = lines[i];
        if (l.tokens[0] == "relation") {
            const std::size_t number = l.number;
            add_named(out, parse_block(lines, i), number);
        } else if (l.tokens[0] == "builtin") {
            if (l.tokens.size() != 2) throw ParseError("expected 'builtin <name>'", l.number);
            add_named(out, NamedRelation{l.tokens[1], builtin_or_throw(l.tokens[1], l.number)}, l.number);
            ++i;
        } else {
            throw ParseError("expected 'relation' or 'builtin', got '" + l.tokens[0] + "'", l.number);
        }
    }
    if (out.empty()) throw ParseError("language file defines no relations", 0);
    return out;
}

CspInstance parse_instance(std::string_view text) {
    const auto lines = tokenize(text);
    if (lines.empty() || lines[0].tokens != std::vector<std::string>{"instance"})
        throw ParseError("instance files start with 'instance'", lines.empty() ? 0 : lines[0].number);
    CspInstance inst;
    auto add_var = [&](const std::string& name, std::size_t line) {
        if (name == "0" || name == "1") throw ParseError("'" + name + "' is reserved for constants", line);
        if (inst.find_variable(name)) throw ParseError("variable '" + name + "' declared twice", line);
        inst.add_variable(name);
    };
    for (std::size_t i = 1; i < lines.size();) {
        const Line& l = lines[i];
        const std::string& kw = l.tokens[0];
        if (kw == "relation") {
            const std::size_t number = l.number;
            NamedRelation nr = parse_block(lines, i);
            if (inst.find_relation(nr.name)) throw ParseError("relation '" + nr.name + "' defined twice", number);
            inst.add_relation(nr.name, nr.relation);
            continue;
        }
        if (kw == "vars") {
            if (l.tokens.size() != 2) throw ParseError("expected 'vars <n>'", l.number);
            const long n = parse_int(l.tokens[1], l.number, "a variable count");
            if (n < 0) throw ParseError("negative variable count", l.number);
            for (long v = 1; v <= n; ++v) add_var("x" + std::to_string(v), l.number);
        } else if (kw == "var") {
            for (std::size_t t = 1; t < l.tokens.size(); ++t) add_var(l.tokens[t], l.number);
        } else if (kw == "constraint") {
            if (l.tokens.size() < 2) throw ParseError("expected 'constraint <relation> <args>'", l.number);
            auto ri = inst.find_relation(l.tokens[1]);
            if (!ri) ri = inst.add_relation(l.tokens[1], builtin_or_throw(l.tokens[1], l.number));
            std::vector<Term> scope;
            for (std::size_t t = 2; t < l.tokens.size(); ++t) {
                const std::string& a = l.tokens[t];
                if (a == "0" || a == "1") {
                    scope.push_back(Term::constant(a == "1"));
                } else if (auto v = inst.find_variable(a)) {
                    scope.push_back(Term::variable(*v));
                } else {
                    throw ParseError("undeclared variable '" + a + "'", l.number);
                }
            }
            if (static_cast<int>(scope.size()) != inst.relations()[*ri].relation.arity())
                throw ParseError("relation '" + l.tokens[1] + "' has arity " +
                                     std::to_string(inst.relations()[*ri].relation.arity()) + " but got " +
                                     std::to_string(scope.size()) + " arguments",
                                 l.number);
            inst.add_constraint(*ri, std::move(scope));
        } else {
            throw ParseError("unexpected '" + kw + "'", l.number);
        }
        ++i;
    }
    return inst;
}

Hypergraph parse_hypergraph(std::string_view text) {
    const auto lines = tokenize(text);
    if (lines.empty() || lines[0].tokens[0] != "hypergraph" || lines[0].tokens.size() != 2)
        throw ParseError("hypergraph files start with 'hypergraph <n>'", lines.empty() ? 0 : lines[0].number);
    const long n = parse_int(lines[0].tokens[1], lines[0].number, "a vertex count");
    if (n < 0) throw ParseError("negative vertex count", lines[0].number);
    Hypergraph h(static_cast<std::size_t>(n));
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& l = lines[i];
        if (l.tokens[0] != "edge") throw ParseError("expected 'edge <v>...'", l.number);
        if (l.tokens.size() < 2) throw ParseError("empty edge", l.number);
        std::vector<std::size_t> edge;
        for (std::size_t t = 1; t < l.tokens.size(); ++t) {
            const long v = parse_int(l.tokens[t], l.number, "a vertex");
            if (v < 0 || v >= n) throw ParseError("vertex " + l.tokens[t] + " out of range", l.number);
            edge.push_back(static_cast<std::size_t>(v));
        }
        h.add_edge(std::move(edge));
    }
    return h;
}

std::string format_relation(const NamedRelation& r) {
    std::string out = "relation " + r.name + " " + std::to_string(r.relation.arity()) + "\n";
    r.relation.for_each([&](Tuple t) { out += tuple_string(t, r.relation.arity()) + "\n"; });
    return out;
}

std::string format_language(std::span<const NamedRelation> language) {
    std::vector<NamedRelation> sorted(language.begin(), language.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    std::string out;
    for (const auto& r : sorted) out += format_relation(r);
    return out;
}

std::string format_instance(const CspInstance& inst) {
    std::string out = "instance\n";
    if (inst.variable_count() > 0) {
        out += "var";
        for (const auto& v : inst.variables()) out += " " + v;
        out += "\n";
    }
    out += format_language(inst.relations());
    for (const auto& c : inst.constraints()) {
        out += "constraint " + inst.relations()[c.relation].name;
        for (const Term& t : c.scope)
            out += " " + (t.is_constant() ? std::to_string(t.value) : inst.variables()[static_cast<std::size_t>(t.var)]);
        out += "\n";
    }
    return out;
}

std::string format_hypergraph(const Hypergraph& h) {
    std::string out = "hypergraph " + std::to_string(h.vertex_count()) + "\n";
    for (const auto& e : h.edges()) {
        out += "edge";
        for (auto v : e) out += " " + std::to_string(v);
        out += "\n";
    }
    return out;
}

Json to_json(const NamedRelation& r) {
    Json tuples = Json::array();
    r.relation.for_each([&](Tuple t) { tuples.push_back(tuple_string(t, r.relation.arity())); });
    return Json{{"name", r.name}, {"arity", r.relation.arity()}, {"tuples", tuples}};
}

Json to_json(const NormalizedFormula& f) {
    Json pins = Json::array();
    for (auto [v, c] : f.pins) pins.push_back(Json{{"var", v + 1}, {"value", c}});
    Json clauses = Json::array();
    for (const auto& c : f.clauses) {
        Json cl = Json::array();
        for (int v : c) cl.push_back(v + 1);
        clauses.push_back(cl);
    }
    Json imps = Json::array();
    for (auto [a, b] : f.implications) imps.push_back(Json::array({a + 1, b + 1}));
    return Json{{"kind", to_string(f.kind)}, {"arity", f.arity},       {"pins", pins},
                {"clauses", clauses},        {"implications", imps},   {"unsatisfiable", f.unsatisfiable},
                {"width", f.width()},        {"repetition", f.repetition()}};
}

Json to_json(const AffineSystem& s) {
    Json eqs = Json::array();
    for (const auto& e : s.equations) {
        Json vars = Json::array();
        for (int v : e.vars) vars.push_back(v + 1);
        eqs.push_back(Json{{"vars", vars}, {"constant", e.constant}});
    }
    return Json{{"arity", s.arity}, {"equations", eqs}};
}

Json to_json(const PppRecipe& r) {
    Json perm = Json::array();
    for (int p : r.permutation) perm.push_back(p + 1);
    Json pins = Json::array();
    for (auto [c, v] : r.pins) pins.push_back(Json{{"column", c + 1}, {"value", v}});
    Json kept = Json::array();
    for (int c : r.kept) kept.push_back(c + 1);
    return Json{{"permutation", perm}, {"pins", pins}, {"kept", kept}};
}

namespace {

template <typename T>
Json optional_json(const std::optional<T>& v) {
    return v ? to_json(*v) : Json(nullptr);
}

Json optional_int(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

} // namespace

Json to_json(const GadgetReport& r) {
    return Json{{"all_zero", r.tally.all_zero},
                {"all_one", r.tally.all_one},
                {"stray", r.tally.stray},
                {"total", r.tally.total},
                {"multiplicity", to_string(r.multiplicity)},
                {"template_degree", r.template_degree},
                {"distinguished_degree", r.distinguished_degree},
                {"counts_match", r.counts_match},
                {"stray_free", r.stray_free},
                {"template_degree_ok", r.template_degree_ok},
                {"distinguished_degree_ok", r.distinguished_degree_ok},
                {"passed", r.passed}};
}

Json gadget_certificate(const GadgetWitness& w, const GadgetReport* report) {
    Json lang = Json::array();
    for (const auto& r : w.language) lang.push_back(r.name);
    Json profile = Json::object();
    for (const auto& [name, count] : w.degree_profile) profile[name] = count;
    Json ext = Json::array();
    for (const auto& e : w.extensions)
        ext.push_back(Json{{"relation", e.relation},
                           {"target", to_string(e.target)},
                           {"recipe", to_json(e.recipe)},
                           {"alpha", e.alpha},
                           {"beta", e.beta},
                           {"gamma", e.gamma}});
    return Json{{"k", w.k},
                {"d", w.d},
                {"multiplicity", to_string(w.multiplicity)},
                {"route", to_string(w.route)},
                {"language", lang},
                {"variables", w.instance.variable_count()},
                {"constraints", w.instance.constraints().size()},
                {"degree_profile", profile},
                {"extension_counts", ext},
                {"verification", report ? to_json(*report) : Json(nullptr)}};
}

Json to_json(const RelationClass& c) {
    Json witness = nullptr;
    if (c.equality_witness)
        witness = gadget_certificate(*c.equality_witness, c.witness_report ? &*c.witness_report : nullptr);
    return Json{{"affine", c.is_affine},
                {"affine_system", optional_json(c.affine)},
                {"orconj", optional_json(c.orconj)},
                {"nandconj", optional_json(c.nandconj)},
                {"imconj", optional_json(c.imconj)},
                {"width", optional_int(c.width)},
                {"repetition", optional_int(c.repetition)},
                {"equality_witness", witness}};
}

Json to_json(const LanguageVerdict& v) {
    auto endpoint = [](const std::optional<HisEndpoint>& e) -> Json {
        if (!e) return nullptr;
        return Json{{"problem", e->problem()}, {"w", e->w}, {"d", e->d}, {"annotation", to_string(e->annotation)}};
    };
    Json rels = Json::array();
    for (std::size_t i = 0; i < v.language.size(); ++i)
        rels.push_back(Json{{"relation", to_json(v.language[i])}, {"class", to_json(v.classes[i])}});
    Json tags = Json::array();
    if (v.no_fpras_unless_np_eq_rp) tags.push_back(to_string(Approximability::NoFprasUnlessNpEqRp));
    Json witness = nullptr;
    if (v.equality_witness)
        witness = gadget_certificate(*v.equality_witness, v.witness_report ? &*v.witness_report : nullptr);
    Json implies = nullptr;
    if (v.implies_recipe) implies = Json{{"relation", *v.implies_relation}, {"recipe", to_json(*v.implies_recipe)}};
    return Json{{"scope", v.degree ? "bounded" : "unbounded"},
                {"degree", optional_int(v.degree)},
                {"branch", to_string(v.branch)},
                {"width", optional_int(v.width)},
                {"repetition", optional_int(v.repetition)},
                {"lower", endpoint(v.lower)},
                {"upper", endpoint(v.upper)},
                {"tags", tags},
                {"relations", rels},
                {"equality_witness", witness},
                {"implies", implies}};
}

Json reduction_sidecar(const std::string& kind, const CspReduction& r, const Json& parameters) {
    return Json{{"kind", kind},
                {"relation", "Z(output) = multiplier * count(input)"},
                {"multiplier", to_string(r.multiplier)},
                {"parameters", parameters},
                {"degree_bound", r.degree_bound},
                {"output",
                 Json{{"format", "instance"},
                      {"variables", r.instance.variable_count()},
                      {"constraints", r.instance.constraints().size()},
                      {"degree", degree(r.instance)}}}};
}

Json reduction_sidecar(const std::string& kind, const HisReduction& r, const Json& parameters) {
    return Json{{"kind", kind},
                {"relation", "Z(input) = multiplier * IS(output)"},
                {"multiplier", to_string(r.multiplier)},
                {"parameters", parameters},
                {"degree_bound", r.degree_bound},
                {"output",
                 Json{{"format", "hypergraph"},
                      {"vertices", r.graph.vertex_count()},
                      {"edges", r.graph.edges().size()},
                      {"width", r.graph.width()},
                      {"degree", r.graph.degree()}}}};
}

} // namespace boolcsp
