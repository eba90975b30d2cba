#pragma once

#include "boolcsp/classify.hpp"
#include "boolcsp/csp.hpp"
#include "boolcsp/gadgets.hpp"
#include "boolcsp/reductions.hpp"
#include "boolcsp/relation.hpp"
#include "boolcsp/verdict.hpp"

#include <json.hpp>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace boolcsp {

// Text formats. '#' starts a comment; blank lines are ignored. Every
// parse failure is a ParseError carrying the 1-based line number.
//
//   relation <name> <arity>        instance             hypergraph <n>
//   011                            vars 3               edge 0 1
//   ...                            var a b              edge 1 2 3
//                                  relation <name> <r>
//   builtin <name>                 ...
//   (language files only)          constraint <rel> <arg>...

/// `{00,11}` (or `{}` for nothing at arity 1) or a builtin name such as
/// imp, or3, nand, eq4, empty2.
Relation parse_relation_literal(std::string_view text);

/// A single relation block.
NamedRelation parse_relation_file(std::string_view text);

/// Relation blocks and `builtin <name>` lines, in file order.
std::vector<NamedRelation> parse_language(std::string_view text);

/// Instance files may use builtin relation names without declaring them;
/// constraint arguments 0 and 1 are constants.
CspInstance parse_instance(std::string_view text);

Hypergraph parse_hypergraph(std::string_view text);

// Canonical serializers: relations sorted by name, tuples ascending.
std::string format_relation(const NamedRelation& r);
std::string format_language(std::span<const NamedRelation> language);
std::string format_instance(const CspInstance& inst);
std::string format_hypergraph(const Hypergraph& h);

// JSON documents. Columns and variables are 1-based; big integers are
// decimal strings.
using Json = nlohmann::ordered_json;

Json to_json(const NamedRelation& r);
Json to_json(const NormalizedFormula& f);
Json to_json(const AffineSystem& s);
Json to_json(const PppRecipe& r);
Json to_json(const RelationClass& c);
Json to_json(const GadgetReport& r);
Json gadget_certificate(const GadgetWitness& w, const GadgetReport* report);
Json to_json(const LanguageVerdict& v);
Json reduction_sidecar(const std::string& kind, const CspReduction& r, const Json& parameters);
Json reduction_sidecar(const std::string& kind, const HisReduction& r, const Json& parameters);

} // namespace boolcsp
