#include "boolcsp/cli.hpp"

#include "boolcsp/classify.hpp"
#include "boolcsp/counting.hpp"
#include "boolcsp/errors.hpp"
#include "boolcsp/io.hpp"
#include "boolcsp/reductions.hpp"
#include "boolcsp/verdict.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace boolcsp {

namespace {

// Bad invocation that CLI11 itself cannot detect (missing file, unknown
// relation name, inconsistent options). Exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
}

bool is_file(const std::string& arg) { return std::filesystem::is_regular_file(arg); }

NamedRelation resolve_relation(const std::string& arg) {
    if (arg.starts_with("{")) return NamedRelation{"R", parse_relation_literal(arg)};
    if (is_file(arg)) return parse_relation_file(read_file(arg));
    if (auto r = rel::builtin(arg)) return NamedRelation{arg, *r};
    throw UsageError("'" + arg + "' is neither a file, a relation literal nor a builtin name");
}

// A language file, or a list such as "or;nand" or "{00,11},imp".
std::vector<NamedRelation> resolve_language(const std::string& arg) {
    if (is_file(arg)) return parse_language(read_file(arg));
    std::vector<std::string> items;
    std::string cur;
    int depth = 0;
    for (char ch : arg) {
        if (ch == '{') ++depth;
        if (ch == '}') --depth;
        if (depth == 0 && (ch == ';' || ch == ',')) {
            items.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    items.push_back(cur);
    std::vector<NamedRelation> out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        std::string item;
        for (char ch : items[i])
            if (!std::isspace(static_cast<unsigned char>(ch))) item.push_back(ch);
        if (item.empty()) throw UsageError("empty entry in language list '" + arg + "'");
        NamedRelation nr;
        if (item.starts_with("{")) {
            nr = NamedRelation{"R" + std::to_string(i + 1), parse_relation_literal(item)};
        } else if (auto r = rel::builtin(item)) {
            nr = NamedRelation{item, *r};
        } else {
            throw UsageError("'" + item + "' is neither a relation literal nor a builtin name");
        }
        for (const auto& e : out)
            if (e.name == nr.name) throw UsageError("relation '" + nr.name + "' listed twice");
        out.push_back(std::move(nr));
    }
    return out;
}

std::string var(int v) { return "x" + std::to_string(v + 1); }

std::string formula_text(const NormalizedFormula& f) {
    if (f.unsatisfiable) return "false";
    std::vector<std::string> parts;
    for (auto [v, c] : f.pins) parts.push_back(var(v) + "=" + std::to_string(c));
    for (const auto& clause : f.clauses) {
        std::string s = f.kind == FormulaKind::OrConj ? "OR(" : "NAND(";
        for (std::size_t i = 0; i < clause.size(); ++i) s += (i ? "," : "") + var(clause[i]);
        parts.push_back(s + ")");
    }
    for (auto [a, b] : f.implications) parts.push_back(var(a) + "->" + var(b));
    if (parts.empty()) return "true";
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " & " : "") + parts[i];
    return out;
}

std::string affine_text(const AffineSystem& s) {
    std::string out;
    for (std::size_t i = 0; i < s.equations.size(); ++i) {
        const auto& e = s.equations[i];
        std::string lhs;
        for (std::size_t j = 0; j < e.vars.size(); ++j) lhs += (j ? "+" : "") + var(e.vars[j]);
        out += (i ? ", " : "") + (lhs.empty() ? "0" : lhs) + "=" + std::to_string(e.constant);
    }
    return out.empty() ? "true" : out;
}

std::string recipe_text(const PppRecipe& r) {
    std::string pins, kept;
    for (auto [c, v] : r.pins) pins += (pins.empty() ? "" : ",") + std::to_string(c + 1) + "->" + std::to_string(v);
    for (int c : r.kept) kept += (kept.empty() ? "" : ",") + std::to_string(c + 1);
    std::string perm;
    for (int p : r.permutation) perm += (perm.empty() ? "" : ",") + std::to_string(p + 1);
    return "perm [" + perm + "] pins {" + pins + "} kept [" + kept + "]";
}

void print_witness(std::ostream& out, const GadgetWitness& w, const GadgetReport* rep, const std::string& indent) {
    out << indent << "route " << to_string(w.route) << ", k " << w.k << ", d " << w.d << ", m "
        << to_string(w.multiplicity) << ", " << w.instance.variable_count() << " variables, "
        << w.instance.constraints().size() << " constraints\n";
    for (const auto& e : w.extensions)
        out << indent << "  " << e.relation << " -> " << to_string(e.target) << " via " << recipe_text(e.recipe)
            << "; alpha " << e.alpha << " beta " << e.beta << " gamma " << e.gamma << "\n";
    if (rep)
        out << indent << "verified: " << (rep->passed ? "pass" : "FAIL") << " (all-zero " << rep->tally.all_zero
            << ", all-one " << rep->tally.all_one << ", stray " << rep->tally.stray << ", degree "
            << rep->template_degree << ", distinguished degree " << rep->distinguished_degree << ")\n";
}

void print_class(std::ostream& out, const NamedRelation& r, const RelationClass& c) {
    out << "relation " << r.name << " (arity " << r.relation.arity() << ", " << r.relation.size()
        << " tuples): " << r.relation.literal() << "\n";
    out << "  affine:    " << (c.affine ? affine_text(*c.affine) : "no") << "\n";
    out << "  OR-conj:   " << (c.orconj ? formula_text(*c.orconj) : "no") << "\n";
    out << "  NAND-conj: " << (c.nandconj ? formula_text(*c.nandconj) : "no") << "\n";
    out << "  IM-conj:   " << (c.imconj ? formula_text(*c.imconj) : "no") << "\n";
    if (c.width) out << "  width " << *c.width << ", repetition " << *c.repetition << "\n";
    if (c.equality_witness) {
        out << "  simulates equality:\n";
        print_witness(out, *c.equality_witness, c.witness_report ? &*c.witness_report : nullptr, "    ");
    }
}

void print_verdict(std::ostream& out, const LanguageVerdict& v) {
    out << "language:";
    for (const auto& r : v.language) out << " " << r.name;
    out << "\n";
    out << "degree: " << (v.degree ? std::to_string(*v.degree) : "unbounded") << "\n";
    out << "branch: " << to_string(v.branch) << "\n";
    if (v.width) out << "w = " << *v.width << ", k = " << *v.repetition << "\n";
    if (v.lower) out << "lower: " << v.lower->problem() << " (" << to_string(v.lower->annotation) << ")\n";
    if (v.upper) out << "upper: " << v.upper->problem() << " (" << to_string(v.upper->annotation) << ")\n";
    if (v.implies_recipe)
        out << "implication from " << *v.implies_relation << ": " << recipe_text(*v.implies_recipe) << "\n";
    if (v.equality_witness) {
        out << "equality witness:\n";
        print_witness(out, *v.equality_witness, v.witness_report ? &*v.witness_report : nullptr, "  ");
    }
    if (v.no_fpras_unless_np_eq_rp) out << "tag: " << to_string(Approximability::NoFprasUnlessNpEqRp) << "\n";
    if (v.branch == VerdictBranch::OpenDegreeTwo) out << "note: degree-2 counting for this language is open\n";
}

std::string first_token(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::string tok;
        if (ls >> tok) return tok;
    }
    return {};
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Boolean constraint language classification, gadgets and counting"};
    app.require_subcommand(1);
    app.fallthrough();
    int arity_cap_opt = 0;
    std::size_t budget_opt = 0;
    app.add_option("--arity-cap", arity_cap_opt, "Largest relation arity accepted")
        ->envname("BOOLCSP_ARITY_CAP")
        ->check(CLI::Range(1, kHardArityLimit));
    app.add_option("--budget", budget_opt, "Largest variable count the brute-force counters enumerate")
        ->envname("BOOLCSP_BRUTE_FORCE_VARS")
        ->check(CLI::Range(std::size_t{1}, kMaxBruteForceVariables));

    bool json = false;
    std::string input;
    int k = 3, d = 3;

    auto* classify_rel = app.add_subcommand("classify-relation", "Classify one relation");
    classify_rel->add_option("relation", input, "Relation file, literal {..} or builtin name")->required();
    classify_rel->add_option("--k", k, "Size of the equality gadget to synthesize")->check(CLI::Range(2, 64));
    classify_rel->add_flag("--json", json);

    auto* classify_lang = app.add_subcommand("classify-language", "Classify every relation of a language");
    classify_lang->add_option("language", input, "Language file or list such as or;nand")->required();
    classify_lang->add_flag("--json", json);

    bool unbounded = false;
    auto* verdict = app.add_subcommand("verdict", "Complexity verdict for a language");
    verdict->add_option("language", input)->required();
    auto* d_opt = verdict->add_option("--d", d, "Degree bound (default 3)")->check(CLI::Range(1, 1 << 20));
    verdict->add_flag("--unbounded", unbounded)->excludes(d_opt);
    verdict->add_flag("--json", json);

    std::string kind = "or";
    auto* normalize = app.add_subcommand("normalize", "Normalized defining formula");
    normalize->add_option("relation", input)->required();
    normalize->add_option("--kind", kind)->check(CLI::IsMember({"or", "nand", "im", "affine"}));
    normalize->add_flag("--json", json);

    bool verify = false;
    std::string instance_out;
    auto* gadget = app.add_subcommand("gadget", "Synthesize an equality-simulation gadget");
    gadget->add_option("language", input)->required();
    gadget->add_option("--k", k)->check(CLI::Range(2, 1 << 16));
    gadget->add_option("--d", d)->check(CLI::Range(3, 1 << 20));
    gadget->add_flag("--verify", verify, "Brute-force check the template");
    gadget->add_option("--instance-out", instance_out, "Write the template instance here");
    gadget->add_flag("--json", json);

    std::string method = "brute";
    auto* count = app.add_subcommand("count", "Exact solution or independent-set count");
    count->add_option("input", input, "Instance or hypergraph file")->required();
    count->add_option("--method", method)->check(CLI::IsMember({"brute", "affine", "degree1"}));
    count->add_flag("--json", json);

    std::string reduce_kind, relation_arg, language_arg, output_path, sidecar_path;
    int w = 0;
    auto* reduce = app.add_subcommand("reduce", "Count-preserving instance transformations");
    reduce->add_option("kind", reduce_kind)
        ->required()
        ->check(CLI::IsMember({"inflate", "his2csp", "csp2his", "rel2his", "his2rel"}));
    reduce->add_option("input", input)->required();
    reduce->add_option("--relation", relation_arg, "Relation for his2rel");
    reduce->add_option("--language", language_arg, "Gadget language for inflate (default: the instance's)");
    reduce->add_option("--d", d)->check(CLI::Range(3, 1 << 20));
    reduce->add_option("--w", w, "OR width for his2csp (default: max(2, width))")->check(CLI::Range(2, 64));
    reduce->add_option("-o,--output", output_path);
    reduce->add_option("--sidecar", sidecar_path, "Where to write the JSON sidecar");
    reduce->add_flag("--json", json, "Print the sidecar instead of the output");

    int table_w = 0, table_d = 0;
    auto* table = app.add_subcommand("table1", "Approximability of #wHIS_d");
    table->add_option("--w", table_w)->check(CLI::Range(2, 1 << 20));
    table->add_option("--d", table_d)->check(CLI::Range(1, 1 << 20));
    table->add_flag("--json", json);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const int saved_cap = arity_cap();
    const std::size_t saved_budget = brute_force_budget();
    struct Restore {
        int cap;
        std::size_t budget;
        ~Restore() {
            set_arity_cap(cap);
            set_brute_force_budget(budget);
        }
    } restore{saved_cap, saved_budget};

    try {
        if (arity_cap_opt) set_arity_cap(arity_cap_opt);
        if (budget_opt) set_brute_force_budget(budget_opt);

        if (*classify_rel) {
            const NamedRelation r = resolve_relation(input);
            const RelationClass c = classify_relation(r.relation, k, r.name);
            if (json) {
                Json j = to_json(c);
                j = Json{{"relation", to_json(r)}, {"class", j}};
                out << j.dump(2) << "\n";
            } else {
                print_class(out, r, c);
            }
        } else if (*classify_lang) {
            const auto lang = resolve_language(input);
            Json arr = Json::array();
            for (const auto& r : lang) {
                const RelationClass c = classify_relation(r.relation, 3, r.name);
                if (json)
                    arr.push_back(Json{{"relation", to_json(r)}, {"class", to_json(c)}});
                else
                    print_class(out, r, c);
            }
            if (json) out << Json{{"relations", arr}}.dump(2) << "\n";
        } else if (*verdict) {
            const auto lang = resolve_language(input);
            const LanguageVerdict v = unbounded ? classify_language(lang) : classify_language_at_degree(lang, d);
            if (json)
                out << to_json(v).dump(2) << "\n";
            else
                print_verdict(out, v);
        } else if (*normalize) {
            const NamedRelation r = resolve_relation(input);
            if (kind == "affine") {
                const AffineSystem s = affine_system(r.relation);
                if (json)
                    out << to_json(s).dump(2) << "\n";
                else
                    out << affine_text(s) << "\n";
            } else {
                const NormalizedFormula f = kind == "or"     ? normalize_orconj(r.relation)
                                            : kind == "nand" ? normalize_nandconj(r.relation)
                                                             : normalize_imconj(r.relation);
                if (json)
                    out << to_json(f).dump(2) << "\n";
                else
                    out << formula_text(f) << "\n";
            }
        } else if (*gadget) {
            const auto lang = resolve_language(input);
            const GadgetWitness wit = equality_witness(lang, k, d);
            std::optional<GadgetReport> rep;
            if (verify) rep = verify_gadget(wit);
            if (!instance_out.empty()) write_file(instance_out, format_instance(wit.instance));
            if (json) {
                out << gadget_certificate(wit, rep ? &*rep : nullptr).dump(2) << "\n";
            } else {
                print_witness(out, wit, rep ? &*rep : nullptr, "");
                if (instance_out.empty()) out << format_instance(wit.instance);
            }
            if (rep && !rep->passed) {
                err << "gadget verification failed\n";
                return 1;
            }
        } else if (*count) {
            const std::string text = read_file(input);
            BigInt result;
            std::string what;
            if (first_token(text) == "hypergraph") {
                if (method != "brute") throw UsageError("hypergraphs are only counted by enumeration");
                result = hypergraph_is_count(parse_hypergraph(text));
                what = "independent-sets";
            } else {
                const CspInstance inst = parse_instance(text);
                result = method == "affine"    ? affine_count(inst)
                         : method == "degree1" ? degree1_count(inst)
                                               : brute_force_count(inst);
                what = "solutions";
            }
            if (json)
                out << Json{{"count", to_string(result)}, {"counts", what}, {"method", method}}.dump(2) << "\n";
            else
                out << to_string(result) << "\n";
        } else if (*reduce) {
            const std::string text = read_file(input);
            std::string produced;
            Json sidecar;
            if (reduce_kind == "inflate") {
                const CspInstance inst = parse_instance(text);
                const auto lang = language_arg.empty() ? inst.relations() : resolve_language(language_arg);
                const CspReduction r = inflate_degree(inst, lang, d);
                produced = format_instance(r.instance);
                sidecar = reduction_sidecar(reduce_kind, r, Json{{"d", d}});
            } else if (reduce_kind == "his2csp") {
                const Hypergraph h = parse_hypergraph(text);
                const int width = w ? w : std::max(2, static_cast<int>(h.width()));
                CspReduction r{his_to_orcsp(h, width), 1, h.degree()};
                produced = format_instance(r.instance);
                sidecar = reduction_sidecar(reduce_kind, r, Json{{"w", width}});
            } else if (reduce_kind == "his2rel") {
                if (relation_arg.empty()) throw UsageError("his2rel needs --relation");
                const Hypergraph h = parse_hypergraph(text);
                const NamedRelation rel = resolve_relation(relation_arg);
                const CspReduction r = his_to_relationcsp(h, rel);
                produced = format_instance(r.instance);
                sidecar = reduction_sidecar(reduce_kind, r, Json{{"relation", rel.name}});
            } else {
                const CspInstance inst = parse_instance(text);
                const HisReduction r = reduce_kind == "csp2his" ? orcsp_to_his(inst) : relationcsp_to_his(inst);
                produced = format_hypergraph(r.graph);
                sidecar = reduction_sidecar(reduce_kind, r, Json{{"width_bound", r.width_bound}});
            }
            if (!output_path.empty()) write_file(output_path, produced);
            if (!sidecar_path.empty()) write_file(sidecar_path, sidecar.dump(2) + "\n");
            if (json)
                out << sidecar.dump(2) << "\n";
            else if (output_path.empty())
                out << produced;
        } else if (*table) {
            if (table_w && table_d) {
                const auto a = table1_annotation(table_w, table_d);
                if (json)
                    out << Json{{"w", table_w}, {"d", table_d}, {"annotation", to_string(a)}}.dump(2) << "\n";
                else
                    out << to_string(a) << "\n";
            } else {
                Json rows = Json::array();
                for (const auto& row : table1_rows()) {
                    auto range = [](int lo, const std::optional<int>& hi) {
                        if (!hi) return ">=" + std::to_string(lo);
                        return lo == *hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(*hi);
                    };
                    const std::string dr = range(row.d_min, row.d_max), wr = range(row.w_min, row.w_max);
                    if (json)
                        rows.push_back(Json{{"d", dr}, {"w", wr}, {"annotation", to_string(row.annotation)}});
                    else
                        out << "d " << dr << "\tw " << wr << "\t" << to_string(row.annotation) << "\n";
                }
                if (json) out << Json{{"rows", rows}}.dump(2) << "\n";
            }
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace boolcsp
