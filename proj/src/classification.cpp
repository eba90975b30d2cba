#include "boolcsp/classification.hpp"

#include "boolcsp/errors.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace boolcsp {

std::string to_string(FormulaKind kind) {
    switch (kind) {
    case FormulaKind::OrConj: return "OR-conj";
    case FormulaKind::NandConj: return "NAND-conj";
    case FormulaKind::ImConj: return "IM-conj";
    }
    return "?";
}

namespace {

Tuple column_mask(int arity, int column) { return Tuple{1} << (arity - 1 - column); }

Tuple clause_mask(int arity, const std::vector<int>& clause) {
    Tuple m = 0;
    for (int v : clause) m |= column_mask(arity, v);
    return m;
}

NormalizedFormula contradiction(FormulaKind kind, int arity) {
    NormalizedFormula f;
    f.kind = kind;
    f.arity = arity;
    f.unsatisfiable = true;
    return f;
}

void check_vars(int arity, const std::vector<int>& vars) {
    for (int v : vars)
        if (v < 0 || v >= arity) throw InvalidArgument("formula variable out of range");
}

// Drops duplicate clauses and every clause that strictly contains another.
std::vector<std::vector<int>> drop_subsumed(std::vector<std::vector<int>> clauses) {
    std::sort(clauses.begin(), clauses.end());
    clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
    std::vector<std::vector<int>> out;
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        bool subsumed = false;
        for (std::size_t j = 0; j < clauses.size() && !subsumed; ++j) {
            if (i == j || clauses[j].size() >= clauses[i].size()) continue;
            subsumed = std::includes(clauses[i].begin(), clauses[i].end(), clauses[j].begin(), clauses[j].end());
        }
        if (!subsumed) out.push_back(clauses[i]);
    }
    return out;
}

// Pins every constant column, then builds the conjunction of all minimal
// OR (or NAND) clauses over the free columns that r satisfies. The clause
// set comes from the maximal tuples outside the upward closure of r on the
// free columns (minimal tuples outside the downward closure for NAND).
// Returns the formula together with whether it defines r exactly.
std::pair<NormalizedFormula, bool> maximal_conj_formula(const Relation& r, FormulaKind kind) {
    const int n = r.arity();
    if (r.empty()) return {contradiction(kind, n), true};

    NormalizedFormula f;
    f.kind = kind;
    f.arity = n;
    std::vector<int> free;
    const auto consts = constant_columns(r);
    for (int i = 0; i < n; ++i) {
        if (consts[static_cast<std::size_t>(i)])
            f.pins[i] = *consts[static_cast<std::size_t>(i)];
        else
            free.push_back(i);
    }
    const int m = static_cast<int>(free.size());
    if (m == 0) return {f, true};

    const Relation restricted = project_onto(r, free);
    const Tuple space = Tuple{1} << m;
    const Tuple flip = kind == FormulaKind::NandConj ? space - 1 : 0;
    std::vector<char> closure(space, 0);
    restricted.for_each([&](Tuple t) { closure[t ^ flip] = 1; });
    for (int b = 0; b < m; ++b) {
        const Tuple bit = Tuple{1} << b;
        for (Tuple t = 0; t < space; ++t)
            if (!(t & bit) && closure[t]) closure[t | bit] = 1;
    }

    bool exact = true;
    for (Tuple t = 0; t < space; ++t) {
        if (static_cast<bool>(closure[t]) != restricted.contains(t ^ flip)) exact = false;
        if (closure[t]) continue;
        bool maximal = true;
        for (int b = 0; b < m && maximal; ++b) {
            const Tuple bit = Tuple{1} << b;
            if (!(t & bit) && !closure[t | bit]) maximal = false;
        }
        if (!maximal) continue;
        std::vector<int> clause;
        for (int j = 0; j < m; ++j)
            if (!((t >> (m - 1 - j)) & 1U)) clause.push_back(free[static_cast<std::size_t>(j)]);
        f.clauses.push_back(std::move(clause));
    }
    std::sort(f.clauses.begin(), f.clauses.end());
    return {f, exact};
}

bool pseudo_monotone_impl(const Relation& r, int direction) {
    const int n = r.arity();
    const auto consts = constant_columns(r);
    bool ok = true;
    r.for_each([&](Tuple t) {
        if (!ok) return;
        for (int i = 0; i < n; ++i) {
            if (consts[static_cast<std::size_t>(i)]) continue;
            if (tuple_bit(t, n, i) == direction) continue;
            if (!r.contains(with_bit(t, n, i, direction))) {
                ok = false;
                return;
            }
        }
    });
    return ok;
}

} // namespace

Relation NormalizedFormula::evaluate() const {
    Relation out(arity);
    if (unsatisfiable) return out;
    Tuple pin_mask = 0, pin_value = 0;
    for (auto [v, c] : pins) {
        pin_mask |= column_mask(arity, v);
        if (c) pin_value |= column_mask(arity, v);
    }
    std::vector<Tuple> masks;
    for (const auto& c : clauses) masks.push_back(clause_mask(arity, c));
    std::vector<std::pair<Tuple, Tuple>> imps;
    for (auto [x, y] : implications) imps.emplace_back(column_mask(arity, x), column_mask(arity, y));

    const Tuple space = static_cast<Tuple>(out.tuple_space());
    for (Tuple t = 0; t < space; ++t) {
        if ((t & pin_mask) != pin_value) continue;
        bool ok = true;
        for (Tuple m : masks) {
            if (kind == FormulaKind::OrConj ? (t & m) == 0 : (t & m) == m) {
                ok = false;
                break;
            }
        }
        for (std::size_t i = 0; ok && i < imps.size(); ++i)
            if ((t & imps[i].first) && !(t & imps[i].second)) ok = false;
        if (ok) out.insert(t);
    }
    return out;
}

int NormalizedFormula::width() const {
    int w = implications.empty() ? 0 : 2;
    for (const auto& c : clauses) w = std::max(w, static_cast<int>(c.size()));
    return w;
}

int NormalizedFormula::repetition() const {
    std::vector<int> count(static_cast<std::size_t>(arity), 0);
    for (const auto& pin : pins) ++count[static_cast<std::size_t>(pin.first)];
    for (const auto& c : clauses)
        for (int v : c) ++count[static_cast<std::size_t>(v)];
    for (auto [x, y] : implications) {
        ++count[static_cast<std::size_t>(x)];
        ++count[static_cast<std::size_t>(y)];
    }
    return count.empty() ? 0 : *std::max_element(count.begin(), count.end());
}

NormalizedFormula normalize_formula(FormulaKind kind, int arity, std::map<int, int> pins,
                                    std::vector<std::vector<int>> clauses) {
    if (kind == FormulaKind::ImConj) throw InvalidArgument("use normalize_implications for IM-conj formulas");
    if (arity < 1) throw InvalidArgument("formula arity must be positive");
    for (auto [v, c] : pins) {
        if (v < 0 || v >= arity) throw InvalidArgument("pinned variable out of range");
        if (c != 0 && c != 1) throw InvalidArgument("pin value must be 0 or 1");
    }
    for (const auto& c : clauses) check_vars(arity, c);

    // Value of an argument that satisfies the clause outright.
    const int satisfying = kind == FormulaKind::OrConj ? 1 : 0;
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::vector<int>> next;
        for (auto clause : clauses) {
            std::sort(clause.begin(), clause.end());
            clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
            bool satisfied = false;
            std::vector<int> kept;
            for (int v : clause) {
                auto it = pins.find(v);
                if (it == pins.end())
                    kept.push_back(v);
                else if (it->second == satisfying)
                    satisfied = true;
            }
            if (satisfied) {
                changed = true;
                continue;
            }
            if (kept.size() != clause.size()) changed = true;
            if (kept.empty()) return contradiction(kind, arity);
            if (kept.size() == 1) {
                pins[kept.front()] = satisfying;
                changed = true;
                continue;
            }
            next.push_back(std::move(kept));
        }
        clauses = drop_subsumed(std::move(next));
    }

    NormalizedFormula f;
    f.kind = kind;
    f.arity = arity;
    f.pins = std::move(pins);
    f.clauses = std::move(clauses);
    return f;
}

NormalizedFormula normalize_implications(int arity, std::map<int, int> pins,
                                         std::vector<std::pair<int, int>> implications) {
    if (arity < 1) throw InvalidArgument("formula arity must be positive");
    for (auto [x, y] : implications) check_vars(arity, {x, y});
    auto set_pin = [&](int v, int c) {
        auto [it, inserted] = pins.emplace(v, c);
        return inserted || it->second == c;
    };
    for (auto [v, c] : pins)
        if (v < 0 || v >= arity || (c != 0 && c != 1)) throw InvalidArgument("invalid pin");

    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::pair<int, int>> next;
        for (auto [x, y] : implications) {
            if (x == y) continue;
            auto px = pins.find(x);
            auto py = pins.find(y);
            if (px != pins.end() && px->second == 0) continue;
            if (py != pins.end() && py->second == 1) continue;
            if (px != pins.end()) {  // x = 1 forces y = 1
                if (!set_pin(y, 1)) return contradiction(FormulaKind::ImConj, arity);
                changed = true;
                continue;
            }
            if (py != pins.end()) {  // y = 0 forces x = 0
                if (!set_pin(x, 0)) return contradiction(FormulaKind::ImConj, arity);
                changed = true;
                continue;
            }
            next.emplace_back(x, y);
        }
        implications = std::move(next);
    }
    std::sort(implications.begin(), implications.end());
    implications.erase(std::unique(implications.begin(), implications.end()), implications.end());

    NormalizedFormula f;
    f.kind = FormulaKind::ImConj;
    f.arity = arity;
    f.pins = std::move(pins);
    f.implications = std::move(implications);
    return f;
}

Relation AffineSystem::solutions() const {
    Relation out(arity);
    std::vector<std::pair<Tuple, int>> rows;
    for (const auto& e : equations) rows.emplace_back(clause_mask(arity, e.vars), e.constant);
    const Tuple space = static_cast<Tuple>(out.tuple_space());
    for (Tuple t = 0; t < space; ++t) {
        bool ok = true;
        for (auto [mask, c] : rows)
            if ((std::popcount(t & mask) & 1) != c) {
                ok = false;
                break;
            }
        if (ok) out.insert(t);
    }
    return out;
}

bool AffineSystem::row_reduced() const {
    for (std::size_t i = 0; i < equations.size(); ++i) {
        const auto& vars = equations[i].vars;
        if (vars.empty()) return equations.size() == 1 && equations[i].constant == 1;
        if (!std::is_sorted(vars.begin(), vars.end())) return false;
        for (std::size_t j = 0; j < equations.size(); ++j) {
            if (i == j) continue;
            const auto& other = equations[j].vars;
            if (std::find(other.begin(), other.end(), vars.front()) != other.end()) return false;
        }
    }
    return true;
}

// Affine iff closed under x ^ y ^ z. With a0 in r fixed, closure of the
// translate {t ^ a0} under XOR only has to be checked against a set of
// members that generates its span, which keeps the test linear in |r|.
bool is_affine(const Relation& r) {
    if (r.empty()) return true;
    const auto members = r.tuples();
    const Tuple a0 = members.front();
    std::vector<Tuple> basis;      // echelon form, for independence tests
    std::vector<Tuple> generators; // members of r whose translates are independent
    for (Tuple t : members) {
        Tuple v = t ^ a0;
        for (Tuple b : basis) v = std::min(v, v ^ b);
        if (v != 0) {
            basis.push_back(v);
            std::sort(basis.rbegin(), basis.rend());
            generators.push_back(t);
        }
    }
    if (members.size() != (std::size_t{1} << basis.size())) return false;
    for (Tuple t : members)
        for (Tuple g : generators)
            if (!r.contains(t ^ g ^ a0)) return false;
    return true;
}

AffineSystem affine_system(const Relation& r) {
    const int n = r.arity();
    AffineSystem sys;
    sys.arity = n;
    if (r.empty()) {
        sys.equations.push_back({{}, 1});
        return sys;
    }
    if (!is_affine(r)) throw NotAffine("relation " + r.literal() + " is not affine");

    const auto members = r.tuples();
    const Tuple a0 = members.front();
    // Reduced row echelon basis of the direction space, pivot = leading bit.
    std::vector<Tuple> rows;
    for (Tuple t : members) {
        Tuple v = t ^ a0;
        for (Tuple b : rows)
            if (v & std::bit_floor(b)) v ^= b;
        if (v == 0) continue;
        const Tuple lead = std::bit_floor(v);
        for (Tuple& b : rows)
            if (b & lead) b ^= v;
        rows.push_back(v);
    }
    Tuple pivots = 0;
    for (Tuple b : rows) pivots |= std::bit_floor(b);

    // One parity check per free column: h = e_f + sum of pivots whose row uses f.
    std::vector<std::pair<Tuple, int>> eqs;
    for (int col = 0; col < n; ++col) {
        const Tuple f = column_mask(n, col);
        if (pivots & f) continue;
        Tuple h = f;
        for (Tuple b : rows)
            if (b & f) h |= std::bit_floor(b);
        eqs.emplace_back(h, std::popcount(h & a0) & 1);
    }

    // Row-reduce the checks with the smallest variable (highest bit) as pivot.
    std::vector<std::pair<Tuple, int>> reduced;
    for (auto [h, c] : eqs) {
        for (auto& [rh, rc] : reduced)
            if (h & std::bit_floor(rh)) {
                h ^= rh;
                c ^= rc;
            }
        if (h == 0) continue;
        const Tuple lead = std::bit_floor(h);
        for (auto& [rh, rc] : reduced)
            if (rh & lead) {
                rh ^= h;
                rc ^= c;
            }
        reduced.emplace_back(h, c);
    }
    std::sort(reduced.begin(), reduced.end(), [](auto a, auto b) { return a.first > b.first; });
    for (auto [h, c] : reduced) {
        AffineEquation e;
        for (int col = 0; col < n; ++col)
            if (h & column_mask(n, col)) e.vars.push_back(col);
        e.constant = c;
        sys.equations.push_back(std::move(e));
    }
    return sys;
}

bool is_pseudo_monotone(const Relation& r) { return pseudo_monotone_impl(r, 1); }

bool is_pseudo_antitone(const Relation& r) { return pseudo_monotone_impl(r, 0); }

NormalizedFormula normalize_orconj(const Relation& r) {
    auto [f, exact] = maximal_conj_formula(r, FormulaKind::OrConj);
    if (!exact) throw NotInClass("relation " + r.literal() + " is not in OR-conj");
    return f;
}

NormalizedFormula normalize_nandconj(const Relation& r) {
    auto [f, exact] = maximal_conj_formula(r, FormulaKind::NandConj);
    if (!exact) throw NotInClass("relation " + r.literal() + " is not in NAND-conj");
    return f;
}

NormalizedFormula normalize_imconj(const Relation& r) {
    const int n = r.arity();
    if (r.empty()) return contradiction(FormulaKind::ImConj, n);
    NormalizedFormula f;
    f.kind = FormulaKind::ImConj;
    f.arity = n;
    std::vector<int> free;
    const auto consts = constant_columns(r);
    for (int i = 0; i < n; ++i) {
        if (consts[static_cast<std::size_t>(i)])
            f.pins[i] = *consts[static_cast<std::size_t>(i)];
        else
            free.push_back(i);
    }
    // violated[x][y]: some member has x = 1 and y = 0
    std::vector<std::vector<char>> violated(free.size(), std::vector<char>(free.size(), 0));
    r.for_each([&](Tuple t) {
        for (std::size_t a = 0; a < free.size(); ++a) {
            if (!tuple_bit(t, n, free[a])) continue;
            for (std::size_t b = 0; b < free.size(); ++b)
                if (!tuple_bit(t, n, free[b])) violated[a][b] = 1;
        }
    });
    for (std::size_t a = 0; a < free.size(); ++a)
        for (std::size_t b = 0; b < free.size(); ++b)
            if (a != b && !violated[a][b]) f.implications.emplace_back(free[a], free[b]);
    if (!(f.evaluate() == r)) throw NotInClass("relation " + r.literal() + " is not in IM-conj");
    return f;
}

bool is_orconj(const Relation& r) { return maximal_conj_formula(r, FormulaKind::OrConj).second; }

bool is_nandconj(const Relation& r) { return maximal_conj_formula(r, FormulaKind::NandConj).second; }

bool is_imconj(const Relation& r) {
    try {
        normalize_imconj(r);
        return true;
    } catch (const NotInClass&) {
        return false;
    }
}

} // namespace boolcsp
