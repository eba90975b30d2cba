#include "boolcsp/counting.hpp"

#include "boolcsp/errors.hpp"

#include <algorithm>
#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace boolcsp {

namespace {

std::atomic<std::size_t> g_budget{24};

// Number of leading variables enumerated as independent parallel tasks.
constexpr std::size_t kSplitBits = 12;

struct CompiledConstraint {
    const Relation* relation;
    std::vector<Term> scope;
};

struct CompiledInstance {
    std::size_t n = 0;
    std::vector<CompiledConstraint> constraints;
    // checks_at[v]: constraints whose largest scope variable is v
    std::vector<std::vector<std::size_t>> checks_at;
    std::vector<std::size_t> ground;  // constraints with constant scopes only
    std::uint64_t distinguished_mask = 0;
};

CompiledInstance compile(const CspInstance& inst, std::span<const std::size_t> distinguished) {
    CompiledInstance c;
    c.n = inst.variable_count();
    if (c.n > brute_force_budget())
        throw ResourceLimit("instance has " + std::to_string(c.n) + " variables; brute-force budget is " +
                            std::to_string(brute_force_budget()));
    c.checks_at.resize(c.n);
    for (const auto& con : inst.constraints()) {
        int last = -1;
        for (const Term& t : con.scope)
            if (!t.is_constant()) last = std::max(last, t.var);
        const std::size_t idx = c.constraints.size();
        c.constraints.push_back({&inst.relation_of(con), con.scope});
        if (last < 0)
            c.ground.push_back(idx);
        else
            c.checks_at[static_cast<std::size_t>(last)].push_back(idx);
    }
    for (auto v : distinguished) {
        if (v >= c.n) throw InvalidArgument("distinguished variable out of range");
        c.distinguished_mask |= std::uint64_t{1} << v;
    }
    return c;
}

// Variable v is bit v of the assignment word.
inline bool satisfied(const CompiledConstraint& con, std::uint64_t assignment) {
    Tuple idx = 0;
    for (const Term& t : con.scope) {
        const Tuple bit = t.is_constant() ? t.value : static_cast<Tuple>((assignment >> t.var) & 1U);
        idx = (idx << 1) | bit;
    }
    return con.relation->contains(idx);
}

inline void record(SolutionTally& tally, std::uint64_t assignment, std::uint64_t mask) {
    ++tally.total;
    const std::uint64_t d = assignment & mask;
    if (d == 0)
        ++tally.all_zero;
    else if (d == mask)
        ++tally.all_one;
    else
        ++tally.stray;
}

void search(const CompiledInstance& c, std::size_t v, std::uint64_t assignment, SolutionTally& tally) {
    if (v == c.n) {
        record(tally, assignment, c.distinguished_mask);
        return;
    }
    for (std::uint64_t value = 0; value < 2; ++value) {
        const std::uint64_t next = assignment | (value << v);
        bool ok = true;
        for (auto idx : c.checks_at[v])
            if (!satisfied(c.constraints[idx], next)) {
                ok = false;
                break;
            }
        if (ok) search(c, v + 1, next, tally);
    }
}

bool ground_ok(const CompiledInstance& c) {
    for (auto idx : c.ground)
        if (!satisfied(c.constraints[idx], 0)) return false;
    return true;
}

} // namespace

std::size_t brute_force_budget() noexcept { return g_budget.load(std::memory_order_relaxed); }

void set_brute_force_budget(std::size_t variables) {
    if (variables < 1 || variables > kMaxBruteForceVariables)
        throw InvalidArgument("brute-force budget must lie in [1, " + std::to_string(kMaxBruteForceVariables) + "]");
    g_budget.store(variables, std::memory_order_relaxed);
}

SolutionTally tally_solutions_serial(const CspInstance& inst, std::span<const std::size_t> distinguished) {
    const CompiledInstance c = compile(inst, distinguished);
    SolutionTally tally;
    const std::uint64_t space = std::uint64_t{1} << c.n;
    for (std::uint64_t a = 0; a < space; ++a) {
        bool ok = true;
        for (const auto& con : c.constraints)
            if (!satisfied(con, a)) {
                ok = false;
                break;
            }
        if (ok) record(tally, a, c.distinguished_mask);
    }
    return tally;
}

SolutionTally tally_solutions(const CspInstance& inst, std::span<const std::size_t> distinguished) {
    const CompiledInstance c = compile(inst, distinguished);
    if (!ground_ok(c)) return {};
    const std::size_t split = std::min(c.n, kSplitBits);
    const std::int64_t tasks = std::int64_t{1} << split;

    std::uint64_t total = 0, zero = 0, one = 0, stray = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : total, zero, one, stray)
    for (std::int64_t task = 0; task < tasks; ++task) {
        const auto prefix = static_cast<std::uint64_t>(task);
        bool ok = true;
        for (std::size_t v = 0; v < split && ok; ++v)
            for (auto idx : c.checks_at[v])
                if (!satisfied(c.constraints[idx], prefix)) {
                    ok = false;
                    break;
                }
        if (!ok) continue;
        SolutionTally local;
        search(c, split, prefix, local);
        total += local.total;
        zero += local.all_zero;
        one += local.all_one;
        stray += local.stray;
    }
    return {total, zero, one, stray};
}

BigInt brute_force_count(const CspInstance& inst) { return BigInt(tally_solutions(inst, {}).total); }

BigInt brute_force_count_serial(const CspInstance& inst) { return BigInt(tally_solutions_serial(inst, {}).total); }

namespace {

struct CompiledHypergraph {
    std::size_t n;
    std::vector<std::uint64_t> masks;
    std::vector<std::vector<std::uint64_t>> ending_at;  // edges by largest vertex
};

CompiledHypergraph compile(const Hypergraph& h) {
    if (h.vertex_count() > brute_force_budget())
        throw ResourceLimit("hypergraph has " + std::to_string(h.vertex_count()) +
                            " vertices; brute-force budget is " + std::to_string(brute_force_budget()));
    CompiledHypergraph c{h.vertex_count(), {}, std::vector<std::vector<std::uint64_t>>(h.vertex_count())};
    for (const auto& e : h.edges()) {
        std::uint64_t m = 0;
        for (auto v : e) m |= std::uint64_t{1} << v;
        c.masks.push_back(m);
        c.ending_at[e.back()].push_back(m);
    }
    return c;
}

std::uint64_t count_independent(const CompiledHypergraph& c, std::size_t v, std::uint64_t set) {
    if (v == c.n) return 1;
    std::uint64_t n = count_independent(c, v + 1, set);
    const std::uint64_t with = set | (std::uint64_t{1} << v);
    for (auto m : c.ending_at[v])
        if ((with & m) == m) return n;
    return n + count_independent(c, v + 1, with);
}

} // namespace

BigInt hypergraph_is_count_serial(const Hypergraph& h) {
    const CompiledHypergraph c = compile(h);
    const std::uint64_t space = std::uint64_t{1} << c.n;
    std::uint64_t count = 0;
    for (std::uint64_t s = 0; s < space; ++s) {
        bool independent = true;
        for (auto m : c.masks)
            if ((s & m) == m) {
                independent = false;
                break;
            }
        if (independent) ++count;
    }
    return BigInt(count);
}

BigInt hypergraph_is_count(const Hypergraph& h) {
    const CompiledHypergraph c = compile(h);
    const std::size_t split = std::min(c.n, kSplitBits);
    const std::int64_t tasks = std::int64_t{1} << split;
    std::uint64_t count = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : count)
    for (std::int64_t task = 0; task < tasks; ++task) {
        const auto prefix = static_cast<std::uint64_t>(task);
        bool ok = true;
        for (std::size_t v = 0; v < split && ok; ++v)
            for (auto m : c.ending_at[v])
                if ((prefix & m) == m) {
                    ok = false;
                    break;
                }
        if (ok) count += count_independent(c, split, prefix);
    }
    return BigInt(count);
}

BigInt degree1_count(const CspInstance& inst) {
    if (degree(inst) > 1) throw InvalidArgument("degree1_count requires an instance of degree at most 1");
    BigInt total = 1;
    for (const auto& c : inst.constraints()) total *= inst.relation_of(c).size();
    const auto occ = inst.occurrences();
    const auto unconstrained = static_cast<std::uint64_t>(std::count(occ.begin(), occ.end(), std::size_t{0}));
    return total * pow2(unconstrained);
}

namespace {

// A GF(2) equation over the instance variables; bit n holds the constant.
class Gf2Row {
public:
    explicit Gf2Row(std::size_t n) : words_((n + 1 + 63) / 64, 0), n_(n) {}

    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void add(const Gf2Row& o) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    }
    bool constant() const { return test(n_); }
    void flip_constant() { flip(n_); }

private:
    std::vector<std::uint64_t> words_;
    std::size_t n_;
};

} // namespace

BigInt affine_count(const CspInstance& inst, const std::map<std::string, AffineSystem>& systems) {
    const std::size_t n = inst.variable_count();
    std::vector<AffineSystem> per_relation;
    per_relation.reserve(inst.relations().size());
    for (const auto& nr : inst.relations()) {
        if (auto it = systems.find(nr.name); it != systems.end()) {
            if (it->second.arity != nr.relation.arity())
                throw InvalidArgument("affine system for '" + nr.name + "' has the wrong arity");
            per_relation.push_back(it->second);
        } else if (is_affine(nr.relation)) {
            per_relation.push_back(affine_system(nr.relation));
        } else {
            // Only an error if some constraint actually uses it.
            per_relation.push_back(AffineSystem{nr.relation.arity(), {}});
        }
    }

    std::vector<Gf2Row> rows;
    for (const auto& c : inst.constraints()) {
        const auto& nr = inst.relations()[c.relation];
        if (!systems.count(nr.name) && !is_affine(nr.relation))
            throw InvalidArgument("affine_count: relation '" + nr.name + "' is not affine");
        for (const auto& eq : per_relation[c.relation].equations) {
            Gf2Row row(n);
            if (eq.constant) row.flip_constant();
            for (int col : eq.vars) {
                const Term& t = c.scope[static_cast<std::size_t>(col)];
                if (t.is_constant()) {
                    if (t.value) row.flip_constant();
                } else {
                    row.flip(static_cast<std::size_t>(t.var));
                }
            }
            rows.push_back(std::move(row));
        }
    }

    // Pivot on the lowest variable index.
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t p = rank;
        while (p < rows.size() && !rows[p].test(col)) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[rank], rows[p]);
        const Gf2Row& pivot = rows[rank];
        const auto count = static_cast<std::int64_t>(rows.size());
#pragma omp parallel for if (count > 512)
        for (std::int64_t i = 0; i < count; ++i) {
            auto& row = rows[static_cast<std::size_t>(i)];
            if (static_cast<std::size_t>(i) != rank && row.test(col)) row.add(pivot);
        }
        ++rank;
    }
    for (std::size_t i = rank; i < rows.size(); ++i)
        if (rows[i].constant()) return 0;
    return pow2(n - rank);
}

BigInt affine_count(const CspInstance& inst) { return affine_count(inst, {}); }

} // namespace boolcsp
