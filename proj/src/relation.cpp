#include "boolcsp/relation.hpp"

#include "boolcsp/errors.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <numeric>

namespace boolcsp {

namespace {

std::atomic<int> g_arity_cap{16};

void check_arity(int arity) {
    if (arity < 1)
        throw InvalidArgument("relation arity must be at least 1");
    if (arity > arity_cap())
        throw InvalidArgument("relation arity " + std::to_string(arity) + " exceeds the cap of " +
                              std::to_string(arity_cap()));
}

void check_column(const Relation& r, int column) {
    if (column < 0 || column >= r.arity())
        throw InvalidArgument("column " + std::to_string(column + 1) + " out of range for arity " +
                              std::to_string(r.arity()));
}

void check_bit(int value) {
    if (value != 0 && value != 1)
        throw InvalidArgument("pin value must be 0 or 1");
}

} // namespace

int arity_cap() noexcept { return g_arity_cap.load(std::memory_order_relaxed); }

void set_arity_cap(int cap) {
    if (cap < 1 || cap > kHardArityLimit)
        throw InvalidArgument("arity cap must lie in [1, " + std::to_string(kHardArityLimit) + "]");
    g_arity_cap.store(cap, std::memory_order_relaxed);
}

std::string tuple_string(Tuple t, int arity) {
    std::string s(static_cast<std::size_t>(arity), '0');
    for (int i = 0; i < arity; ++i)
        if (tuple_bit(t, arity, i)) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

Relation::Relation() : arity_(1), words_(1, 0) {}

Relation::Relation(int arity) : arity_(arity) {
    check_arity(arity);
    words_.assign(std::max<std::uint64_t>(1, tuple_space() / 64), 0);
}

Relation Relation::full(int arity) {
    Relation r(arity);
    if (arity >= 6) {
        std::fill(r.words_.begin(), r.words_.end(), ~std::uint64_t{0});
    } else {
        r.words_[0] = (std::uint64_t{1} << r.tuple_space()) - 1;
    }
    return r;
}

Relation Relation::from_tuples(int arity, std::span<const Tuple> tuples) {
    Relation r(arity);
    for (Tuple t : tuples) {
        if (t >= r.tuple_space())
            throw InvalidArgument("tuple index out of range for arity " + std::to_string(arity));
        r.insert(t);
    }
    return r;
}

Relation Relation::from_strings(std::initializer_list<std::string_view> rows) {
    if (rows.size() == 0)
        throw InvalidArgument("from_strings needs at least one row to fix the arity");
    const int arity = static_cast<int>(rows.begin()->size());
    Relation r(arity);
    for (auto row : rows) {
        if (static_cast<int>(row.size()) != arity)
            throw InvalidArgument("bitstrings of differing length");
        Tuple t = 0;
        for (char ch : row) {
            if (ch != '0' && ch != '1') throw InvalidArgument("bitstring must contain only 0 and 1");
            t = (t << 1) | static_cast<Tuple>(ch - '0');
        }
        r.insert(t);
    }
    return r;
}

void Relation::insert(Tuple t) { words_[t >> 6] |= std::uint64_t{1} << (t & 63); }

void Relation::erase(Tuple t) { words_[t >> 6] &= ~(std::uint64_t{1} << (t & 63)); }

std::size_t Relation::size() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

std::vector<Tuple> Relation::tuples() const {
    std::vector<Tuple> out;
    out.reserve(size());
    for_each([&](Tuple t) { out.push_back(t); });
    return out;
}

std::string Relation::literal() const {
    if (empty()) return "empty" + std::to_string(arity_);
    std::string s = "{";
    bool first = true;
    for_each([&](Tuple t) {
        if (!first) s += ',';
        first = false;
        s += tuple_string(t, arity_);
    });
    return s + "}";
}

PppRecipe PppRecipe::identity(int arity) {
    PppRecipe p;
    p.permutation.resize(static_cast<std::size_t>(arity));
    std::iota(p.permutation.begin(), p.permutation.end(), 0);
    p.kept = p.permutation;
    return p;
}

void PppRecipe::validate(int source_arity) const {
    if (static_cast<int>(permutation.size()) != source_arity)
        throw InvalidArgument("permutation length does not match arity");
    std::vector<char> seen(static_cast<std::size_t>(source_arity), 0);
    for (int p : permutation) {
        if (p < 0 || p >= source_arity || seen[static_cast<std::size_t>(p)])
            throw InvalidArgument("permutation is not a bijection on the columns");
        seen[static_cast<std::size_t>(p)] = 1;
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (auto [col, value] : pins) {
        if (col < 0 || col >= source_arity) throw InvalidArgument("pinned column out of range");
        check_bit(value);
        seen[static_cast<std::size_t>(col)] = 1;
    }
    if (kept.empty()) throw Unsupported("a recipe must keep at least one column");
    for (int k : kept) {
        if (k < 0 || k >= source_arity) throw InvalidArgument("kept column out of range");
        if (seen[static_cast<std::size_t>(k)] == 1)
            throw InvalidArgument("column is both pinned and kept");
        if (seen[static_cast<std::size_t>(k)] == 2) throw InvalidArgument("column kept twice");
        seen[static_cast<std::size_t>(k)] = 2;
    }
}

Relation permute(const Relation& r, std::span<const int> perm) {
    const int n = r.arity();
    PppRecipe check;
    check.permutation.assign(perm.begin(), perm.end());
    check.kept = {0};
    check.validate(n);
    Relation out(n);
    r.for_each([&](Tuple b) {
        Tuple a = 0;
        for (int j = 0; j < n; ++j)
            if (tuple_bit(b, n, j)) a = with_bit(a, n, perm[static_cast<std::size_t>(j)], 1);
        out.insert(a);
    });
    return out;
}

Relation pin(const Relation& r, int column, int value) {
    check_column(r, column);
    check_bit(value);
    Relation out(r.arity());
    r.for_each([&](Tuple t) {
        if (tuple_bit(t, r.arity(), column) == value) out.insert(t);
    });
    return out;
}

Relation project(const Relation& r, int column) {
    check_column(r, column);
    if (r.arity() == 1) throw Unsupported("cannot project away the only column");
    std::vector<int> keep;
    for (int i = 0; i < r.arity(); ++i)
        if (i != column) keep.push_back(i);
    return project_onto(r, keep);
}

Relation project_onto(const Relation& r, std::span<const int> columns) {
    if (columns.empty()) throw Unsupported("projection must keep at least one column");
    const int n = r.arity();
    const int m = static_cast<int>(columns.size());
    for (int c : columns) check_column(r, c);
    Relation out(m);
    r.for_each([&](Tuple t) {
        Tuple a = 0;
        for (int j = 0; j < m; ++j) a = (a << 1) | static_cast<Tuple>(tuple_bit(t, n, columns[static_cast<std::size_t>(j)]));
        out.insert(a);
    });
    return out;
}

Relation apply_recipe(const Relation& r, const PppRecipe& recipe) {
    recipe.validate(r.arity());
    Relation cur = permute(r, recipe.permutation);
    for (auto [col, value] : recipe.pins) cur = pin(cur, col, value);
    return project_onto(cur, recipe.kept);
}

PppRecipe compose_recipes(const PppRecipe& first, const PppRecipe& second) {
    const int mid_arity = static_cast<int>(first.kept.size());
    second.validate(mid_arity);
    // Column t of the permuted middle relation is middle column inv[t],
    // which is column first.kept[inv[t]] of the first recipe's permuted source.
    std::vector<int> inv(static_cast<std::size_t>(mid_arity));
    for (int j = 0; j < mid_arity; ++j) inv[static_cast<std::size_t>(second.permutation[static_cast<std::size_t>(j)])] = j;
    auto to_source = [&](int t) { return first.kept[static_cast<std::size_t>(inv[static_cast<std::size_t>(t)])]; };

    PppRecipe out;
    out.permutation = first.permutation;
    out.pins = first.pins;
    for (auto [col, value] : second.pins) out.pins[to_source(col)] = value;
    for (int k : second.kept) out.kept.push_back(to_source(k));
    return out;
}

Relation bitwise_complement(const Relation& r) {
    const Tuple mask = static_cast<Tuple>(r.tuple_space() - 1);
    Relation out(r.arity());
    r.for_each([&](Tuple t) { out.insert(t ^ mask); });
    return out;
}

std::pair<Relation, Relation> decompose(const Relation& r) {
    if (r.arity() < 2) throw Unsupported("decompose needs arity at least 2");
    const int m = r.arity() - 1;
    const Tuple half = Tuple{1} << m;
    Relation r0(m), r1(m);
    r.for_each([&](Tuple t) {
        if (t & half)
            r1.insert(t ^ half);
        else
            r0.insert(t);
    });
    return {std::move(r0), std::move(r1)};
}

Relation compose(const Relation& r0, const Relation& r1) {
    if (r0.arity() != r1.arity()) throw InvalidArgument("compose: arity mismatch");
    const int m = r0.arity();
    Relation out(m + 1);
    const Tuple half = Tuple{1} << m;
    r0.for_each([&](Tuple t) { out.insert(t); });
    r1.for_each([&](Tuple t) { out.insert(t | half); });
    return out;
}

Relation restrict_by_tuple(const Relation& r, Tuple a, int c) {
    check_bit(c);
    if (a >= r.tuple_space() || !r.contains(a))
        throw InvalidArgument("restrict_by_tuple: tuple is not a member of the relation");
    const Tuple ones = static_cast<Tuple>(r.tuple_space() - 1);
    if (a == 0 || a == ones) throw InvalidArgument("restrict_by_tuple: tuple must contain both 0 and 1");
    const int n = r.arity();
    Relation cur = r;
    std::vector<int> keep;
    for (int i = 0; i < n; ++i) {
        if (tuple_bit(a, n, i) == c)
            cur = pin(cur, i, c);
        else
            keep.push_back(i);
    }
    return project_onto(cur, keep);
}

bool is_c_valid(const Relation& r, int c) {
    check_bit(c);
    return r.contains(c ? static_cast<Tuple>(r.tuple_space() - 1) : 0);
}

std::vector<std::optional<int>> constant_columns(const Relation& r) {
    const int n = r.arity();
    std::vector<std::optional<int>> out(static_cast<std::size_t>(n));
    if (r.empty()) return out;
    Tuple all_and = static_cast<Tuple>(r.tuple_space() - 1);
    Tuple all_or = 0;
    r.for_each([&](Tuple t) {
        all_and &= t;
        all_or |= t;
    });
    for (int i = 0; i < n; ++i) {
        const int lo = tuple_bit(all_and, n, i);
        const int hi = tuple_bit(all_or, n, i);
        if (lo == hi) out[static_cast<std::size_t>(i)] = lo;
    }
    return out;
}

namespace rel {

Relation eq(int k) {
    if (k < 1) throw InvalidArgument("eq needs k >= 1");
    Relation r(k);
    r.insert(0);
    r.insert(static_cast<Tuple>(r.tuple_space() - 1));
    return r;
}

Relation neq() { return Relation::from_strings({"01", "10"}); }

Relation or_(int k) {
    Relation r = Relation::full(k);
    r.erase(0);
    return r;
}

Relation nand(int k) {
    Relation r = Relation::full(k);
    r.erase(static_cast<Tuple>(r.tuple_space() - 1));
    return r;
}

Relation implies() { return Relation::from_strings({"00", "01", "11"}); }

Relation zero() { return Relation::from_strings({"0"}); }

Relation one() { return Relation::from_strings({"1"}); }

Relation empty(int arity) { return Relation(arity); }

namespace {

std::optional<int> suffix_number(std::string_view name, std::string_view prefix) {
    if (name.substr(0, prefix.size()) != prefix) return std::nullopt;
    auto digits = name.substr(prefix.size());
    if (digits.empty()) return std::nullopt;
    int value = 0;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || p != digits.data() + digits.size()) return std::nullopt;
    return value;
}

} // namespace

std::optional<Relation> builtin(std::string_view name) {
    if (name == "eq") return eq(2);
    if (name == "neq") return neq();
    if (name == "or") return or_(2);
    if (name == "nand") return nand(2);
    if (name == "imp") return implies();
    if (name == "zero") return zero();
    if (name == "one") return one();
    if (auto k = suffix_number(name, "eq"); k && *k >= 2) return eq(*k);
    if (auto k = suffix_number(name, "or"); k && *k >= 2) return or_(*k);
    if (auto k = suffix_number(name, "nand"); k && *k >= 2) return nand(*k);
    if (auto k = suffix_number(name, "empty"); k && *k >= 1) return empty(*k);
    if (auto k = suffix_number(name, "full"); k && *k >= 1) return Relation::full(*k);
    return std::nullopt;
}

} // namespace rel

} // namespace boolcsp
