#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace boolcsp {

// Storage limit of the characteristic vector; the user-facing cap below
// can be raised up to this value.
inline constexpr int kHardArityLimit = 24;

int arity_cap() noexcept;
void set_arity_cap(int cap);

// A tuple a1...ar is encoded as an integer with a1 as the most significant
// of the r low bits.
using Tuple = std::uint32_t;

inline int tuple_bit(Tuple t, int arity, int column) noexcept {
    return static_cast<int>((t >> (arity - 1 - column)) & 1U);
}

inline Tuple with_bit(Tuple t, int arity, int column, int value) noexcept {
    const Tuple mask = Tuple{1} << (arity - 1 - column);
    return value ? (t | mask) : (t & ~mask);
}

std::string tuple_string(Tuple t, int arity);

/// A Boolean relation of fixed arity, held as an exact characteristic
/// bit-vector over all 2^arity tuples. Value type; every operation below
/// returns a fresh relation.
class Relation {
public:
    Relation();
    explicit Relation(int arity);

    static Relation full(int arity);
    static Relation from_tuples(int arity, std::span<const Tuple> tuples);
    /// Bitstrings such as "011"; all must share one length.
    static Relation from_strings(std::initializer_list<std::string_view> rows);

    int arity() const noexcept { return arity_; }
    std::uint64_t tuple_space() const noexcept { return std::uint64_t{1} << arity_; }

    bool contains(Tuple t) const noexcept { return (words_[t >> 6] >> (t & 63)) & 1U; }
    void insert(Tuple t);
    void erase(Tuple t);

    std::size_t size() const noexcept;
    bool empty() const noexcept { return size() == 0; }
    bool complete() const noexcept { return size() == tuple_space(); }

    /// Member tuples in ascending order.
    std::vector<Tuple> tuples() const;

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                const int b = __builtin_ctzll(bits);
                f(static_cast<Tuple>(w * 64 + b));
                bits &= bits - 1;
            }
        }
    }

    /// {00,01,11}; the empty relation prints as empty<r>.
    std::string literal() const;

    friend bool operator==(const Relation&, const Relation&) = default;

private:
    int arity_;
    std::vector<std::uint64_t> words_;
};

/// Permutation, pins and kept columns, applied in that order. Columns are
/// zero-based. `permutation[j]` is the position that source column j
/// occupies after permuting. Pins and kept refer to post-permutation
/// columns; the result's columns are `kept` in list order.
struct PppRecipe {
    std::vector<int> permutation;
    std::map<int, int> pins;
    std::vector<int> kept;

    static PppRecipe identity(int arity);

    /// Throws InvalidArgument unless well formed for a source of this arity.
    void validate(int source_arity) const;

    friend bool operator==(const PppRecipe&, const PppRecipe&) = default;
};

Relation permute(const Relation& r, std::span<const int> perm);
Relation pin(const Relation& r, int column, int value);
Relation project(const Relation& r, int column);
/// Keep the listed columns, in list order, projecting away the rest.
Relation project_onto(const Relation& r, std::span<const int> columns);
Relation apply_recipe(const Relation& r, const PppRecipe& recipe);

/// If `second` applies to apply_recipe(A, first), the result is a single
/// canonical recipe on A with the same effect.
PppRecipe compose_recipes(const PppRecipe& first, const PppRecipe& second);

Relation bitwise_complement(const Relation& r);

std::pair<Relation, Relation> decompose(const Relation& r);
Relation compose(const Relation& r0, const Relation& r1);

/// Pin every column where a has value c to c, then project those columns.
Relation restrict_by_tuple(const Relation& r, Tuple a, int c);

bool is_c_valid(const Relation& r, int c);

/// Per column: the constant value, or nullopt if both values occur.
/// Every column of the empty relation reports nullopt.
std::vector<std::optional<int>> constant_columns(const Relation& r);

namespace rel {

Relation eq(int k = 2);
Relation neq();
Relation or_(int k = 2);
Relation nand(int k = 2);
Relation implies();
Relation zero();
Relation one();
Relation empty(int arity);

/// Resolves eq, eqK, neq, or, orK, nand, nandK, imp, zero, one, emptyK, fullK.
std::optional<Relation> builtin(std::string_view name);

} // namespace rel

} // namespace boolcsp
