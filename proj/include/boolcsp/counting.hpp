#pragma once

#include "boolcsp/bigint.hpp"
#include "boolcsp/classification.hpp"
#include "boolcsp/csp.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>

namespace boolcsp {

inline constexpr std::size_t kMaxBruteForceVariables = 62;

/// Largest number of variables (or hypergraph vertices) the enumeration
/// engines accept. Default 24, i.e. 2^24 assignments.
std::size_t brute_force_budget() noexcept;
void set_brute_force_budget(std::size_t variables);

/// Satisfying assignments split by the values of a set of distinguished
/// variables: all zero, all one, or anything else.
struct SolutionTally {
    std::uint64_t total = 0;
    std::uint64_t all_zero = 0;
    std::uint64_t all_one = 0;
    std::uint64_t stray = 0;

    friend bool operator==(const SolutionTally&, const SolutionTally&) = default;
};

// Enumeration kernels. The plain versions split the assignment space on a
// variable prefix and search each part with OpenMP workers; the *_serial
// versions walk every assignment in order and exist as the reference the
// parallel kernels are tested against.

SolutionTally tally_solutions(const CspInstance& inst, std::span<const std::size_t> distinguished);
SolutionTally tally_solutions_serial(const CspInstance& inst, std::span<const std::size_t> distinguished);

BigInt brute_force_count(const CspInstance& inst);
BigInt brute_force_count_serial(const CspInstance& inst);

BigInt hypergraph_is_count(const Hypergraph& h);
BigInt hypergraph_is_count_serial(const Hypergraph& h);

/// Product of |R| over constraints times 2^(unconstrained variables).
/// InvalidArgument when the instance has degree above one.
BigInt degree1_count(const CspInstance& inst);

/// Gaussian elimination over GF(2) on the instantiated per-relation
/// systems: 0 if inconsistent, else 2^(n - rank). Systems missing from the
/// map are derived; a non-affine relation is an InvalidArgument.
BigInt affine_count(const CspInstance& inst, const std::map<std::string, AffineSystem>& systems);
BigInt affine_count(const CspInstance& inst);

} // namespace boolcsp
