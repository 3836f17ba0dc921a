#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fdlab/fd.hpp"
#include "fdlab/table.hpp"

namespace fdlab {

inline constexpr std::uint64_t kDefaultPickerSeed = 0;

/// Chooses one value from a multi-valued cell.
using ValuePicker = std::function<Value(const ValueSet&)>;

/// Uniform choice driven by a 64-bit Mersenne Twister seeded with `seed`.
ValuePicker seeded_picker(std::uint64_t seed);

/// Rewrites every X -> Y as the FDs X -> A for A in Y - X. Trivial FDs vanish.
std::vector<FunctionalDependency> split_fds(std::span<const FunctionalDependency> fds);

/// Builds a possible world of a vague (or standard) table that satisfies every
/// FD in `fds`, each of which must hold as a PFD on `r`.
///
/// Attributes are visited in schema order and tuples in table order. For each
/// multi-valued cell t[A] a value is picked, then the set of tuples whose
/// determinant X (for some X -> A) can coincide with a member's is grown to a
/// fixpoint and every member gets that value for A.
///
/// Throws ModelError for disjunctive tables and PreconditionError naming the
/// first FD that does not hold as a PFD.
World seamless_valuation_pfd(const Table& r, std::span<const FunctionalDependency> fds,
                             std::uint64_t seed = kDefaultPickerSeed);
World seamless_valuation_pfd(const Table& r, std::span<const FunctionalDependency> fds,
                             const ValuePicker& pick);

namespace detail {

/// Same procedure, but the agreement set is grown by a single scan over the
/// table instead of a fixpoint. Later assignments overwrite earlier ones.
/// Kept to exhibit the chains a single scan misses.
World single_scan_valuation(const Table& r, std::span<const FunctionalDependency> fds,
                            const ValuePicker& pick);

}  // namespace detail
}  // namespace fdlab
