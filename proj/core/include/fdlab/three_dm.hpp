#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fdlab/error.hpp"
#include "fdlab/fd.hpp"
#include "fdlab/table.hpp"

namespace fdlab {

struct Triple {
  std::string x;
  std::string y;
  std::string z;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// Three disjoint element sets of size n and a set of triples drawn from X x Y x Z.
class ThreeDMInstance {
 public:
  /// Throws PreconditionError unless |X| = |Y| = |Z| = n >= 1, the sets are
  /// disjoint and duplicate-free, and the triples are distinct members of X x Y x Z.
  ThreeDMInstance(std::vector<std::string> xs, std::vector<std::string> ys,
                  std::vector<std::string> zs, std::vector<Triple> triples);

  /// Element sets are read off the triples in order of first appearance. A
  /// position with fewer than n distinct elements is padded with placeholder
  /// elements named "?x1", "?y1", ... that belong to no triple.
  static ThreeDMInstance from_triples(std::size_t n, std::vector<Triple> triples);

  std::size_t n() const noexcept { return xs_.size(); }
  const std::vector<std::string>& xs() const noexcept { return xs_; }
  const std::vector<std::string>& ys() const noexcept { return ys_; }
  const std::vector<std::string>& zs() const noexcept { return zs_; }
  const std::vector<Triple>& triples() const noexcept { return triples_; }

 private:
  std::vector<std::string> xs_;
  std::vector<std::string> ys_;
  std::vector<std::string> zs_;
  std::vector<Triple> triples_;
};

/// Identifier of the i-th triple (0-based): "t1", "t2", ...
std::string triple_id(std::size_t i);

/// Vague table over (X, Y, Z, T) with one row per element plus the FDs
/// X -> T, Y -> T, Z -> T. The table has a world satisfying all three FDs iff
/// the instance has a perfect matching.
struct ReductionOutput {
  /// One row per element, X elements first, then Y, then Z. For n = 1 the three
  /// rows coincide, so `table` holds a single tuple.
  std::vector<VagueTuple> rows;
  Table table;
  std::vector<FunctionalDependency> fds;
};

class UncoverableElement : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Throws UncoverableElement when some element lies in no triple: its T cell
/// would be empty.
ReductionOutput generate_3dm_reduction(const ThreeDMInstance& instance);

/// Indices of triples covering every element exactly once, or nothing.
/// Exhaustive; throws BudgetError when n exceeds `max_n`.
std::optional<std::vector<std::size_t>> solve_3dm_bruteforce(const ThreeDMInstance& instance,
                                                             std::size_t max_n = 6);

}  // namespace fdlab
