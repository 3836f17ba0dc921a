#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "fdlab/schema.hpp"
#include "fdlab/value.hpp"

namespace fdlab {

/// Upper bound on the number of valuations any single expansion, enumeration
/// or search may visit before raising BudgetError.
inline constexpr std::uint64_t kDefaultValuationCap = 1'000'000;

enum class Model { Standard, Vague, Disjunctive };

std::string_view to_string(Model m);

/// One known value per attribute.
struct StandardTuple {
  std::vector<Value> cells;

  StandardTuple() = default;
  explicit StandardTuple(std::vector<Value> c) : cells(std::move(c)) {}
  StandardTuple(std::initializer_list<std::string_view> texts);

  std::size_t arity() const noexcept { return cells.size(); }
  Value operator[](std::size_t i) const { return cells[i]; }

  friend bool operator==(const StandardTuple&, const StandardTuple&) = default;
  friend auto operator<=>(const StandardTuple&, const StandardTuple&) = default;
};

struct StandardTupleHash {
  std::size_t operator()(const StandardTuple& t) const noexcept;
};

/// A tuple whose cells are non-empty finite sets of candidate values.
class VagueTuple {
 public:
  VagueTuple() = default;
  /// Sorts each cell. Throws SchemaError on an empty cell.
  explicit VagueTuple(std::vector<ValueSet> cells);
  explicit VagueTuple(const StandardTuple& t);

  std::size_t arity() const noexcept { return cells_.size(); }
  const ValueSet& operator[](std::size_t i) const { return cells_[i]; }
  const std::vector<ValueSet>& cells() const noexcept { return cells_; }

  /// True when every cell is a singleton.
  bool is_standard() const noexcept;
  std::optional<StandardTuple> as_standard() const;

  friend bool operator==(const VagueTuple&, const VagueTuple&) = default;
  friend auto operator<=>(const VagueTuple&, const VagueTuple&) = default;

 private:
  std::vector<ValueSet> cells_;
};

/// A finite disjunction of standard tuples, kept as a sorted duplicate-free set.
class DisjunctiveTuple {
 public:
  DisjunctiveTuple() = default;
  /// Throws SchemaError if empty or if the disjuncts disagree on arity.
  explicit DisjunctiveTuple(std::vector<StandardTuple> disjuncts);
  explicit DisjunctiveTuple(const StandardTuple& t);

  std::size_t arity() const noexcept { return disjuncts_.front().arity(); }
  std::size_t size() const noexcept { return disjuncts_.size(); }
  const std::vector<StandardTuple>& disjuncts() const noexcept { return disjuncts_; }
  bool contains(const StandardTuple& d) const;

  friend bool operator==(const DisjunctiveTuple&, const DisjunctiveTuple&) = default;
  friend auto operator<=>(const DisjunctiveTuple&, const DisjunctiveTuple&) = default;

 private:
  std::vector<StandardTuple> disjuncts_;
};

using AnyTuple = std::variant<StandardTuple, VagueTuple, DisjunctiveTuple>;

Model model_of(const AnyTuple& t) noexcept;
std::size_t arity(const AnyTuple& t) noexcept;

/// t[X]. The model is preserved; disjunct sets are deduplicated after projection.
/// Throws SchemaError when X names a position beyond the tuple's arity.
StandardTuple project_tuple(const StandardTuple& t, const AttrSet& x);
VagueTuple project_tuple(const VagueTuple& t, const AttrSet& x);
DisjunctiveTuple project_tuple(const DisjunctiveTuple& t, const AttrSet& x);
AnyTuple project_tuple(const AnyTuple& t, const AttrSet& x);

/// Equality of possible valuations. Vague tuples compare cell by cell; disjunctive
/// tuples compare as disjunct sets. Throws ModelError or SchemaError on mismatch.
bool equal_tuples(const AnyTuple& a, const AnyTuple& b);

/// Vague: cell-wise union. Disjunctive: disjunct-set union. Standard inputs are
/// promoted to vague.
AnyTuple tuple_union(const AnyTuple& a, const AnyTuple& b);

/// Vague: cell-wise intersection, absent if a cell empties. Disjunctive:
/// disjunct-set intersection. Standard: the tuple itself if equal.
std::optional<AnyTuple> tuple_intersection(const AnyTuple& a, const AnyTuple& b);

/// Number of valuations of the whole tuple, saturating at UINT64_MAX.
std::uint64_t valuation_count(const AnyTuple& t) noexcept;

/// Number of valuations of t[X], saturating. Exact for vague and standard tuples;
/// an upper bound (the disjunct count) for disjunctive ones.
std::uint64_t valuation_count(const AnyTuple& t, const AttrSet& x) noexcept;

/// t[X] as a sorted set of standard tuples over X. For vague tuples only the
/// product of the X cells is materialized. Throws BudgetError above `cap`.
std::vector<StandardTuple> valuations(const AnyTuple& t, const AttrSet& x,
                                      std::uint64_t cap = kDefaultValuationCap);

/// Cartesian expansion of a vague tuple.
DisjunctiveTuple to_disjunctive(const VagueTuple& t, std::uint64_t cap = kDefaultValuationCap);

/// The vague tuple with cells { d[A] | d in disjuncts }, if the disjunct set is
/// exactly the product of those cells.
std::optional<VagueTuple> try_to_vague(const DisjunctiveTuple& t);

}  // namespace fdlab
