#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "fdlab/schema.hpp"
#include "fdlab/tuple.hpp"

namespace fdlab {

/// A set of tuples of one model over one schema.
///
/// Rows are kept sorted and duplicate-free, so row indices follow the canonical
/// table order and two tables are equal iff they hold the same tuples.
class Table {
 public:
  Table() = default;
  Table(Schema schema, std::vector<StandardTuple> rows);
  Table(Schema schema, std::vector<VagueTuple> rows);
  Table(Schema schema, std::vector<DisjunctiveTuple> rows);

  /// Builds a table of `model` from tuples of that model or of a model it embeds
  /// (standard into vague, standard and vague into disjunctive).
  static Table from_tuples(Schema schema, Model model, std::vector<AnyTuple> rows,
                           std::uint64_t cap = kDefaultValuationCap);

  const Schema& schema() const noexcept { return schema_; }
  Model model() const noexcept { return static_cast<Model>(rows_.index()); }
  std::size_t size() const noexcept;
  bool empty() const noexcept { return size() == 0; }

  AnyTuple tuple(std::size_t i) const;

  /// Typed row access; throws ModelError when the model differs.
  const std::vector<StandardTuple>& standard_rows() const;
  const std::vector<VagueTuple>& vague_rows() const;
  const std::vector<DisjunctiveTuple>& disjunctive_rows() const;

  friend bool operator==(const Table&, const Table&) = default;
  friend bool operator<(const Table& a, const Table& b);

 private:
  Schema schema_;
  std::variant<std::vector<StandardTuple>, std::vector<VagueTuple>, std::vector<DisjunctiveTuple>>
      rows_;
};

/// A possible world: always a standard table.
using World = Table;

/// pi_X(R), as a set over the sub-schema X.
Table project_table(const Table& r, const AttrSet& x);

/// Equivalent disjunctive table. Disjunctive input is returned unchanged.
Table to_disjunctive(const Table& r, std::uint64_t cap = kDefaultValuationCap);

/// Standard tables become vague tables of singleton cells; vague tables are
/// returned unchanged; disjunctive tables raise ModelError.
Table to_vague(const Table& r);

struct WorldSet {
  std::vector<World> worlds;  // sorted, distinct
  bool truncated = false;
};

/// val(R): every valuation applied to every tuple, duplicates collapsed.
/// Valuations are visited in value order. Enumeration stops as soon as more than
/// `limit` distinct worlds have been seen; `truncated` is then set and the
/// smallest `limit` of those are returned. Throws
/// BudgetError when the valuation count exceeds `cap`.
WorldSet enumerate_worlds(const Table& r, std::optional<std::size_t> limit = std::nullopt,
                          std::uint64_t cap = kDefaultValuationCap);

}  // namespace fdlab
