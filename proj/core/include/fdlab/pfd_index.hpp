#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "fdlab/fd.hpp"
#include "fdlab/schema.hpp"
#include "fdlab/tuple.hpp"

namespace fdlab {

/// Incremental PFD enforcement for one FD X -> Y.
///
/// Maps every binding a over X that occurs in some stored tuple t to the answer
/// set t[X=a][Y] and to the number of stored tuples whose X valuations contain a.
/// An insert is accepted iff the stored table plus the new tuple still satisfies
/// the PFD; a rejected insert leaves the index untouched. Each operation costs
/// expected time linear in the number of valuations of t[X].
///
/// Not internally synchronized: one writer, or any number of concurrent readers.
class PfdIndex {
 public:
  struct Entry {
    std::vector<StandardTuple> answer;  // over Y, sorted
    std::size_t support = 0;            // >= 1 while stored

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  struct Conflict {
    StandardTuple binding;
    std::vector<StandardTuple> stored;
    std::vector<StandardTuple> incoming;
  };

  struct Verdict {
    bool accepted = true;
    std::optional<Conflict> conflict;  // set when rejected
  };

  using Map = std::unordered_map<StandardTuple, Entry, StandardTupleHash>;

  /// Throws SchemaError when the FD does not fit `schema`.
  PfdIndex(const Schema& schema, FunctionalDependency fd);

  /// Stores `t` or rejects it atomically.
  Verdict insert(const AnyTuple& t);

  /// Same verdict as insert, without mutating.
  Verdict check(const AnyTuple& t) const;

  /// Decrements support for every binding of `t`, dropping entries that reach
  /// zero. Throws ContractError (and changes nothing) when some binding of `t` is
  /// missing or its answer differs from the stored one.
  void remove(const AnyTuple& t);

  const FunctionalDependency& fd() const noexcept { return fd_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const Map& entries() const noexcept { return entries_; }
  const Entry* find(const StandardTuple& binding) const;

  friend bool operator==(const PfdIndex& a, const PfdIndex& b) {
    return a.fd_ == b.fd_ && a.arity_ == b.arity_ && a.entries_ == b.entries_;
  }

 private:
  std::vector<std::pair<StandardTuple, std::vector<StandardTuple>>> bindings(
      const AnyTuple& t) const;

  FunctionalDependency fd_;
  std::size_t arity_;
  Map entries_;
};

}  // namespace fdlab
