#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fdlab/fd.hpp"
#include "fdlab/table.hpp"
#include "fdlab/tuple.hpp"

namespace fdlab {

/// t[X=a][Y]: the disjuncts (or vague valuations) of a tuple that agree with
/// the binding `a` on X, projected on Y.
struct SelectionResult {
  StandardTuple binding;               // over X
  std::vector<StandardTuple> answers;  // over Y, sorted, possibly empty
};

/// For vague tuples only the product of the X and Y cells is materialized.
SelectionResult select(const AnyTuple& t, const AttrSet& x, const StandardTuple& binding,
                       const AttrSet& y);
/// Projects the selection on the whole tuple.
SelectionResult select(const AnyTuple& t, const AttrSet& x, const StandardTuple& binding);

enum class ViolationKind {
  Pair,         // two tuples (possibly the same one) disagree under a shared binding
  ProductForm,  // vertical FD: selected Y-X disjuncts are not a Cartesian product
  Multivalued,  // vertical FD: the per-tuple MVD X ->> Y-X fails
};

/// A counterexample, the lexicographically first one under canonical table order.
/// `first <= second` are row indices. `binding` is over X; it is empty for
/// Raju-Majumdar violations, which have no binding.
struct Violation {
  std::size_t first = 0;
  std::size_t second = 0;
  StandardTuple binding;
  ViolationKind kind = ViolationKind::Pair;

  friend bool operator==(const Violation&, const Violation&) = default;
};

bool check_standard(const Table& r, const FunctionalDependency& fd);
std::optional<Violation> find_standard_violation(const Table& r, const FunctionalDependency& fd);

/// Every possible world satisfies `fd`. Decided pairwise: a world violates the FD
/// iff two distinct tuples have valuations agreeing on X and differing on Y.
bool check_strong(const Table& r, const FunctionalDependency& fd,
                  std::uint64_t cap = kDefaultValuationCap);
std::optional<Violation> find_strong_violation(const Table& r, const FunctionalDependency& fd,
                                               std::uint64_t cap = kDefaultValuationCap);

/// Some possible world satisfies `fd`.
bool check_weak(const Table& r, const FunctionalDependency& fd,
                std::uint64_t cap = kDefaultValuationCap);

struct SearchStats {
  std::uint64_t nodes = 0;  // candidate valuations tried
};

/// A world satisfying every FD in `fds`, or nothing if none exists.
///
/// Exact backtracking over per-tuple valuations with forward checking. Deciding
/// existence is NP-complete; BudgetError is raised once `cap` candidates have
/// been tried.
std::optional<World> check_seamless(const Table& r, std::span<const FunctionalDependency> fds,
                                    std::uint64_t cap = kDefaultValuationCap,
                                    SearchStats* stats = nullptr);

/// PFD: for any t1, t2 and any a in t1[X] and t2[X], t1[X=a][Y] = t2[X=a][Y].
/// Vague tables use the per-attribute shortcut (overlapping X cells force equal
/// Y-X cells); other models use the definition directly.
bool check_pfd(const Table& r, const FunctionalDependency& fd);
std::optional<Violation> find_pfd_violation(const Table& r, const FunctionalDependency& fd);

/// The literal PFD definition for every model, comparing answer sets per binding.
std::optional<Violation> find_pfd_violation_general(const Table& r, const FunctionalDependency& fd);
/// The vague-table shortcut. Throws ModelError for disjunctive tables.
std::optional<Violation> find_pfd_violation_decomposed(const Table& r,
                                                       const FunctionalDependency& fd);

/// Vertical FD over the disjunctive form of `r`: PFD agreement, per-tuple product
/// form of the selected Y-X disjuncts, and the MVD X ->> Y-X evaluated on each
/// tuple's own disjunct set.
bool check_vertical(const Table& r, const FunctionalDependency& fd);
std::optional<Violation> find_vertical_violation(const Table& r, const FunctionalDependency& fd);

enum class ResemblanceKind {
  Max,  // max(|a n b|/|a|, |a n b|/|b|)
  Min,  // min(...), the variant used to show the problem is not specific to max
};

/// mu_EQ score in [0, 1].
class Resemblance {
 public:
  constexpr Resemblance() = default;
  constexpr explicit Resemblance(double score) : score_(score) {}
  constexpr double score() const noexcept { return score_; }
  friend constexpr auto operator<=>(Resemblance, Resemblance) = default;

 private:
  double score_ = 0.0;
};

/// Throws PreconditionError when either set is empty.
Resemblance resemblance(const ValueSet& a, const ValueSet& b,
                        ResemblanceKind kind = ResemblanceKind::Max);
/// Minimum of the per-attribute scores over Z; 1 when Z is empty.
Resemblance tuple_resemblance(const VagueTuple& t1, const VagueTuple& t2, const AttrSet& z,
                              ResemblanceKind kind = ResemblanceKind::Max);

/// Raju-Majumdar FFD: mu(t[Y], t'[Y]) >= mu(t[X], t'[X]) for every pair.
/// Standard tables are read as vague; disjunctive tables raise ModelError.
bool check_rm(const Table& r, const FunctionalDependency& fd,
              ResemblanceKind kind = ResemblanceKind::Max);
std::optional<Violation> find_rm_violation(const Table& r, const FunctionalDependency& fd,
                                           ResemblanceKind kind = ResemblanceKind::Max);

struct FdVerdict {
  FunctionalDependency fd;
  bool holds = false;
  std::optional<Violation> violation;
};

struct Report {
  Semantics semantics = Semantics::Pfd;
  Model model = Model::Standard;
  std::vector<FdVerdict> verdicts;  // one per FD; for Seamless, one per FD as well
  bool satisfied = false;           // every verdict holds (Seamless: a witness exists)
  std::optional<World> witness;     // Seamless only
};

struct CheckOptions {
  std::uint64_t cap = kDefaultValuationCap;
  ResemblanceKind resemblance = ResemblanceKind::Max;
};

/// Uniform dispatcher. Seamless treats `fds` as one set; other semantics judge
/// each FD on its own. Throws ModelError when the semantics does not apply to
/// the table's model (Standard needs a standard table; Raju-Majumdar rejects
/// disjunctive tables).
Report check(const Table& r, std::span<const FunctionalDependency> fds, Semantics semantics,
             const CheckOptions& options = {});

}  // namespace fdlab
