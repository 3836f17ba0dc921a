#include "fdlab/valuation.hpp"

#include <memory>
#include <random>
#include <stdexcept>
#include <string>

#include "fdlab/error.hpp"
#include "fdlab/semantics.hpp"

namespace fdlab {
namespace {

using Cells = std::vector<ValueSet>;

// Some possible world makes t1[X] and t2[X] equal.
bool may_agree(const Cells& t1, const Cells& t2, const AttrSet& x) {
  for (auto a : x) {
    if (!intersects(t1[a], t2[a])) return false;
  }
  return true;
}

World run(const Table& r, std::span<const FunctionalDependency> fds, const ValuePicker& pick,
          bool fixpoint) {
  if (r.model() == Model::Disjunctive) {
    throw ModelError("seamless valuation needs a vague table, got a disjunctive one");
  }
  for (const auto& fd : fds) {
    if (!check_pfd(r, fd)) {
      throw PreconditionError("FD '" + fd.format(r.schema()) + "' does not hold as a PFD");
    }
  }
  const auto split = split_fds(fds);

  const Table vague = to_vague(r);
  std::vector<Cells> work;
  for (const auto& t : vague.vague_rows()) work.push_back(t.cells());

  for (AttributeId attr = 0; attr < r.schema().size(); ++attr) {
    std::vector<const AttrSet*> determinants;
    for (const auto& fd : split) {
      if (fd.rhs.contains(attr)) determinants.push_back(&fd.lhs);
    }
    auto joins = [&](std::size_t j, const std::vector<std::size_t>& members) {
      for (const auto* x : determinants) {
        for (auto m : members) {
          if (may_agree(work[j], work[m], *x)) return true;
        }
      }
      return false;
    };

    for (std::size_t i = 0; i < work.size(); ++i) {
      if (work[i][attr].size() <= 1) continue;
      const Value chosen = pick(work[i][attr]);
      if (!contains(work[i][attr], chosen)) {
        throw std::logic_error("picker returned a value outside the cell");
      }

      std::vector<bool> in_set(work.size(), false);
      std::vector<std::size_t> members{i};
      in_set[i] = true;
      bool grew = true;
      while (grew) {
        grew = false;
        for (std::size_t j = 0; j < work.size(); ++j) {
          if (in_set[j] || !joins(j, members)) continue;
          in_set[j] = true;
          members.push_back(j);
          grew = true;
        }
        if (!fixpoint) break;
      }

      for (auto m : members) {
        if (fixpoint && !contains(work[m][attr], chosen)) {
          // Unreachable while every FD holds as a PFD: agreeing tuples share the cell.
          throw std::logic_error("valuation would assign attribute '" + r.schema().name(attr) +
                                 "' of a tuple twice with different values");
        }
        work[m][attr] = ValueSet{chosen};
      }
    }
  }

  std::vector<StandardTuple> rows;
  rows.reserve(work.size());
  for (const auto& cells : work) {
    StandardTuple t;
    for (const auto& c : cells) t.cells.push_back(c.front());
    rows.push_back(std::move(t));
  }
  return World(r.schema(), std::move(rows));
}

}  // namespace

ValuePicker seeded_picker(std::uint64_t seed) {
  // Modulo keeps the choice identical across standard libraries.
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [rng](const ValueSet& cell) { return cell[(*rng)() % cell.size()]; };
}

std::vector<FunctionalDependency> split_fds(std::span<const FunctionalDependency> fds) {
  std::vector<FunctionalDependency> out;
  for (const auto& fd : fds) {
    for (auto a : fd.rhs - fd.lhs) out.emplace_back(fd.lhs, AttrSet{a});
  }
  return out;
}

World seamless_valuation_pfd(const Table& r, std::span<const FunctionalDependency> fds,
                             std::uint64_t seed) {
  return run(r, fds, seeded_picker(seed), true);
}

World seamless_valuation_pfd(const Table& r, std::span<const FunctionalDependency> fds,
                             const ValuePicker& pick) {
  return run(r, fds, pick, true);
}

namespace detail {

World single_scan_valuation(const Table& r, std::span<const FunctionalDependency> fds,
                            const ValuePicker& pick) {
  return run(r, fds, pick, false);
}

}  // namespace detail
}  // namespace fdlab
