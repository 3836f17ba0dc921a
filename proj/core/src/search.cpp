// Seamless satisfaction search: pick one valuation per tuple so that the chosen
// standard tuples jointly satisfy every FD.
#include <algorithm>
#include <string>

#include "fdlab/error.hpp"
#include "fdlab/semantics.hpp"

namespace fdlab {
namespace {

struct LocalFd {
  std::vector<std::size_t> lhs;
  std::vector<std::size_t> rhs;
};

class SeamlessSearch {
 public:
  SeamlessSearch(const Table& r, std::span<const FunctionalDependency> fds, std::uint64_t cap)
      : table_(r), cap_(cap) {
    for (const auto& fd : fds) relevant_ = relevant_ | fd.attributes();
    for (const auto& fd : fds) {
      LocalFd local;
      for (auto a : fd.lhs) local.lhs.push_back(*relevant_.rank(a));
      for (auto a : fd.rhs) local.rhs.push_back(*relevant_.rank(a));
      fds_.push_back(std::move(local));
    }
    candidates_.reserve(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      candidates_.push_back(valuations(r.tuple(i), relevant_, cap));
    }
  }

  std::optional<World> run(SearchStats* stats) {
    domains_.assign(candidates_.size(), {});
    for (std::size_t i = 0; i < candidates_.size(); ++i) {
      domains_[i].resize(candidates_[i].size());
      for (std::size_t k = 0; k < candidates_[i].size(); ++k) domains_[i][k] = k;
    }
    chosen_.assign(candidates_.size(), kUnassigned);
    const bool found = solve(candidates_.size());
    if (stats) stats->nodes += nodes_;
    if (!found) return std::nullopt;
    return witness();
  }

 private:
  static constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

  bool compatible(const StandardTuple& u, const StandardTuple& v) const {
    for (const auto& fd : fds_) {
      bool agree = std::all_of(fd.lhs.begin(), fd.lhs.end(), [&](auto p) { return u[p] == v[p]; });
      if (!agree) continue;
      for (auto p : fd.rhs) {
        if (u[p] != v[p]) return false;
      }
    }
    return true;
  }

  bool solve(std::size_t remaining) {
    if (remaining == 0) return true;
    // Most constrained tuple first.
    std::size_t pick = kUnassigned;
    for (std::size_t i = 0; i < domains_.size(); ++i) {
      if (chosen_[i] != kUnassigned) continue;
      if (pick == kUnassigned || domains_[i].size() < domains_[pick].size()) pick = i;
    }
    const std::vector<std::size_t> options = domains_[pick];
    for (auto c : options) {
      if (++nodes_ > cap_) {
        throw BudgetError("seamless search exceeded the cap of " + std::to_string(cap_) +
                          " candidate valuations");
      }
      const StandardTuple& choice = candidates_[pick][c];
      std::vector<std::pair<std::size_t, std::vector<std::size_t>>> saved;
      bool wiped_out = false;
      for (std::size_t j = 0; j < domains_.size() && !wiped_out; ++j) {
        if (j == pick || chosen_[j] != kUnassigned) continue;
        std::vector<std::size_t> kept;
        kept.reserve(domains_[j].size());
        for (auto k : domains_[j]) {
          if (compatible(choice, candidates_[j][k])) kept.push_back(k);
        }
        if (kept.size() == domains_[j].size()) continue;
        wiped_out = kept.empty();
        saved.emplace_back(j, std::move(domains_[j]));
        domains_[j] = std::move(kept);
      }
      if (!wiped_out) {
        chosen_[pick] = c;
        if (solve(remaining - 1)) return true;
        chosen_[pick] = kUnassigned;
      }
      for (auto& [j, domain] : saved) domains_[j] = std::move(domain);
    }
    return false;
  }

  // Expands each chosen X-Y valuation back to a full tuple valuation.
  World witness() const {
    std::vector<StandardTuple> rows;
    rows.reserve(chosen_.size());
    for (std::size_t i = 0; i < chosen_.size(); ++i) {
      const StandardTuple& partial = candidates_[i][chosen_[i]];
      AnyTuple t = table_.tuple(i);
      if (const auto* v = std::get_if<VagueTuple>(&t)) {
        StandardTuple full;
        for (std::size_t a = 0; a < v->arity(); ++a) {
          auto k = relevant_.rank(static_cast<AttributeId>(a));
          full.cells.push_back(k ? partial[*k] : (*v)[a].front());
        }
        rows.push_back(std::move(full));
      } else if (const auto* d = std::get_if<DisjunctiveTuple>(&t)) {
        for (const auto& disjunct : d->disjuncts()) {
          if (project_tuple(disjunct, relevant_) == partial) {
            rows.push_back(disjunct);
            break;
          }
        }
      } else {
        rows.push_back(std::get<StandardTuple>(t));
      }
    }
    return World(table_.schema(), std::move(rows));
  }

  const Table& table_;
  std::uint64_t cap_;
  AttrSet relevant_;
  std::vector<LocalFd> fds_;
  std::vector<std::vector<StandardTuple>> candidates_;
  std::vector<std::vector<std::size_t>> domains_;
  std::vector<std::size_t> chosen_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

std::optional<World> check_seamless(const Table& r, std::span<const FunctionalDependency> fds,
                                    std::uint64_t cap, SearchStats* stats) {
  for (const auto& fd : fds) {
    r.schema().require_subset(fd.lhs);
    r.schema().require_subset(fd.rhs);
  }
  return SeamlessSearch(r, fds, cap).run(stats);
}

}  // namespace fdlab
