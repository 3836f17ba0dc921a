#include "fdlab/semantics.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <unordered_map>

#include "fdlab/error.hpp"

namespace fdlab {
namespace {

using AnswerMap = std::map<StandardTuple, std::vector<StandardTuple>>;

void require_fd(const Table& r, const FunctionalDependency& fd) {
  r.schema().require_subset(fd.lhs);
  r.schema().require_subset(fd.rhs);
}

std::vector<StandardTuple> disjuncts_of(const AnyTuple& t) {
  if (const auto* d = std::get_if<DisjunctiveTuple>(&t)) return d->disjuncts();
  return {std::get<StandardTuple>(t)};
}

// Every binding a in t[X] mapped to t[X=a][Y].
AnswerMap answer_map(const AnyTuple& t, const AttrSet& x, const AttrSet& y, std::uint64_t cap) {
  AnswerMap out;
  if (std::holds_alternative<VagueTuple>(t)) {
    for (auto& a : valuations(t, x, cap)) {
      auto answers = select(t, x, a, y).answers;
      out.emplace(std::move(a), std::move(answers));
    }
    return out;
  }
  for (const auto& d : disjuncts_of(t)) {
    out[project_tuple(d, x)].push_back(project_tuple(d, y));
  }
  for (auto& [a, answers] : out) {
    std::sort(answers.begin(), answers.end());
    answers.erase(std::unique(answers.begin(), answers.end()), answers.end());
  }
  return out;
}

std::vector<AnswerMap> answer_maps(const Table& r, const AttrSet& x, const AttrSet& y,
                                   std::uint64_t cap) {
  std::vector<AnswerMap> maps;
  maps.reserve(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) maps.push_back(answer_map(r.tuple(i), x, y, cap));
  return maps;
}

// Calls fn(binding, answers_i, answers_j) for each binding shared by both maps,
// in ascending binding order, until fn returns true.
template <typename Fn>
bool any_shared_binding(const AnswerMap& a, const AnswerMap& b, Fn&& fn) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      if (fn(i->first, i->second, j->second)) return true;
      ++i;
      ++j;
    }
  }
  return false;
}

auto violation_key(const Violation& v) { return std::tie(v.first, v.second, v.binding); }

void keep_first(std::optional<Violation>& best, std::optional<Violation> candidate) {
  if (!candidate) return;
  if (!best || violation_key(*candidate) < violation_key(*best)) best = std::move(candidate);
}

// Conditions (2) and (3) of the vertical FD for one disjunctive tuple.
std::optional<Violation> vertical_tuple_violation(const DisjunctiveTuple& t, std::size_t index,
                                                  const AttrSet& x, const AttrSet& z) {
  const AttrSet all = AttrSet::range(t.arity());
  const AttrSet rest = all - x - z;
  std::map<StandardTuple, std::vector<const StandardTuple*>> groups;
  for (const auto& d : t.disjuncts()) groups[project_tuple(d, x)].push_back(&d);

  for (const auto& [binding, members] : groups) {
    std::vector<StandardTuple> selected;
    std::vector<ValueSet> columns(z.size());
    for (const auto* d : members) {
      selected.push_back(project_tuple(*d, z));
      for (std::size_t k = 0; k < z.size(); ++k) columns[k].push_back((*d)[z[k]]);
    }
    std::sort(selected.begin(), selected.end());
    selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
    std::size_t product_size = 1;
    for (auto& c : columns) {
      normalize(c);
      product_size *= c.size();
    }
    if (selected.size() != product_size) {
      return Violation{index, index, binding, ViolationKind::ProductForm};
    }

    // X ->> Z: swapping the remaining attributes between agreeing disjuncts
    // must stay inside the disjunct set.
    for (const auto* d1 : members) {
      for (const auto* d2 : members) {
        StandardTuple swapped = *d1;
        for (auto a : rest) swapped.cells[a] = (*d2)[a];
        if (!t.contains(swapped)) {
          return Violation{index, index, binding, ViolationKind::Multivalued};
        }
      }
    }
  }
  return std::nullopt;
}

double ratio(std::size_t num, std::size_t den) {
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

SelectionResult select(const AnyTuple& t, const AttrSet& x, const StandardTuple& binding,
                       const AttrSet& y) {
  const std::size_t n = arity(t);
  for (const AttrSet* s : {&x, &y}) {
    for (auto a : *s) {
      if (a >= n) throw SchemaError("attribute position " + std::to_string(a) + " outside tuple");
    }
  }
  if (binding.arity() != x.size()) {
    throw SchemaError("binding arity " + std::to_string(binding.arity()) +
                      " does not match |X| = " + std::to_string(x.size()));
  }

  SelectionResult out{binding, {}};
  if (const auto* v = std::get_if<VagueTuple>(&t)) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (!contains((*v)[x[k]], binding[k])) return out;
    }
    std::vector<ValueSet> cells;
    cells.reserve(y.size());
    for (auto a : y) {
      if (auto k = x.rank(a)) {
        cells.push_back(ValueSet{binding[*k]});
      } else {
        cells.push_back((*v)[a]);
      }
    }
    out.answers = valuations(AnyTuple(VagueTuple(std::move(cells))), AttrSet::range(y.size()));
    return out;
  }
  for (const auto& d : disjuncts_of(t)) {
    if (project_tuple(d, x) == binding) out.answers.push_back(project_tuple(d, y));
  }
  std::sort(out.answers.begin(), out.answers.end());
  out.answers.erase(std::unique(out.answers.begin(), out.answers.end()), out.answers.end());
  return out;
}

SelectionResult select(const AnyTuple& t, const AttrSet& x, const StandardTuple& binding) {
  return select(t, x, binding, AttrSet::range(arity(t)));
}

std::optional<Violation> find_standard_violation(const Table& r, const FunctionalDependency& fd) {
  require_fd(r, fd);
  const auto& rows = r.standard_rows();
  // Within a group of X-agreeing tuples, a violation exists iff the group's
  // first member disagrees on Y with some later member.
  std::unordered_map<StandardTuple, std::size_t, StandardTupleHash> group_head;
  std::optional<Violation> best;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto key = project_tuple(rows[i], fd.lhs);
    auto [it, inserted] = group_head.emplace(key, i);
    if (inserted) continue;
    const std::size_t head = it->second;
    if (project_tuple(rows[head], fd.rhs) != project_tuple(rows[i], fd.rhs)) {
      if (!best || head < best->first) best = Violation{head, i, std::move(key)};
    }
  }
  return best;
}

bool check_standard(const Table& r, const FunctionalDependency& fd) {
  return !find_standard_violation(r, fd);
}

std::optional<Violation> find_strong_violation(const Table& r, const FunctionalDependency& fd,
                                               std::uint64_t cap) {
  require_fd(r, fd);
  if (r.model() == Model::Standard) return find_standard_violation(r, fd);
  const auto maps = answer_maps(r, fd.lhs, fd.rhs, cap);
  for (std::size_t i = 0; i < maps.size(); ++i) {
    for (std::size_t j = i + 1; j < maps.size(); ++j) {
      std::optional<Violation> found;
      any_shared_binding(maps[i], maps[j],
                         [&](const StandardTuple& a, const auto& ai, const auto& aj) {
                           // Both sides forced to the same single answer is the only safe case.
                           if (ai.size() == 1 && ai == aj) return false;
                           found = Violation{i, j, a};
                           return true;
                         });
      if (found) return found;
    }
  }
  return std::nullopt;
}

bool check_strong(const Table& r, const FunctionalDependency& fd, std::uint64_t cap) {
  return !find_strong_violation(r, fd, cap);
}

bool check_weak(const Table& r, const FunctionalDependency& fd, std::uint64_t cap) {
  require_fd(r, fd);
  return check_seamless(r, std::span(&fd, 1), cap).has_value();
}

std::optional<Violation> find_pfd_violation_general(const Table& r,
                                                    const FunctionalDependency& fd) {
  require_fd(r, fd);
  const auto maps = answer_maps(r, fd.lhs, fd.rhs, kDefaultValuationCap);
  for (std::size_t i = 0; i < maps.size(); ++i) {
    for (std::size_t j = i + 1; j < maps.size(); ++j) {
      std::optional<Violation> found;
      any_shared_binding(maps[i], maps[j],
                         [&](const StandardTuple& a, const auto& ai, const auto& aj) {
                           if (ai == aj) return false;
                           found = Violation{i, j, a};
                           return true;
                         });
      if (found) return found;
    }
  }
  return std::nullopt;
}

std::optional<Violation> find_pfd_violation_decomposed(const Table& r,
                                                       const FunctionalDependency& fd) {
  require_fd(r, fd);
  const Table vague = to_vague(r);
  const auto& rows = vague.vague_rows();
  const AttrSet determined = fd.rhs - fd.lhs;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      StandardTuple first_shared;
      bool overlap = true;
      for (auto a : fd.lhs) {
        auto common = set_intersection(rows[i][a], rows[j][a]);
        if (common.empty()) {
          overlap = false;
          break;
        }
        first_shared.cells.push_back(common.front());
      }
      if (!overlap) continue;
      for (auto a : determined) {
        if (rows[i][a] != rows[j][a]) return Violation{i, j, std::move(first_shared)};
      }
    }
  }
  return std::nullopt;
}

std::optional<Violation> find_pfd_violation(const Table& r, const FunctionalDependency& fd) {
  if (r.model() == Model::Disjunctive) return find_pfd_violation_general(r, fd);
  return find_pfd_violation_decomposed(r, fd);
}

bool check_pfd(const Table& r, const FunctionalDependency& fd) {
  return !find_pfd_violation(r, fd);
}

std::optional<Violation> find_vertical_violation(const Table& r, const FunctionalDependency& fd) {
  require_fd(r, fd);
  const Table d = to_disjunctive(r);
  std::optional<Violation> best = find_pfd_violation_general(d, fd);
  const AttrSet z = fd.rhs - fd.lhs;
  const auto& rows = d.disjunctive_rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (best && best->first < i) break;
    keep_first(best, vertical_tuple_violation(rows[i], i, fd.lhs, z));
  }
  return best;
}

bool check_vertical(const Table& r, const FunctionalDependency& fd) {
  return !find_vertical_violation(r, fd);
}

Resemblance resemblance(const ValueSet& a, const ValueSet& b, ResemblanceKind kind) {
  if (a.empty() || b.empty()) throw PreconditionError("resemblance needs non-empty sets");
  const std::size_t common = intersection_size(a, b);
  const double ra = ratio(common, a.size());
  const double rb = ratio(common, b.size());
  return Resemblance(kind == ResemblanceKind::Max ? std::max(ra, rb) : std::min(ra, rb));
}

Resemblance tuple_resemblance(const VagueTuple& t1, const VagueTuple& t2, const AttrSet& z,
                              ResemblanceKind kind) {
  Resemblance out(1.0);
  for (auto a : z) {
    if (a >= t1.arity() || a >= t2.arity()) {
      throw SchemaError("attribute position " + std::to_string(a) + " outside tuple");
    }
    out = std::min(out, resemblance(t1[a], t2[a], kind));
  }
  return out;
}

std::optional<Violation> find_rm_violation(const Table& r, const FunctionalDependency& fd,
                                           ResemblanceKind kind) {
  require_fd(r, fd);
  if (r.model() == Model::Disjunctive) {
    throw ModelError("Raju-Majumdar FDs are defined on vague tables only");
  }
  const Table vague = to_vague(r);
  const auto& rows = vague.vague_rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (tuple_resemblance(rows[i], rows[j], fd.rhs, kind) <
          tuple_resemblance(rows[i], rows[j], fd.lhs, kind)) {
        return Violation{i, j, {}};
      }
    }
  }
  return std::nullopt;
}

bool check_rm(const Table& r, const FunctionalDependency& fd, ResemblanceKind kind) {
  return !find_rm_violation(r, fd, kind);
}

Report check(const Table& r, std::span<const FunctionalDependency> fds, Semantics semantics,
             const CheckOptions& options) {
  if (semantics == Semantics::Standard && r.model() != Model::Standard) {
    throw ModelError("standard semantics needs a standard table, got a " +
                     std::string(to_string(r.model())) + " one");
  }
  if (semantics == Semantics::RajuMajumdar && r.model() == Model::Disjunctive) {
    throw ModelError("Raju-Majumdar FDs are defined on vague tables only");
  }
  for (const auto& fd : fds) require_fd(r, fd);

  Report report;
  report.semantics = semantics;
  report.model = r.model();

  if (semantics == Semantics::Seamless) {
    report.witness = check_seamless(r, fds, options.cap);
    report.satisfied = report.witness.has_value();
    for (const auto& fd : fds) report.verdicts.push_back({fd, report.satisfied, std::nullopt});
    return report;
  }

  report.satisfied = true;
  for (const auto& fd : fds) {
    FdVerdict v{fd, true, std::nullopt};
    switch (semantics) {
      case Semantics::Standard:
        v.violation = find_standard_violation(r, fd);
        break;
      case Semantics::Strong:
        v.violation = find_strong_violation(r, fd, options.cap);
        break;
      case Semantics::Weak:
        v.holds = check_weak(r, fd, options.cap);
        break;
      case Semantics::Pfd:
        v.violation = find_pfd_violation(r, fd);
        break;
      case Semantics::Vertical:
        v.violation = find_vertical_violation(r, fd);
        break;
      case Semantics::RajuMajumdar:
        v.violation = find_rm_violation(r, fd, options.resemblance);
        break;
      case Semantics::Seamless:
        break;
    }
    if (v.violation) v.holds = false;
    report.satisfied = report.satisfied && v.holds;
    report.verdicts.push_back(std::move(v));
  }
  return report;
}

}  // namespace fdlab
