#include "fdlab/armstrong.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace fdlab {

FdSet::FdSet(std::vector<FunctionalDependency> fds) : fds_(std::move(fds)) {
  std::sort(fds_.begin(), fds_.end());
  fds_.erase(std::unique(fds_.begin(), fds_.end()), fds_.end());
}

FdSet::FdSet(std::initializer_list<FunctionalDependency> fds)
    : FdSet(std::vector<FunctionalDependency>(fds)) {}

bool FdSet::contains(const FunctionalDependency& fd) const {
  return std::binary_search(fds_.begin(), fds_.end(), fd);
}

namespace {

// Worklist fixpoint. Returns the FDs in the order they fired, each paired with
// the closure just before it fired; only FDs that added attributes are kept.
AttrSet closure_trace(const FdSet& f, const AttrSet& x,
                      std::vector<std::pair<std::size_t, AttrSet>>* trace) {
  AttrSet closure = x;
  std::vector<std::size_t> missing(f.size());
  std::map<AttributeId, std::vector<std::size_t>> waiting;
  std::deque<std::size_t> ready;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const AttrSet need = f[i].lhs - closure;
    missing[i] = need.size();
    for (auto a : need) waiting[a].push_back(i);
    if (missing[i] == 0) ready.push_back(i);
  }
  while (!ready.empty()) {
    const std::size_t i = ready.front();
    ready.pop_front();
    const AttrSet added = f[i].rhs - closure;
    if (added.empty()) continue;
    if (trace) trace->emplace_back(i, closure);
    closure = closure | added;
    for (auto a : added) {
      auto it = waiting.find(a);
      if (it == waiting.end()) continue;
      for (auto j : it->second) {
        if (--missing[j] == 0) ready.push_back(j);
      }
      waiting.erase(it);
    }
  }
  return closure;
}

// Base FDs f1..fk with lhs(f1) = X, lhs(f_{i+1}) = rhs(f_i), rhs(fk) = Y.
std::optional<std::vector<std::size_t>> exact_chain(const FdSet& f,
                                                    const FunctionalDependency& fd) {
  std::map<AttrSet, std::pair<AttrSet, std::size_t>> parent;
  std::deque<AttrSet> queue{fd.lhs};
  std::map<AttrSet, bool> seen{{fd.lhs, true}};
  while (!queue.empty()) {
    AttrSet cur = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i].lhs != cur) continue;
      const AttrSet& next = f[i].rhs;
      if (next == fd.rhs) {
        std::vector<std::size_t> chain{i};
        AttrSet back = cur;
        while (back != fd.lhs) {
          auto [prev, via] = parent.at(back);
          chain.push_back(via);
          back = prev;
        }
        std::reverse(chain.begin(), chain.end());
        return chain;
      }
      if (seen.emplace(next, true).second) {
        parent.emplace(next, std::make_pair(cur, i));
        queue.push_back(next);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

AttrSet attribute_closure(const FdSet& f, const AttrSet& x) { return closure_trace(f, x, nullptr); }

bool implies(const FdSet& f, const FunctionalDependency& fd) {
  return fd.rhs.is_subset_of(attribute_closure(f, fd.lhs));
}

std::optional<Derivation> derive(const FdSet& f, const FunctionalDependency& fd) {
  Derivation d{fd, {}};
  if (fd.is_trivial()) {
    d.steps.push_back({Axiom::Reflexivity, fd, {}, {}});
    return d;
  }

  if (auto chain = exact_chain(f, fd)) {
    if (chain->size() == 1) {
      d.steps.push_back({Axiom::Reflexivity, {fd.lhs, fd.lhs}, {}, {}});
      d.steps.push_back(
          {Axiom::Transitivity, fd, {PremiseRef::step(0), PremiseRef::base(chain->front())}, {}});
      return d;
    }
    const auto& c = *chain;
    d.steps.push_back({Axiom::Transitivity,
                       {fd.lhs, f[c[1]].rhs},
                       {PremiseRef::base(c[0]), PremiseRef::base(c[1])},
                       {}});
    for (std::size_t k = 2; k < c.size(); ++k) {
      d.steps.push_back({Axiom::Transitivity,
                         {fd.lhs, f[c[k]].rhs},
                         {PremiseRef::step(d.steps.size() - 1), PremiseRef::base(c[k])},
                         {}});
    }
    return d;
  }

  std::vector<std::pair<std::size_t, AttrSet>> trace;
  const AttrSet closure = closure_trace(f, fd.lhs, &trace);
  if (!fd.rhs.is_subset_of(closure)) return std::nullopt;

  // X -> X and X+ -> Y by reflexivity; C(i-1) -> C(i) by augmenting each fired
  // FD with the closure before it; then chain everything by transitivity.
  const std::size_t k = trace.size();
  d.steps.push_back({Axiom::Reflexivity, {fd.lhs, fd.lhs}, {}, {}});
  d.steps.push_back({Axiom::Reflexivity, {closure, fd.rhs}, {}, {}});
  for (const auto& [i, before] : trace) {
    d.steps.push_back({Axiom::Augmentation,
                       {f[i].lhs | before, f[i].rhs | before},
                       {PremiseRef::base(i)},
                       before});
  }
  std::size_t last = 0;
  for (std::size_t s = 0; s < k; ++s) {
    const std::size_t aug = 2 + s;
    d.steps.push_back({Axiom::Transitivity,
                       {fd.lhs, d.steps[aug].conclusion.rhs},
                       {PremiseRef::step(last), PremiseRef::step(aug)},
                       {}});
    last = d.steps.size() - 1;
  }
  d.steps.push_back({Axiom::Transitivity, fd, {PremiseRef::step(last), PremiseRef::step(1)}, {}});
  return d;
}

bool check_derivation(const FdSet& f, const Derivation& d) {
  if (d.steps.empty()) return false;
  for (std::size_t k = 0; k < d.steps.size(); ++k) {
    const auto& step = d.steps[k];
    std::vector<const FunctionalDependency*> premises;
    for (const auto& ref : step.premises) {
      if (ref.source == PremiseRef::Source::Base) {
        if (ref.index >= f.size()) return false;
        premises.push_back(&f[ref.index]);
      } else {
        if (ref.index >= k) return false;
        premises.push_back(&d.steps[ref.index].conclusion);
      }
    }
    const auto& c = step.conclusion;
    switch (step.axiom) {
      case Axiom::Reflexivity:
        if (!premises.empty()) throw MalformedDerivation("reflexivity takes no premises");
        if (!c.rhs.is_subset_of(c.lhs)) return false;
        break;
      case Axiom::Augmentation:
        if (premises.size() != 1) throw MalformedDerivation("augmentation takes one premise");
        if (c.lhs != (premises[0]->lhs | step.augment_by) ||
            c.rhs != (premises[0]->rhs | step.augment_by)) {
          return false;
        }
        break;
      case Axiom::Transitivity:
        if (premises.size() != 2) throw MalformedDerivation("transitivity takes two premises");
        if (premises[0]->rhs != premises[1]->lhs) return false;
        if (c.lhs != premises[0]->lhs || c.rhs != premises[1]->rhs) return false;
        break;
    }
  }
  return d.steps.back().conclusion == d.conclusion;
}

}  // namespace fdlab
