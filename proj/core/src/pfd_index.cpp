#include "fdlab/pfd_index.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "fdlab/error.hpp"
#include "fdlab/semantics.hpp"

namespace fdlab {

PfdIndex::PfdIndex(const Schema& schema, FunctionalDependency fd)
    : fd_(std::move(fd)), arity_(schema.size()) {
  schema.require_subset(fd_.lhs);
  schema.require_subset(fd_.rhs);
}

std::vector<std::pair<StandardTuple, std::vector<StandardTuple>>> PfdIndex::bindings(
    const AnyTuple& t) const {
  if (arity(t) != arity_) {
    throw SchemaError("tuple of arity " + std::to_string(arity(t)) + " does not fit index arity " +
                      std::to_string(arity_));
  }
  std::vector<std::pair<StandardTuple, std::vector<StandardTuple>>> out;
  if (std::holds_alternative<VagueTuple>(t)) {
    for (auto& a : valuations(t, fd_.lhs)) {
      auto answer = select(t, fd_.lhs, a, fd_.rhs).answers;
      out.emplace_back(std::move(a), std::move(answer));
    }
    return out;
  }
  // One pass over the disjuncts groups them by binding.
  std::map<StandardTuple, std::vector<StandardTuple>> grouped;
  auto add = [&](const StandardTuple& d) {
    grouped[project_tuple(d, fd_.lhs)].push_back(project_tuple(d, fd_.rhs));
  };
  if (const auto* d = std::get_if<DisjunctiveTuple>(&t)) {
    for (const auto& disjunct : d->disjuncts()) add(disjunct);
  } else {
    add(std::get<StandardTuple>(t));
  }
  for (auto& [a, answer] : grouped) {
    std::sort(answer.begin(), answer.end());
    answer.erase(std::unique(answer.begin(), answer.end()), answer.end());
    out.emplace_back(a, std::move(answer));
  }
  return out;
}

PfdIndex::Verdict PfdIndex::check(const AnyTuple& t) const {
  for (auto& [a, answer] : bindings(t)) {
    auto it = entries_.find(a);
    if (it != entries_.end() && it->second.answer != answer) {
      return {false, Conflict{a, it->second.answer, std::move(answer)}};
    }
  }
  return {};
}

PfdIndex::Verdict PfdIndex::insert(const AnyTuple& t) {
  auto pending = bindings(t);
  // Scan every binding before touching the map so a rejection mutates nothing.
  for (auto& [a, answer] : pending) {
    auto it = entries_.find(a);
    if (it != entries_.end() && it->second.answer != answer) {
      return {false, Conflict{a, it->second.answer, std::move(answer)}};
    }
  }
  for (auto& [a, answer] : pending) {
    auto [it, inserted] = entries_.try_emplace(std::move(a), Entry{std::move(answer), 0});
    ++it->second.support;
  }
  return {};
}

void PfdIndex::remove(const AnyTuple& t) {
  auto pending = bindings(t);
  for (const auto& [a, answer] : pending) {
    auto it = entries_.find(a);
    if (it == entries_.end()) {
      throw ContractError("removing a tuple that was never inserted: binding has no entry");
    }
    if (it->second.answer != answer) {
      throw ContractError("removing a tuple that was never inserted: answer set differs");
    }
  }
  for (const auto& [a, answer] : pending) {
    auto it = entries_.find(a);
    if (--it->second.support == 0) entries_.erase(it);
  }
}

const PfdIndex::Entry* PfdIndex::find(const StandardTuple& binding) const {
  auto it = entries_.find(binding);
  return it == entries_.end() ? nullptr : &it->second;
}

}  // namespace fdlab
