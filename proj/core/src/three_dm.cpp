#include "fdlab/three_dm.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

namespace fdlab {
namespace {

void require_distinct(const std::vector<std::string>& elems, const char* which) {
  std::set<std::string> seen(elems.begin(), elems.end());
  if (seen.size() != elems.size()) {
    throw PreconditionError(std::string("duplicate element in ") + which);
  }
}

std::size_t position(const std::vector<std::string>& elems, const std::string& e) {
  return static_cast<std::size_t>(std::find(elems.begin(), elems.end(), e) - elems.begin());
}

}  // namespace

ThreeDMInstance::ThreeDMInstance(std::vector<std::string> xs, std::vector<std::string> ys,
                                 std::vector<std::string> zs, std::vector<Triple> triples)
    : xs_(std::move(xs)), ys_(std::move(ys)), zs_(std::move(zs)), triples_(std::move(triples)) {
  if (xs_.empty()) throw PreconditionError("3DM instance needs n >= 1");
  if (ys_.size() != xs_.size() || zs_.size() != xs_.size()) {
    throw PreconditionError("3DM element sets must all have size n");
  }
  require_distinct(xs_, "X");
  require_distinct(ys_, "Y");
  require_distinct(zs_, "Z");
  std::set<std::string> all(xs_.begin(), xs_.end());
  all.insert(ys_.begin(), ys_.end());
  all.insert(zs_.begin(), zs_.end());
  if (all.size() != 3 * xs_.size()) throw PreconditionError("3DM element sets must be disjoint");

  std::set<Triple> seen;
  for (const auto& t : triples_) {
    if (position(xs_, t.x) == xs_.size() || position(ys_, t.y) == ys_.size() ||
        position(zs_, t.z) == zs_.size()) {
      throw PreconditionError("triple (" + t.x + ", " + t.y + ", " + t.z + ") is not in X x Y x Z");
    }
    if (!seen.insert(t).second) {
      throw PreconditionError("duplicate triple (" + t.x + ", " + t.y + ", " + t.z + ")");
    }
  }
}

ThreeDMInstance ThreeDMInstance::from_triples(std::size_t n, std::vector<Triple> triples) {
  std::vector<std::string> xs, ys, zs;
  auto note = [](std::vector<std::string>& v, const std::string& e) {
    if (std::find(v.begin(), v.end(), e) == v.end()) v.push_back(e);
  };
  for (const auto& t : triples) {
    note(xs, t.x);
    note(ys, t.y);
    note(zs, t.z);
  }
  auto pad = [n](std::vector<std::string>& v, const char* prefix) {
    if (v.size() > n) {
      throw PreconditionError("more than " + std::to_string(n) + " distinct " + prefix +
                              " elements");
    }
    for (std::size_t k = 1; v.size() < n; ++k)
      v.push_back(std::string("?") + prefix + std::to_string(k));
  };
  pad(xs, "x");
  pad(ys, "y");
  pad(zs, "z");
  return ThreeDMInstance(std::move(xs), std::move(ys), std::move(zs), std::move(triples));
}

std::string triple_id(std::size_t i) { return "t" + std::to_string(i + 1); }

ReductionOutput generate_3dm_reduction(const ThreeDMInstance& instance) {
  auto full = [](const std::vector<std::string>& elems) {
    ValueSet out;
    for (const auto& e : elems) out.emplace_back(e);
    normalize(out);
    return out;
  };
  const ValueSet all_x = full(instance.xs());
  const ValueSet all_y = full(instance.ys());
  const ValueSet all_z = full(instance.zs());

  auto ids_containing = [&](auto member) {
    ValueSet ids;
    for (std::size_t i = 0; i < instance.triples().size(); ++i) {
      if (member(instance.triples()[i])) ids.emplace_back(triple_id(i));
    }
    normalize(ids);
    return ids;
  };

  ReductionOutput out;
  auto emit = [&](const std::string& e, ValueSet ids, ValueSet x, ValueSet y, ValueSet z) {
    if (ids.empty()) throw UncoverableElement("element '" + e + "' appears in no triple");
    out.rows.emplace_back(
        std::vector<ValueSet>{std::move(x), std::move(y), std::move(z), std::move(ids)});
  };
  for (const auto& x : instance.xs()) {
    emit(x, ids_containing([&](const Triple& t) { return t.x == x; }), ValueSet{Value(x)}, all_y,
         all_z);
  }
  for (const auto& y : instance.ys()) {
    emit(y, ids_containing([&](const Triple& t) { return t.y == y; }), all_x, ValueSet{Value(y)},
         all_z);
  }
  for (const auto& z : instance.zs()) {
    emit(z, ids_containing([&](const Triple& t) { return t.z == z; }), all_x, all_y,
         ValueSet{Value(z)});
  }

  Schema schema{"X", "Y", "Z", "T"};
  out.table = Table(schema, out.rows);
  const AttrSet t{3};
  out.fds = {{AttrSet{0}, t}, {AttrSet{1}, t}, {AttrSet{2}, t}};
  return out;
}

std::optional<std::vector<std::size_t>> solve_3dm_bruteforce(const ThreeDMInstance& instance,
                                                             std::size_t max_n) {
  const std::size_t n = instance.n();
  if (n > max_n) {
    throw BudgetError("3DM brute force limited to n <= " + std::to_string(max_n) + ", got " +
                      std::to_string(n));
  }
  // by_x[i]: triples whose X element is xs[i], as (triple, y position, z position).
  std::vector<std::vector<std::array<std::size_t, 3>>> by_x(n);
  for (std::size_t k = 0; k < instance.triples().size(); ++k) {
    const auto& t = instance.triples()[k];
    by_x[position(instance.xs(), t.x)].push_back(
        {k, position(instance.ys(), t.y), position(instance.zs(), t.z)});
  }

  std::vector<bool> used_y(n, false), used_z(n, false);
  std::vector<std::size_t> picked;
  auto search = [&](auto& self, std::size_t i) -> bool {
    if (i == n) return true;
    for (const auto& [k, y, z] : by_x[i]) {
      if (used_y[y] || used_z[z]) continue;
      used_y[y] = used_z[z] = true;
      picked.push_back(k);
      if (self(self, i + 1)) return true;
      picked.pop_back();
      used_y[y] = used_z[z] = false;
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace fdlab
