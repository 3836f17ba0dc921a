#include "fdlab/tuple.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "fdlab/error.hpp"

namespace fdlab {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) noexcept {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

void check_positions(const AttrSet& x, std::size_t arity) {
  for (auto a : x) {
    if (a >= arity) {
      throw SchemaError("attribute position " + std::to_string(a) + " outside tuple of arity " +
                        std::to_string(arity));
    }
  }
}

// Lexicographic product of sorted cells; the output is therefore sorted.
std::vector<StandardTuple> product(const std::vector<const ValueSet*>& cells) {
  std::vector<StandardTuple> out;
  std::vector<std::size_t> idx(cells.size(), 0);
  for (const auto* c : cells) {
    if (c->empty()) return out;
  }
  while (true) {
    StandardTuple t;
    t.cells.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) t.cells.push_back((*cells[i])[idx[i]]);
    out.push_back(std::move(t));
    std::size_t k = cells.size();
    while (k > 0) {
      --k;
      if (++idx[k] < cells[k]->size()) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
    if (cells.empty()) return out;
  }
}

void require_same_arity(std::size_t a, std::size_t b) {
  if (a != b) {
    throw SchemaError("tuples of arity " + std::to_string(a) + " and " + std::to_string(b) +
                      " are not over the same schema");
  }
}

void require_same_model(const AnyTuple& a, const AnyTuple& b) {
  if (a.index() != b.index()) {
    throw ModelError("cannot combine a " + std::string(to_string(model_of(a))) + " tuple with a " +
                     std::string(to_string(model_of(b))) + " tuple");
  }
  require_same_arity(arity(a), arity(b));
}

}  // namespace

std::string_view to_string(Model m) {
  switch (m) {
    case Model::Standard:
      return "standard";
    case Model::Vague:
      return "vague";
    case Model::Disjunctive:
      return "disjunctive";
  }
  return "?";
}

StandardTuple::StandardTuple(std::initializer_list<std::string_view> texts) {
  cells.reserve(texts.size());
  for (auto t : texts) cells.emplace_back(t);
}

std::size_t StandardTupleHash::operator()(const StandardTuple& t) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ t.cells.size();
  for (auto v : t.cells) h ^= v.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

VagueTuple::VagueTuple(std::vector<ValueSet> cells) : cells_(std::move(cells)) {
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].empty()) throw SchemaError("vague cell " + std::to_string(i) + " is empty");
    normalize(cells_[i]);
  }
}

VagueTuple::VagueTuple(const StandardTuple& t) {
  cells_.reserve(t.arity());
  for (auto v : t.cells) cells_.push_back(ValueSet{v});
}

bool VagueTuple::is_standard() const noexcept {
  return std::all_of(cells_.begin(), cells_.end(), [](const ValueSet& c) { return c.size() == 1; });
}

std::optional<StandardTuple> VagueTuple::as_standard() const {
  if (!is_standard()) return std::nullopt;
  StandardTuple t;
  t.cells.reserve(cells_.size());
  for (const auto& c : cells_) t.cells.push_back(c.front());
  return t;
}

DisjunctiveTuple::DisjunctiveTuple(std::vector<StandardTuple> disjuncts)
    : disjuncts_(std::move(disjuncts)) {
  if (disjuncts_.empty()) throw SchemaError("a disjunctive tuple needs at least one disjunct");
  for (const auto& d : disjuncts_) require_same_arity(disjuncts_.front().arity(), d.arity());
  std::sort(disjuncts_.begin(), disjuncts_.end());
  disjuncts_.erase(std::unique(disjuncts_.begin(), disjuncts_.end()), disjuncts_.end());
}

DisjunctiveTuple::DisjunctiveTuple(const StandardTuple& t) : disjuncts_{t} {}

bool DisjunctiveTuple::contains(const StandardTuple& d) const {
  return std::binary_search(disjuncts_.begin(), disjuncts_.end(), d);
}

Model model_of(const AnyTuple& t) noexcept { return static_cast<Model>(t.index()); }

std::size_t arity(const AnyTuple& t) noexcept {
  return std::visit([](const auto& u) { return u.arity(); }, t);
}

StandardTuple project_tuple(const StandardTuple& t, const AttrSet& x) {
  check_positions(x, t.arity());
  StandardTuple out;
  out.cells.reserve(x.size());
  for (auto a : x) out.cells.push_back(t.cells[a]);
  return out;
}

VagueTuple project_tuple(const VagueTuple& t, const AttrSet& x) {
  check_positions(x, t.arity());
  std::vector<ValueSet> cells;
  cells.reserve(x.size());
  for (auto a : x) cells.push_back(t[a]);
  return VagueTuple(std::move(cells));
}

DisjunctiveTuple project_tuple(const DisjunctiveTuple& t, const AttrSet& x) {
  check_positions(x, t.arity());
  std::vector<StandardTuple> out;
  out.reserve(t.size());
  for (const auto& d : t.disjuncts()) out.push_back(project_tuple(d, x));
  return DisjunctiveTuple(std::move(out));
}

AnyTuple project_tuple(const AnyTuple& t, const AttrSet& x) {
  return std::visit([&](const auto& u) -> AnyTuple { return project_tuple(u, x); }, t);
}

bool equal_tuples(const AnyTuple& a, const AnyTuple& b) {
  require_same_model(a, b);
  // Every representation is canonical, so structural equality is valuation equality.
  return a == b;
}

AnyTuple tuple_union(const AnyTuple& a, const AnyTuple& b) {
  require_same_model(a, b);
  if (const auto* d = std::get_if<DisjunctiveTuple>(&a)) {
    const auto& e = std::get<DisjunctiveTuple>(b);
    std::vector<StandardTuple> all = d->disjuncts();
    all.insert(all.end(), e.disjuncts().begin(), e.disjuncts().end());
    return DisjunctiveTuple(std::move(all));
  }
  VagueTuple va = std::holds_alternative<VagueTuple>(a) ? std::get<VagueTuple>(a)
                                                        : VagueTuple(std::get<StandardTuple>(a));
  VagueTuple vb = std::holds_alternative<VagueTuple>(b) ? std::get<VagueTuple>(b)
                                                        : VagueTuple(std::get<StandardTuple>(b));
  std::vector<ValueSet> cells;
  cells.reserve(va.arity());
  for (std::size_t i = 0; i < va.arity(); ++i) cells.push_back(set_union(va[i], vb[i]));
  return VagueTuple(std::move(cells));
}

std::optional<AnyTuple> tuple_intersection(const AnyTuple& a, const AnyTuple& b) {
  require_same_model(a, b);
  switch (model_of(a)) {
    case Model::Standard:
      if (a == b) return a;
      return std::nullopt;
    case Model::Vague: {
      const auto& va = std::get<VagueTuple>(a);
      const auto& vb = std::get<VagueTuple>(b);
      std::vector<ValueSet> cells;
      cells.reserve(va.arity());
      for (std::size_t i = 0; i < va.arity(); ++i) {
        cells.push_back(set_intersection(va[i], vb[i]));
        if (cells.back().empty()) return std::nullopt;
      }
      return VagueTuple(std::move(cells));
    }
    case Model::Disjunctive: {
      const auto& da = std::get<DisjunctiveTuple>(a).disjuncts();
      const auto& db = std::get<DisjunctiveTuple>(b).disjuncts();
      std::vector<StandardTuple> common;
      std::set_intersection(da.begin(), da.end(), db.begin(), db.end(), std::back_inserter(common));
      if (common.empty()) return std::nullopt;
      return DisjunctiveTuple(std::move(common));
    }
  }
  return std::nullopt;
}

std::uint64_t valuation_count(const AnyTuple& t) noexcept {
  return valuation_count(t, AttrSet::range(arity(t)));
}

std::uint64_t valuation_count(const AnyTuple& t, const AttrSet& x) noexcept {
  switch (model_of(t)) {
    case Model::Standard:
      return 1;
    case Model::Vague: {
      const auto& v = std::get<VagueTuple>(t);
      std::uint64_t n = 1;
      for (auto a : x) {
        if (a < v.arity()) n = saturating_mul(n, v[a].size());
      }
      return n;
    }
    case Model::Disjunctive:
      return std::get<DisjunctiveTuple>(t).size();
  }
  return 0;
}

std::vector<StandardTuple> valuations(const AnyTuple& t, const AttrSet& x, std::uint64_t cap) {
  check_positions(x, arity(t));
  switch (model_of(t)) {
    case Model::Standard:
      return {project_tuple(std::get<StandardTuple>(t), x)};
    case Model::Vague: {
      const auto& v = std::get<VagueTuple>(t);
      if (valuation_count(t, x) > cap) {
        throw BudgetError("expanding a vague tuple would exceed the valuation cap of " +
                          std::to_string(cap));
      }
      std::vector<const ValueSet*> cells;
      cells.reserve(x.size());
      for (auto a : x) cells.push_back(&v[a]);
      return product(cells);
    }
    case Model::Disjunctive:
      return project_tuple(std::get<DisjunctiveTuple>(t), x).disjuncts();
  }
  return {};
}

DisjunctiveTuple to_disjunctive(const VagueTuple& t, std::uint64_t cap) {
  return DisjunctiveTuple(valuations(AnyTuple(t), AttrSet::range(t.arity()), cap));
}

std::optional<VagueTuple> try_to_vague(const DisjunctiveTuple& t) {
  std::vector<ValueSet> cells(t.arity());
  for (const auto& d : t.disjuncts()) {
    for (std::size_t i = 0; i < d.arity(); ++i) cells[i].push_back(d[i]);
  }
  std::uint64_t expected = 1;
  for (auto& c : cells) {
    normalize(c);
    expected = saturating_mul(expected, c.size());
  }
  // A duplicate-free disjunct set is the full product iff the sizes match.
  if (expected != t.size()) return std::nullopt;
  return VagueTuple(std::move(cells));
}

}  // namespace fdlab
