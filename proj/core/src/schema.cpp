#include "fdlab/schema.hpp"

#include <algorithm>
#include <unordered_set>

#include "fdlab/error.hpp"

namespace fdlab {

AttrSet::AttrSet(std::initializer_list<AttributeId> ids) : AttrSet(std::vector<AttributeId>(ids)) {}

AttrSet::AttrSet(std::vector<AttributeId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

AttrSet AttrSet::range(std::size_t n) {
  AttrSet out;
  out.ids_.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.ids_[i] = static_cast<AttributeId>(i);
  return out;
}

bool AttrSet::contains(AttributeId a) const {
  return std::binary_search(ids_.begin(), ids_.end(), a);
}

bool AttrSet::is_subset_of(const AttrSet& other) const {
  return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

std::optional<std::size_t> AttrSet::rank(AttributeId a) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), a);
  if (it == ids_.end() || *it != a) return std::nullopt;
  return static_cast<std::size_t>(it - ids_.begin());
}

AttrSet operator|(const AttrSet& a, const AttrSet& b) {
  AttrSet out;
  std::set_union(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end(),
                 std::back_inserter(out.ids_));
  return out;
}

AttrSet operator&(const AttrSet& a, const AttrSet& b) {
  AttrSet out;
  std::set_intersection(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end(),
                        std::back_inserter(out.ids_));
  return out;
}

AttrSet operator-(const AttrSet& a, const AttrSet& b) {
  AttrSet out;
  std::set_difference(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end(),
                      std::back_inserter(out.ids_));
  return out;
}

Schema::Schema(std::vector<std::string> names) : names_(std::move(names)) {
  std::unordered_set<std::string_view> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw SchemaError("attribute names must be non-empty");
    if (!seen.insert(n).second) throw SchemaError("duplicate attribute name '" + n + "'");
  }
}

Schema::Schema(std::initializer_list<std::string_view> names)
    : Schema(std::vector<std::string>(names.begin(), names.end())) {}

std::optional<AttributeId> Schema::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<AttributeId>(i);
  }
  return std::nullopt;
}

AttributeId Schema::id(std::string_view name) const {
  if (auto a = find(name)) return *a;
  throw SchemaError("unknown attribute '" + std::string(name) + "'");
}

AttrSet Schema::resolve(std::span<const std::string> names) const {
  std::vector<AttributeId> ids;
  ids.reserve(names.size());
  for (const auto& n : names) ids.push_back(id(n));
  return AttrSet(std::move(ids));
}

AttrSet Schema::resolve(std::initializer_list<std::string_view> names) const {
  std::vector<AttributeId> ids;
  for (auto n : names) ids.push_back(id(n));
  return AttrSet(std::move(ids));
}

void Schema::require_subset(const AttrSet& x) const {
  for (auto a : x) {
    if (a >= names_.size()) {
      throw SchemaError("attribute position " + std::to_string(a) + " outside schema of size " +
                        std::to_string(names_.size()));
    }
  }
}

Schema Schema::project(const AttrSet& x) const {
  require_subset(x);
  std::vector<std::string> out;
  out.reserve(x.size());
  for (auto a : x) out.push_back(names_[a]);
  return Schema(std::move(out));
}

std::string Schema::format(const AttrSet& x) const {
  std::string out;
  for (auto a : x) {
    if (!out.empty()) out += ' ';
    out += a < names_.size() ? names_[a] : "#" + std::to_string(a);
  }
  return out;
}

}  // namespace fdlab
