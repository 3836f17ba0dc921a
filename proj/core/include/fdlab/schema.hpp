#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fdlab {

/// Position of an attribute within its schema.
using AttributeId = std::uint32_t;

/// A sorted, duplicate-free set of attribute positions.
class AttrSet {
 public:
  AttrSet() = default;
  AttrSet(std::initializer_list<AttributeId> ids);
  explicit AttrSet(std::vector<AttributeId> ids);

  static AttrSet range(std::size_t n);

  bool empty() const noexcept { return ids_.empty(); }
  std::size_t size() const noexcept { return ids_.size(); }
  bool contains(AttributeId a) const;
  bool is_subset_of(const AttrSet& other) const;

  /// Position of `a` within this set, if present.
  std::optional<std::size_t> rank(AttributeId a) const;

  auto begin() const noexcept { return ids_.begin(); }
  auto end() const noexcept { return ids_.end(); }
  AttributeId operator[](std::size_t i) const { return ids_[i]; }
  std::span<const AttributeId> ids() const noexcept { return ids_; }

  friend AttrSet operator|(const AttrSet& a, const AttrSet& b);
  friend AttrSet operator&(const AttrSet& a, const AttrSet& b);
  friend AttrSet operator-(const AttrSet& a, const AttrSet& b);

  friend bool operator==(const AttrSet&, const AttrSet&) = default;
  friend auto operator<=>(const AttrSet&, const AttrSet&) = default;

 private:
  std::vector<AttributeId> ids_;
};

/// Ordered list of uniquely named attributes.
class Schema {
 public:
  Schema() = default;
  explicit Schema(std::vector<std::string> names);
  Schema(std::initializer_list<std::string_view> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(AttributeId a) const { return names_.at(a); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<AttributeId> find(std::string_view name) const;
  /// Throws SchemaError for unknown names.
  AttributeId id(std::string_view name) const;
  AttrSet resolve(std::span<const std::string> names) const;
  AttrSet resolve(std::initializer_list<std::string_view> names) const;
  AttrSet all() const { return AttrSet::range(size()); }

  /// Throws SchemaError unless every member of `x` is a position in this schema.
  void require_subset(const AttrSet& x) const;

  /// Sub-schema made of the attributes in `x`, in position order.
  Schema project(const AttrSet& x) const;

  /// Renders `x` as space-separated names, e.g. "A B".
  std::string format(const AttrSet& x) const;

  friend bool operator==(const Schema&, const Schema&) = default;

 private:
  std::vector<std::string> names_;
};

}  // namespace fdlab
