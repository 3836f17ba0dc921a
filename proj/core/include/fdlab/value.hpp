#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace fdlab {

/// An atomic domain element.
///
/// Values are interned: two values built from the same text share storage, so
/// equality is a pointer comparison. Ordering follows the text so that
/// iteration order is stable across runs regardless of interning order.
class Value {
 public:
  Value();
  explicit Value(std::string_view text);

  std::string_view str() const noexcept { return *text_; }

  friend bool operator==(Value a, Value b) noexcept { return a.text_ == b.text_; }
  friend std::strong_ordering operator<=>(Value a, Value b) noexcept {
    if (a.text_ == b.text_) return std::strong_ordering::equal;
    return a.text_->compare(*b.text_) <=> 0;
  }

  std::size_t hash() const noexcept { return std::hash<const void*>{}(text_); }

 private:
  const std::string* text_;
};

/// A sorted, duplicate-free set of values. Cells of vague tuples are ValueSets.
using ValueSet = std::vector<Value>;

/// Sorts and deduplicates in place.
void normalize(ValueSet& set);

ValueSet make_value_set(std::initializer_list<std::string_view> texts);

bool contains(const ValueSet& set, Value v);
ValueSet set_union(const ValueSet& a, const ValueSet& b);
ValueSet set_intersection(const ValueSet& a, const ValueSet& b);
std::size_t intersection_size(const ValueSet& a, const ValueSet& b);
bool intersects(const ValueSet& a, const ValueSet& b);

}  // namespace fdlab

template <>
struct std::hash<fdlab::Value> {
  std::size_t operator()(fdlab::Value v) const noexcept { return v.hash(); }
};
