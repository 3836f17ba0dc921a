#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include "fdlab/schema.hpp"

namespace fdlab {

/// X -> Y over attribute positions of one schema. The sides may overlap and
/// either may be empty.
struct FunctionalDependency {
  AttrSet lhs;
  AttrSet rhs;

  FunctionalDependency() = default;
  FunctionalDependency(AttrSet x, AttrSet y) : lhs(std::move(x)), rhs(std::move(y)) {}

  /// Resolves "A B -> C" style attribute lists against `schema`.
  static FunctionalDependency parse(const Schema& schema,
                                    std::initializer_list<std::string_view> lhs,
                                    std::initializer_list<std::string_view> rhs);

  AttrSet attributes() const { return lhs | rhs; }
  /// True when rhs is contained in lhs.
  bool is_trivial() const { return rhs.is_subset_of(lhs); }

  std::string format(const Schema& schema) const;

  friend bool operator==(const FunctionalDependency&, const FunctionalDependency&) = default;
  friend auto operator<=>(const FunctionalDependency&, const FunctionalDependency&) = default;
};

enum class Semantics { Standard, Strong, Weak, Seamless, Pfd, Vertical, RajuMajumdar };

std::string_view to_string(Semantics s);
std::optional<Semantics> parse_semantics(std::string_view name);

}  // namespace fdlab
