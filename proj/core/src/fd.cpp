#include "fdlab/fd.hpp"

#include <array>
#include <utility>

namespace fdlab {

FunctionalDependency FunctionalDependency::parse(const Schema& schema,
                                                 std::initializer_list<std::string_view> lhs,
                                                 std::initializer_list<std::string_view> rhs) {
  return {schema.resolve(lhs), schema.resolve(rhs)};
}

std::string FunctionalDependency::format(const Schema& schema) const {
  std::string l = schema.format(lhs);
  std::string r = schema.format(rhs);
  return (l.empty() ? "" : l + " ") + "->" + (r.empty() ? "" : " " + r);
}

namespace {

constexpr std::array<std::pair<Semantics, std::string_view>, 7> kNames{{
    {Semantics::Standard, "standard"},
    {Semantics::Strong, "strong"},
    {Semantics::Weak, "weak"},
    {Semantics::Seamless, "seamless"},
    {Semantics::Pfd, "pfd"},
    {Semantics::Vertical, "vertical"},
    {Semantics::RajuMajumdar, "rm"},
}};

}  // namespace

std::string_view to_string(Semantics s) {
  for (auto [k, name] : kNames) {
    if (k == s) return name;
  }
  return "?";
}

std::optional<Semantics> parse_semantics(std::string_view name) {
  for (auto [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

}  // namespace fdlab
