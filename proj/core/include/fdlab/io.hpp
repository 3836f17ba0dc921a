#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fdlab/fd.hpp"
#include "fdlab/table.hpp"
#include "fdlab/three_dm.hpp"

namespace fdlab {

// Table text format:
//
//   #model: vague          optional directive, standard|vague|disjunctive
//   A,B,C                  header naming the attributes
//   a1,{b1|b2},c1          vague row; {v} is the same as v
//   (a1,b1,c1)||(a1,b2,c2) disjunctive row
//
// Lines starting with '#' are comments and blank lines are ignored. Leading and
// trailing blanks around a value are dropped. A backslash escapes the next
// character; the reserved characters are , | { } ( ) # and the backslash itself.

/// Model suggested by a file name: .tab standard, .vtab vague, .dtab disjunctive.
std::optional<Model> model_for_path(std::string_view path);

/// The model comes from the directive, else `hint`, else the least general model
/// that fits every row. Throws ParseError with the offending location.
Table parse_table(std::string_view text, std::optional<Model> hint = std::nullopt);

/// One row in table syntax, e.g. "a1,{b1|b2}" or "(a,b)||(a,c)".
std::string format_tuple(const AnyTuple& t);

/// Canonical text: directive, header, then rows in table order.
std::string serialize_table(const Table& r);

/// An FD as written, before attribute names are checked against a schema.
struct FdSpec {
  std::vector<std::string> lhs;
  std::vector<std::string> rhs;
  std::size_t line = 0;

  friend bool operator==(const FdSpec&, const FdSpec&) = default;
};

/// One FD per line, `A B -> C D`; either side may be empty. Throws ParseError
/// for a missing or repeated arrow.
std::vector<FdSpec> parse_fds(std::string_view text);

/// Throws SchemaError naming the line of the first unknown attribute.
std::vector<FunctionalDependency> resolve_fds(const Schema& schema,
                                              const std::vector<FdSpec>& specs);

std::string serialize_fds(const Schema& schema, const std::vector<FunctionalDependency>& fds);

/// Line 1 holds n, then one `x y z` triple per line.
ThreeDMInstance parse_3dm(std::string_view text);
std::string serialize_3dm(const ThreeDMInstance& instance);

}  // namespace fdlab
