#include "fdlab/io.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "fdlab/error.hpp"

namespace fdlab {
namespace {

constexpr std::string_view kReserved = ",|{}()#\\";

bool is_blank(char c) { return c == ' ' || c == '\t'; }

struct Line {
  std::string_view text;
  std::size_t number;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 1;
  while (!text.empty() || number == 1) {
    auto end = text.find('\n');
    auto line = text.substr(0, end);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back({line, number++});
    if (end == std::string_view::npos) break;
    text.remove_prefix(end + 1);
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
  return s;
}

bool is_comment_or_blank(std::string_view s) {
  s = trim(s);
  return s.empty() || s.front() == '#';
}

// Cursor over one line of a table file.
class Scanner {
 public:
  explicit Scanner(const Line& line) : line_(line) {}

  [[noreturn]] void fail(const std::string& message) const { fail_at(pos_, message); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& message) const {
    throw ParseError(line_.number, pos + 1, message);
  }

  void skip_blanks() {
    while (pos_ < line_.text.size() && is_blank(line_.text[pos_])) ++pos_;
  }
  bool at_end() const { return pos_ >= line_.text.size(); }
  char peek() const { return at_end() ? '\0' : line_.text[pos_]; }
  std::size_t pos() const { return pos_; }

  bool accept(char c) {
    skip_blanks();
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool accept(std::string_view s) {
    skip_blanks();
    if (line_.text.substr(pos_, s.size()) != s) return false;
    pos_ += s.size();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  // Reads up to the next unescaped reserved character.
  std::string value() {
    skip_blanks();
    const std::size_t start = pos_;
    std::string out;
    std::size_t keep = 0;  // length up to the last escaped or non-blank char
    while (!at_end()) {
      char c = line_.text[pos_];
      if (c == '\\') {
        if (pos_ + 1 >= line_.text.size()) fail("dangling escape at end of line");
        out.push_back(line_.text[pos_ + 1]);
        pos_ += 2;
        keep = out.size();
        continue;
      }
      if (kReserved.find(c) != std::string_view::npos) break;
      out.push_back(c);
      ++pos_;
      if (!is_blank(c)) keep = out.size();
    }
    out.resize(keep);
    if (out.empty()) fail_at(start, "empty value");
    return out;
  }

 private:
  Line line_;
  std::size_t pos_ = 0;
};

ValueSet cell(Scanner& s) {
  s.skip_blanks();
  if (!s.accept('{')) return ValueSet{Value(s.value())};
  const std::size_t open = s.pos() - 1;
  ValueSet out;
  if (s.accept('}')) s.fail_at(open, "empty cell set");
  do {
    out.emplace_back(s.value());
  } while (s.accept('|'));
  s.expect('}');
  normalize(out);
  return out;
}

std::vector<std::string> parse_header(const Line& line) {
  Scanner s(line);
  std::vector<std::string> names;
  do {
    names.push_back(s.value());
  } while (s.accept(','));
  s.skip_blanks();
  if (!s.at_end()) s.fail("unexpected character in header");
  return names;
}

AnyTuple parse_row(const Line& line, std::size_t arity) {
  Scanner s(line);
  s.skip_blanks();
  if (s.peek() == '(') {
    std::vector<StandardTuple> disjuncts;
    do {
      const std::size_t open = s.pos();
      s.expect('(');
      StandardTuple d;
      do {
        d.cells.emplace_back(s.value());
      } while (s.accept(','));
      s.expect(')');
      if (d.arity() != arity) {
        s.fail_at(open, "disjunct has " + std::to_string(d.arity()) + " values, expected " +
                            std::to_string(arity));
      }
      disjuncts.push_back(std::move(d));
    } while (s.accept("||"));
    s.skip_blanks();
    if (!s.at_end()) s.fail("expected '||' between disjuncts");
    if (disjuncts.size() == 1) return disjuncts.front();
    return DisjunctiveTuple(std::move(disjuncts));
  }

  std::vector<ValueSet> cells;
  do {
    cells.push_back(cell(s));
  } while (s.accept(','));
  s.skip_blanks();
  if (!s.at_end()) s.fail("unexpected character in row");
  if (cells.size() != arity) {
    s.fail_at(
        0, "row has " + std::to_string(cells.size()) + " cells, expected " + std::to_string(arity));
  }
  VagueTuple t(std::move(cells));
  if (auto standard = t.as_standard()) return *standard;
  return t;
}

std::optional<Model> parse_model_name(std::string_view name) {
  if (name == "standard") return Model::Standard;
  if (name == "vague") return Model::Vague;
  if (name == "disjunctive") return Model::Disjunctive;
  return std::nullopt;
}

std::string escape(std::string_view text) {
  if (text.empty()) throw PreconditionError("empty value cannot be written");
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    const bool edge_blank = is_blank(c) && (i == 0 || i + 1 == text.size());
    if (kReserved.find(c) != std::string_view::npos || edge_blank) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

void write_cells(std::ostream& out, const StandardTuple& t) {
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out << ',';
    out << escape(t[i].str());
  }
}

void write_cell(std::ostream& out, const ValueSet& c) {
  if (c.size() == 1) {
    out << escape(c.front().str());
    return;
  }
  out << '{';
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k) out << '|';
    out << escape(c[k].str());
  }
  out << '}';
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(std::move(w));
  return out;
}

}  // namespace

std::optional<Model> model_for_path(std::string_view path) {
  auto ends_with = [&](std::string_view ext) {
    return path.size() >= ext.size() && path.substr(path.size() - ext.size()) == ext;
  };
  if (ends_with(".vtab")) return Model::Vague;
  if (ends_with(".dtab")) return Model::Disjunctive;
  if (ends_with(".tab")) return Model::Standard;
  return std::nullopt;
}

std::string format_tuple(const AnyTuple& t) {
  std::ostringstream out;
  if (const auto* s = std::get_if<StandardTuple>(&t)) {
    write_cells(out, *s);
  } else if (const auto* v = std::get_if<VagueTuple>(&t)) {
    for (std::size_t i = 0; i < v->arity(); ++i) {
      if (i) out << ',';
      write_cell(out, (*v)[i]);
    }
  } else {
    const auto& d = std::get<DisjunctiveTuple>(t);
    for (std::size_t k = 0; k < d.size(); ++k) {
      if (k) out << "||";
      out << '(';
      write_cells(out, d.disjuncts()[k]);
      out << ')';
    }
  }
  return out.str();
}

Table parse_table(std::string_view text, std::optional<Model> hint) {
  std::optional<Model> directive;
  std::optional<std::vector<std::string>> header;
  std::vector<AnyTuple> rows;
  std::vector<std::size_t> row_lines;
  std::size_t last_line = 1;

  for (const auto& line : split_lines(text)) {
    last_line = line.number;
    const auto body = trim(line.text);
    if (body.starts_with("#model:")) {
      if (directive) throw ParseError(line.number, 1, "repeated #model directive");
      const auto name = trim(body.substr(7));
      directive = parse_model_name(name);
      if (!directive) {
        throw ParseError(line.number, 1, "unknown model '" + std::string(name) + "'");
      }
      continue;
    }
    if (is_comment_or_blank(line.text)) continue;
    if (!header) {
      header = parse_header(line);
      continue;
    }
    rows.push_back(parse_row(line, header->size()));
    row_lines.push_back(line.number);
  }
  if (!header) throw ParseError(last_line, 1, "missing header row");

  Schema schema;
  try {
    schema = Schema(*header);
  } catch (const SchemaError& e) {
    throw ParseError(1, 1, e.what());
  }

  Model model = Model::Standard;
  if (directive) {
    model = *directive;
  } else if (hint) {
    model = *hint;
  } else {
    for (const auto& t : rows) model = std::max(model, model_of(t));
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (model_of(rows[i]) > model) {
      throw ParseError(row_lines[i], 1,
                       std::string(to_string(model_of(rows[i]))) + " row in a " +
                           std::string(to_string(model)) + " table");
    }
  }
  return Table::from_tuples(std::move(schema), model, std::move(rows));
}

std::string serialize_table(const Table& r) {
  std::ostringstream out;
  out << "#model: " << to_string(r.model()) << '\n';
  const auto& names = r.schema().names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out << ',';
    out << escape(names[i]);
  }
  out << '\n';
  for (std::size_t i = 0; i < r.size(); ++i) out << format_tuple(r.tuple(i)) << '\n';
  return out.str();
}

std::vector<FdSpec> parse_fds(std::string_view text) {
  std::vector<FdSpec> out;
  for (const auto& line : split_lines(text)) {
    if (is_comment_or_blank(line.text)) continue;
    const auto arrow = line.text.find("->");
    if (arrow == std::string_view::npos) throw ParseError(line.number, 1, "missing '->'");
    if (line.text.find("->", arrow + 2) != std::string_view::npos) {
      throw ParseError(line.number, line.text.find("->", arrow + 2) + 1, "more than one '->'");
    }
    out.push_back({split_words(line.text.substr(0, arrow)),
                   split_words(line.text.substr(arrow + 2)), line.number});
  }
  return out;
}

std::vector<FunctionalDependency> resolve_fds(const Schema& schema,
                                              const std::vector<FdSpec>& specs) {
  std::vector<FunctionalDependency> out;
  for (const auto& spec : specs) {
    try {
      out.emplace_back(schema.resolve(spec.lhs), schema.resolve(spec.rhs));
    } catch (const SchemaError& e) {
      throw SchemaError("FD on line " + std::to_string(spec.line) + ": " + e.what());
    }
  }
  return out;
}

std::string serialize_fds(const Schema& schema, const std::vector<FunctionalDependency>& fds) {
  std::string out;
  for (const auto& fd : fds) out += fd.format(schema) + '\n';
  return out;
}

ThreeDMInstance parse_3dm(std::string_view text) {
  std::optional<std::size_t> n;
  std::vector<Triple> triples;
  for (const auto& line : split_lines(text)) {
    if (is_comment_or_blank(line.text)) continue;
    auto words = split_words(line.text);
    if (!n) {
      std::size_t value = 0;
      const auto& w = words.front();
      auto [end, ec] = std::from_chars(w.data(), w.data() + w.size(), value);
      if (words.size() != 1 || ec != std::errc() || end != w.data() + w.size() || value == 0) {
        throw ParseError(line.number, 1, "expected the instance size n >= 1");
      }
      n = value;
      continue;
    }
    if (words.size() != 3) {
      throw ParseError(line.number, 1,
                       "expected 'x y z', got " + std::to_string(words.size()) + " fields");
    }
    triples.push_back({words[0], words[1], words[2]});
  }
  if (!n) throw ParseError(1, 1, "missing instance size");
  try {
    return ThreeDMInstance::from_triples(*n, std::move(triples));
  } catch (const PreconditionError& e) {
    throw ParseError(1, 1, e.what());
  }
}

std::string serialize_3dm(const ThreeDMInstance& instance) {
  std::string out = std::to_string(instance.n()) + '\n';
  for (const auto& t : instance.triples()) out += t.x + ' ' + t.y + ' ' + t.z + '\n';
  return out;
}

}  // namespace fdlab
