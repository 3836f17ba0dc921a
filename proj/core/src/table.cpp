#include "fdlab/table.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "fdlab/error.hpp"

namespace fdlab {
namespace {

template <typename T>
void canonicalize(const Schema& schema, std::vector<T>& rows) {
  for (const auto& t : rows) {
    if (t.arity() != schema.size()) {
      throw SchemaError("tuple of arity " + std::to_string(t.arity()) +
                        " does not fit schema of size " + std::to_string(schema.size()));
    }
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
}

}  // namespace

Table::Table(Schema schema, std::vector<StandardTuple> rows) : schema_(std::move(schema)) {
  canonicalize(schema_, rows);
  rows_ = std::move(rows);
}

Table::Table(Schema schema, std::vector<VagueTuple> rows) : schema_(std::move(schema)) {
  canonicalize(schema_, rows);
  rows_ = std::move(rows);
}

Table::Table(Schema schema, std::vector<DisjunctiveTuple> rows) : schema_(std::move(schema)) {
  canonicalize(schema_, rows);
  rows_ = std::move(rows);
}

Table Table::from_tuples(Schema schema, Model model, std::vector<AnyTuple> rows,
                         std::uint64_t cap) {
  auto mismatch = [&](const AnyTuple& t) {
    return ModelError("a " + std::string(to_string(model_of(t))) + " tuple cannot be stored in a " +
                      std::string(to_string(model)) + " table");
  };
  switch (model) {
    case Model::Standard: {
      std::vector<StandardTuple> out;
      for (auto& t : rows) {
        if (auto* s = std::get_if<StandardTuple>(&t)) {
          out.push_back(std::move(*s));
        } else if (auto* v = std::get_if<VagueTuple>(&t); v && v->is_standard()) {
          out.push_back(*v->as_standard());
        } else {
          throw mismatch(t);
        }
      }
      return Table(std::move(schema), std::move(out));
    }
    case Model::Vague: {
      std::vector<VagueTuple> out;
      for (auto& t : rows) {
        if (auto* s = std::get_if<StandardTuple>(&t)) {
          out.emplace_back(*s);
        } else if (auto* v = std::get_if<VagueTuple>(&t)) {
          out.push_back(std::move(*v));
        } else {
          throw mismatch(t);
        }
      }
      return Table(std::move(schema), std::move(out));
    }
    case Model::Disjunctive: {
      std::vector<DisjunctiveTuple> out;
      for (auto& t : rows) {
        if (auto* s = std::get_if<StandardTuple>(&t)) {
          out.emplace_back(*s);
        } else if (auto* v = std::get_if<VagueTuple>(&t)) {
          out.push_back(to_disjunctive(*v, cap));
        } else {
          out.push_back(std::move(std::get<DisjunctiveTuple>(t)));
        }
      }
      return Table(std::move(schema), std::move(out));
    }
  }
  throw ModelError("unknown model");
}

std::size_t Table::size() const noexcept {
  return std::visit([](const auto& rows) { return rows.size(); }, rows_);
}

AnyTuple Table::tuple(std::size_t i) const {
  return std::visit([i](const auto& rows) -> AnyTuple { return rows.at(i); }, rows_);
}

const std::vector<StandardTuple>& Table::standard_rows() const {
  if (auto* r = std::get_if<0>(&rows_)) return *r;
  throw ModelError("expected a standard table, got a " + std::string(to_string(model())) + " one");
}

const std::vector<VagueTuple>& Table::vague_rows() const {
  if (auto* r = std::get_if<1>(&rows_)) return *r;
  throw ModelError("expected a vague table, got a " + std::string(to_string(model())) + " one");
}

const std::vector<DisjunctiveTuple>& Table::disjunctive_rows() const {
  if (auto* r = std::get_if<2>(&rows_)) return *r;
  throw ModelError("expected a disjunctive table, got a " + std::string(to_string(model())) +
                   " one");
}

bool operator<(const Table& a, const Table& b) {
  if (a.schema_.names() != b.schema_.names()) return a.schema_.names() < b.schema_.names();
  return a.rows_ < b.rows_;
}

Table project_table(const Table& r, const AttrSet& x) {
  r.schema().require_subset(x);
  Schema sub = r.schema().project(x);
  switch (r.model()) {
    case Model::Standard: {
      std::vector<StandardTuple> out;
      for (const auto& t : r.standard_rows()) out.push_back(project_tuple(t, x));
      return Table(std::move(sub), std::move(out));
    }
    case Model::Vague: {
      std::vector<VagueTuple> out;
      for (const auto& t : r.vague_rows()) out.push_back(project_tuple(t, x));
      return Table(std::move(sub), std::move(out));
    }
    case Model::Disjunctive: {
      std::vector<DisjunctiveTuple> out;
      for (const auto& t : r.disjunctive_rows()) out.push_back(project_tuple(t, x));
      return Table(std::move(sub), std::move(out));
    }
  }
  throw ModelError("unknown model");
}

Table to_disjunctive(const Table& r, std::uint64_t cap) {
  std::vector<AnyTuple> rows;
  rows.reserve(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) rows.push_back(r.tuple(i));
  return Table::from_tuples(r.schema(), Model::Disjunctive, std::move(rows), cap);
}

Table to_vague(const Table& r) {
  switch (r.model()) {
    case Model::Vague:
      return r;
    case Model::Standard: {
      std::vector<VagueTuple> out;
      for (const auto& t : r.standard_rows()) out.emplace_back(t);
      return Table(r.schema(), std::move(out));
    }
    case Model::Disjunctive:
      throw ModelError("a disjunctive table has no general vague equivalent");
  }
  throw ModelError("unknown model");
}

WorldSet enumerate_worlds(const Table& r, std::optional<std::size_t> limit, std::uint64_t cap) {
  const AttrSet all = r.schema().all();
  std::uint64_t total = 1;
  std::vector<std::vector<StandardTuple>> choices;
  choices.reserve(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    AnyTuple t = r.tuple(i);
    std::uint64_t n = valuation_count(t);
    if (n > cap || (n != 0 && total > cap / n)) {
      throw BudgetError("table has more than " + std::to_string(cap) + " valuations");
    }
    total *= n;
    choices.push_back(valuations(t, all, cap));
  }

  std::set<std::vector<StandardTuple>> seen;
  WorldSet out;
  std::vector<std::size_t> idx(choices.size(), 0);
  while (true) {
    std::vector<StandardTuple> rows;
    rows.reserve(choices.size());
    for (std::size_t i = 0; i < choices.size(); ++i) rows.push_back(choices[i][idx[i]]);
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    if (seen.insert(std::move(rows)).second && limit && seen.size() > *limit) {
      out.truncated = true;
      break;
    }
    std::size_t k = choices.size();
    bool done = true;
    while (k > 0) {
      --k;
      if (++idx[k] < choices[k].size()) {
        done = false;
        break;
      }
      idx[k] = 0;
    }
    if (done) break;
  }

  std::vector<std::vector<StandardTuple>> kept(seen.begin(), seen.end());
  if (out.truncated) {
    // Keep the first `limit` worlds in set order; one extra was found.
    kept.resize(*limit);
  }
  out.worlds.reserve(kept.size());
  for (auto& rows : kept) out.worlds.emplace_back(r.schema(), std::move(rows));
  return out;
}

}  // namespace fdlab
