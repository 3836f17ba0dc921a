#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "fdlab/armstrong.hpp"
#include "fdlab/error.hpp"
#include "fdlab/io.hpp"
#include "fdlab/pfd_index.hpp"
#include "fdlab/semantics.hpp"
#include "fdlab/valuation.hpp"

namespace fdlab::cli {
namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

// Wraps failures that are the caller's fault but carry no location, e.g. a
// missing file.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write '" + path + "'");
}

template <class F>
auto with_path(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw ParseError(path, e.line(), e.column(), e.message());
  }
}

Table load_table(const std::string& path) {
  const auto text = read_file(path);
  return with_path(path, [&] { return parse_table(text, model_for_path(path)); });
}

std::vector<FdSpec> load_fds(const std::string& path) {
  const auto text = read_file(path);
  return with_path(path, [&] { return parse_fds(text); });
}

std::uint64_t world_cap() {
  const char* env = std::getenv("FDLAB_WORLD_CAP");
  if (env == nullptr || *env == '\0') return kDefaultValuationCap;
  std::uint64_t cap = 0;
  std::istringstream in(env);
  if (!(in >> cap) || !in.eof() || cap == 0) {
    throw UsageError(std::string("FDLAB_WORLD_CAP must be a positive integer, got '") + env + "'");
  }
  return cap;
}

json rows_json(const Table& t) {
  json rows = json::array();
  for (std::size_t i = 0; i < t.size(); ++i) {
    json row = json::array();
    for (const auto& v : t.standard_rows()[i].cells) row.push_back(v.str());
    rows.push_back(std::move(row));
  }
  return rows;
}

json names_json(const Schema& schema, const AttrSet& x) {
  json out = json::array();
  for (auto a : x) out.push_back(schema.name(a));
  return out;
}

std::string_view kind_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::Pair:
      return "pair";
    case ViolationKind::ProductForm:
      return "product-form";
    case ViolationKind::Multivalued:
      return "multivalued";
  }
  return "?";
}

std::string binding_text(const StandardTuple& b) {
  std::string out;
  for (std::size_t i = 0; i < b.arity(); ++i) {
    if (i) out += ',';
    out += b[i].str();
  }
  return "(" + out + ")";
}

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

struct Common {
  std::string format = "text";
  bool timing = false;
  bool json() const { return format == "json"; }
};

void add_format(CLI::App* cmd, Common& common) {
  cmd->add_option("--format", common.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
}

int cmd_check(const std::string& table_path, const std::string& fds_path,
              const std::string& semantics_name, const std::string& resemblance,
              const Common& common, std::ostream& out) {
  const auto semantics = parse_semantics(semantics_name);
  if (!semantics) throw UsageError("unknown semantics '" + semantics_name + "'");
  const auto r = load_table(table_path);
  const auto fds = resolve_fds(r.schema(), load_fds(fds_path));
  CheckOptions options;
  options.cap = world_cap();
  options.resemblance = resemblance == "min" ? ResemblanceKind::Min : ResemblanceKind::Max;

  const auto start = Clock::now();
  const auto report = check(r, fds, *semantics, options);
  const double ms = elapsed_ms(start);
  const auto& schema = r.schema();

  if (common.json()) {
    json doc;
    doc["semantics"] = to_string(report.semantics);
    doc["model"] = to_string(report.model);
    doc["satisfied"] = report.satisfied;
    json verdicts = json::array();
    for (const auto& v : report.verdicts) {
      json item;
      item["fd"] = v.fd.format(schema);
      item["holds"] = v.holds;
      if (v.violation) {
        const auto& w = *v.violation;
        json binding = json::array();
        for (const auto& c : w.binding.cells) binding.push_back(c.str());
        item["violation"] = {
            {"kind", kind_name(w.kind)},
            {"first", w.first},
            {"second", w.second},
            {"binding", binding},
            {"tuples", {format_tuple(r.tuple(w.first)), format_tuple(r.tuple(w.second))}}};
      }
      verdicts.push_back(std::move(item));
    }
    doc["verdicts"] = std::move(verdicts);
    if (report.semantics == Semantics::Seamless) {
      doc["witness"] = report.witness ? rows_json(*report.witness) : json(nullptr);
    }
    if (common.timing) doc["elapsed_ms"] = ms;
    out << doc.dump(2) << '\n';
  } else {
    out << "semantics: " << to_string(report.semantics) << '\n';
    out << "model: " << to_string(report.model) << '\n';
    for (const auto& v : report.verdicts) {
      if (report.semantics == Semantics::Seamless) {
        out << "fd " << v.fd.format(schema) << '\n';
        continue;
      }
      out << "fd " << v.fd.format(schema) << ": " << (v.holds ? "holds" : "violated");
      if (v.violation) {
        const auto& w = *v.violation;
        out << " (" << kind_name(w.kind) << ", tuples " << w.first << " and " << w.second;
        if (w.binding.arity() > 0) out << ", binding " << binding_text(w.binding);
        out << ")";
      }
      out << '\n';
    }
    if (report.semantics == Semantics::Seamless) {
      if (!report.witness) {
        out << "witness: none\n";
      } else {
        out << "witness:\n";
        for (std::size_t i = 0; i < report.witness->size(); ++i) {
          out << "  " << format_tuple(report.witness->tuple(i)) << '\n';
        }
      }
    }
    out << "satisfied: " << (report.satisfied ? "true" : "false") << '\n';
    if (common.timing) out << "elapsed_ms: " << ms << '\n';
  }
  return report.satisfied ? kExitOk : kExitViolated;
}

int cmd_valuate(const std::string& table_path, const std::string& fds_path, std::uint64_t seed,
                const std::string& out_path, const Common& common, std::ostream& out,
                std::ostream& err) {
  const auto r = load_table(table_path);
  const auto fds = resolve_fds(r.schema(), load_fds(fds_path));
  World w;
  try {
    w = seamless_valuation_pfd(r, fds, seed);
  } catch (const PreconditionError& e) {
    err << "fdlab valuate: " << e.what() << '\n';
    return kExitViolated;
  }
  const std::string text = common.json() ? rows_json(w).dump(2) + "\n" : serialize_table(w);
  if (out_path.empty()) {
    out << text;
  } else {
    write_file(out_path, text);
  }
  return kExitOk;
}

int cmd_worlds(const std::string& table_path, std::optional<std::size_t> limit,
               const Common& common, std::ostream& out) {
  const auto r = load_table(table_path);
  const auto set = enumerate_worlds(r, limit, world_cap());
  if (common.json()) {
    json worlds = json::array();
    for (const auto& w : set.worlds) worlds.push_back(rows_json(w));
    out << json{{"count", set.worlds.size()}, {"truncated", set.truncated}, {"worlds", worlds}}
               .dump(2)
        << '\n';
    return kExitOk;
  }
  for (std::size_t i = 0; i < set.worlds.size(); ++i) {
    out << "# world " << i + 1 << '\n' << serialize_table(set.worlds[i]) << '\n';
  }
  out << "# worlds: " << set.worlds.size() << (set.truncated ? " (truncated)" : "") << '\n';
  return kExitOk;
}

int cmd_closure(const std::string& fds_path, const std::string& table_path,
                const std::string& attrs, const Common& common, std::ostream& out) {
  const auto specs = load_fds(fds_path);
  std::vector<std::string> wanted;
  {
    std::istringstream in(attrs);
    for (std::string w; in >> w;) wanted.push_back(w);
  }
  Schema schema;
  if (!table_path.empty()) {
    schema = load_table(table_path).schema();
  } else {
    // Without a table the schema is every name mentioned, in order of appearance.
    std::vector<std::string> names;
    auto note = [&](const std::string& n) {
      if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
    };
    for (const auto& s : specs) {
      for (const auto& n : s.lhs) note(n);
      for (const auto& n : s.rhs) note(n);
    }
    for (const auto& n : wanted) note(n);
    schema = Schema(std::move(names));
  }
  const FdSet f(resolve_fds(schema, specs));
  const auto x = schema.resolve(wanted);
  const auto closure = attribute_closure(f, x);
  if (common.json()) {
    out << json{{"attrs", names_json(schema, x)}, {"closure", names_json(schema, closure)}}.dump(2)
        << '\n';
  } else {
    out << schema.format(closure) << '\n';
  }
  return kExitOk;
}

int cmd_gen3dm(const std::string& instance_path, const std::string& table_out,
               const std::string& fds_out, std::ostream& out) {
  const auto text = read_file(instance_path);
  const auto instance = with_path(instance_path, [&] { return parse_3dm(text); });
  const auto reduction = generate_3dm_reduction(instance);
  const auto table_text = serialize_table(reduction.table);
  const auto fds_text = serialize_fds(reduction.table.schema(), reduction.fds);
  if (table_out.empty()) {
    out << table_text;
  } else {
    write_file(table_out, table_text);
  }
  if (fds_out.empty()) {
    out << fds_text;
  } else {
    write_file(fds_out, fds_text);
  }
  return kExitOk;
}

int cmd_bench(const std::string& table_path, const std::string& fds_path, std::size_t repeat,
              const Common& common, std::ostream& out) {
  const auto r = load_table(table_path);
  const auto fds = resolve_fds(r.schema(), load_fds(fds_path));
  if (fds.empty()) throw UsageError("bench needs at least one FD");

  json results = json::array();
  bool all_accepted = true;
  for (const auto& fd : fds) {
    std::vector<double> latencies;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::uint64_t bindings = 0;
    for (std::size_t round = 0; round < repeat; ++round) {
      PfdIndex index(r.schema(), fd);
      for (std::size_t i = 0; i < r.size(); ++i) {
        const auto t = r.tuple(i);
        if (round == 0) bindings += valuation_count(t, fd.lhs);
        const auto start = Clock::now();
        const auto verdict = index.insert(t);
        latencies.push_back(std::chrono::duration<double, std::nano>(Clock::now() - start).count());
        if (round == 0) ++(verdict.accepted ? accepted : rejected);
      }
    }
    all_accepted = all_accepted && rejected == 0;
    std::sort(latencies.begin(), latencies.end());
    auto pct = [&](double p) {
      if (latencies.empty()) return 0.0;
      return latencies[static_cast<std::size_t>(p * static_cast<double>(latencies.size() - 1))];
    };
    const double mean_bindings =
        r.empty() ? 0.0 : static_cast<double>(bindings) / static_cast<double>(r.size());
    results.push_back({{"fd", fd.format(r.schema())},
                       {"tuples", r.size()},
                       {"accepted", accepted},
                       {"rejected", rejected},
                       {"mean_bindings", mean_bindings},
                       {"p50_ns", pct(0.5)},
                       {"p90_ns", pct(0.9)},
                       {"p99_ns", pct(0.99)},
                       {"max_ns", pct(1.0)}});
  }
  if (common.json()) {
    out << results.dump(2) << '\n';
  } else {
    for (const auto& item : results) {
      for (const auto& [key, value] : item.items()) {
        out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
      }
      out << '\n';
    }
  }
  return all_accepted ? kExitOk : kExitViolated;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Functional dependencies over incomplete tables", "fdlab"};
  app.require_subcommand(1);
  Common common;
  std::function<int()> action;

  std::string table, fds, semantics = "pfd", resemblance = "max", out_path, attrs, instance,
                          table_out, fds_out;
  std::optional<std::size_t> limit;
  std::uint64_t seed = kDefaultPickerSeed;
  std::size_t repeat = 1;

  auto* check_cmd = app.add_subcommand("check", "Check FDs under one semantics");
  check_cmd->add_option("--table", table, "Table file")->required();
  check_cmd->add_option("--fds", fds, "FD file")->required();
  check_cmd->add_option("--semantics", semantics, "standard|strong|weak|seamless|pfd|vertical|rm")
      ->capture_default_str();
  check_cmd->add_option("--resemblance", resemblance, "mu_EQ variant for rm")
      ->check(CLI::IsMember({"max", "min"}))
      ->capture_default_str();
  check_cmd->add_flag("--timing", common.timing, "Report elapsed time");
  add_format(check_cmd, common);
  check_cmd->callback(
      [&] { action = [&] { return cmd_check(table, fds, semantics, resemblance, common, out); }; });

  auto* valuate_cmd = app.add_subcommand("valuate", "Seamless valuation of a vague table");
  valuate_cmd->add_option("--table", table, "Table file")->required();
  valuate_cmd->add_option("--fds", fds, "FD file")->required();
  valuate_cmd->add_option("--seed", seed, "Picker seed")->capture_default_str();
  valuate_cmd->add_option("--out", out_path, "Write the world here instead of stdout");
  add_format(valuate_cmd, common);
  valuate_cmd->callback(
      [&] { action = [&] { return cmd_valuate(table, fds, seed, out_path, common, out, err); }; });

  auto* worlds_cmd = app.add_subcommand("worlds", "Enumerate possible worlds");
  worlds_cmd->add_option("--table", table, "Table file")->required();
  worlds_cmd->add_option("--limit", limit, "Stop after this many distinct worlds");
  add_format(worlds_cmd, common);
  worlds_cmd->callback([&] { action = [&] { return cmd_worlds(table, limit, common, out); }; });

  auto* closure_cmd = app.add_subcommand("closure", "Attribute closure under an FD set");
  closure_cmd->add_option("--fds", fds, "FD file")->required();
  closure_cmd->add_option("--attrs", attrs, "Space-separated attribute names")->required();
  closure_cmd->add_option("--table", table, "Take the schema from this table");
  add_format(closure_cmd, common);
  closure_cmd->callback(
      [&] { action = [&] { return cmd_closure(fds, table, attrs, common, out); }; });

  auto* gen_cmd = app.add_subcommand("gen3dm", "Reduce a 3DM instance to a vague table");
  gen_cmd->add_option("--instance", instance, "3DM instance file")->required();
  gen_cmd->add_option("--out-table", table_out, "Table output path");
  gen_cmd->add_option("--out-fds", fds_out, "FD output path");
  gen_cmd->callback(
      [&] { action = [&] { return cmd_gen3dm(instance, table_out, fds_out, out); }; });

  auto* bench_cmd = app.add_subcommand("bench", "Time PFD index inserts");
  bench_cmd->add_option("--table", table, "Table whose rows are inserted in order")->required();
  bench_cmd->add_option("--fds", fds, "FD file, one index per FD")->required();
  bench_cmd->add_option("--repeat", repeat, "Rebuild the index this many times")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_format(bench_cmd, common);
  bench_cmd->callback([&] { action = [&] { return cmd_bench(table, fds, repeat, common, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    return action();
  } catch (const Error& e) {
    err << "fdlab: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace fdlab::cli
