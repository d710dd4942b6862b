#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "iceasm/asm.hpp"
#include "iceasm/cyclo.hpp"
#include "iceasm/enumerator.hpp"
#include "iceasm/grids.hpp"
#include "iceasm/suite.hpp"

namespace {

using namespace iceasm;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kSymbolicVertexCap = 16;

struct Globals {
  int jobs = 1;
  bool json = false;
  std::string cache_dir;
};

// Cache at <dir>/counts.jsonl from --cache or ICEASM_CACHE; none if unset.
std::unique_ptr<CountCache> open_cache(const Globals& g) {
  std::string dir = g.cache_dir;
  if (dir.empty()) {
    const char* env = std::getenv("ICEASM_CACHE");
    if (env) dir = env;
  }
  if (dir.empty()) return nullptr;
  std::filesystem::create_directories(dir);
  return std::make_unique<CountCache>((std::filesystem::path(dir) / "counts.jsonl").string());
}

CountRecord cached_count(SymClass c, int n, const Globals& g, CountCache* cache) {
  check_class_size(c, n);
  if (cache) {
    if (auto hit = cache->lookup(c, n)) return *hit;
  }
  CountRecord r = count_class(c, n, g.jobs);
  if (cache) cache->store(r);
  return r;
}

SymClass class_arg(const std::string& s) {
  auto c = parse_sym_class(s);
  if (!c) throw UsageError("unknown class '" + s + "' (expected plain, ht, qt, qqt, qqt-neg, qqt-pos)");
  return *c;
}

std::string count_line(const CountRecord& r) {
  std::string s = std::string(to_string(r.cls)) + " n=" + std::to_string(r.n) + ": " + r.count.get_str();
  if (r.split) s += " (split neg/pos " + r.split->first.get_str() + "/" + r.split->second.get_str() + ")";
  return s;
}

// ---------------------------------------------------------------------------
// count

int run_count(const Globals& g, const std::string& cls, int n) {
  auto cache = open_cache(g);
  CountRecord r = cached_count(class_arg(cls), n, g, cache.get());
  if (g.json) {
    std::cout << CountCache::to_json(r).dump() << "\n";
  } else {
    std::cout << count_line(r) << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// table

struct CrossCheck {
  std::string relation;
  std::string lhs, rhs;
  bool ok;
};

std::vector<CrossCheck> table_cross_checks(const std::map<std::pair<SymClass, int>, CountRecord>& t) {
  std::vector<CrossCheck> out;
  auto get = [&](SymClass c, int n) -> std::optional<BigInt> {
    if (c == SymClass::Plain && n == 0) return BigInt(1);
    auto it = t.find({c, n});
    if (it == t.end()) return std::nullopt;
    return it->second.count;
  };
  auto add = [&](const std::string& rel, std::optional<BigInt> lhs, std::vector<std::optional<BigInt>> factors) {
    if (!lhs) return;
    BigInt prod = 1;
    std::string text;
    for (const auto& f : factors) {
      if (!f) return;
      prod *= *f;
      text += (text.empty() ? "" : "*") + f->get_str();
    }
    out.push_back({rel, lhs->get_str(), text, *lhs == prod});
  };
  for (int N = 1; 4 * N - 1 <= kEnumeratorCap; ++N) {
    const std::string Ns = "N=" + std::to_string(N);
    auto a = get(SymClass::Plain, N), b = get(SymClass::Plain, N + 1);
    add("A_QT(4N) = A_HT(2N) A(N)^2, " + Ns, get(SymClass::QT, 4 * N), {get(SymClass::HT, 2 * N), a, a});
    add("A_QT(4N-1) = A_HT(2N-1) A(N)^2, " + Ns, get(SymClass::QT, 4 * N - 1), {get(SymClass::HT, 2 * N - 1), a, a});
    add("A_QT(4N+1) = A_HT(2N+1) A(N)^2, " + Ns, get(SymClass::QT, 4 * N + 1), {get(SymClass::HT, 2 * N + 1), a, a});
    add("A_qQT(4N+2) = A_HT(2N+1) A(N) A(N+1), " + Ns, get(SymClass::QQT, 4 * N + 2), {get(SymClass::HT, 2 * N + 1), a, b});
  }
  return out;
}

int run_table(const Globals& g, const std::vector<std::string>& class_names, int max_n) {
  if (max_n < 1) throw UsageError("--max-n must be at least 1");
  if (max_n > kEnumeratorCap) {
    throw SizeCapError("--max-n " + std::to_string(max_n) + " exceeds the cap n <= " + std::to_string(kEnumeratorCap));
  }
  std::vector<SymClass> classes;
  for (const auto& c : class_names) classes.push_back(class_arg(c));
  auto cache = open_cache(g);
  std::map<std::pair<SymClass, int>, CountRecord> t;
  for (int n = 1; n <= max_n; ++n) {
    for (SymClass c : classes) {
      if (is_qqt_class(c) && n % 4 != 2) continue;
      t[{c, n}] = cached_count(c, n, g, cache.get());
    }
  }
  // Cross-checks always draw on all four base classes up to the same size.
  auto full = t;
  for (int n = 1; n <= max_n; ++n) {
    for (SymClass c : {SymClass::Plain, SymClass::HT, SymClass::QT, SymClass::QQT}) {
      if (is_qqt_class(c) && n % 4 != 2) continue;
      if (!full.count({c, n})) full[{c, n}] = cached_count(c, n, g, cache.get());
    }
  }
  auto checks = table_cross_checks(full);
  bool ok = true;
  for (const auto& c : checks) ok = ok && c.ok;
  if (g.json) {
    json j;
    j["rows"] = json::array();
    for (int n = 1; n <= max_n; ++n) {
      for (SymClass c : classes) {
        auto it = t.find({c, n});
        if (it != t.end()) j["rows"].push_back(CountCache::to_json(it->second));
      }
    }
    j["cross_checks"] = json::array();
    for (const auto& c : checks) j["cross_checks"].push_back({{"relation", c.relation}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"ok", c.ok}});
    j["verdict"] = ok ? "pass" : "fail";
    std::cout << j.dump(2) << "\n";
  } else {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head{"n"};
    for (SymClass c : classes) head.push_back(to_string(c));
    rows.push_back(head);
    for (int n = 1; n <= max_n; ++n) {
      std::vector<std::string> row{std::to_string(n)};
      for (SymClass c : classes) {
        auto it = t.find({c, n});
        if (it == t.end()) {
          row.push_back("-");
        } else if (it->second.split) {
          row.push_back(it->second.count.get_str() + " (" + it->second.split->first.get_str() + "/" + it->second.split->second.get_str() + ")");
        } else {
          row.push_back(it->second.count.get_str());
        }
      }
      rows.push_back(row);
    }
    std::vector<std::size_t> width(head.size(), 0);
    for (const auto& row : rows)
      for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << row[i];
      std::cout << "\n";
    }
    if (std::find(classes.begin(), classes.end(), SymClass::QQT) != classes.end()) std::cout << "qqt split shown as (neg/pos)\n";
    for (const auto& c : checks) std::cout << (c.ok ? "ok   " : "FAIL ") << c.relation << ": " << c.lhs << " = " << c.rhs << "\n";
  }
  return ok ? kExitOk : kExitFail;
}

// ---------------------------------------------------------------------------
// verify

int run_verify(const Globals& g, bool all, const std::string& id, bool list, std::optional<int> n, std::uint64_t seed) {
  if (list) {
    for (const auto& e : check_registry()) {
      if (g.json) continue;
      std::cout << std::left << std::setw(22) << e.id << e.summary << "\n";
    }
    if (g.json) {
      json j = json::array();
      for (const auto& e : check_registry()) j.push_back({{"id", e.id}, {"summary", e.summary}});
      std::cout << j.dump(2) << "\n";
    }
    return kExitOk;
  }
  if (all == !id.empty()) throw UsageError("verify needs exactly one of --all or --id <id> (or --list)");
  std::vector<const CheckEntry*> entries;
  if (all) {
    if (n) throw UsageError("--n applies to a single check; use it with --id");
    for (const auto& e : check_registry()) entries.push_back(&e);
  } else {
    const CheckEntry* e = find_check(id);
    if (!e) throw UsageError("unknown check id '" + id + "' (see verify --list)");
    entries.push_back(e);
  }
  CheckOptions o;
  o.n = n;
  o.seed = seed;
  o.jobs = g.jobs;
  std::vector<CheckReport> reports;
  for (const auto* e : entries) {
    reports.push_back(run_check(*e, o));
    const auto& r = reports.back();
    if (!g.json) {
      std::ostringstream t;
      t << std::fixed << std::setprecision(2) << r.seconds << "s";
      std::cout << (r.pass ? "PASS " : "FAIL ") << r.id << " (" << r.cases << " cases, " << t.str() << ")\n";
      if (!r.pass) std::cout << "  witness: " << r.witness << "\n";
      for (const auto& note : r.notes) std::cout << "  note: " << note << "\n";
    }
  }
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.pass;
  if (g.json) {
    json j;
    j["verdict"] = ok ? "pass" : "fail";
    j["checks"] = json::array();
    for (const auto& r : reports) j["checks"].push_back(r.to_json());
    std::cout << j.dump(2) << "\n";
  } else if (entries.size() > 1) {
    long passed = 0;
    for (const auto& r : reports) passed += r.pass;
    std::cout << passed << "/" << reports.size() << " checks passed\n";
  }
  return ok ? kExitOk : kExitFail;
}

// ---------------------------------------------------------------------------
// zdump

// "name=value" pairs separated by commas.
VarAssignment parse_assignment(const std::string& text, const GridSpec& grid) {
  VarAssignment v;
  std::stringstream in(text);
  std::string item;
  SpacePtr space = grid.symbolic_space();
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("assignment item '" + item + "' is not name=value");
    std::string name = item.substr(0, eq);
    if (!space->find(name)) {
      throw UsageError("unknown variable '" + name + "' for this grid (variables: a, " + [&] {
        std::string s;
        for (const auto& l : grid.lines()->names()) s += (s.empty() ? "" : ", ") + l;
        return s;
      }() + ")");
    }
    CycloRational value;
    try {
      value = parse_cyclo(item.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (value.is_zero()) throw UsageError("variable '" + name + "' must be nonzero");
    v.set(name, value);
  }
  return v;
}

int run_zdump(const Globals& g, const std::string& family_name, int size, const std::string& at, const std::string& tag) {
  Family f;
  GridSpec grid;
  try {
    f = parse_family(family_name, size);
    grid = build_grid(f, size);
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    if (msg.find("cap") != std::string::npos) throw SizeCapError(msg);
    throw UsageError(msg);
  }
  std::optional<std::string> t;
  if (!tag.empty()) {
    if (grid.central_edge < 0) throw UsageError(std::string(to_string(f)) + " has no central split");
    try {
      grid.tag_value(tag);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    t = tag;
  }
  const int vertices = static_cast<int>(grid.graph.vertices().size());
  auto symbolic_allowed = [&]() {
    if (vertices > kSymbolicVertexCap) {
      throw UsageError("symbolic dump refused: grid has " + std::to_string(vertices) + " vertices, cap is " +
                       std::to_string(kSymbolicVertexCap) + "; pass a full assignment with --at");
    }
  };
  std::string mode, result;
  bool is_value = false;
  if (at == "symbolic") {
    symbolic_allowed();
    mode = "symbolic";
    result = partition_function_symbolic(grid, t).str();
  } else if (at == "ones") {
    mode = "ones";
    is_value = true;
    result = partition_function_value(grid, all_ones_at_omega(grid), t).str();
  } else {
    mode = "assignment";
    VarAssignment v = parse_assignment(at, grid);
    bool complete = true;
    const SpacePtr space = grid.symbolic_space();
    for (const auto& n : space->names())
      if (!v.find(n)) complete = false;
    if (complete) {
      is_value = true;
      result = partition_function_value(grid, v, t).str();
    } else {
      symbolic_allowed();
      result = partition_function_specialized(grid, v, t).str();
    }
  }
  const auto states = grid_states(grid, t).size();
  if (g.json) {
    json j;
    j["family"] = to_string(f);
    j["size"] = size;
    j["mode"] = mode;
    j["tag"] = t ? json(*t) : json(nullptr);
    j["polynomial"] = is_value ? json(nullptr) : json(result);
    j["value"] = is_value ? json(result) : json(nullptr);
    j["state_count"] = states;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "family: " << to_string(f) << "\nsize: " << size << "\nmode: " << mode << "\n";
    if (t) std::cout << "tag: " << *t << "\n";
    std::cout << "states: " << states << "\n" << (is_value ? "value: " : "polynomial: ") << result << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// cache

int run_cache(const Globals& g, bool path_only) {
  auto cache = open_cache(g);
  if (!cache) throw UsageError("no cache configured (use --cache <dir> or ICEASM_CACHE)");
  if (path_only) {
    if (g.json) {
      std::cout << json{{"path", cache->path()}, {"records", cache->size()}}.dump() << "\n";
    } else {
      std::cout << cache->path() << "\n";
    }
    return kExitOk;
  }
  auto records = cache->records();
  if (g.json) {
    json j = json::array();
    for (const auto& r : records) j.push_back(CountCache::to_json(r));
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << cache->path() << ": " << records.size() << " records\n";
    for (const auto& r : records) std::cout << "  " << count_line(r) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Alternating sign matrix symmetry classes and square-ice partition functions"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--jobs", g.jobs, "Worker threads for enumeration")->check(CLI::Range(1, 256));
  app.add_flag("--json", g.json, "Print JSON");
  app.add_option("--cache", g.cache_dir, "Count cache directory (default: $ICEASM_CACHE)");

  auto* count = app.add_subcommand("count", "Count ASMs of one symmetry class");
  std::string count_class_name;
  int count_n = 0;
  count->add_option("--class", count_class_name, "plain, ht, qt, qqt, qqt-neg or qqt-pos")->required();
  count->add_option("--n", count_n, "Matrix size")->required();

  auto* table = app.add_subcommand("table", "Counts for several classes with relation cross-checks");
  std::vector<std::string> table_classes{"plain", "ht", "qt", "qqt"};
  int table_max = 10;
  table->add_option("--classes", table_classes, "Comma-separated classes")->delimiter(',');
  table->add_option("--max-n", table_max, "Largest size")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run identity checks");
  bool verify_all = false, verify_list = false;
  std::string verify_id;
  std::optional<int> verify_n;
  std::uint64_t verify_seed = 1;
  verify->add_flag("--all", verify_all, "Run every check");
  verify->add_option("--id", verify_id, "Run one check");
  verify->add_flag("--list", verify_list, "List check ids");
  verify->add_option("--n", verify_n, "Restrict a parameterized check to this N");
  verify->add_option("--seed", verify_seed, "Seed for sample points")->capture_default_str();

  auto* zdump = app.add_subcommand("zdump", "Dump a partition function");
  std::string z_family, z_at = "ones", z_tag;
  int z_size = 0;
  zdump->add_option("--family", z_family, "dwbc, ht2n, ht2n1, qt4n, qt4n2 (or z, ht, qt)")->required();
  zdump->add_option("--size", z_size, "N for dwbc, matrix size otherwise")->required();
  zdump->add_option("--at", z_at, "ones, symbolic, or name=value,... (values like 3/2, w, 1-w)")->capture_default_str();
  zdump->add_option("--tag", z_tag, "Restrict to one orientation of the central edge");

  auto* cache = app.add_subcommand("cache", "Inspect the count cache");
  bool cache_path = false;
  cache->add_flag("--path", cache_path, "Print the cache file path only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*count) return run_count(g, count_class_name, count_n);
    if (*table) return run_table(g, table_classes, table_max);
    if (*verify) return run_verify(g, verify_all, verify_id, verify_list, verify_n, verify_seed);
    if (*zdump) return run_zdump(g, z_family, z_size, z_at, z_tag);
    if (*cache) return run_cache(g, cache_path);
  } catch (const SizeCapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
