#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "nilclosure/cli.hpp"

using namespace nilclosure;
namespace fs = std::filesystem;

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> jobs;
  std::optional<std::string> format, out, strategy;
  std::optional<int> label_bound;
};

RunConfig configure(const Flags& f) {
  if (f.config.empty()) throw ConfigError("--config is required");
  RunConfig c = load_config(f.config);
  if (f.seed) c.seed = *f.seed;
  if (f.jobs) c.jobs = *f.jobs;
  if (f.format) c.format = *f.format;
  if (f.out) c.out = *f.out;
  if (f.strategy) c.strategy = parse_strategy(*f.strategy);
  if (f.label_bound) {
    if (c.fixture) throw ConfigError("--label-bound conflicts with the fixture orbit source");
    c.label_bound = *f.label_bound;
  }
  validate_config(c);
  return c;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + out);
  f << text;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

int report_errors(const LoadedCase& lc) {
  for (const auto& e : lc.errors) std::cerr << "error: " << e << "\n";
  return lc.errors.empty() ? exit_ok : exit_validation;
}

int cmd_list(const Flags& f) {
  RunConfig c = configure(f);
  LoadedCase lc = load_case(c);
  std::cout << std::left << std::setw(6) << "id" << std::setw(6) << "dim" << "characteristic\n";
  for (const auto& o : lc.orbits) {
    std::cout << std::setw(6) << o.id << std::setw(6) << o.dim;
    for (long a : lc.group.theta0.coords(o.triple.h)) std::cout << a << ' ';
    std::cout << "\n";
  }
  if (!c.out.empty()) emit(orbit_table_json(lc, c).dump(2) + "\n", c.out);
  return report_errors(lc);
}

int cmd_decide(const Flags& f, int upper, int lower) {
  RunConfig c = configure(f);
  LoadedCase lc = load_case(c);
  auto find = [&](int id) -> const PreparedOrbit& {
    for (const auto& o : lc.orbits)
      if (o.id == id) return o;
    throw ConfigError("unknown orbit id " + std::to_string(id));
  };
  const PreparedOrbit& up = find(upper);
  const PreparedOrbit& lo = find(lower);
  const HasseOptions ho = hasse_options(c, lc.from_fixture);
  Decision d = decide_inclusion(lc.group, lo, up, pair_seed(c.seed, upper, lower), ho.closure);
  nlohmann::json j = decision_json(lc.group, d);
  if (d.witness) j["verified"] = verify_witness(lc.group, lo, up, *d.witness);
  j["seed"] = c.seed;
  j["config_hash"] = config_hash(c);
  j["version"] = tool_version();
  emit(j.dump(2) + "\n", c.out);
  return exit_ok;
}

int cmd_hasse(const Flags& f) {
  RunConfig c = configure(f);
  const std::string hash = config_hash(c);
  DiagramRecord rec;
  const fs::path cached = c.cache_dir.empty() ? fs::path() : fs::path(c.cache_dir) / (hash + ".json");
  if (!cached.empty() && fs::exists(cached)) {
    std::ifstream in(cached);
    rec = diagram_from_json(nlohmann::json::parse(in));
    std::cerr << "using cached diagram " << cached.string() << "\n";
  } else {
    auto t0 = std::chrono::steady_clock::now();
    LoadedCase lc = load_case(c);
    if (int rc = report_errors(lc)) return rc;
    rec.prepare_seconds = seconds_since(t0);
    auto t1 = std::chrono::steady_clock::now();
    rec.diagram = build_hasse(lc.group, lc.orbits, c.seed, hasse_options(c, lc.from_fixture));
    rec.decide_seconds = seconds_since(t1);
    rec.name = lc.name;
    rec.seed = c.seed;
    rec.config_hash = hash;
    rec.version = tool_version();
    if (!cached.empty()) {
      fs::create_directories(c.cache_dir);
      std::ofstream(cached) << diagram_json(rec).dump(2) << "\n";
    }
  }
  emit(c.format == "dot" ? diagram_dot(rec) : diagram_json(rec).dump(2) + "\n", c.out);
  std::cerr << rec.diagram.nodes.size() << " orbits, " << rec.diagram.covering_edges.size() << " covering edges"
            << (rec.diagram.exact ? "" : " (some refutations probabilistic)") << "\n";
  return exit_ok;
}

int cmd_validate(const Flags& f, std::vector<std::string> files) {
  std::uint64_t seed = f.seed.value_or(1);
  if (files.empty()) {
    RunConfig c = configure(f);
    if (!c.fixture) throw ConfigError("validate-fixtures needs fixture files or a fixture config");
    files.push_back(*c.fixture);
    seed = c.seed;
  }
  int rc = exit_ok;
  for (const auto& path : files) {
    Fixture fx;
    try {
      fx = load_fixture(path);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
    ThetaGroup G = fixture_group(fx);
    std::map<int, long> dims;
    std::size_t ok = 0;
    for (const auto& o : fx.orbits) {
      std::string err;
      try {
        auto t = triple_from_characteristic(G, fixture_characteristic(G, o), seed ^ static_cast<std::uint64_t>(o.id));
        if (!t || !verify_triple(G, *t)) {
          err = "no sl2-triple";
        } else {
          const long d = orbit_dimension(G, *t);
          dims[o.id] = d;
          if (o.dim >= 0 && d != o.dim)
            err = "dimension " + std::to_string(d) + ", table says " + std::to_string(o.dim);
          else if (!split_identity_check(G, *t))
            err = "rank B_e != rank B~_e + 1";
        }
      } catch (const std::exception& e) {
        err = e.what();
      }
      if (err.empty()) {
        ++ok;
      } else {
        std::cerr << path << ": row " << o.row << " (orbit " << o.id << "): " << err << "\n";
        rc = exit_validation;
      }
    }
    for (const auto& [a, b] : fx.figure_edges)
      if (!dims.count(a) || !dims.count(b) || dims[a] <= dims[b]) {
        std::cerr << path << ": edge " << a << " -> " << b << " does not decrease dimension\n";
        rc = exit_validation;
      }
    std::cout << fx.name << ": " << ok << "/" << fx.orbits.size() << " rows validated\n";
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closure ordering of nilpotent orbits in graded simple Lie algebras"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());
  Flags f;
  app.add_option("--config", f.config, "JSON run configuration");
  app.add_option("--seed", f.seed, "master seed");
  app.add_option("--jobs", f.jobs, "worker threads");
  app.add_option("--format", f.format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  app.add_option("--out", f.out, "output file (default stdout)");
  app.add_option("--rank-strategy", f.strategy, "auto, exact or randomized")
      ->check(CLI::IsMember({"auto", "exact", "randomized"}));
  app.add_option("--label-bound", f.label_bound, "enumerator bound on characteristic coordinates");
  app.fallthrough();

  auto* list = app.add_subcommand("list-orbits", "reconstruct and print the orbit table");
  int upper = 0, lower = 0;
  auto* decide = app.add_subcommand("decide", "is LOWER in the closure of UPPER?");
  decide->add_option("UPPER", upper)->required();
  decide->add_option("LOWER", lower)->required();
  auto* hasse = app.add_subcommand("hasse", "compute the Hasse diagram");
  std::vector<std::string> files;
  auto* validate = app.add_subcommand("validate-fixtures", "check every fixture row");
  validate->add_option("FILES", files, "fixture files (default: the config's fixture)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_bad_config;
  }
  try {
    if (*list) return cmd_list(f);
    if (*decide) return cmd_decide(f, upper, lower);
    if (*hasse) return cmd_hasse(f);
    if (*validate) return cmd_validate(f, files);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_bad_config;
  } catch (const InconsistencyError& e) {
    std::cerr << "inconsistent decisions: " << e.what() << "\n";
    return exit_inconsistent;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return exit_bad_config;
  }
  return exit_ok;
}
