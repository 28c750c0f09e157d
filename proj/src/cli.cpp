#include "nilclosure/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#ifndef NILCLOSURE_VERSION
#define NILCLOSURE_VERSION "0.0.0"
#endif

namespace nilclosure {

namespace fs = std::filesystem;
using nlohmann::json;

std::string tool_version() { return NILCLOSURE_VERSION; }

RankStrategy parse_strategy(const std::string& s) {
  if (s == "auto") return RankStrategy::automatic;
  if (s == "exact") return RankStrategy::exact;
  if (s == "randomized") return RankStrategy::randomized;
  throw ConfigError("unknown rank strategy '" + s + "' (auto, exact, randomized)");
}

StratumRoute parse_route(const std::string& s) {
  if (s == "heuristic") return StratumRoute::heuristic;
  if (s == "split") return StratumRoute::split;
  if (s == "full") return StratumRoute::full;
  throw ConfigError("unknown stratum route '" + s + "' (heuristic, split, full)");
}

namespace {

std::string strategy_name(RankStrategy s) {
  switch (s) {
    case RankStrategy::exact:
      return "exact";
    case RankStrategy::randomized:
      return "randomized";
    default:
      return "auto";
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string scalar_string(const Scalar& q) { return q.get_str(); }

json sparse_vector(const ThetaGroup& G, const LieAlgebra::Vec& v) {
  json out = json::array();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) {
      json root = G.algebra().is_cartan(i) ? json("h" + std::to_string(i - G.algebra().num_roots() + 1))
                                           : json(G.roots().roots[i]);
      out.push_back({{"basis", root}, {"coeff", scalar_string(v[i])}});
    }
  return out;
}

}  // namespace

RunConfig load_config(const std::string& path) {
  RunConfig c;
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw ConfigError("config " + path + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::vector<std::string> known{"fixture", "label_bound", "algebra", "grading", "simple_root_order",
                                              "seed", "jobs", "rank_strategy", "route", "term_budget", "format",
                                              "out", "include_zero_orbit", "cache_dir"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      throw ConfigError("unknown config key '" + it.key() + "'");
  const fs::path base = fs::path(path).parent_path();
  try {
    if (j.contains("fixture")) {
      fs::path p = j["fixture"].get<std::string>();
      c.fixture = (p.is_absolute() ? p : base / p).lexically_normal().string();
    }
    if (j.contains("label_bound")) c.label_bound = j["label_bound"].get<int>();
    if (j.contains("algebra")) {
      const std::string t = j["algebra"].at("type").get<std::string>();
      if (t.size() != 1) throw ConfigError("algebra type must be one letter");
      c.type = t[0];
      c.rank = j["algebra"].at("rank").get<int>();
    }
    if (j.contains("grading")) {
      const json& g = j["grading"];
      if (g.is_string() && g.get<std::string>() == "adjoint") {
        c.kac = KacLabels{};
      } else if (g.is_object() && g.contains("kac_labels")) {
        c.kac = KacLabels{g["kac_labels"].get<std::vector<int>>()};
      } else if (g.is_object() && g.contains("degrees")) {
        c.degrees = g["degrees"].get<std::vector<int>>();
      } else {
        throw ConfigError("grading must be \"adjoint\", {\"kac_labels\": [...]} or {\"degrees\": [...]}");
      }
    }
    c.simple_root_order = j.value("simple_root_order", std::vector<int>{});
    c.seed = j.value("seed", c.seed);
    c.jobs = j.value("jobs", c.jobs);
    if (j.contains("rank_strategy")) c.strategy = parse_strategy(j["rank_strategy"].get<std::string>());
    if (j.contains("route")) c.route = parse_route(j["route"].get<std::string>());
    c.term_budget = j.value("term_budget", c.term_budget);
    c.format = j.value("format", c.format);
    c.out = j.value("out", c.out);
    if (j.contains("include_zero_orbit")) c.include_zero_orbit = j["include_zero_orbit"].get<bool>();
    if (j.contains("cache_dir")) {
      fs::path p = j["cache_dir"].get<std::string>();
      c.cache_dir = (p.is_absolute() ? p : base / p).lexically_normal().string();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return c;
}

void validate_config(const RunConfig& c) {
  if (c.fixture.has_value() == c.label_bound.has_value())
    throw ConfigError("config needs exactly one orbit source: \"fixture\" or \"label_bound\"");
  if (c.fixture) {
    if (c.type || c.kac || c.degrees)
      throw ConfigError("a fixture fixes the algebra and grading; drop \"algebra\" and \"grading\"");
    if (!fs::exists(*c.fixture)) throw ConfigError("fixture " + *c.fixture + " does not exist");
  } else {
    if (*c.label_bound < 1) throw ConfigError("label_bound must be at least 1");
    if (!c.type) throw ConfigError("enumerator source needs \"algebra\"");
    if (!c.kac && !c.degrees) throw ConfigError("enumerator source needs \"grading\"");
  }
  if (c.format != "dot" && c.format != "json") throw ConfigError("format must be dot or json");
  if (c.jobs < 1) throw ConfigError("jobs must be at least 1");
}

std::string config_hash(const RunConfig& c) {
  json key;
  if (c.fixture) {
    key["fixture"] = read_file(*c.fixture);
  } else {
    key["algebra"] = std::string(1, c.type) + std::to_string(c.rank);
    if (c.kac) key["kac"] = c.kac->s;
    if (c.degrees) key["degrees"] = *c.degrees;
    key["label_bound"] = *c.label_bound;
    key["order"] = c.simple_root_order;
  }
  key["seed"] = c.seed;
  key["strategy"] = strategy_name(c.strategy);
  key["route"] = static_cast<int>(c.route);
  key["term_budget"] = c.term_budget;
  key["zero"] = c.include_zero_orbit.value_or(!c.fixture.has_value());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : key.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream ss;
  ss << std::hex << std::setw(16) << std::setfill('0') << h;
  return ss.str();
}

LoadedCase load_case(const RunConfig& c) {
  validate_config(c);
  if (c.fixture) {
    Fixture fx = load_fixture(*c.fixture);
    LoadedCase lc{fx.name, fixture_group(fx), {}, fx.figure_edges, {}, true};
    for (const auto& o : fx.orbits) {
      try {
        auto h = fixture_characteristic(lc.group, o);
        auto t = triple_from_characteristic(lc.group, h, c.seed ^ static_cast<std::uint64_t>(o.id));
        if (!t || !verify_triple(lc.group, *t)) {
          lc.errors.push_back("row " + std::to_string(o.row) + " (orbit " + std::to_string(o.id) +
                              "): no sl2-triple found");
          continue;
        }
        PreparedOrbit p = prepare_orbit(lc.group, o.id, std::move(*t));
        if (o.dim >= 0 && p.dim != o.dim) {
          lc.errors.push_back("row " + std::to_string(o.row) + " (orbit " + std::to_string(o.id) + "): dimension " +
                              std::to_string(p.dim) + ", table says " + std::to_string(o.dim));
          continue;
        }
        lc.orbits.push_back(std::move(p));
      } catch (const std::exception& e) {
        lc.errors.push_back("row " + std::to_string(o.row) + " (orbit " + std::to_string(o.id) + "): " + e.what());
      }
    }
    return lc;
  }
  auto L = std::make_shared<const LieAlgebra>(build_lie_algebra(build_root_system(c.type, c.rank)));
  Grading gr = [&] {
    if (c.degrees) return grading_from_degrees(L, *c.degrees);
    KacLabels k = *c.kac;
    if (k.s.empty()) {
      k.s.assign(static_cast<std::size_t>(c.rank) + 1, 0);
      k.s[0] = 1;
    }
    return grading_from_kac(L, k);
  }();
  LoadedCase lc{L->root_system().name(), make_theta_group(std::move(gr), c.simple_root_order), {}, {}, {}, false};
  auto chars = enumerate_characteristics(lc.group, *c.label_bound, c.seed);
  std::vector<PreparedOrbit> found;
  for (std::size_t k = 0; k < chars.size(); ++k) {
    auto t = triple_from_characteristic(lc.group, chars[k], c.seed ^ (k + 1));
    if (!t) {
      lc.errors.push_back("characteristic " + std::to_string(k) + ": triple lost on reconstruction");
      continue;
    }
    found.push_back(prepare_orbit(lc.group, 0, std::move(*t)));
  }
  std::stable_sort(found.begin(), found.end(), [&](const PreparedOrbit& a, const PreparedOrbit& b) {
    if (a.dim != b.dim) return a.dim > b.dim;
    return lc.group.theta0.coords(a.triple.h) > lc.group.theta0.coords(b.triple.h);
  });
  for (std::size_t k = 0; k < found.size(); ++k) found[k].id = static_cast<int>(k + 1);
  lc.orbits = std::move(found);
  return lc;
}

HasseOptions hasse_options(const RunConfig& c, bool from_fixture) {
  HasseOptions o;
  o.jobs = c.jobs;
  o.include_zero_orbit = c.include_zero_orbit.value_or(!from_fixture);
  o.closure.stratum.strategy = c.strategy;
  o.closure.stratum.route = c.route;
  o.closure.stratum.term_budget = c.term_budget;
  return o;
}

json orbit_table_json(const LoadedCase& lc, const RunConfig& c) {
  json rows = json::array();
  for (const auto& o : lc.orbits)
    rows.push_back({{"id", o.id}, {"characteristic", lc.group.theta0.coords(o.triple.h)}, {"dim", o.dim}});
  return {{"case", lc.name},          {"orbits", rows},           {"errors", lc.errors},
          {"seed", c.seed},           {"config_hash", config_hash(c)}, {"version", tool_version()}};
}

json decision_json(const ThetaGroup& G, const Decision& d) {
  json j{{"upper", d.upper},
         {"lower", d.lower},
         {"verdict", d.included ? "included" : "not-included"},
         {"exact", d.exact}};
  if (d.witness) {
    j["certificate"] = {{"type", "witness"},
                        {"word", d.witness->word},
                        {"wh", G.theta0.coords(d.witness->wh)},
                        {"u", sparse_vector(G, d.witness->u)},
                        {"f", sparse_vector(G, d.witness->f)}};
  } else {
    const Refutation& r = d.refutation;
    json ev = json::array();
    for (const auto& e : r.evidence)
      ev.push_back({{"method", e.method},
                    {"exact", e.exact},
                    {"s", e.s},
                    {"rank_B", e.rank_B},
                    {"rank_Btilde", e.rank_Btilde},
                    {"minor_rows", e.minor_rows},
                    {"minor_cols", e.minor_cols}});
    j["certificate"] = {{"type", "refutation"},
                        {"reason", r.reason},
                        {"visited", r.visited},
                        {"pruned", r.pruned},
                        {"cached", r.cached},
                        {"stabilizer_skipped", r.stabilizer_skipped},
                        {"empty", r.empty},
                        {"normalizer", r.normalizer},
                        {"evidence", ev}};
  }
  return j;
}

json diagram_json(const DiagramRecord& r) {
  json nodes = json::array();
  for (const auto& n : r.diagram.nodes) nodes.push_back({{"id", n.id}, {"characteristic", n.characteristic}, {"dim", n.dim}});
  return {{"case", r.name},
          {"version", r.version},
          {"config_hash", r.config_hash},
          {"seed", r.seed},
          {"exact", r.diagram.exact},
          {"decisions", r.diagram.decisions},
          {"escalations", r.diagram.escalations},
          {"nodes", nodes},
          {"covering_edges", r.diagram.covering_edges},
          {"closure_pairs", r.diagram.closure_pairs},
          {"timings", {{"prepare_s", r.prepare_seconds}, {"decide_s", r.decide_seconds}}}};
}

DiagramRecord diagram_from_json(const json& j) {
  DiagramRecord r;
  r.name = j.at("case").get<std::string>();
  r.version = j.at("version").get<std::string>();
  r.config_hash = j.at("config_hash").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.diagram.exact = j.at("exact").get<bool>();
  r.diagram.decisions = j.at("decisions").get<std::size_t>();
  r.diagram.escalations = j.at("escalations").get<std::size_t>();
  for (const auto& n : j.at("nodes"))
    r.diagram.nodes.push_back({n.at("id").get<int>(), n.at("characteristic").get<std::vector<long>>(),
                               n.at("dim").get<long>()});
  r.diagram.covering_edges = j.at("covering_edges").get<std::vector<std::pair<int, int>>>();
  r.diagram.closure_pairs = j.at("closure_pairs").get<std::vector<std::pair<int, int>>>();
  r.prepare_seconds = j.at("timings").at("prepare_s").get<double>();
  r.decide_seconds = j.at("timings").at("decide_s").get<double>();
  return r;
}

std::string diagram_dot(const DiagramRecord& r) {
  std::map<long, std::vector<int>, std::greater<>> ranks;
  for (const auto& n : r.diagram.nodes) ranks[n.dim].push_back(n.id);
  std::ostringstream os;
  os << "// " << r.name << " seed " << r.seed << " config " << r.config_hash << " version " << r.version << "\n";
  os << "digraph hasse {\n  rankdir=TB;\n  node [shape=circle];\n";
  os << "  { node [shape=plaintext];";
  for (const auto& [d, ids] : ranks) os << " \"dim" << d << "\" [label=\"" << d << "\"];";
  os << " }\n";
  if (ranks.size() > 1) {
    os << "  ";
    bool first = true;
    for (const auto& [d, ids] : ranks) {
      os << (first ? "" : " -> ") << "\"dim" << d << "\"";
      first = false;
    }
    os << " [style=invis];\n";
  }
  for (const auto& [d, ids] : ranks) {
    os << "  { rank=same; \"dim" << d << "\";";
    for (int id : ids) os << " n" << id << " [label=\"" << id << "\"];";
    os << " }\n";
  }
  for (const auto& [a, b] : r.diagram.covering_edges) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace nilclosure
