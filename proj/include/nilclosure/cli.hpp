#ifndef NILCLOSURE_CLI_HPP
#define NILCLOSURE_CLI_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "nilclosure/closure.hpp"
#include "nilclosure/fixture.hpp"

namespace nilclosure {

/// Exit codes of the command-line tool.
enum ExitCode : int { exit_ok = 0, exit_validation = 2, exit_inconsistent = 3, exit_bad_config = 4 };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a run depends on. Exactly one orbit source: a fixture file or the enumerator bound.
struct RunConfig {
  std::optional<std::string> fixture;  // resolved against the config file's directory
  std::optional<int> label_bound;
  char type = 0;
  int rank = 0;
  std::optional<KacLabels> kac;
  std::optional<std::vector<int>> degrees;
  std::vector<int> simple_root_order;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  RankStrategy strategy = RankStrategy::automatic;
  StratumRoute route = StratumRoute::heuristic;
  std::size_t term_budget = StratumOptions{}.term_budget;
  std::string format = "json";
  std::string out;
  std::optional<bool> include_zero_orbit;
  std::string cache_dir;  // empty: no diagram cache
};

/// Reads a JSON config; throws ConfigError.
RunConfig load_config(const std::string& path);
RankStrategy parse_strategy(const std::string& s);
StratumRoute parse_route(const std::string& s);
/// Throws ConfigError unless the config names exactly one orbit source and a usable grading.
void validate_config(const RunConfig& c);

/// FNV-1a over the algebra, grading, orbit source (file contents for fixtures) and seed; 16 hex digits.
std::string config_hash(const RunConfig& c);

/// Orbits of a configured case, reconstructed and prepared.
struct LoadedCase {
  std::string name;
  ThetaGroup group;
  std::vector<PreparedOrbit> orbits;
  std::vector<std::pair<int, int>> figure_edges;
  std::vector<std::string> errors;  // per-row reconstruction failures
  bool from_fixture = false;
};

LoadedCase load_case(const RunConfig& c);

HasseOptions hasse_options(const RunConfig& c, bool from_fixture);

nlohmann::json orbit_table_json(const LoadedCase& lc, const RunConfig& c);
nlohmann::json decision_json(const ThetaGroup& G, const Decision& d);

/// Diagram plus run metadata, as written to disk.
struct DiagramRecord {
  std::string name;
  HasseDiagram diagram;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::string version;
  double prepare_seconds = 0, decide_seconds = 0;
};

nlohmann::json diagram_json(const DiagramRecord& r);
DiagramRecord diagram_from_json(const nlohmann::json& j);
/// Nodes grouped by dimension, largest first, with a dimension scale on the left.
std::string diagram_dot(const DiagramRecord& r);

std::string tool_version();

}  // namespace nilclosure

#endif
