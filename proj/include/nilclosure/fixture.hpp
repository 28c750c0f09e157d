#ifndef NILCLOSURE_FIXTURE_HPP
#define NILCLOSURE_FIXTURE_HPP

#include <string>
#include <utility>
#include <vector>

#include "nilclosure/sl2.hpp"

namespace nilclosure {

/// One transcribed orbit: characteristic given by its delta0 coordinates in the fixture order.
struct FixtureOrbit {
  int id = 0;
  int row = 0;
  std::vector<long> characteristic;
  long dim = 0;
};

/// A tabulated grading: Kac diagram, delta0 order, orbit list and edges drawn in the figures as (upper, lower).
struct Fixture {
  std::string name;
  char type = 'A';
  int rank = 0;
  KacLabels labels;
  std::vector<int> simple_root_order;
  std::vector<FixtureOrbit> orbits;
  std::vector<std::pair<int, int>> figure_edges;
};

/// Throws std::runtime_error on unreadable or malformed files.
Fixture load_fixture(const std::string& path);

ThetaGroup fixture_group(const Fixture& fx);

/// Full values of an orbit's characteristic; throws if the coordinates do not give an integral element.
std::vector<long> fixture_characteristic(const ThetaGroup& G, const FixtureOrbit& o);

}  // namespace nilclosure

#endif
