#include "nilclosure/fixture.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace nilclosure {

Fixture load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture " + path);
  Fixture fx;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    fx.name = j.value("case", path);
    const std::string t = j.at("algebra").at("type").get<std::string>();
    if (t.size() != 1) throw std::runtime_error("bad algebra type");
    fx.type = t[0];
    fx.rank = j.at("algebra").at("rank").get<int>();
    fx.labels.s = j.at("kac_labels").get<std::vector<int>>();
    fx.simple_root_order = j.value("simple_root_order", std::vector<int>{});
    for (const auto& o : j.at("orbits")) {
      FixtureOrbit fo;
      fo.id = o.at("id").get<int>();
      fo.row = o.value("row", fo.id);
      fo.characteristic = o.at("characteristic").get<std::vector<long>>();
      fo.dim = o.value("dim", -1L);
      fx.orbits.push_back(std::move(fo));
    }
    for (const auto& e : j.value("figure_edges", nlohmann::json::array()))
      fx.figure_edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed fixture " + path + ": " + e.what());
  }
  return fx;
}

ThetaGroup fixture_group(const Fixture& fx) {
  auto L = std::make_shared<const LieAlgebra>(build_lie_algebra(build_root_system(fx.type, fx.rank)));
  return make_theta_group(grading_from_kac(L, fx.labels), fx.simple_root_order);
}

std::vector<long> fixture_characteristic(const ThetaGroup& G, const FixtureOrbit& o) {
  if (o.characteristic.size() != G.theta0.rank())
    throw std::runtime_error("orbit " + std::to_string(o.id) + ": characteristic has wrong length");
  auto full = G.theta0.full_from_coords(o.characteristic);
  if (!full) throw std::runtime_error("orbit " + std::to_string(o.id) + ": characteristic is not integral");
  return *full;
}

}  // namespace nilclosure
