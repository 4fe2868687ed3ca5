#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chenholo/ainfty.hpp"

namespace chenholo {

// Input bundle for the verification suites. Rationals are serialized as
// "num/den" strings so the round trip is exact; the serializer is
// deterministic (sorted keys, canonical polynomial representation).
struct Scenario {
  struct ChainDesc {
    std::vector<int> system_indices;  // S_0 .. S_n as indices into systems
    std::vector<HomForm> xis;
  };
  // Second trivialization of the matching system: alpha = g^{-1} beta g - g^{-1} dg.
  struct GaugeData {
    HomForm g;
    HomForm beta_alpha;
  };

  std::string name;
  int m = 1;
  bool cylinder = true;
  std::vector<Superconnection> systems;
  std::vector<ChainDesc> chains;
  std::vector<GaugeData> gauges;  // empty, or aligned with systems
  std::vector<MultiPoly> homotopy;  // optional map R^q x [0,1] -> R^m
  int homotopy_q = 0;
  std::optional<uint64_t> seed;

  void validate() const;
  // Materializes chain k against the scenario's systems.
  TensorChain chain(int k) const;
};

// Per-piece serializers (also used by tests and the C API).
nlohmann::json rational_to_json(const Rational& r);
Rational rational_from_json(const nlohmann::json& j);
nlohmann::json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const nlohmann::json& j);
nlohmann::json space_to_json(const GradedSpace& v);
GradedSpace space_from_json(const nlohmann::json& j);
nlohmann::json flag_to_json(const Flag& f);
Flag flag_from_json(const nlohmann::json& j, const GradedSpace& v);
nlohmann::json homform_to_json(const HomForm& w);
HomForm homform_from_json(const nlohmann::json& j);
nlohmann::json superconnection_to_json(const Superconnection& s);
Superconnection superconnection_from_json(const nlohmann::json& j);

nlohmann::json scenario_to_json(const Scenario& sc);
Scenario scenario_from_json(const nlohmann::json& j);
std::string scenario_to_string(const Scenario& sc);
Scenario scenario_from_string(const std::string& text);

// Size bounds for random scenarios.
struct Profile {
  int m = 1;    // chart dimension (<= 3)
  int n = 1;    // chain length (<= 3)
  int nu = 2;   // flag layers per system
  int deg = 1;  // polynomial degree bound (<= 3)
};

// Reproducible random scenario: every system exactly flat on the gauge orbit
// of a constant square-zero twist, one chain of length n, gauge data
// recorded. nu < 2 degenerates to the all-zero scenario.
Scenario generate_scenario(uint64_t seed, const Profile& profile);

}  // namespace chenholo
