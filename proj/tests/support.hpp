#pragma once
#include <string>

#include "dtqft/fusion.hpp"
#include "dtqft/io.hpp"
#include "dtqft/strata.hpp"

namespace testing {

inline std::string data_path(const std::string& rel) { return std::string(DTQFT_TEST_DATA) + "/" + rel; }

inline dtqft::FusionCategory category(const std::string& name) {
  return dtqft::load_category(data_path("categories/" + name + ".json"));
}
inline dtqft::DefectData defect(const std::string& name) {
  return dtqft::load_defect_data(data_path("defect/" + name + ".json"));
}
inline dtqft::StratifiedBordism bordism(const std::string& name) {
  return dtqft::bordism_from_json(dtqft::read_json_file(data_path("bordisms/" + name + ".json")));
}
inline dtqft::DecoratedSurface surface(const std::string& name) {
  return dtqft::surface_from_json(dtqft::read_json_file(data_path("surfaces/" + name + ".json")));
}

inline dtqft::SignedLabel plus(const std::string& x) { return {x, dtqft::Sign::Plus}; }
inline dtqft::SignedLabel minus(const std::string& x) { return {x, dtqft::Sign::Minus}; }

// one vertex with two loops
inline dtqft::DecoratedSurface torus(const std::string& label) {
  dtqft::DecoratedSurface s;
  s.add_vertex();
  s.add_edge(label, 0, 0);
  s.add_edge(label, 0, 0);
  s.rotation[0] = {{0, true}, {1, true}, {0, false}, {1, false}};
  s.default_regions(label);
  return s;
}

}  // namespace testing
