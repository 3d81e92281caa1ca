// Regenerates the bundled bordisms, surfaces, diagrams and movies.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "dtqft/gray.hpp"
#include "dtqft/io.hpp"
#include "dtqft/strata.hpp"

using namespace dtqft;
namespace fs = std::filesystem;

namespace {

void write(const fs::path& p, const json& j) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << j.dump(1) << "\n";
  std::cout << p.string() << "\n";
}

// one vertex with two loops: the torus as a single square
DecoratedSurface torus(const std::string& label) {
  DecoratedSurface s;
  int v = s.add_vertex();
  int a = s.add_edge(label, v, v);
  int b = s.add_edge(label, v, v);
  s.rotation[v] = {{a, true}, {b, true}, {a, false}, {b, false}};
  s.default_regions(label);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  fs::path root = argc > 1 ? fs::path(argv[1]) : fs::path("data");
  const std::string nt = "1";

  write(root / "bordisms/s3_boundary_delta4.json",
        bordism_to_json(triangulation_bordism(boundary_delta4(), nt)));
  write(root / "bordisms/s2xs1.json", bordism_to_json(circle_product(bare_sphere(), nt)));
  write(root / "bordisms/s2xs1_gfiber.json", bordism_to_json(sphere_fiber_product("g", nt)));

  write(root / "surfaces/sphere.json", surface_to_json(bare_sphere()));
  write(root / "surfaces/sphere_circle_g.json", surface_to_json(circle_sphere("g")));
  write(root / "surfaces/sphere_theta.json", surface_to_json(theta_sphere({nt, nt, nt})));
  write(root / "surfaces/sphere_theta_g.json", surface_to_json(theta_sphere({"g", "g", nt})));
  write(root / "surfaces/torus.json", surface_to_json(torus(nt)));

  const SignedLabel g{"g", Sign::Plus};
  const auto a = make_word({g});
  auto v = single_layer(vertex_event("", {g}, {g}));
  write(root / "diagrams/identity_g.json", diagram_to_json(identity_diagram(a)));
  write(root / "diagrams/vertex_g.json", diagram_to_json(v));
  write(root / "diagrams/zigzag_g.json", diagram_to_json(zigzag(a)));
  write(root / "diagrams/fold_g.json", diagram_to_json(fold(a)));
  write(root / "diagrams/bubble_g.json",
        diagram_to_json(otimes_compose(ev_fold(hash_dual(a)), fold(a))));

  Movie straighten{zigzag(a), {}};
  MovieEvent tau;
  tau.kind = MovieEventKind::Triangulator;
  tau.word = a;
  straighten.events.push_back(tau);
  write(root / "diagrams/straighten_g.movie.json", movie_to_json(straighten));

  Movie cross{box_compose(v, v), {}};
  MovieEvent c;
  c.kind = MovieEventKind::Crossing;
  cross.events = {c, c};
  write(root / "diagrams/crossing_roundtrip.movie.json", movie_to_json(cross));
  return 0;
}
