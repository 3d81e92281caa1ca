#include <doctest.h>

#include <random>
#include <set>

#include "dtqft/io.hpp"
#include "dtqft/strata.hpp"
#include "support.hpp"

using namespace dtqft;

namespace {

int chi(const StratifiedBordism& b) {
  return static_cast<int>(b.s0.size()) - static_cast<int>(b.s1.size()) + static_cast<int>(b.s2.size()) -
         static_cast<int>(b.s3.size());
}

DefectData z2() { return testing::defect("z2"); }

}  // namespace

TEST_SUITE("strata") {
  TEST_CASE("sphere surfaces") {
    auto s = bare_sphere();
    CHECK(validate_surface_structure(s).clean());
    CHECK(s.euler_characteristic() == 2);
    CHECK(s.all_spheres());
    CHECK_FALSE(s.is_fine());

    auto th = theta_sphere({"1", "1", "1"});
    CHECK(th.num_vertices() == 2);
    CHECK(th.num_edges() == 3);
    CHECK(th.map_faces().size() == 3);
    CHECK(th.euler_characteristic() == 2);
    CHECK(th.is_fine());
    CHECK(validate_surface(z2(), th).clean());

    auto c = circle_sphere("g");
    CHECK(c.num_free_circles() == 1);
    CHECK(c.all_spheres());
    CHECK_FALSE(c.is_fine());
  }

  TEST_CASE("torus") {
    auto t = testing::torus("1");
    CHECK(t.euler_characteristic() == 0);
    CHECK(t.num_components() == 1);
    CHECK_FALSE(t.all_spheres());
    CHECK(t.map_faces().size() == 1);
    auto bundled = testing::surface("torus");
    CHECK(bundled.euler_characteristic() == 0);
  }

  TEST_CASE("surface validation uses the defect data") {
    auto th = theta_sphere({"1", "g", "g"});
    CHECK(validate_surface(z2(), th).clean());
    // g g g has product g
    CHECK_FALSE(validate_surface(z2(), theta_sphere({"g", "g", "g"})).clean());
    CHECK_FALSE(validate_surface(z2(), theta_sphere({"1", "1", "h"})).clean());
  }

  TEST_CASE("fine surfaces") {
    for (auto s : {bare_sphere(), circle_sphere("g"), testing::surface("sphere_circle_g")}) {
      auto f = fine_surface(s, "1");
      CHECK(f.is_fine());
      CHECK(f.euler_characteristic() == s.euler_characteristic());
      CHECK(validate_surface(z2(), f).clean());
      // identity on fine input
      CHECK(surface_signature(fine_surface(f, "1")) == surface_signature(f));
    }
  }

  TEST_CASE("orientation reversal is an involution") {
    for (auto name : {"sphere_theta", "sphere_theta_g", "torus"}) {
      auto s = testing::surface(name);
      CHECK(surface_signature(reversed(reversed(s))) == surface_signature(s));
      CHECK(reversed(s).euler_characteristic() == s.euler_characteristic());
    }
  }

  TEST_CASE("boundary of the 4-simplex") {
    auto b = triangulation_bordism(boundary_delta4(), "1");
    CHECK(b.closed_manifold());
    CHECK(b.s3.size() == 5);
    CHECK(b.s2.size() == 10);
    CHECK(b.s1.size() == 10);
    CHECK(b.s0.size() == 5);
    CHECK(chi(b) == 0);
    CHECK(validate_bordism(z2(), b).clean());
    CHECK(check_fine(b).clean());
    // each edge lies in three triangles
    for (int e = 0; e < static_cast<int>(b.s1.size()); ++e) CHECK(edge_link(b, e).word.size() == 3);
    // each vertex link is the boundary of a tetrahedron
    for (int v : b.interior_vertices()) {
      std::vector<int> es;
      auto g = vertex_link_graph(b, v, &es);
      CHECK(g.num_vertices() == 4);
      CHECK(g.num_edges() == 6);
      CHECK(g.euler_characteristic() == 2);
      CHECK(es.size() == 6);
    }
  }

  TEST_CASE("flat oracle presentation of triangulations") {
    CHECK(boundary_delta4().tets.size() == 5);
    auto t = sphere_times_circle(3);
    CHECK(t.tets.size() == 36);
  }

  TEST_CASE("bundled bordisms") {
    for (auto name : {"s3_boundary_delta4", "s2xs1", "s2xs1_gfiber"}) {
      INFO(std::string(name));
      auto b = testing::bordism(name);
      CHECK(b.closed_manifold());
      CHECK(validate_bordism(z2(), b).clean());
      CHECK(check_fine(b).clean());
      CHECK(chi(b) == 0);
    }
  }

  TEST_CASE("cylinders and fills") {
    auto th = theta_sphere({"1", "g", "g"});
    auto pc = product_cylinder(th);
    REQUIRE(pc.boundary.size() == 2);
    CHECK(pc.interior_vertices().empty());
    CHECK(validate_bordism(z2(), pc).clean());

    auto cyl = cylinder(th, "1");
    CHECK(validate_bordism(z2(), cyl).clean());
    CHECK(check_fine(cyl).clean());

    auto fill = linear_fill(th);
    REQUIRE(fill.boundary.size() == 1);
    CHECK_FALSE(fill.boundary[0].incoming);
    CHECK(validate_bordism(z2(), fill).clean());

    auto glued = glue(cyl, 1, cyl, 0);
    CHECK(glued.boundary.size() == 2);
    CHECK(validate_bordism(z2(), glued).clean());
    auto closed = self_glue(cyl, 1, 0);
    CHECK(closed.closed_manifold());
    CHECK(chi(closed) == 0);
  }

  TEST_CASE("refinement keeps the bordism fine and closed") {
    std::mt19937 rng(7);
    auto b = testing::bordism("s3_boundary_delta4");
    for (auto mv : {RefineMove::EdgeSubdivide, RefineMove::FaceStar, RefineMove::CellCone}) {
      INFO(to_string(mv));
      CHECK(parse_refine_move(to_string(mv)) == mv);
      auto sites = refine_sites(b, mv);
      REQUIRE_FALSE(sites.empty());
      for (int trial = 0; trial < 5; ++trial) {
        int site = sites[std::uniform_int_distribution<std::size_t>(0, sites.size() - 1)(rng)];
        auto r = refine(b, mv, site, "1");
        CHECK(validate_bordism(z2(), r).clean());
        CHECK(check_fine(r).clean());
        CHECK(chi(r) == 0);
        CHECK(r.s0.size() + r.s1.size() + r.s2.size() + r.s3.size() >
              b.s0.size() + b.s1.size() + b.s2.size() + b.s3.size());
      }
    }
    CHECK_THROWS(parse_refine_move("nope"));
  }

  TEST_CASE("bordism and surface JSON round trip") {
    auto b = testing::bordism("s2xs1_gfiber");
    auto j = bordism_to_json(b);
    CHECK(bordism_to_json(bordism_from_json(j)) == j);
    auto s = testing::surface("sphere_theta_g");
    CHECK(surface_signature(surface_from_json(surface_to_json(s))) == surface_signature(s));
  }
}
