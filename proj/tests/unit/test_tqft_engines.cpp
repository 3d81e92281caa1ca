#include <doctest.h>

#include "dtqft/tqft_engines.hpp"
#include "flat_connections.hpp"
#include "frozen.hpp"
#include "support.hpp"

using namespace dtqft;

namespace {

double dist(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return 1e300;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_SUITE("tqft_engines") {
  TEST_CASE("S3 against the brute-force oracle") {
    auto s3 = testing::bordism("s3_boundary_delta4");
    CHECK(std::abs(closed_invariant(testing::category("fibonacci"), s3) - oracle::frozen::kFibonacciS3) <= 1e-6);
    CHECK(std::abs(closed_invariant(testing::category("vec_z2"), s3) - oracle::frozen::kVecZ2S3) <= 1e-9);
    CHECK(std::abs(closed_invariant(testing::category("vec_z3"), s3) - oracle::frozen::kVecZ3S3) <= 1e-9);
  }

  TEST_CASE("Vec_G invariants count flat connections") {
    auto s3 = testing::bordism("s3_boundary_delta4");
    auto s2s1 = testing::bordism("s2xs1");
    auto p_s3 = oracle::presentation_of(boundary_delta4());
    CHECK(oracle::flat_invariant(p_s3, GroupTable::cyclic(2)) == doctest::Approx(0.5));
    CHECK(oracle::flat_invariant(oracle::presentation_of(sphere_times_circle(3)), GroupTable::cyclic(3)) ==
          doctest::Approx(1.0));
    CHECK(oracle::flat_invariant(oracle::torus3(), GroupTable::cyclic(2)) == doctest::Approx(4.0));
    for (auto [name, n] : {std::pair{"vec_z2", 2}, std::pair{"vec_z3", 3}}) {
      INFO(std::string(name));
      auto cat = testing::category(name);
      auto g = GroupTable::cyclic(n);
      CHECK(std::abs(closed_invariant(cat, s3) - oracle::flat_invariant(p_s3, g)) <= 1e-9);
      CHECK(std::abs(closed_invariant(cat, s2s1) - oracle::flat_invariant(oracle::sphere2_times_circle(), g)) <= 1e-9);
    }
  }

  TEST_CASE("graded categories and the g fibre") {
    auto gf = testing::bordism("s2xs1_gfiber");
    CHECK(std::abs(closed_invariant(testing::category("vec_z2_graded"), gf) - 1.0) <= 1e-9);
    CHECK(std::abs(closed_invariant(testing::category("vec_z3_graded"), gf) - 1.0) <= 1e-9);
    CHECK(std::abs(closed_invariant(testing::category("vec_z2_graded"), testing::bordism("s3_boundary_delta4")) -
                   1.0) <= 1e-9);
  }

  TEST_CASE("the state sum rejects labels that pin a simple") {
    CHECK(colour_domain(testing::category("vec_z2"), "1").size() == 2);
    CHECK(colour_domain(testing::category("vec_z2"), "g").size() == 1);
    CHECK(colour_domain(testing::category("vec_z2_graded"), "g").size() == 1);
    CHECK_THROWS_AS(closed_invariant(testing::category("vec_z2"), testing::bordism("s2xs1_gfiber")), LabelError);
    CHECK_THROWS_AS(state_space(testing::category("vec_z2"), testing::surface("sphere_circle_g")), LabelError);
  }

  TEST_CASE("projectors are idempotent; spheres have rank one") {
    for (auto cname : {"vec_z2", "vec_z3", "fibonacci", "vec_z2_graded", "vec_z3_graded"}) {
      auto cat = testing::category(cname);
      for (auto sname : {"sphere", "sphere_circle_g", "sphere_theta", "sphere_theta_g", "torus"}) {
        INFO((std::string(cname) + " " + sname));
        StateSpace st;
        try {
          st = state_space(cat, testing::surface(sname));
        } catch (const LabelError&) {
          continue;  // pinned labels on an ungraded category
        }
        CHECK(st.idempotence_residual <= 1e-6);
        if (std::string(sname) != "torus" && st.raw.total > 0) CHECK(st.rank == 1);
      }
    }
  }

  TEST_CASE("torus state spaces") {
    auto t = testing::surface("torus");
    CHECK(state_space(testing::category("vec_z2"), t).rank == 4);
    CHECK(state_space(testing::category("vec_z3"), t).rank == 9);
    CHECK(state_space(testing::category("fibonacci"), t).rank == 4);
    CHECK(state_space(testing::category("vec_z2_graded"), t).rank == 1);
  }

  TEST_CASE("state sum is functorial under gluing") {
    auto cat = testing::category("fibonacci");
    auto th = theta_sphere({"1", "1", "1"});
    auto cyl = cylinder(th, "1");
    auto m = statesum_map(cat, cyl);
    CHECK(dist(m * m, m) <= 1e-9);
    CHECK(dist(statesum_map(cat, glue(cyl, 1, cyl, 0)), m * m) <= 1e-9);
    auto st = state_space(cat, th);
    CHECK(dist(m, st.projector) <= 1e-9);
    CHECK(std::abs(closed_invariant(cat, self_glue(cyl, 1, 0)) - cplx(st.rank)) <= 1e-9);
  }

  TEST_CASE("trivial model gluing is exact") {
    for (auto cname : {"vec_z2", "vec_z3", "fibonacci"}) {
      INFO(std::string(cname));
      auto cat = testing::category(cname);
      auto th = theta_sphere({"1", "1", "1"});
      auto pc = product_cylinder(th);
      auto m = triv_map(cat, pc);
      const int dim = triv_state_space_dim(cat, th);
      CHECK(m.rows() == dim);
      // group categories have exact F-symbols
      const double tol = std::string(cname) == "fibonacci" ? 1e-12 : 0.0;
      CHECK(dist(m, Eigen::MatrixXcd::Identity(dim, dim)) <= tol);
      CHECK(dist(triv_map(cat, glue(pc, 1, pc, 0)), m * m) <= 1e-12);
      CHECK(std::abs(triv_invariant(cat, self_glue(pc, 1, 0)) - cplx(dim)) <= 1e-12);
    }
  }

  TEST_CASE("raw spaces") {
    auto cat = testing::category("vec_z2");
    auto raw = raw_space(cat, theta_sphere({"1", "1", "1"}));
    // colourings with g an even number of times
    CHECK(raw.colourings.size() == 4);
    CHECK(raw.total == 4);
    CHECK(raw.find(raw.colourings[2]) == 2);
    CHECK(raw.find({0, 0}) == -1);
  }
}
