#include <doctest.h>

#include <cmath>

#include "dtqft/fusion.hpp"
#include "support.hpp"

using namespace dtqft;

namespace {

const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;

SignedSimpleWord repeat(int s, int m) { return SignedSimpleWord(m, SignedSimple{s, Sign::Plus}); }

ColoredSphereGraph theta(int a, int b, int c) {
  ColoredSphereGraph g;
  g.edges = {{0, 1, a}, {0, 1, b}, {0, 1, c}};
  g.rotation = {{{0, true}, {1, true}, {2, true}}, {{2, false}, {1, false}, {0, false}}};
  return g;
}

ColoredSphereGraph tetrahedron(int c) {
  ColoredSphereGraph g;
  // e01, e02, e03, e12, e13, e23
  g.edges = {{0, 1, c}, {0, 2, c}, {0, 3, c}, {1, 2, c}, {1, 3, c}, {2, 3, c}};
  g.rotation = {{{0, true}, {1, true}, {2, true}},
                {{0, false}, {4, true}, {3, true}},
                {{1, false}, {3, false}, {5, true}},
                {{2, false}, {5, false}, {4, false}}};
  return g;
}

}  // namespace

TEST_SUITE("fusion") {
  TEST_CASE("bundled categories are coherent") {
    for (auto n : {"vec_z2", "vec_z3", "vec_z2_graded", "vec_z3_graded", "vec_z2xz2_graded", "fibonacci"}) {
      auto c = check_category(testing::category(n), 1e-9);
      INFO(std::string(n));
      CHECK(c.report.clean());
      CHECK(c.pentagon_residual <= 1e-9);
    }
  }

  TEST_CASE("perturbed Fibonacci fails the pentagon") {
    auto c = check_category(testing::category("fibonacci_perturbed"), 1e-9);
    CHECK_FALSE(c.report.clean());
    CHECK(c.pentagon_residual > 1e-9);
  }

  TEST_CASE("hom dimensions") {
    auto z2 = testing::category("vec_z2");
    int g = z2.index("g");
    CHECK(hom_dimension(z2, repeat(g, 2)) == 1);
    CHECK(hom_dimension(z2, repeat(g, 1)) == 0);
    CHECK(hom_dimension(z2, {}) == 1);

    auto fib = testing::category("fibonacci");
    int t = fib.index("t");
    CHECK(hom_dimension(fib, repeat(t, 1)) == 0);
    CHECK(hom_dimension(fib, repeat(t, 2)) == 1);
    CHECK(hom_dimension(fib, repeat(t, 3)) == 1);
    CHECK(hom_dimension(fib, repeat(t, 4)) == 2);
    CHECK(hom_dimension(fib, repeat(t, 5)) == 3);
    CHECK_THROWS_AS(fib.index("nope"), LabelError);
  }

  TEST_CASE("hom dimension is invariant under rotation and dualisation") {
    auto fib = testing::category("fibonacci");
    SignedSimpleWord w{{1, Sign::Plus}, {1, Sign::Minus}, {0, Sign::Plus}, {1, Sign::Plus}};
    for (std::size_t k = 0; k < w.size(); ++k) CHECK(hom_dimension(fib, rotate_left(w, k)) == hom_dimension(fib, w));
    CHECK(hom_dimension(fib, hash_word(w)) == hom_dimension(fib, w));
  }

  TEST_CASE("neutral global dimension") {
    CHECK(global_dimension_neutral(testing::category("vec_z2_graded")) == doctest::Approx(1.0));
    CHECK(global_dimension_neutral(testing::category("vec_z2")) == doctest::Approx(2.0));
    CHECK(global_dimension_neutral(testing::category("vec_z3")) == doctest::Approx(3.0));
    CHECK(global_dimension_neutral(testing::category("fibonacci")) == doctest::Approx(1.0 + kPhi * kPhi).epsilon(1e-12));
  }

  TEST_CASE("hom bases") {
    auto fib = testing::category("fibonacci");
    auto b = hom_basis(fib, repeat(1, 4));
    CHECK(b.dim() == 2);
    for (const auto& tr : b.trees) CHECK(tr.size() == 3);
    CHECK(hom_basis(fib, repeat(1, 1)).dim() == 0);
    CHECK(hom_basis(testing::category("vec_z2"), repeat(1, 3)).trees.empty());
  }

  TEST_CASE("edge pairings") {
    auto fib = testing::category("fibonacci");
    auto p2 = edge_pairing(fib, repeat(1, 2));
    REQUIRE(p2.ev.size() == 1);
    CHECK(std::abs(p2.ev[0][0] - cplx(kPhi)) < 1e-12);
    CHECK(std::abs(p2.coev[0][0] - cplx(1.0 / kPhi)) < 1e-12);

    auto p4 = edge_pairing(fib, repeat(1, 4));
    REQUIRE(p4.ev.size() == 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        cplx prod = 0;
        for (int k = 0; k < 2; ++k) prod += p4.ev[i][k] * p4.coev[k][j];
        CHECK(std::abs(prod - cplx(i == j ? 1.0 : 0.0)) < 1e-12);
      }
    CHECK(std::abs(p4.ev[0][0] - cplx(kPhi * kPhi)) < 1e-12);
    CHECK(std::abs(p4.ev[0][1]) < 1e-12);
  }

  TEST_CASE("a free loop evaluates to the quantum dimension") {
    auto fib = testing::category("fibonacci");
    for (int i = 0; i < fib.n(); ++i) {
      ColoredSphereGraph g;
      g.free_loops = {i};
      auto v = evaluate_sphere_graph(fib, g);
      REQUIRE(v.values.size() == 1);
      CHECK(std::abs(v.values[0] - cplx(fib.qdim(i))) < 1e-12);
    }
  }

  TEST_CASE("theta graphs") {
    auto z2 = testing::category("vec_z2");
    int g = z2.index("g");
    auto th = theta(g, g, z2.unit);
    CHECK(th.euler_defect() == 0);
    auto v = evaluate_sphere_graph(z2, th);
    REQUIRE(v.values.size() == 1);
    CHECK(std::abs(v.values[0] - 1.0) < 1e-12);

    auto fib = testing::category("fibonacci");
    auto vt = evaluate_sphere_graph(fib, theta(1, 1, 1));
    REQUIRE(vt.values.size() == 1);
    CHECK(std::abs(vt.values[0]) > 1e-6);
  }

  TEST_CASE("Fibonacci tetrahedron") {
    auto fib = testing::category("fibonacci");
    auto tet = tetrahedron(1);
    CHECK(tet.euler_defect() == 0);
    auto v = evaluate_sphere_graph(fib, tet);
    REQUIRE(v.values.size() == 1);
    CHECK(std::abs(v.values[0] - cplx(-kPhi)) < 1e-12);
  }
}
