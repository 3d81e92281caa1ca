#include <doctest.h>

#include "dtqft/gray.hpp"
#include "dtqft/io.hpp"
#include "dtqft/tqft_engines.hpp"
#include "support.hpp"

using namespace dtqft;
using testing::minus;
using testing::plus;

namespace {

struct Fixture {
  FusionCategory cat;
  DefectData dd;
  GrayModel model;
  Fixture(const std::string& category, const std::string& defect, Engine e)
      : cat(testing::category(category)), dd(testing::defect(defect)) {
    model = {e, &cat, &dd};
  }
};

TwoMorphismDiagram vertex_gg() { return single_layer(vertex_event("", {plus("g")}, {plus("g")})); }

TwoMorphismDiagram diagram(const std::string& name) {
  return diagram_from_json(read_json_file(testing::data_path("diagrams/" + name + ".json")));
}

Movie movie(const std::string& name) {
  return movie_from_json(read_json_file(testing::data_path("diagrams/" + name + ".movie.json")));
}

bool is_identity(const GrayModel& m, const ThreeMorphism& phi, double tol) {
  return distance(phi, identity3(m, phi.source)) <= tol;
}

}  // namespace

TEST_SUITE("gray") {
  TEST_CASE("hash dual of 1-morphisms") {
    auto a = make_word({plus("a1"), plus("a2"), plus("a3")});
    CHECK(hash_dual(a).entries == LinearWord{minus("a3"), minus("a2"), minus("a1")});
    CHECK(hash_dual(hash_dual(a)) == a);
    CHECK(hash_dual(make_word({})).entries.empty());
  }

  TEST_CASE("identities compose strictly") {
    auto a = make_word({plus("g")}), b = make_word({minus("g"), plus("g")});
    CHECK(box_compose(identity_diagram(a), identity_diagram(b)) == identity_diagram(box_compose(a, b)));
    auto v = vertex_gg();
    CHECK(otimes_compose(v, identity_diagram(v.source)) == v);
    CHECK(otimes_compose(identity_diagram(v.target), v) == v);
  }

  TEST_CASE("dagger duals") {
    auto id = identity_diagram(make_word({plus("g"), minus("g")}));
    CHECK(dagger_dual(id) == id);
    for (const auto& x : {vertex_gg(), fold(make_word({plus("g")})), diagram("zigzag_g"), diagram("bubble_g")}) {
      CHECK(dagger_dual(dagger_dual(x)) == x);
      CHECK(dagger_dual(x).source == x.target);
      CHECK(dagger_dual(x).layers.size() == x.layers.size());
    }
  }

  TEST_CASE("folds") {
    auto empty = make_word({});
    CHECK(fold(empty) == identity_diagram(empty));
    auto a = make_word({plus("g")}), b = make_word({minus("g")});
    auto lhs = fold(box_compose(a, b));
    auto inner = whisker_right(whisker_left(a, fold(b)), hash_dual(a));
    CHECK(lhs == otimes_compose(inner, fold(a)));
    CHECK(validate_diagram_structure(diagram("zigzag_g")).clean());
  }

  TEST_CASE("glue_sphere") {
    auto z2 = testing::defect("z2");
    for (int k = 0; k <= 3; ++k) {
      auto w = make_word(LinearWord(k, plus("g")));
      auto id = identity_diagram(w);
      auto s = glue_sphere(id, id);
      CHECK(s.num_vertices() == 0);
      CHECK(s.num_free_circles() == k);
      CHECK(s.all_spheres());
    }
    CHECK_THROWS_AS(glue_sphere(vertex_gg(), identity_diagram(make_word({plus("g"), plus("g")}))), ParallelError);

    // every parallel pair of small diagrams glues to spheres
    auto samples = sample_two_morphisms(z2, 2);
    int pairs = 0;
    for (const auto& x : samples)
      for (const auto& y : samples)
        if (x.source == y.source && x.target == y.target) {
          auto s = glue_sphere(x, y);
          CHECK(s.all_spheres());
          CHECK(s.num_vertices() == x.num_vertices() + y.num_vertices());
          ++pairs;
        }
    CHECK(pairs > 50);
  }

  TEST_CASE("hom space dimensions") {
    Fixture z2("vec_z2", "z2", Engine::Triv);
    auto v = vertex_gg();
    CHECK(hom_space(z2.model, v, v).dim == 1);
    Fixture z2z2("vec_z2xz2_graded", "z2", Engine::Triv);
    CHECK(hom_space(z2z2.model, v, v).dim == 2);
    Fixture ss("vec_z2_graded", "z2", Engine::StateSum);
    CHECK(hom_space(ss.model, v, v).dim == 1);
    CHECK(hom_space(ss.model, diagram("zigzag_g"), diagram("identity_g")).dim == 1);
    CHECK_THROWS_AS(hom_space(z2.model, v, diagram("fold_g")), ParallelError);
  }

  TEST_CASE("triv composition is the matrix product") {
    Fixture f("vec_z2xz2_graded", "z2", Engine::Triv);
    auto v = vertex_gg();
    auto b0 = hom_basis_element(f.model, v, v, 0), b1 = hom_basis_element(f.model, v, v, 1);
    auto id = identity3(f.model, v);
    CHECK(distance(circ_compose(b0, id), b0) == 0.0);
    CHECK(distance(circ_compose(id, b1), b1) == 0.0);
    auto lhs = circ_compose(circ_compose(b0, b1), b1);
    auto rhs = circ_compose(b0, circ_compose(b1, b1));
    CHECK(distance(lhs, rhs) == 0.0);
    CHECK(distance(add(b0, scale(b0, -1.0)), scale(b0, 0.0)) == 0.0);
  }

  TEST_CASE("tensorators") {
    for (auto cname : {"vec_z2", "vec_z2xz2_graded"}) {
      Fixture f(cname, "z2", Engine::Triv);
      auto v = vertex_gg();
      auto s = tensorator(f.model, v, v), si = tensorator_inverse(f.model, v, v);
      CHECK(is_identity(f.model, circ_compose(si, s), 0.0));
      CHECK(is_identity(f.model, circ_compose(s, si), 0.0));
      CHECK(is_identity(f.model, tensorator(f.model, v, identity_diagram(make_word({plus("g")}))), 0.0));
    }
    Fixture ss("vec_z2_graded", "z2", Engine::StateSum);
    auto s = tensorator(ss.model, vertex_gg(), vertex_gg());
    CHECK(std::abs(s.scalar - 1.0) <= 1e-9);
  }

  TEST_CASE("triangulators are invertible") {
    auto a = make_word({plus("g"), minus("g")});
    for (auto e : {Engine::Triv, Engine::StateSum}) {
      Fixture f(e == Engine::Triv ? "vec_z2" : "vec_z2_graded", "z2", e);
      auto t = triangulator(f.model, a), ti = triangulator_inverse(f.model, a);
      CHECK(is_identity(f.model, circ_compose(t, ti), 1e-9));
      CHECK(is_identity(f.model, circ_compose(ti, t), 1e-9));
      if (e == Engine::StateSum) CHECK(std::abs(t.scalar - 1.0) <= 1e-9);
    }
  }

  TEST_CASE("movies") {
    Fixture f("vec_z2", "z2", Engine::Triv);
    auto v = vertex_gg();

    Movie single{v, {}};
    MovieEvent ins;
    ins.kind = MovieEventKind::Insert;
    ins.at = 0;
    ins.count = 1;
    ins.layers = v.layers;
    single.events.push_back(ins);
    CHECK(movie_frames(single).size() == 2);
    CHECK(distance(evaluate_3d_diagram(f.model, single), hom_basis_element(f.model, v, v, 0)) == 0.0);

    auto rt = evaluate_3d_diagram(f.model, movie("crossing_roundtrip"));
    CHECK(is_identity(f.model, rt, 0.0));

    Fixture ss("vec_z2_graded", "z2", Engine::StateSum);
    auto st = evaluate_3d_diagram(ss.model, movie("straighten_g"));
    CHECK(std::abs(st.scalar - 1.0) <= 1e-9);
    auto mv = movie("straighten_g");
    CHECK(movie_to_json(movie_from_json(movie_to_json(mv))) == movie_to_json(mv));
  }

  TEST_CASE("axiom check on a sample") {
    Fixture f("vec_z2", "z2", Engine::Triv);
    GrayCheckOptions opt;
    opt.sample_size = 6;
    opt.tolerance = 0.0;
    auto rep = check_gray_axioms(f.model, opt);
    CHECK(rep.instances > 0);
    CHECK(rep.clean());
    CHECK_FALSE(rep.per_axiom.empty());

    Fixture ss("vec_z2_graded", "z2", Engine::StateSum);
    opt.tolerance = 1e-9;
    CHECK(check_gray_axioms(ss.model, opt).clean());
  }

  TEST_CASE("a wrong tensorator is detected") {
    // the flip differs from the identity only on blocks of dimension >= 2
    Fixture f("fibonacci", "trivial", Engine::Triv);
    GrayCheckOptions opt;
    opt.sample_size = 6;
    opt.tolerance = 1e-9;
    opt.wrong_tensorator = true;
    auto rep = check_gray_axioms(f.model, opt);
    CHECK_FALSE(rep.clean());
    opt.wrong_tensorator = false;
    CHECK(check_gray_axioms(f.model, opt).clean());
  }

  TEST_CASE("statesum 1-morphism invariant is the group product") {
    Fixture f("vec_z3_graded", "z3", Engine::StateSum);
    CHECK(one_morphism_invariant(f.model, make_word({plus("g"), plus("g")})) == "g2");
    CHECK(one_morphism_invariant(f.model, make_word({plus("g"), minus("g")})) == "1");
    CHECK(one_morphism_invariant(f.model, make_word({minus("g")})) == "g2");
    CHECK(one_morphism_invariant(f.model, make_word({})) == "1");
  }

  TEST_CASE("diagram JSON round trip") {
    for (auto name : {"identity_g", "vertex_g", "zigzag_g", "fold_g", "bubble_g"}) {
      auto d = diagram(name);
      CHECK(diagram_from_json(diagram_to_json(d)) == d);
      CHECK(validate_diagram(testing::defect("z2"), d).clean());
    }
  }
}
