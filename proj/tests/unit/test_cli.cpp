#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "cli.hpp"
#include "dtqft/io.hpp"
#include "support.hpp"

using dtqft::json;

namespace {

struct Result {
  int code = 0;
  std::string out, err;
  json doc() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = dtqft::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

Result structured(std::vector<std::string> args) {
  args.insert(args.begin(), {"--output", "structured"});
  return run(std::move(args));
}

struct EnvGuard {
  explicit EnvGuard(const char* value) { setenv(dtqft::cli::kToleranceEnv, value, 1); }
  ~EnvGuard() { unsetenv(dtqft::cli::kToleranceEnv); }
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("structured output has the standard fields") {
    auto r = structured({"invariant", "--category", "fibonacci", "--bordism", "s3_boundary_delta4"});
    REQUIRE(r.code == dtqft::cli::kOk);
    auto j = r.doc();
    for (auto key : {"command", "inputs", "config", "results", "residuals"}) CHECK(j.contains(key));
    CHECK(j["command"] == "invariant");
    CHECK(j["config"]["tolerance"].get<double>() == 1e-6);
    CHECK(j["config"]["max_word_length"] == 8);
    CHECK(j["results"]["value"][0].get<double>() == doctest::Approx(0.27639320225).epsilon(1e-9));
  }

  TEST_CASE("coherence defaults and failures") {
    auto ok = structured({"validate-category", "vec_z3"});
    CHECK(ok.code == dtqft::cli::kOk);
    CHECK(ok.doc()["config"]["tolerance"].get<double>() == 1e-9);
    CHECK(run({"validate-category", "fibonacci_perturbed"}).code == dtqft::cli::kComputationError);
  }

  TEST_CASE("parse errors exit with 2") {
    CHECK(run({"validate-category", "no_such_category"}).code == dtqft::cli::kParseError);
    CHECK(run({"no-such-command"}).code == dtqft::cli::kParseError);
    CHECK(run({"invariant", "--category", "vec_z2"}).code == dtqft::cli::kParseError);
    CHECK(run({"--output", "xml", "validate-category", "vec_z2"}).code == dtqft::cli::kParseError);
  }

  TEST_CASE("computation errors exit with 1") {
    // pinned-simple labels are rejected by the state sum
    auto r = run({"invariant", "--category", "vec_z2", "--bordism", "s2xs1_gfiber"});
    CHECK(r.code == dtqft::cli::kComputationError);
    CHECK_FALSE(r.err.empty());
  }

  TEST_CASE("tolerance: flag, then environment, then default") {
    {
      EnvGuard env("1e-3");
      auto r = structured({"validate-category", "vec_z2"});
      CHECK(r.doc()["config"]["tolerance"].get<double>() == 1e-3);
      auto f = structured({"--tolerance", "1e-4", "validate-category", "vec_z2"});
      CHECK(f.doc()["config"]["tolerance"].get<double>() == 1e-4);
    }
    {
      EnvGuard env("not-a-number");
      CHECK(run({"validate-category", "vec_z2"}).code == dtqft::cli::kParseError);
    }
    // a loose enough tolerance accepts the perturbed category
    CHECK(run({"--tolerance", "1", "validate-category", "fibonacci_perturbed"}).code == dtqft::cli::kOk);
  }

  TEST_CASE("subcommands") {
    CHECK(run({"validate-defect-data", "z2", "--max-word-length", "3"}).code == 0);
    CHECK(run({"validate-bordism", "s2xs1", "--defect-data", "z2"}).code == 0);

    auto hd = structured(
        {"hom-dim", "--engine", "triv", "--category", "vec_z2xz2_graded", "--source", "vertex_g", "--target", "vertex_g"});
    REQUIRE(hd.code == 0);
    CHECK(hd.doc()["results"]["dim"] == 2);

    auto ss = structured({"state-space", "--category", "vec_z3", "--surface", "torus"});
    REQUIRE(ss.code == 0);
    CHECK(ss.doc()["results"]["rank"] == 9);

    auto gc = structured({"gray-check", "--engine", "statesum", "--category", "vec_z2_graded", "--defect-data", "z2",
                          "--sample", "4"});
    CHECK(gc.code == 0);

    auto ed = structured({"eval-diagram", "--engine", "triv", "--category", "vec_z2", "--defect-data", "z2",
                          "--movie", "crossing_roundtrip"});
    REQUIRE(ed.code == 0);
    CHECK(ed.doc()["residuals"]["distance_to_identity"].get<double>() == 0.0);

    auto rf = structured({"refine", "--bordism", "s3_boundary_delta4", "--move", "face_star", "--seed", "3",
                          "--category", "vec_z2"});
    CHECK(rf.code == 0);
  }

  TEST_CASE("output is deterministic") {
    std::vector<std::string> args{"refine", "--bordism", "s2xs1", "--move", "cell_cone", "--seed", "11", "--category",
                                  "fibonacci"};
    CHECK(structured(args).out == structured(args).out);
    auto text = run({"invariant", "--category", "vec_z2", "--bordism", "s3_boundary_delta4"});
    CHECK(text.code == 0);
    CHECK(text.out.find("0.5") != std::string::npos);
  }
}
