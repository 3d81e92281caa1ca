#include <doctest.h>

#include <set>

#include "dtqft/defect_data.hpp"
#include "support.hpp"

using namespace dtqft;
using testing::minus;
using testing::plus;

namespace {

DefectData two_point(const LinearWord& w) {
  DefectData dd;
  dd.d3 = {"u", "v"};
  dd.d2 = {"a"};
  dd.s["a"] = "u";
  dd.t["a"] = "v";
  dd.d1.push_back({"x", CyclicWord(w), ""});
  return dd;
}

std::vector<GroupTable> small_groups() {
  std::vector<GroupTable> gs;
  for (int n = 1; n <= 6; ++n) gs.push_back(GroupTable::cyclic(n));
  gs.push_back(GroupTable::product_of(GroupTable::cyclic(2), GroupTable::cyclic(2)));
  gs.push_back(GroupTable::symmetric3());
  return gs;
}

}  // namespace

TEST_SUITE("defect_data") {
  TEST_CASE("signed labels parse and print") {
    CHECK(parse_signed_label("g+") == plus("g"));
    CHECK(parse_signed_label("g-") == minus("g"));
    CHECK(parse_signed_label("g") == plus("g"));
    CHECK(to_string(minus("ab")) == "ab-");
    CHECK(hash_word({plus("a"), plus("b"), plus("c")}) == LinearWord{minus("c"), minus("b"), minus("a")});
    CHECK(hash_word(LinearWord{}).empty());
  }

  TEST_CASE("cyclic words compare by canonical rotation") {
    LinearWord w{plus("b"), minus("a"), plus("a")};
    CyclicWord c(w);
    for (std::size_t k = 0; k < w.size(); ++k) CHECK(CyclicWord(rotate_left(w, k)) == c);
    CHECK(c.entries().front() == plus("a"));
    CHECK(CyclicWord::canonical_rotation(rotate_left(w, CyclicWord::canonical_offset(w))) == c.entries());
    CHECK_FALSE(CyclicWord({plus("a"), plus("b")}) == CyclicWord({plus("b"), minus("a")}));
  }

  TEST_CASE("signed endpoints swap with the sign") {
    auto dd = two_point({plus("a"), minus("a")});
    CHECK(signed_endpoint(dd, plus("a"), Endpoint::Source) == "u");
    CHECK(signed_endpoint(dd, minus("a"), Endpoint::Source) == "v");
    CHECK(signed_endpoint(dd, minus("a"), Endpoint::Target) == "u");
    CHECK_THROWS_AS(signed_endpoint(dd, plus("zz"), Endpoint::Source), LabelError);
  }

  TEST_CASE("chain condition around a D1 word") {
    auto bad = two_point({plus("a"), plus("a")});
    auto rep = validate_defect_data(bad);
    CHECK_FALSE(rep.clean());
    CHECK(chain_violations(bad, {plus("a"), plus("a")}, true).size() == 2);
    CHECK(validate_defect_data(two_point({plus("a"), minus("a")})).clean());
  }

  TEST_CASE("group defect data for all groups of order at most 6") {
    for (const auto& g : small_groups()) {
      auto dd = build_group_defect_data(g);
      dd.max_word_len = 4;
      CHECK(validate_defect_data(dd).clean());
      CHECK(dd.d3.size() == 1);
      CHECK(dd.d2.size() == g.order());
      CHECK(dd.neutral_label() == g.name(g.identity()));
      // membership is the product condition, invariant under rotation
      for (const auto& w : all_signed_words(dd.d2, 3)) {
        bool expect = g.word_product(w) == g.identity();
        CHECK(dd.accepts_word(CyclicWord(w)) == expect);
        CHECK(dd.accepts_word(CyclicWord(rotate_left(w, 1))) == expect);
      }
    }
  }

  TEST_CASE("Z/2 enumerator counts words with trivial product") {
    auto dd = build_group_defect_data(GroupTable::cyclic(2));
    // canonical cyclic words of length <= 2 with product 1
    auto d1 = dd.enumerate_d1(2);
    for (const auto& e : d1) CHECK(dd.accepts_word(e.word));
    std::size_t brute = 0;
    std::set<CyclicWord> seen;
    for (int m = 1; m <= 2; ++m)
      for (const auto& w : all_signed_words(dd.d2, m))
        if (dd.group->word_product(w) == dd.group->identity() && seen.insert(CyclicWord(w)).second) ++brute;
    std::size_t nonempty = 0;
    for (const auto& e : d1) nonempty += e.word.empty() ? 0 : 1;
    CHECK(nonempty == brute);
  }

  TEST_CASE("group tables are checked") {
    CHECK_THROWS_AS(GroupTable({"1", "g"}, {{0, 1}, {1, 1}}), GroupError);
    CHECK_FALSE(validate_group_table({"1", "g"}, {{0, 1}, {1, 1}}).clean());
    auto s3 = GroupTable::symmetric3();
    CHECK(s3.order() == 6);
    bool abelian = true;
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) abelian = abelian && s3.mul(a, b) == s3.mul(b, a);
    CHECK_FALSE(abelian);
  }

  TEST_CASE("RT defect data: exactly one positive sign") {
    auto dd = build_rt_defect_data({"x", "y"});
    CHECK(validate_defect_data(dd).clean());
    const auto& star = dd.d2.front();
    CHECK(dd.accepts("x", CyclicWord({{star, Sign::Plus}, {star, Sign::Minus}})));
    CHECK_FALSE(dd.accepts("x", CyclicWord({{star, Sign::Plus}, {star, Sign::Plus}})));
    CHECK_FALSE(dd.accepts("x", CyclicWord({{star, Sign::Minus}})));
  }

  TEST_CASE("bundled defect data files load") {
    for (auto n : {"z2", "z3", "trivial", "rt_xy"}) CHECK(validate_defect_data(testing::defect(n)).clean());
  }
}
