#include <doctest.h>

#include <set>

#include "dtqft/computad.hpp"
#include "support.hpp"

using namespace dtqft;
using testing::minus;
using testing::plus;

namespace {

DefectData loop_data() {
  DefectData dd;
  dd.d3 = {"u"};
  dd.d2 = {"a"};
  dd.s["a"] = "u";
  dd.t["a"] = "u";
  dd.d1.push_back({"x", CyclicWord({plus("a"), minus("a")}), ""});
  return dd;
}

// (A, A') with A' followed by A^# cyclically equal to w, by brute force
std::set<std::pair<LinearWord, LinearWord>> brute_splittings(const CyclicWord& w,
                                                             const std::vector<std::string>& labels) {
  std::set<std::pair<LinearWord, LinearWord>> out;
  const int m = static_cast<int>(w.size());
  for (int k = 0; k <= m; ++k)
    for (const auto& a : all_signed_words(labels, k))
      for (const auto& a2 : all_signed_words(labels, m - k)) {
        LinearWord cat = a2;
        for (const auto& x : hash_word(a)) cat.push_back(x);
        if (CyclicWord(cat) == w) out.insert({a, a2});
      }
  return out;
}

}  // namespace

TEST_SUITE("computad") {
  TEST_CASE("splittings match brute force") {
    auto w = CyclicWord({plus("a"), minus("a")});
    auto s = splittings(w);
    auto brute = brute_splittings(w, {"a"});
    CHECK(s.size() == brute.size());
    for (const auto& p : s) CHECK(brute.count(p) == 1);

    auto w3 = CyclicWord({plus("a"), plus("b"), minus("a")});
    auto s3 = splittings(w3);
    auto b3 = brute_splittings(w3, {"a", "b"});
    CHECK(std::set<std::pair<LinearWord, LinearWord>>(s3.begin(), s3.end()) == b3);
  }

  TEST_CASE("K0 has one generator per splitting plus the D3 part") {
    auto dd = loop_data();
    auto k = build_computad(dd, 8);
    CHECK(validate_computad(k).clean());
    auto n_split = splittings(dd.d1.front().word).size();
    CHECK(k.k0.size() == n_split + dd.d3.size());
    CHECK(k.k1.size() == 2 * dd.d2.size() + dd.d3.size());
  }

  TEST_CASE("empty D1 leaves only the D3 part") {
    auto dd = loop_data();
    dd.d1.clear();
    auto k = build_computad(dd, 8);
    CHECK(k.k0.size() == 1);
    CHECK(validate_computad(k).clean());
  }

  TEST_CASE("invalid defect data is rejected") {
    auto dd = loop_data();
    dd.d3.push_back("v");
    dd.t["a"] = "v";
    dd.d1.front().word = CyclicWord({plus("a"), plus("a")});
    CHECK_THROWS_AS(build_computad(dd, 8), DefectDataError);
  }

  TEST_CASE("validator reports a broken 2-cell") {
    auto k = build_computad(loop_data(), 8);
    Computad empty;
    CHECK(validate_computad(empty).clean());
    // a source word that starts in a different 2-cell than the target word
    k.k2.push_back("w");
    k.k1.push_back("@w");
    k.sigma1["@w"] = "w";
    k.tau1["@w"] = "w";
    k.k0.push_back("broken");
    k.sigma0["broken"] = {{"@w"}, ""};
    k.tau0["broken"] = {{k1_id(plus("a"))}, ""};
    auto rep = validate_computad(k);
    REQUIRE_FALSE(rep.clean());
    bool found = false;
    for (const auto& v : rep.items) found = found || v.where.find("broken") != std::string::npos;
    CHECK(found);
  }

  TEST_CASE("allowed words") {
    auto dd = build_group_defect_data(GroupTable::cyclic(2));
    auto k = build_computad(dd, 2);
    CHECK(allowed_words(k, 0).size() == k.k2.size());
    // every singleton chains: all of K1
    CHECK(allowed_words(k, 1).size() == k.k1.size());
    for (int m = 0; m <= 3; ++m) CHECK(allowed_words(k, m) == allowed_words_brute_force(k, m));

    auto two = loop_data();
    two.d3 = {"u", "v"};
    two.t["a"] = "v";
    two.d1.clear();
    auto k2 = build_computad(two, 2);
    // a: u -> v chains with a^-1 but never with itself
    auto w2 = allowed_words(k2, 2);
    auto has = [&](const std::vector<std::string>& e) {
      for (const auto& w : w2)
        if (w.entries == e) return true;
      return false;
    };
    CHECK(has({k1_id(plus("a")), k1_id(minus("a"))}));
    CHECK(has({k1_id(minus("a")), k1_id(plus("a"))}));
    CHECK_FALSE(has({k1_id(plus("a")), k1_id(plus("a"))}));
  }

  TEST_CASE("reverse and concatenate words") {
    DefectData dd;
    dd.d3 = {"u", "v", "w"};
    dd.d2 = {"a", "b"};
    dd.s = {{"a", "u"}, {"b", "v"}};
    dd.t = {{"a", "v"}, {"b", "w"}};
    auto k = build_computad(dd, 2);
    Word ab{{k1_id(plus("a")), k1_id(minus("b"))}, ""};
    Word rev{{k1_id(plus("b")), k1_id(minus("a"))}, ""};
    CHECK(reverse_word(k, ab) == rev);
    CHECK(reverse_word(k, Word{{}, "u"}) == Word{{}, "u"});

    Word a{{k1_id(plus("a"))}, ""}, b{{k1_id(plus("b"))}, ""};
    CHECK(concat_words(k, a, b).entries == std::vector<std::string>{k1_id(plus("a")), k1_id(plus("b"))});
    CHECK(concat_words(k, a, Word{{}, "v"}) == a);
    CHECK_THROWS_AS(concat_words(k, b, a), ChainError);
  }

  TEST_CASE("computads of group data for all groups of order at most 6") {
    std::vector<GroupTable> gs;
    for (int n = 1; n <= 6; ++n) gs.push_back(GroupTable::cyclic(n));
    gs.push_back(GroupTable::product_of(GroupTable::cyclic(2), GroupTable::cyclic(2)));
    gs.push_back(GroupTable::symmetric3());
    for (const auto& g : gs) CHECK(validate_computad(build_computad(build_group_defect_data(g), 3)).clean());
  }
}
