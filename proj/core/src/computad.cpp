#include "dtqft/computad.hpp"

#include <algorithm>
#include <set>

namespace dtqft {

std::string k1_id(const SignedLabel& x) { return x.label + ":" + sign_char(x.sign); }

std::string Computad::word_source(const Word& w) const {
  return w.entries.empty() ? w.anchor : sigma1.at(w.entries.front());
}

std::string Computad::word_target(const Word& w) const {
  return w.entries.empty() ? w.anchor : tau1.at(w.entries.back());
}

ValidationReport validate_computad(const Computad& k) {
  ValidationReport rep;
  std::set<std::string> k1(k.k1.begin(), k.k1.end()), k2(k.k2.begin(), k.k2.end());
  auto word_ok = [&](const Word& w, const std::string& where) {
    if (w.entries.empty()) {
      if (!k2.count(w.anchor)) {
        rep.add(where, "empty word without valid k2 anchor");
        return false;
      }
      return true;
    }
    for (const auto& e : w.entries)
      if (!k1.count(e)) {
        rep.add(where, "unknown k1 entry " + e);
        return false;
      }
    for (std::size_t j = 0; j + 1 < w.entries.size(); ++j)
      if (k.sigma1.at(w.entries[j + 1]) != k.tau1.at(w.entries[j])) {
        rep.add(where, "word does not chain at " + std::to_string(j + 1));
        return false;
      }
    return true;
  };
  for (const auto& x : k.k1)
    if (!k.sigma1.count(x) || !k.tau1.count(x) || !k2.count(k.sigma1.at(x)) ||
        !k2.count(k.tau1.at(x)))
      rep.add("k1:" + x, "sigma1/tau1 not total into k2");
  if (!rep.clean()) return rep;
  for (const auto& x : k.k0) {
    if (!k.sigma0.count(x) || !k.tau0.count(x)) {
      rep.add("k0:" + x, "sigma0/tau0 missing");
      continue;
    }
    const auto& a = k.sigma0.at(x);
    const auto& b = k.tau0.at(x);
    if (!word_ok(a, "k0:" + x + ":sigma0") || !word_ok(b, "k0:" + x + ":tau0")) continue;
    if (k.word_source(a) != k.word_source(b))
      rep.add("k0:" + x, "sigma1 sigma0 != sigma1 tau0");
    if (k.word_target(a) != k.word_target(b))
      rep.add("k0:" + x, "tau1 tau0 != tau1 sigma0");
  }
  return rep;
}

std::vector<Word> allowed_words(const Computad& k, int m) {
  std::vector<Word> out;
  if (m <= 0) {
    for (const auto& u : k.k2) out.push_back({{}, u});
    return out;
  }
  // extend chains one entry at a time
  std::vector<Word> cur;
  for (const auto& x : k.k1) cur.push_back({{x}, ""});
  for (int len = 1; len < m; ++len) {
    std::vector<Word> next;
    for (const auto& w : cur)
      for (const auto& x : k.k1)
        if (k.sigma1.at(x) == k.tau1.at(w.entries.back())) {
          Word v = w;
          v.entries.push_back(x);
          next.push_back(std::move(v));
        }
    cur = std::move(next);
  }
  return cur;
}

std::vector<Word> allowed_words_brute_force(const Computad& k, int m) {
  std::vector<Word> out;
  if (m <= 0) return allowed_words(k, 0);
  const std::size_t n = k.k1.size();
  if (n == 0) return out;
  std::vector<std::size_t> idx(m, 0);
  while (true) {
    Word w;
    for (auto i : idx) w.entries.push_back(k.k1[i]);
    bool ok = true;
    for (int j = 0; j + 1 < m; ++j)
      ok = ok && k.sigma1.at(w.entries[j + 1]) == k.tau1.at(w.entries[j]);
    if (ok) out.push_back(std::move(w));
    int p = m - 1;
    while (p >= 0 && ++idx[p] == n) idx[p--] = 0;
    if (p < 0) break;
  }
  return out;
}

Word reverse_word(const Computad& k, const Word& w) {
  Word out{{}, w.anchor};
  for (auto it = w.entries.rbegin(); it != w.entries.rend(); ++it) {
    auto f = k.k1_flip.find(*it);
    out.entries.push_back(f == k.k1_flip.end() ? *it : f->second);
  }
  return out;
}

Word concat_words(const Computad& k, const Word& a, const Word& b) {
  if (k.word_target(a) != k.word_source(b))
    throw ChainError("concat: target " + k.word_target(a) + " != source " + k.word_source(b));
  if (a.entries.empty()) return b;
  if (b.entries.empty()) return a;
  Word out = a;
  out.entries.insert(out.entries.end(), b.entries.begin(), b.entries.end());
  return out;
}

std::vector<std::pair<LinearWord, LinearWord>> splittings(const CyclicWord& w) {
  std::set<std::pair<LinearWord, LinearWord>> found;
  const auto& e = w.entries();
  const std::size_t m = e.size();
  for (std::size_t r = 0; r < std::max<std::size_t>(m, 1); ++r) {
    LinearWord rot = rotate_left(e, r);
    for (std::size_t cut = 0; cut <= m; ++cut) {
      LinearWord a_out(rot.begin(), rot.begin() + static_cast<long>(cut));
      LinearWord a_hash(rot.begin() + static_cast<long>(cut), rot.end());
      LinearWord a_in = hash_word(a_hash);
      if (a_in.empty() && a_out.empty()) continue;
      found.insert({a_in, a_out});
    }
  }
  return {found.begin(), found.end()};
}

Computad build_computad(const DefectData& dd, int max_word_len) {
  // D1 is only needed up to the requested length
  DefectData bounded = dd;
  bounded.max_word_len = std::min(dd.max_word_len, max_word_len);
  auto rep = validate_defect_data(bounded);
  if (!rep.clean())
    throw DefectDataError("invalid defect data: " + rep.items.front().where + ": " +
                          rep.items.front().what);
  Computad k;
  k.k2 = dd.d3;
  for (const auto& u : dd.d3) {
    k.k1.push_back("@" + u);
    k.sigma1["@" + u] = u;
    k.tau1["@" + u] = u;
  }
  for (const auto& x : dd.d2)
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      SignedLabel sl{x, s};
      auto id = k1_id(sl);
      k.k1.push_back(id);
      k.sigma1[id] = signed_endpoint(dd, sl, Endpoint::Source);
      k.tau1[id] = signed_endpoint(dd, sl, Endpoint::Target);
      k.k1_flip[id] = k1_id(flipped(sl));
    }
  // the D_3 part of K_0: identity 2-cells on empty words
  for (const auto& u : dd.d3) {
    auto id = "@" + u;
    k.k0.push_back(id);
    k.sigma0[id] = {{}, u};
    k.tau0[id] = {{}, u};
  }
  auto to_word = [&](const LinearWord& w, const std::string& anchor) {
    Word out{{}, w.empty() ? anchor : ""};
    for (const auto& x : w) out.entries.push_back(k1_id(x));
    return out;
  };
  for (const auto& e : dd.enumerate_d1(max_word_len)) {
    if (e.word.empty()) continue;
    for (const auto& [a_in, a_out] : splittings(e.word)) {
      if (static_cast<int>(a_in.size() + a_out.size()) > max_word_len) continue;
      // anchors for empty sides come from the other side's endpoints
      const auto& other = a_in.empty() ? a_out : a_in;
      std::string anchor = signed_endpoint(dd, other.front(), Endpoint::Source);
      auto id = e.id + "|" + to_string(a_in) + "|" + to_string(a_out);
      k.k0.push_back(id);
      k.sigma0[id] = to_word(a_in, anchor);
      k.tau0[id] = to_word(a_out, anchor);
    }
  }
  return k;
}

}  // namespace dtqft
