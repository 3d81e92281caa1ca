#include "dtqft/defect_data.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace dtqft {

std::string to_string(const SignedLabel& x) { return x.label + sign_char(x.sign); }

SignedLabel parse_signed_label(const std::string& s) {
  if (s.empty()) throw ParseError("empty signed label");
  char last = s.back();
  if (last == '+' || last == '-') {
    if (s.size() == 1) throw ParseError("signed label without name: " + s);
    return {s.substr(0, s.size() - 1), last == '+' ? Sign::Plus : Sign::Minus};
  }
  return {s, Sign::Plus};
}

LinearWord hash_word(const LinearWord& w) {
  LinearWord out(w.rbegin(), w.rend());
  for (auto& x : out) x.sign = flip(x.sign);
  return out;
}

std::string to_string(const LinearWord& w) {
  std::string out = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ",";
    out += to_string(w[i]);
  }
  return out + "]";
}

LinearWord rotate_left(const LinearWord& w, std::size_t k) {
  if (w.empty()) return w;
  k %= w.size();
  LinearWord out(w.begin() + static_cast<long>(k), w.end());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<long>(k));
  return out;
}

std::size_t CyclicWord::canonical_offset(const LinearWord& w) {
  const std::size_t m = w.size();
  std::size_t best = 0;
  for (std::size_t k = 1; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      const auto& a = w[(k + i) % m];
      const auto& b = w[(best + i) % m];
      if (a == b) continue;
      if (a < b) best = k;
      break;
    }
  }
  return best;
}

LinearWord CyclicWord::canonical_rotation(const LinearWord& w) {
  return rotate_left(w, canonical_offset(w));
}

CyclicWord::CyclicWord(LinearWord entries) : entries_(canonical_rotation(entries)) {}

// ---------------------------------------------------------------- groups

ValidationReport validate_group_table(const std::vector<std::string>& elements,
                                      const std::vector<std::vector<int>>& product) {
  ValidationReport rep;
  const int n = static_cast<int>(elements.size());
  if (n == 0) {
    rep.add("group", "empty element list");
    return rep;
  }
  if (std::set<std::string>(elements.begin(), elements.end()).size() != elements.size())
    rep.add("group", "duplicate element names");
  if (static_cast<int>(product.size()) != n) {
    rep.add("group", "product table has wrong number of rows");
    return rep;
  }
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(product[a].size()) != n) {
      rep.add("group", "row " + elements[a] + " has wrong length");
      return rep;
    }
    for (int b = 0; b < n; ++b)
      if (product[a][b] < 0 || product[a][b] >= n) {
        rep.add("group", "entry out of range at " + elements[a] + "*" + elements[b]);
        return rep;
      }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (product[product[a][b]][c] != product[a][product[b][c]])
          rep.add("associativity", elements[a] + "," + elements[b] + "," + elements[c]);
  int e = -1;
  for (int a = 0; a < n && e < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < n; ++b) ok = ok && product[a][b] == b && product[b][a] == b;
    if (ok) e = a;
  }
  if (e < 0) {
    rep.add("identity", "no two-sided identity");
    return rep;
  }
  for (int a = 0; a < n; ++a) {
    bool found = false;
    for (int b = 0; b < n; ++b) found = found || (product[a][b] == e && product[b][a] == e);
    if (!found) rep.add("inverse", "no inverse for " + elements[a]);
  }
  return rep;
}

GroupTable::GroupTable(std::vector<std::string> elements, std::vector<std::vector<int>> product)
    : elements_(std::move(elements)), product_(std::move(product)) {
  auto rep = validate_group_table(elements_, product_);
  if (!rep.clean())
    throw GroupError("invalid group table: " + rep.items.front().where + ": " +
                     rep.items.front().what);
  const int n = static_cast<int>(elements_.size());
  for (int a = 0; a < n; ++a)
    if (product_[a][a] == a) identity_ = a;
  inverse_.assign(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (product_[a][b] == identity_) inverse_[a] = b;
}

GroupTable GroupTable::cyclic(int n, const std::string& gen) {
  if (n < 1) throw GroupError("cyclic group order must be positive");
  std::vector<std::string> names;
  for (int k = 0; k < n; ++k) {
    if (k == 0) names.push_back("1");
    else if (k == 1) names.push_back(gen);
    else names.push_back(gen + std::to_string(k));
  }
  std::vector<std::vector<int>> p(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) p[a][b] = (a + b) % n;
  return GroupTable(names, p);
}

GroupTable GroupTable::product_of(const GroupTable& a, const GroupTable& b) {
  const int na = static_cast<int>(a.order()), nb = static_cast<int>(b.order());
  std::vector<std::string> names;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) names.push_back("(" + a.name(i) + "," + b.name(j) + ")");
  std::vector<std::vector<int>> p(na * nb, std::vector<int>(na * nb));
  for (int i = 0; i < na * nb; ++i)
    for (int j = 0; j < na * nb; ++j)
      p[i][j] = a.mul(i / nb, j / nb) * nb + b.mul(i % nb, j % nb);
  return GroupTable(names, p);
}

GroupTable GroupTable::symmetric3() {
  // permutations of {0,1,2} in a fixed order
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> q{0, 1, 2};
  do perms.push_back(q);
  while (std::next_permutation(q.begin(), q.end()));
  std::vector<std::string> names;
  for (const auto& p : perms) names.push_back(p == std::array<int, 3>{0, 1, 2} ? "1"
      : "s" + std::to_string(p[0]) + std::to_string(p[1]) + std::to_string(p[2]));
  std::vector<std::vector<int>> tab(6, std::vector<int>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      std::array<int, 3> c{};
      for (int k = 0; k < 3; ++k) c[k] = perms[i][perms[j][k]];
      tab[i][j] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return GroupTable(names, tab);
}

int GroupTable::index(const std::string& name) const {
  auto it = std::find(elements_.begin(), elements_.end(), name);
  if (it == elements_.end()) throw LabelError("unknown group element: " + name);
  return static_cast<int>(it - elements_.begin());
}

bool GroupTable::contains(const std::string& name) const {
  return std::find(elements_.begin(), elements_.end(), name) != elements_.end();
}

int GroupTable::word_product(const LinearWord& w) const {
  int acc = identity_;
  for (const auto& x : w) {
    int g = index(x.label);
    acc = mul(acc, x.sign == Sign::Plus ? g : inv(g));
  }
  return acc;
}

// ---------------------------------------------------------------- defect data

bool DefectData::has_d3(const std::string& u) const {
  return std::find(d3.begin(), d3.end(), u) != d3.end();
}

std::string DefectData::neutral_label() const {
  if (group) return group->name(group->identity());
  throw DefectDataError("defect data has no neutral label");
}

bool DefectData::accepts_word(const CyclicWord& w) const {
  for (const auto& x : w.entries())
    if (!has_d2(x.label)) return false;
  switch (family) {
    case DefectFamily::Group:
      if (w.empty()) return true;
      return group->word_product(w.entries()) == group->identity();
    case DefectFamily::RT: {
      auto plus = std::count_if(w.entries().begin(), w.entries().end(),
                                [](const SignedLabel& x) { return x.sign == Sign::Plus; });
      return plus == 1;
    }
    case DefectFamily::Explicit:
      for (const auto& e : d1)
        if (e.word == w) return true;
      return false;
  }
  return false;
}

bool DefectData::accepts(const std::string& d1_id, const CyclicWord& w) const {
  if (family == DefectFamily::Explicit) {
    for (const auto& e : d1)
      if (e.id == d1_id) return e.word == w;
    return false;
  }
  if (family == DefectFamily::RT && !d1_id.empty()) {
    auto obj = d1_id.substr(0, d1_id.find(':'));
    if (std::find(rt_objects.begin(), rt_objects.end(), obj) == rt_objects.end()) return false;
  }
  return accepts_word(w);
}

std::vector<LinearWord> all_signed_words(const std::vector<std::string>& labels, int m) {
  std::vector<SignedLabel> letters;
  for (const auto& l : labels) {
    letters.push_back({l, Sign::Plus});
    letters.push_back({l, Sign::Minus});
  }
  std::vector<LinearWord> out;
  if (m == 0) {
    out.push_back({});
    return out;
  }
  if (letters.empty()) return out;
  std::vector<std::size_t> idx(m, 0);
  while (true) {
    LinearWord w;
    for (auto i : idx) w.push_back(letters[i]);
    out.push_back(std::move(w));
    int p = m - 1;
    while (p >= 0 && ++idx[p] == letters.size()) idx[p--] = 0;
    if (p < 0) break;
  }
  return out;
}

std::vector<D1Element> DefectData::enumerate_d1(int max_len) const {
  if (family == DefectFamily::Explicit) return d1;
  std::vector<D1Element> out;
  if (family == DefectFamily::RT) {
    for (const auto& obj : rt_objects)
      for (int m = 1; m <= max_len; ++m) {
        LinearWord w{{"*", Sign::Plus}};
        for (int k = 1; k < m; ++k) w.push_back({"*", Sign::Minus});
        out.push_back({obj + ":" + std::to_string(m), CyclicWord(w), ""});
      }
    return out;
  }
  for (int m = 1; m <= max_len; ++m)
    for (const auto& w : all_signed_words(d2, m)) {
      if (CyclicWord::canonical_offset(w) != 0) continue;
      if (CyclicWord::canonical_rotation(w) != w) continue;
      CyclicWord cw(w);
      if (accepts_word(cw)) out.push_back({to_string(w), cw, ""});
    }
  return out;
}

std::string signed_endpoint(const DefectData& dd, const SignedLabel& x, Endpoint which) {
  auto si = dd.s.find(x.label);
  auto ti = dd.t.find(x.label);
  if (si == dd.s.end() || ti == dd.t.end()) throw LabelError("unknown D_2 label: " + x.label);
  bool want_s = (which == Endpoint::Source) == (x.sign == Sign::Plus);
  return want_s ? si->second : ti->second;
}

std::vector<std::size_t> chain_violations(const DefectData& dd, const LinearWord& w,
                                          bool cyclic) {
  std::vector<std::size_t> bad;
  const std::size_t m = w.size();
  const std::size_t last = cyclic ? m : (m ? m - 1 : 0);
  for (std::size_t i = 0; i < last; ++i) {
    const auto& a = w[i];
    const auto& b = w[(i + 1) % m];
    if (signed_endpoint(dd, b, Endpoint::Source) != signed_endpoint(dd, a, Endpoint::Target))
      bad.push_back(i + 1);
  }
  return bad;
}

ValidationReport validate_defect_data(const DefectData& dd) {
  ValidationReport rep;
  for (const auto& x : dd.d2) {
    if (!dd.s.count(x) || !dd.t.count(x)) {
      rep.add("d2:" + x, "source/target not total");
      continue;
    }
    if (!dd.has_d3(dd.s.at(x)) || !dd.has_d3(dd.t.at(x)))
      rep.add("d2:" + x, "source/target not in d3");
  }
  if (!rep.clean()) return rep;
  for (const auto& e : dd.enumerate_d1()) {
    if (e.word.empty()) {
      if (!dd.has_d3(e.d3)) rep.add("d1:" + e.id, "empty word with unknown d3 anchor");
      continue;
    }
    bool labels_ok = true;
    for (const auto& x : e.word.entries())
      if (!dd.has_d2(x.label)) {
        rep.add("d1:" + e.id, "unknown label " + x.label);
        labels_ok = false;
      }
    if (!labels_ok) continue;
    for (auto i : chain_violations(dd, e.word.entries(), true))
      rep.add("d1:" + e.id, "chain condition fails at i=" + std::to_string(i));
  }
  return rep;
}

DefectData build_group_defect_data(const GroupTable& g) {
  DefectData dd;
  dd.family = DefectFamily::Group;
  dd.group = g;
  dd.d3 = {"*"};
  dd.d2 = g.elements();
  for (const auto& x : dd.d2) {
    dd.s[x] = "*";
    dd.t[x] = "*";
  }
  return dd;
}

DefectData build_rt_defect_data(const std::vector<std::string>& object_labels) {
  if (object_labels.empty()) throw DefectDataError("rt defect data needs object labels");
  DefectData dd;
  dd.family = DefectFamily::RT;
  dd.rt_objects = object_labels;
  dd.d3 = {"*"};
  dd.d2 = {"*"};
  dd.s["*"] = "*";
  dd.t["*"] = "*";
  return dd;
}

}  // namespace dtqft
