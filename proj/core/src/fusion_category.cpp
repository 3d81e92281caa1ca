#include <algorithm>
#include <cmath>

#include "dtqft/fusion.hpp"

namespace dtqft {

void FusionCategory::init_tables() {
  const std::size_t k = simples.size();
  fusion_.assign(k * k * k, 0);
  channels_.assign(k * k, {});
  if (pivotal.size() != k) pivotal.assign(k, 1.0);
}

void FusionCategory::set_fusion(int a, int b, int c) {
  auto& slot = fusion_[idx3(a, b, c)];
  if (slot) throw ParseError("fusion multiplicity > 1 is not supported");
  slot = 1;
  auto& ch = channels_[a * n() + b];
  ch.insert(std::upper_bound(ch.begin(), ch.end(), c), c);
}

int FusionCategory::index(const std::string& id) const {
  for (int i = 0; i < n(); ++i)
    if (simples[i].id == id) return i;
  throw LabelError("unknown simple: " + id);
}

std::vector<int> FusionCategory::simples_of_grade(int g) const {
  std::vector<int> out;
  for (int i = 0; i < n(); ++i)
    if (simples[i].grade == g) out.push_back(i);
  return out;
}

bool FusionCategory::admissible(const FIndex& t) const {
  auto [a, b, c, d, e, f] = t;
  return N(a, b, e) && N(e, c, d) && N(b, c, f) && N(a, f, d);
}

cplx FusionCategory::F(const FIndex& t) const {
  if (!admissible(t)) return 0.0;
  auto it = fsym_.find(t);
  return it == fsym_.end() ? default_F : it->second;
}

SignedSimpleWord hash_word(const SignedSimpleWord& w) {
  SignedSimpleWord out(w.rbegin(), w.rend());
  for (auto& x : out) x.sign = flip(x.sign);
  return out;
}

SignedSimpleWord rotate_left(const SignedSimpleWord& w, std::size_t k) {
  if (w.empty()) return w;
  k %= w.size();
  SignedSimpleWord out(w.begin() + static_cast<long>(k), w.end());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<long>(k));
  return out;
}

int hom_dimension(const FusionCategory& cat, const SignedSimpleWord& w) {
  std::vector<long> v(cat.n(), 0);
  v[cat.unit] = 1;
  for (const auto& x : w) {
    const int obj = object_of(cat, x);
    std::vector<long> next(cat.n(), 0);
    for (int k = 0; k < cat.n(); ++k)
      if (v[k])
        for (int c : cat.channels(k, obj)) next[c] += v[k];
    v = std::move(next);
  }
  return static_cast<int>(v[cat.unit]);
}

double global_dimension_neutral(const FusionCategory& cat) {
  double s = 0.0;
  for (int i : cat.simples_of_grade(cat.group.identity())) s += cat.qdim(i) * cat.qdim(i);
  return s;
}

namespace {

std::string tuple_str(const FusionCategory& cat, std::initializer_list<int> xs) {
  std::string s;
  for (int x : xs) s += (s.empty() ? "" : ",") + cat.simples[x].id;
  return "(" + s + ")";
}

void check_ring(const FusionCategory& cat, CategoryCheck& out, double tol) {
  auto& rep = out.report;
  const int n = cat.n();
  const auto& G = cat.group;
  if (cat.grade(cat.unit) != G.identity()) rep.add("unit", "unit not in neutral grade");
  if (cat.dual(cat.unit) != cat.unit) rep.add("unit", "unit not self-dual");
  if (std::abs(cat.qdim(cat.unit) - 1.0) > tol) rep.add("unit", "qdim(unit) != 1");
  for (int a = 0; a < n; ++a) {
    int ad = cat.dual(a);
    if (ad < 0 || ad >= n || cat.dual(ad) != a) {
      rep.add("dual:" + cat.simples[a].id, "dual is not an involution");
      continue;
    }
    if (cat.grade(ad) != G.inv(cat.grade(a)))
      rep.add("dual:" + cat.simples[a].id, "dual grade is not the inverse");
    double r = std::abs(cat.qdim(a) - cat.qdim(ad));
    if (r > tol) rep.add("qdim:" + cat.simples[a].id, "qdim(a) != qdim(a*)", r);
    if (!cat.N(cat.unit, a, a) || !cat.N(a, cat.unit, a))
      rep.add("unit:" + cat.simples[a].id, "unit fusion missing");
    if (!cat.N(a, ad, cat.unit)) rep.add("dual:" + cat.simples[a].id, "a x a* lacks unit");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double dd = cat.qdim(a) * cat.qdim(b);
      for (int c : cat.channels(a, b)) {
        dd -= cat.qdim(c);
        if (cat.grade(c) != G.mul(cat.grade(a), cat.grade(b)))
          rep.add("grading" + tuple_str(cat, {a, b, c}), "N_ab^c != 0 across grades");
        if (!cat.N(cat.dual(b), cat.dual(a), cat.dual(c)))
          rep.add("fusion" + tuple_str(cat, {a, b, c}), "N not compatible with duals");
        if (!cat.N(c, cat.dual(b), a))
          rep.add("fusion" + tuple_str(cat, {a, b, c}), "Frobenius reciprocity fails");
      }
      out.dimension_residual = std::max(out.dimension_residual, std::abs(dd));
      if (std::abs(dd) > tol)
        rep.add("qdim" + tuple_str(cat, {a, b}), "d_a d_b != sum N d_c", std::abs(dd));
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          int l = 0, r = 0;
          for (int e = 0; e < n; ++e) l += cat.N(a, b, e) && cat.N(e, c, d);
          for (int f = 0; f < n; ++f) r += cat.N(b, c, f) && cat.N(a, f, d);
          if (l != r) rep.add("fusion" + tuple_str(cat, {a, b, c, d}), "fusion not associative");
        }
}

void check_pentagon(const FusionCategory& cat, CategoryCheck& out, double tol) {
  const int n = cat.n();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          for (int f : cat.channels(a, b))
            for (int g : cat.channels(f, c))
              for (int e : cat.channels(g, d))
                for (int l : cat.channels(c, d))
                  for (int k : cat.channels(b, l)) {
                    if (!cat.N(a, k, e)) continue;
                    cplx lhs = cat.F(f, c, d, e, g, l) * cat.F(a, b, l, e, f, k);
                    cplx rhs = 0.0;
                    for (int h = 0; h < n; ++h)
                      rhs += cat.F(a, b, c, g, f, h) * cat.F(a, h, d, e, g, k) *
                             cat.F(b, c, d, k, h, l);
                    double r = std::abs(lhs - rhs);
                    out.pentagon_residual = std::max(out.pentagon_residual, r);
                    if (r > tol)
                      out.report.add("pentagon" + tuple_str(cat, {a, b, c, d, e, f, g, k, l}),
                                     "pentagon equation violated", r);
                  }
}

void check_F_gauge(const FusionCategory& cat, CategoryCheck& out, double tol) {
  const int n = cat.n(), u = cat.unit;
  auto& rep = out.report;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          std::vector<int> es, fs;
          for (int e = 0; e < n; ++e)
            if (cat.N(a, b, e) && cat.N(e, c, d)) es.push_back(e);
          for (int f = 0; f < n; ++f)
            if (cat.N(b, c, f) && cat.N(a, f, d)) fs.push_back(f);
          if (es.size() != fs.size()) {
            rep.add("F" + tuple_str(cat, {a, b, c, d}), "F-matrix is not square");
            continue;
          }
          for (int e : es)
            for (int f : fs) {
              if (a == u || b == u || c == u) {
                double r = std::abs(cat.F(a, b, c, d, e, f) - 1.0);
                out.unit_residual = std::max(out.unit_residual, r);
                if (r > tol)
                  rep.add("triangle" + tuple_str(cat, {a, b, c, d, e, f}),
                          "F with a unit index is not 1", r);
              }
            }
          // unitarity of the F-matrix
          for (int e1 : es)
            for (int e2 : es) {
              cplx s = 0.0;
              for (int f : fs) s += cat.F(a, b, c, d, e1, f) * std::conj(cat.F(a, b, c, d, e2, f));
              double r = std::abs(s - (e1 == e2 ? 1.0 : 0.0));
              out.unitarity_residual = std::max(out.unitarity_residual, r);
              if (r > tol)
                rep.add("unitarity" + tuple_str(cat, {a, b, c, d, e1, e2}),
                        "F-matrix is not unitary", r);
            }
        }
  // rotation symmetry used by the graph evaluator:
  // F^{abc}_{d*}[k,j] = F^{cda}_{b*}[k*,j*]
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) {
              cplx l = cat.F(a, b, c, cat.dual(d), k, j);
              cplx r = cat.F(c, d, a, cat.dual(b), cat.dual(k), cat.dual(j));
              double res = std::abs(l - r);
              out.rotation_residual = std::max(out.rotation_residual, res);
              if (res > tol)
                rep.add("rotation" + tuple_str(cat, {a, b, c, d, k, j}),
                        "F-symbols not rotation symmetric (graph evaluation gauge)", res);
            }
  for (int a = 0; a < n; ++a) {
    int ad = cat.dual(a);
    cplx loop = cat.qdim(a) * cat.F(a, ad, a, a, u, u);
    double r1 = std::abs(cat.pivotal[a] - loop);
    double r2 = std::abs(cat.pivotal[a] - 1.0);
    out.sphericality_residual = std::max({out.sphericality_residual, r1, r2});
    if (r1 > tol)
      rep.add("spherical:" + cat.simples[a].id, "pivotal != qdim * F^{a a* a}_a[1,1]", r1);
    if (r2 > tol)
      rep.add("spherical:" + cat.simples[a].id,
              "non-trivial pivotal coefficient unsupported by graph evaluation", r2);
  }
}

}  // namespace

CategoryCheck check_category(const FusionCategory& cat, double tol) {
  CategoryCheck out;
  if (cat.n() == 0) {
    out.report.add("simples", "no simple objects");
    return out;
  }
  check_ring(cat, out, tol);
  if (!out.report.clean()) return out;
  check_pentagon(cat, out, tol);
  check_F_gauge(cat, out, tol);
  return out;
}

}  // namespace dtqft
