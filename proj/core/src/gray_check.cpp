#include <algorithm>
#include <random>

#include "dtqft/computad.hpp"
#include "dtqft/gray.hpp"
#include "dtqft/tqft_engines.hpp"

namespace dtqft {

bool AxiomReport::clean() const {
  return std::all_of(items.begin(), items.end(), [](const Item& i) { return i.ok; });
}

void AxiomReport::record(std::string axiom, std::string instance, double residual, double tol) {
  ++instances;
  max_residual = std::max(max_residual, residual);
  bool ok = residual <= tol;
  auto& sum = per_axiom[axiom];
  ++sum.instances;
  sum.max_residual = std::max(sum.max_residual, residual);
  if (!ok) ++sum.failures;
  // keep every failure, and one passing line per axiom
  bool seen = std::any_of(items.begin(), items.end(), [&](const Item& i) { return i.axiom == axiom && i.ok; });
  if (!ok || !seen) items.push_back({std::move(axiom), std::move(instance), residual, ok});
}

namespace {

std::string describe(const TwoMorphismDiagram& x) {
  std::string s = to_string(x.source.entries) + "->" + to_string(x.target.entries) + "[";
  for (std::size_t k = 0; k < x.layers.size(); ++k) {
    const auto& e = x.layers[k];
    if (k) s += ",";
    s += to_string(e.kind);
    if (e.kind == EventKind::Vertex)
      s += ":" + to_string(e.in_word) + "/" + to_string(e.out_word);
    else
      s += ":" + to_string(e.label);
  }
  return s + "]";
}

std::vector<OneMorphismWord> short_words(const DefectData& dd, int max_len) {
  std::vector<OneMorphismWord> out;
  for (int len = 0; len <= max_len; ++len)
    for (const auto& w : all_signed_words(dd.d2, len)) {
      if (!chain_violations(dd, w, false).empty()) continue;
      std::string obj = w.empty() ? dd.d3.front() : signed_endpoint(dd, w.front(), Endpoint::Source);
      OneMorphismWord a{obj, w.empty() ? obj : signed_endpoint(dd, w.back(), Endpoint::Target), w};
      out.push_back(a);
    }
  return out;
}

template <class T>
std::vector<T> subsample(std::vector<T> v, int n, std::mt19937& rng) {
  if (n <= 0 || static_cast<int>(v.size()) <= n) return v;
  std::shuffle(v.begin(), v.end(), rng);
  v.resize(n);
  return v;
}

struct Checker {
  const GrayModel& m;
  const GrayCheckOptions& opt;
  AxiomReport rep;

  ThreeMorphism sigma(const TwoMorphismDiagram& x, const TwoMorphismDiagram& y, bool inverse = false) {
    auto s = inverse ? tensorator_inverse(m, x, y) : tensorator(m, x, y);
    if (opt.wrong_tensorator)
      for (auto& [k, M] : s.blocks) M = Eigen::MatrixXcd::Identity(M.rows(), M.cols());
    return s;
  }
  void compare(const std::string& axiom, const std::string& inst, const ThreeMorphism& a,
               const ThreeMorphism& b) {
    rep.record(axiom, inst, distance(a, b), opt.tolerance);
  }
  ThreeMorphism id(const TwoMorphismDiagram& x) { return identity3(m, x); }
};

bool composable(const TwoMorphismDiagram& lower, const TwoMorphismDiagram& upper) {
  return lower.target == upper.source;
}

// Bubble the layers of `start` into the order given by `rank` (layer -> rank)
// using crossings; returns the composite.
ThreeMorphism sort_by_crossings(const GrayModel& m, const TwoMorphismDiagram& start,
                                std::vector<int> rank, TwoMorphismDiagram* end) {
  Movie mv{start, {}};
  TwoMorphismDiagram frame = start;
  bool swapped = true;
  while (swapped) {
    swapped = false;
    for (std::size_t k = 0; k + 1 < rank.size(); ++k) {
      if (rank[k] <= rank[k + 1]) continue;
      MovieEvent ev;
      ev.kind = MovieEventKind::Crossing;
      ev.at = static_cast<int>(k);
      ev.count = 2;
      mv.events.push_back(ev);
      frame = movie_frames({frame, {ev}}).back();
      std::swap(rank[k], rank[k + 1]);
      swapped = true;
    }
  }
  *end = frame;
  return evaluate_3d_diagram(m, mv);
}

// rank of each cap/cup layer of `x` in `target`, matched by the bottom
// position of the strand through it and the event kind
std::vector<int> fold_ranks(const TwoMorphismDiagram& x, const TwoMorphismDiagram& target) {
  auto key = [](const TwoMorphismDiagram& d) {
    auto L = diagram_lines(d);
    std::vector<std::pair<int, int>> keys;
    for (std::size_t k = 0; k < d.layers.size(); ++k) {
      int line = L.layer_lines[k][0];
      int pos = static_cast<int>(std::find(L.bottom.begin(), L.bottom.end(), line) - L.bottom.begin());
      keys.push_back({pos, static_cast<int>(d.layers[k].kind)});
    }
    return keys;
  };
  auto kx = key(x), kt = key(target);
  std::vector<int> rank;
  for (const auto& k : kx) {
    auto it = std::find(kt.begin(), kt.end(), k);
    if (it == kt.end()) throw ComposeError("layer without a partner");
    rank.push_back(static_cast<int>(it - kt.begin()));
  }
  return rank;
}

}  // namespace

std::vector<TwoMorphismDiagram> sample_two_morphisms(const DefectData& dd, int max_word_len) {
  std::vector<TwoMorphismDiagram> out;
  auto words = short_words(dd, std::max(1, max_word_len));
  for (const auto& a : words)
    if (a.entries.size() <= 1) out.push_back(identity_diagram(a));
  // single vertices with positive legs on both sides
  std::vector<TwoMorphismDiagram> vertices;
  for (const auto& in : words)
    for (const auto& outw : words) {
      if (in.entries.empty() || outw.entries.empty()) continue;
      if (in.source != outw.source || in.target != outw.target) continue;
      bool plus = true;
      for (const auto& x : in.entries) plus = plus && x.sign == Sign::Plus;
      for (const auto& x : outw.entries) plus = plus && x.sign == Sign::Plus;
      if (!plus) continue;
      auto e = vertex_event("", in.entries, outw.entries);
      if (!dd.accepts("", CyclicWord(e.vertex_word()))) continue;
      TwoMorphismDiagram d{in, outw, {e}};
      vertices.push_back(d);
    }
  out.insert(out.end(), vertices.begin(), vertices.end());
  // folds and their duals on single letters
  for (const auto& a : words)
    if (a.entries.size() == 1) {
      out.push_back(fold(a));
      out.push_back(ev_fold(a));
    }
  // two-layer composites of vertices
  for (const auto& x : vertices)
    for (const auto& y : vertices)
      if (composable(x, y) && x.source.entries.size() + y.target.entries.size() <= 2)
        out.push_back(otimes_compose(y, x));
  return out;
}

AxiomReport check_gray_axioms(const GrayModel& m, const GrayCheckOptions& opt) {
  if (!m.dd) throw Error("axiom checks need defect data");
  const auto& dd = *m.dd;
  std::mt19937 rng(opt.seed);
  Checker c{m, opt, {}};
  auto samples = subsample(sample_two_morphisms(dd, 2), opt.sample_size, rng);
  auto letters = short_words(dd, 1);
  auto words2 = short_words(dd, 2);

  // (vi) units
  for (const auto& x : samples)
    for (const auto& a : letters) {
      if (x.target.target == a.source) {
        auto s = c.sigma(x, identity_diagram(a));
        c.compare("vi:sigma_X1", describe(x) + " | " + to_string(a.entries), s, c.id(s.source));
      }
      if (a.target == x.source.source) {
        auto s = c.sigma(identity_diagram(a), x);
        c.compare("vi:sigma_1Y", to_string(a.entries) + " | " + describe(x), s, c.id(s.source));
      }
    }
  // tensorator invertibility, (vii) and (viii)
  for (const auto& x : samples)
    for (const auto& y : samples) {
      if (x.source.target != y.source.source) continue;
      auto inst = describe(x) + " | " + describe(y);
      auto s = c.sigma(x, y), si = c.sigma(x, y, true);
      c.compare("sigma_inverse_left", inst, circ_compose(si, s), c.id(s.source));
      c.compare("sigma_inverse_right", inst, circ_compose(s, si), c.id(s.target));
      for (const auto& a : letters) {
        if (a.source == x.target.target && a.target == y.source.source) {
          c.compare("viii:X1_Y", inst + " | " + to_string(a.entries), c.sigma(whisker_right(x, a), y),
                    c.sigma(x, whisker_left(a, y)));
        }
        if (a.target == x.source.source)
          c.compare("viii:1X_Y", inst + " | " + to_string(a.entries), c.sigma(whisker_left(a, x), y),
                    whisker_left(m, a, c.sigma(x, y)));
        if (a.source == y.target.target)
          c.compare("viii:X_Y1", inst + " | " + to_string(a.entries), c.sigma(x, whisker_right(y, a)),
                    whisker_right(m, c.sigma(x, y), a));
      }
      // naturality against basis 3-morphisms of End(X) and End(Y)
      auto hx = hom_space(m, x, x);
      for (int k = 0; k < std::min(hx.dim, 32); ++k) {
        auto phi = hom_basis_element(m, x, x, k);
        auto lhs = circ_compose(s, box_compose(m, phi, c.id(y)));
        auto rhs = circ_compose(otimes_compose(m, c.id(whisker_left(x.target, y)),
                                               whisker_right(m, phi, y.source)),
                                s);
        c.compare("naturality_X", inst + " | basis " + std::to_string(k), lhs, rhs);
      }
      auto hy = hom_space(m, y, y);
      for (int k = 0; k < std::min(hy.dim, 32); ++k) {
        auto psi = hom_basis_element(m, y, y, k);
        auto lhs = circ_compose(s, box_compose(m, c.id(x), psi));
        auto rhs = circ_compose(otimes_compose(m, whisker_left(m, x.target, psi),
                                               c.id(whisker_right(x, y.source))),
                                s);
        c.compare("naturality_Y", inst + " | basis " + std::to_string(k), lhs, rhs);
      }
      // (vii) with a second layer on either side
      for (const auto& z : samples) {
        if (composable(y, z)) {
          // sigma_{X, Z (x) Y}
          auto lhs = c.sigma(x, otimes_compose(z, y));
          auto a = otimes_compose(m, c.id(whisker_left(x.target, z)), c.sigma(x, y));
          auto b = otimes_compose(m, c.sigma(x, z), c.id(whisker_left(x.source, y)));
          c.compare("vii:X_YY", inst + " | " + describe(z), lhs, circ_compose(a, b));
        }
        if (composable(x, z) && z.source.target == y.source.source) {
          // sigma_{Z (x) X, Y}
          auto lhs = c.sigma(otimes_compose(z, x), y);
          auto a = otimes_compose(m, c.sigma(z, y), c.id(whisker_right(x, y.source)));
          auto b = otimes_compose(m, c.id(whisker_right(z, y.target)), c.sigma(x, y));
          c.compare("vii:XX_Y", inst + " | " + describe(z), lhs, circ_compose(a, b));
        }
      }
    }
  // Zorro moves for ev_X / coev_X
  for (const auto& x : samples) {
    auto inst = describe(x);
    auto z1 = circ_compose(otimes_compose(m, ev3(m, x), c.id(x)), otimes_compose(m, c.id(x), coev3(m, x)));
    c.compare("zorro_X", inst, z1, c.id(x));
    auto xd = dagger_dual(x);
    auto z2 = circ_compose(otimes_compose(m, c.id(xd), ev3(m, x)), otimes_compose(m, coev3(m, x), c.id(xd)));
    c.compare("zorro_Xdagger", inst, z2, c.id(xd));
  }
  // triangulator: invertibility, tau_{a box b}, twist of the fold
  for (const auto& a : words2) {
    if (a.entries.empty()) continue;
    auto inst = to_string(a.entries);
    auto t = triangulator(m, a), ti = triangulator_inverse(m, a);
    c.compare("tau_inverse_left", inst, circ_compose(t, ti), c.id(identity_diagram(a)));
    c.compare("tau_inverse_right", inst, circ_compose(ti, t), c.id(zigzag(a)));
    // twist: 1_{coev_a} = (1_a box tau^-1_{a#}^dagger) (sigma_{coev,coev}) (tau^-1_a box 1_{a#})
    auto f = fold(a);
    auto ah = hash_dual(a);
    auto step1 = otimes_compose(m, whisker_right(m, ti, ah), c.id(f));
    auto top = whisker_left(a, whisker_right(ev_fold(a), ah));
    auto step2 = otimes_compose(m, c.id(top), c.sigma(f, f));
    auto step3 = otimes_compose(m, whisker_left(m, a, dagger3(m, triangulator_inverse(m, ah))), c.id(f));
    c.compare("twist_fold", inst, circ_compose(step3, circ_compose(step2, step1)), c.id(f));
  }
  for (const auto& a : letters)
    for (const auto& b : letters) {
      if (a.entries.empty() || b.entries.empty() || a.target != b.source) continue;
      auto ab = box_compose(a, b);
      // one crossing splits the zigzag of a box b into that of a below that of b
      auto target = otimes_compose(whisker_left(a, zigzag(b)), whisker_right(zigzag(a), b));
      TwoMorphismDiagram end;
      auto r = sort_by_crossings(m, zigzag(ab), fold_ranks(zigzag(ab), target), &end);
      if (!(end == target)) throw ComposeError("crossings did not reach the split zigzag");
      auto straighten = otimes_compose(m, whisker_left(m, a, triangulator(m, b)),
                                       whisker_right(m, triangulator(m, a), b));
      auto rhs = circ_compose(straighten, r);
      c.compare("tau_box", to_string(ab.entries), triangulator(m, ab), rhs);
    }
  return c.rep;
}

AxiomReport check_model_equivalence(const GrayModel& m, const GrayCheckOptions& opt) {
  if (!m.dd || !m.cat) throw Error("model checks need a category and defect data");
  const auto& cat = *m.cat;
  std::mt19937 rng(opt.seed);
  AxiomReport rep;
  auto samples = sample_two_morphisms(*m.dd, 3);
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = 0; j < samples.size(); ++j)
      if (samples[i].source == samples[j].source && samples[i].target == samples[j].target)
        pairs.push_back({static_cast<int>(i), static_cast<int>(j)});
  pairs = subsample(pairs, opt.sample_size > 0 ? opt.sample_size : 200, rng);
  const std::string neutral = cat.group.name(cat.group.identity());
  for (auto [i, j] : pairs) {
    const auto& x = samples[i];
    const auto& y = samples[j];
    auto inst = describe(x) + " | " + describe(y);
    auto sphere = glue_sphere(x, y);
    auto h = hom_space(m, x, y);
    if (m.engine == Engine::Triv) {
      rep.record("hom_dim", inst, std::abs(h.dim - triv_state_space_dim(cat, sphere)), 0.0);
      if (h.dim == 0) continue;
      // otimes of composable basis elements factors through circ
      auto phi = hom_basis_element(m, x, y, static_cast<int>(rng() % h.dim));
      auto lhs = otimes_compose(m, identity3(m, identity_diagram(x.target)), phi);
      rep.record("unit_otimes", inst, distance(lhs, phi), opt.tolerance);
      auto back = circ_compose(identity3(m, y), circ_compose(phi, identity3(m, x)));
      rep.record("unit_circ", inst, distance(back, phi), opt.tolerance);
    } else {
      rep.record("hom_dim_one", inst, std::abs(h.dim - 1), 0.0);
      auto fine = fine_surface(sphere, neutral);
      auto ss = state_space(cat, sphere);
      auto v = statesum_vector(cat, linear_fill(fine));
      double nv = v.norm();
      double res = nv > 0 ? (ss.projector * v - v).norm() / nv : 1.0;
      rep.record("distinguished_fixed", inst, res, opt.tolerance);
    }
  }
  return rep;
}

std::string one_morphism_invariant(const GrayModel& m, const OneMorphismWord& a) {
  if (!m.cat) throw Error("invariant needs a category");
  const auto& g = m.cat->group;
  std::string found;
  for (std::size_t h = 0; h < g.order(); ++h) {
    OneMorphismWord out{a.source, a.target, {{g.name(static_cast<int>(h)), Sign::Plus}}};
    TwoMorphismDiagram x{a, out, {vertex_event("", a.entries, out.entries)}};
    auto ss = state_space(*m.cat, glue_sphere(x, x));
    if (ss.rank == 0) continue;
    if (!found.empty()) throw DegeneracyError("1-morphism invariant is not unique");
    found = g.name(static_cast<int>(h));
  }
  if (found.empty()) throw DegeneracyError("no group element carries the 1-morphism");
  return found;
}

}  // namespace dtqft
