#include <cmath>
#include <limits>

#include "dtqft/gray.hpp"
#include "dtqft/tqft_engines.hpp"

namespace dtqft {

namespace {

using Key = std::vector<int>;
using Blocks = std::map<Key, Eigen::MatrixXcd>;

const FusionCategory& category(const GrayModel& m) {
  if (!m.cat) throw Error("gray model without a category");
  return *m.cat;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// vertex space dimensions of a diagram under a line colouring, layer order
std::vector<int> vertex_dims(const FusionCategory& cat, const TwoMorphismDiagram& d,
                             const DiagramLines& lines, const std::vector<int>& colour) {
  std::vector<int> dims;
  for (std::size_t k = 0; k < d.layers.size(); ++k) {
    if (d.layers[k].kind != EventKind::Vertex) continue;
    std::vector<int> legs;
    for (int l : lines.layer_lines[k]) legs.push_back(colour[l]);
    dims.push_back(vertex_space_dim(cat, d.layers[k], legs));
  }
  return dims;
}

int product(const std::vector<int>& v) {
  int p = 1;
  for (int x : v) p *= x;
  return p;
}

// Consistent line colourings of the sphere S_{x,y}: source lines then target lines.
struct SphereFrame {
  DiagramLines lx, ly;
  SphereSheets sheets;
  std::vector<Key> keys;

  SphereFrame(const FusionCategory& cat, const TwoMorphismDiagram& x, const TwoMorphismDiagram& y)
      : lx(diagram_lines(x)), ly(diagram_lines(y)), sheets(sphere_sheets(x, y)) {
    std::vector<std::vector<int>> dom;
    for (const auto& l : sheets.label) dom.push_back(colour_domain(cat, l));
    std::vector<std::size_t> at(dom.size(), 0);
    for (const auto& d : dom)
      if (d.empty()) return;
    while (true) {
      Key k;
      for (int l = 0; l < lx.num_lines; ++l) k.push_back(dom[sheets.x_sheet[l]][at[sheets.x_sheet[l]]]);
      for (int l = 0; l < ly.num_lines; ++l) k.push_back(dom[sheets.y_sheet[l]][at[sheets.y_sheet[l]]]);
      keys.push_back(k);
      std::size_t i = 0;
      while (i < at.size() && ++at[i] == dom[i].size()) at[i++] = 0;
      if (i == at.size()) break;
    }
  }
  std::vector<int> x_colour(const Key& k) const { return {k.begin(), k.begin() + lx.num_lines}; }
  std::vector<int> y_colour(const Key& k) const { return {k.begin() + lx.num_lines, k.end()}; }
};

// (layer, leg) of a line in some diagram: the first leg, else a boundary position
struct LineAnchor {
  int layer = -1, leg = -1;
  int bottom = -1, top = -1;
};

std::vector<LineAnchor> anchors(const DiagramLines& L) {
  std::vector<LineAnchor> a(L.num_lines);
  for (std::size_t k = 0; k < L.layer_lines.size(); ++k)
    for (std::size_t i = 0; i < L.layer_lines[k].size(); ++i) {
      auto& x = a[L.layer_lines[k][i]];
      if (x.layer < 0) {
        x.layer = static_cast<int>(k);
        x.leg = static_cast<int>(i);
      }
    }
  for (std::size_t i = 0; i < L.bottom.size(); ++i)
    if (a[L.bottom[i]].bottom < 0) a[L.bottom[i]].bottom = static_cast<int>(i);
  for (std::size_t j = 0; j < L.top.size(); ++j)
    if (a[L.top[j]].top < 0) a[L.top[j]].top = static_cast<int>(j);
  return a;
}

// Map the lines of a part into the lines of a composite diagram that contains
// its layers at `layer_offset` and its strands shifted by `shift`. A straight
// line of the part is found on the composite bottom (or top) boundary.
std::vector<int> embed_lines(const DiagramLines& part, const DiagramLines& whole, int layer_offset,
                             int shift, bool bottom_shared, bool top_shared) {
  std::vector<int> out(part.num_lines, -1);
  auto an = anchors(part);
  for (int l = 0; l < part.num_lines; ++l) {
    const auto& a = an[l];
    if (a.layer >= 0)
      out[l] = whole.layer_lines[a.layer + layer_offset][a.leg];
    else if (bottom_shared && a.bottom >= 0)
      out[l] = whole.bottom[a.bottom + shift];
    else if (top_shared && a.top >= 0)
      out[l] = whole.top[a.top + shift];
    else
      throw ComposeError("line of a part not found in the composite");
  }
  return out;
}

// the same line under the dagger dual: layers reversed, in/out legs swapped
std::vector<int> dagger_lines(const TwoMorphismDiagram& x, const DiagramLines& lx,
                              const DiagramLines& ldag) {
  std::vector<int> out(lx.num_lines, -1);
  auto an = anchors(lx);
  const int n = static_cast<int>(x.layers.size());
  for (int l = 0; l < lx.num_lines; ++l) {
    const auto& a = an[l];
    if (a.layer >= 0) {
      const auto& e = x.layers[a.layer];
      int leg = a.leg;
      if (e.kind == EventKind::Vertex) {
        const int nin = static_cast<int>(e.in_word.size()), nout = static_cast<int>(e.out_word.size());
        leg = leg < nin ? nout + leg : leg - nin;
      }
      out[l] = ldag.layer_lines[n - 1 - a.layer][leg];
    } else {
      out[l] = ldag.top[a.bottom];
    }
  }
  return out;
}

// permutation of a Kronecker index space that reverses the factor order
std::vector<int> reverse_factors(const std::vector<int>& dims) {
  const int total = product(dims);
  std::vector<int> perm(total);
  const int n = static_cast<int>(dims.size());
  std::vector<int> idx(n, 0);
  for (int r = 0; r < total; ++r) {
    int rev = 0;
    for (int i = n - 1; i >= 0; --i) rev = rev * dims[i] + idx[i];
    perm[r] = rev;
    for (int i = n - 1; i >= 0; --i) {
      if (++idx[i] < dims[i]) break;
      idx[i] = 0;
    }
  }
  return perm;
}

// A leg of a vertex / cap / cup layer in the source (side 0) or target (side 1).
struct LegRef {
  int side, layer, leg;
};

// Pairing payloads: factors (vertex layers of source and target) matched in
// pairs, entries the product of Kronecker deltas; legs in `equal` must carry
// the same colour.
ThreeMorphism pairing_morphism(const GrayModel& m, const TwoMorphismDiagram& x,
                               const TwoMorphismDiagram& y,
                               const std::vector<std::pair<LegRef, LegRef>>& equal,
                               const std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>>& pairs) {
  ThreeMorphism out;
  out.engine = m.engine;
  out.source = x;
  out.target = y;
  if (m.engine == Engine::StateSum) return out;
  const auto& cat = category(m);
  SphereFrame fr(cat, x, y);
  const TwoMorphismDiagram* dg[2] = {&x, &y};
  const DiagramLines* ln[2] = {&fr.lx, &fr.ly};
  // factor position of each vertex layer
  std::vector<std::map<int, int>> factor(2);
  for (int s = 0; s < 2; ++s) {
    int f = 0;
    for (std::size_t k = 0; k < dg[s]->layers.size(); ++k)
      if (dg[s]->layers[k].kind == EventKind::Vertex) factor[s][static_cast<int>(k)] = f++;
  }
  std::vector<int> matched[2] = {std::vector<int>(factor[0].size(), 0),
                                 std::vector<int>(factor[1].size(), 0)};
  for (const auto& [a, b] : pairs) {
    ++matched[a.first][factor[a.first].at(a.second)];
    ++matched[b.first][factor[b.first].at(b.second)];
  }
  for (int s = 0; s < 2; ++s)
    for (int c : matched[s])
      if (c != 1) throw ComposeError("pairing does not match every vertex once");
  for (const auto& key : fr.keys) {
    std::vector<int> col[2] = {fr.x_colour(key), fr.y_colour(key)};
    bool ok = true;
    for (const auto& [a, b] : equal) {
      int ca = col[a.side][ln[a.side]->layer_lines[a.layer][a.leg]];
      int cb = col[b.side][ln[b.side]->layer_lines[b.layer][b.leg]];
      if (ca != cb) ok = false;
    }
    if (!ok) continue;
    std::vector<int> dims[2] = {vertex_dims(cat, x, fr.lx, col[0]), vertex_dims(cat, y, fr.ly, col[1])};
    std::vector<int> pair_dim;
    for (const auto& [a, b] : pairs) {
      int da = dims[a.first][factor[a.first].at(a.second)];
      int db = dims[b.first][factor[b.first].at(b.second)];
      if (da != db) throw ComposeError("paired vertex spaces differ in dimension");
      pair_dim.push_back(da);
    }
    const int rows = product(dims[1]), cols = product(dims[0]);
    if (rows == 0 || cols == 0) continue;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(rows, cols);
    std::vector<int> idx(pairs.size(), 0);
    std::vector<int> fidx[2] = {std::vector<int>(dims[0].size()), std::vector<int>(dims[1].size())};
    while (true) {
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto& [a, b] = pairs[p];
        fidx[a.first][factor[a.first].at(a.second)] = idx[p];
        fidx[b.first][factor[b.first].at(b.second)] = idx[p];
      }
      int r = 0, c = 0;
      for (std::size_t i = 0; i < dims[1].size(); ++i) r = r * dims[1][i] + fidx[1][i];
      for (std::size_t i = 0; i < dims[0].size(); ++i) c = c * dims[0][i] + fidx[0][i];
      M(r, c) = 1.0;
      std::size_t p = 0;
      while (p < idx.size() && ++idx[p] == pair_dim[p]) idx[p++] = 0;
      if (p == idx.size()) break;
    }
    out.blocks[key] = M;
  }
  return out;
}

// legs of two layers matched in order
void match_legs(std::vector<std::pair<LegRef, LegRef>>& eq, const LegRef& a, const LegRef& b, int n) {
  for (int i = 0; i < n; ++i) eq.push_back({{a.side, a.layer, i}, {b.side, b.layer, i}});
}

int num_legs(const LayerEvent& e) {
  return e.kind == EventKind::Vertex ? static_cast<int>(e.in_word.size() + e.out_word.size()) : 1;
}

// a layer and its dagger: in legs of one are the out legs of the other
void match_dagger_legs(std::vector<std::pair<LegRef, LegRef>>& eq, const LayerEvent& e,
                       const LegRef& a, const LegRef& b) {
  if (e.kind != EventKind::Vertex) {
    eq.push_back({{a.side, a.layer, 0}, {b.side, b.layer, 0}});
    return;
  }
  const int nin = static_cast<int>(e.in_word.size()), nout = static_cast<int>(e.out_word.size());
  for (int i = 0; i < nin; ++i) eq.push_back({{a.side, a.layer, i}, {b.side, b.layer, nout + i}});
  for (int j = 0; j < nout; ++j) eq.push_back({{a.side, a.layer, nin + j}, {b.side, b.layer, j}});
}

// layer correspondence src_layer[k] = target layer of source layer k
ThreeMorphism layer_bijection(const GrayModel& m, const TwoMorphismDiagram& x,
                              const TwoMorphismDiagram& y, const std::vector<int>& to) {
  std::vector<std::pair<LegRef, LegRef>> eq;
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> pairs;
  for (std::size_t k = 0; k < x.layers.size(); ++k) {
    const auto& a = x.layers[k];
    const auto& b = y.layers[to[k]];
    if (a.kind != b.kind || a.lower() != b.lower() || a.upper() != b.upper())
      throw ComposeError("layer correspondence between different events");
    match_legs(eq, {0, static_cast<int>(k), 0}, {1, to[k], 0}, num_legs(a));
    if (a.kind == EventKind::Vertex) pairs.push_back({{0, static_cast<int>(k)}, {1, to[k]}});
  }
  return pairing_morphism(m, x, y, eq, pairs);
}

void require_same(const TwoMorphismDiagram& a, const TwoMorphismDiagram& b, const char* what) {
  if (!(a == b)) throw ComposeError(std::string(what) + ": boundary diagrams differ");
}

}  // namespace

int vertex_space_dim(const FusionCategory& cat, const LayerEvent& e, const std::vector<int>& leg_colours) {
  const int nin = static_cast<int>(e.in_word.size()), nout = static_cast<int>(e.out_word.size());
  if (static_cast<int>(leg_colours.size()) != nin + nout) throw ColourError("leg colour count");
  SignedSimpleWord w;
  for (int j = 0; j < nout; ++j) w.push_back({leg_colours[nin + j], e.out_word[j].sign});
  for (int j = nin - 1; j >= 0; --j) w.push_back({leg_colours[j], flip(e.in_word[j].sign)});
  return hom_dimension(cat, w);
}

HomSpace hom_space(const GrayModel& m, const TwoMorphismDiagram& x, const TwoMorphismDiagram& y) {
  const auto& cat = category(m);
  HomSpace h;
  h.engine = m.engine;
  if (m.engine == Engine::StateSum) {
    h.dim = state_space(cat, glue_sphere(x, y)).rank;
    return h;
  }
  SphereFrame fr(cat, x, y);
  for (const auto& key : fr.keys) {
    int rows = product(vertex_dims(cat, y, fr.ly, fr.y_colour(key)));
    int cols = product(vertex_dims(cat, x, fr.lx, fr.x_colour(key)));
    if (rows * cols == 0) continue;
    h.colourings.push_back(key);
    h.shapes.push_back({rows, cols});
    h.dim += rows * cols;
  }
  return h;
}

ThreeMorphism hom_basis_element(const GrayModel& m, const TwoMorphismDiagram& x,
                                const TwoMorphismDiagram& y, int k) {
  auto h = hom_space(m, x, y);
  if (k < 0 || k >= h.dim) throw ComposeError("basis index out of range");
  ThreeMorphism out;
  out.engine = m.engine;
  out.source = x;
  out.target = y;
  if (m.engine == Engine::StateSum) return out;
  for (std::size_t i = 0; i < h.colourings.size(); ++i) {
    auto [rows, cols] = h.shapes[i];
    if (k < rows * cols) {
      Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(rows, cols);
      M(k / cols, k % cols) = 1.0;
      out.blocks[h.colourings[i]] = M;
      break;
    }
    k -= rows * cols;
  }
  return out;
}

ThreeMorphism identity3(const GrayModel& m, const TwoMorphismDiagram& x) {
  std::vector<int> to(x.layers.size());
  for (std::size_t k = 0; k < to.size(); ++k) to[k] = static_cast<int>(k);
  return layer_bijection(m, x, x, to);
}

ThreeMorphism circ_compose(const ThreeMorphism& psi, const ThreeMorphism& phi) {
  if (psi.engine != phi.engine) throw ComposeError("circ: engines differ");
  require_same(phi.target, psi.source, "circ");
  ThreeMorphism out;
  out.engine = phi.engine;
  out.source = phi.source;
  out.target = psi.target;
  out.scalar = psi.scalar * phi.scalar;
  if (out.engine == Engine::StateSum) return out;
  const int nx = diagram_lines(phi.source).num_lines;
  const int ny = diagram_lines(phi.target).num_lines;
  std::map<Key, std::vector<const std::pair<const Key, Eigen::MatrixXcd>*>> by_mid;
  for (const auto& b : psi.blocks) by_mid[Key(b.first.begin(), b.first.begin() + ny)].push_back(&b);
  for (const auto& [kp, mp] : phi.blocks) {
    Key mid(kp.begin() + nx, kp.end());
    auto it = by_mid.find(mid);
    if (it == by_mid.end()) continue;
    for (const auto* b : it->second) {
      Key k(kp.begin(), kp.begin() + nx);
      k.insert(k.end(), b->first.begin() + ny, b->first.end());
      Eigen::MatrixXcd prod = b->second * mp;
      auto [pos, fresh] = out.blocks.insert({k, prod});
      if (!fresh) pos->second += prod;
    }
  }
  return out;
}

ThreeMorphism otimes_compose(const GrayModel&, const ThreeMorphism& phi, const ThreeMorphism& psi) {
  if (psi.engine != phi.engine) throw ComposeError("otimes: engines differ");
  ThreeMorphism out;
  out.engine = phi.engine;
  out.source = otimes_compose(phi.source, psi.source);
  out.target = otimes_compose(phi.target, psi.target);
  out.scalar = phi.scalar * psi.scalar;
  if (out.engine == Engine::StateSum) return out;
  const auto lx = diagram_lines(phi.source), lx2 = diagram_lines(phi.target);
  const auto ly = diagram_lines(psi.source), ly2 = diagram_lines(psi.target);
  const auto ld = diagram_lines(out.source), ld2 = diagram_lines(out.target);
  const int ny = static_cast<int>(psi.source.layers.size());
  const int ny2 = static_cast<int>(psi.target.layers.size());
  auto mx = embed_lines(lx, ld, ny, 0, false, true);
  auto mx2 = embed_lines(lx2, ld2, ny2, 0, false, true);
  auto my = embed_lines(ly, ld, 0, 0, true, false);
  auto my2 = embed_lines(ly2, ld2, 0, 0, true, false);
  const int nd = ld.num_lines;
  for (const auto& [kp, mp] : phi.blocks)
    for (const auto& [ks, ms] : psi.blocks) {
      Key k(nd + ld2.num_lines, -1);
      bool ok = true;
      auto put = [&](int pos, int c) {
        if (k[pos] >= 0 && k[pos] != c) ok = false;
        k[pos] = c;
      };
      for (int l = 0; l < lx.num_lines; ++l) put(mx[l], kp[l]);
      for (int l = 0; l < lx2.num_lines; ++l) put(nd + mx2[l], kp[lx.num_lines + l]);
      for (int l = 0; l < ly.num_lines; ++l) put(my[l], ks[l]);
      for (int l = 0; l < ly2.num_lines; ++l) put(nd + my2[l], ks[ly.num_lines + l]);
      if (!ok) continue;
      out.blocks[k] = kron(ms, mp);
    }
  return out;
}

namespace {

// whisker by straight strands: the part sits at strand offset `shift`; `fresh`
// lists the composite boundary positions of the new strands
ThreeMorphism whisker(const GrayModel& m, const ThreeMorphism& phi, const TwoMorphismDiagram& src,
                      const TwoMorphismDiagram& tgt, int shift, const OneMorphismWord& a, int a_pos) {
  ThreeMorphism out;
  out.engine = phi.engine;
  out.source = src;
  out.target = tgt;
  out.scalar = phi.scalar;
  if (out.engine == Engine::StateSum) return out;
  const auto& cat = category(m);
  const auto lx = diagram_lines(phi.source), ly = diagram_lines(phi.target);
  const auto ld = diagram_lines(src), ld2 = diagram_lines(tgt);
  auto mx = embed_lines(lx, ld, 0, shift, true, true);
  auto my = embed_lines(ly, ld2, 0, shift, true, true);
  const int na = static_cast<int>(a.entries.size());
  std::vector<std::vector<int>> dom;
  for (const auto& x : a.entries) dom.push_back(colour_domain(cat, x.label));
  for (const auto& d : dom)
    if (d.empty()) return out;
  const int nd = ld.num_lines;
  for (const auto& [kp, mp] : phi.blocks) {
    std::vector<std::size_t> at(na, 0);
    while (true) {
      Key k(nd + ld2.num_lines, -1);
      for (int l = 0; l < lx.num_lines; ++l) k[mx[l]] = kp[l];
      for (int l = 0; l < ly.num_lines; ++l) k[nd + my[l]] = kp[lx.num_lines + l];
      for (int j = 0; j < na; ++j) {
        k[ld.bottom[a_pos + j]] = dom[j][at[j]];
        k[nd + ld2.bottom[a_pos + j]] = dom[j][at[j]];
      }
      out.blocks[k] = mp;
      int j = 0;
      while (j < na && ++at[j] == dom[j].size()) at[j++] = 0;
      if (j == na) break;
    }
  }
  return out;
}

}  // namespace

ThreeMorphism whisker_left(const GrayModel& m, const OneMorphismWord& a, const ThreeMorphism& phi) {
  return whisker(m, phi, whisker_left(a, phi.source), whisker_left(a, phi.target),
                 static_cast<int>(a.entries.size()), a, 0);
}

ThreeMorphism whisker_right(const GrayModel& m, const ThreeMorphism& phi, const OneMorphismWord& a) {
  return whisker(m, phi, whisker_right(phi.source, a), whisker_right(phi.target, a), 0, a,
                 static_cast<int>(phi.source.source.entries.size()));
}

ThreeMorphism box_compose(const GrayModel& m, const ThreeMorphism& phi, const ThreeMorphism& psi) {
  return otimes_compose(m, whisker_right(m, phi, psi.target.target),
                        whisker_left(m, phi.source.source, psi));
}

ThreeMorphism scale(const ThreeMorphism& phi, cplx s) {
  ThreeMorphism out = phi;
  out.scalar *= s;
  for (auto& [k, M] : out.blocks) M *= s;
  return out;
}

ThreeMorphism add(const ThreeMorphism& a, const ThreeMorphism& b) {
  require_same(a.source, b.source, "add");
  require_same(a.target, b.target, "add");
  ThreeMorphism out = a;
  out.scalar += b.scalar;
  for (const auto& [k, M] : b.blocks) {
    auto [it, fresh] = out.blocks.insert({k, M});
    if (!fresh) it->second += M;
  }
  return out;
}

ThreeMorphism dagger3(const GrayModel& m, const ThreeMorphism& phi) {
  ThreeMorphism out;
  out.engine = phi.engine;
  out.source = dagger_dual(phi.target);
  out.target = dagger_dual(phi.source);
  out.scalar = phi.scalar;
  if (out.engine == Engine::StateSum) return out;
  const auto& cat = category(m);
  const auto lx = diagram_lines(phi.source), ly = diagram_lines(phi.target);
  const auto ls = diagram_lines(out.source), lt = diagram_lines(out.target);
  auto my = dagger_lines(phi.target, ly, ls);
  auto mx = dagger_lines(phi.source, lx, lt);
  for (const auto& [kp, M] : phi.blocks) {
    Key k(ls.num_lines + lt.num_lines, -1);
    for (int l = 0; l < ly.num_lines; ++l) k[my[l]] = kp[lx.num_lines + l];
    for (int l = 0; l < lx.num_lines; ++l) k[ls.num_lines + mx[l]] = kp[l];
    auto dx = vertex_dims(cat, phi.source, lx, {kp.begin(), kp.begin() + lx.num_lines});
    auto dy = vertex_dims(cat, phi.target, ly, {kp.begin() + lx.num_lines, kp.end()});
    auto px = reverse_factors(dx), py = reverse_factors(dy);
    Eigen::MatrixXcd D(M.cols(), M.rows());
    for (Eigen::Index r = 0; r < M.rows(); ++r)
      for (Eigen::Index c = 0; c < M.cols(); ++c) D(px[c], py[r]) = M(r, c);
    out.blocks[k] = D;
  }
  return out;
}

ThreeMorphism tensorator(const GrayModel& m, const TwoMorphismDiagram& x, const TwoMorphismDiagram& y) {
  auto src = box_compose(x, y);
  auto tgt = otimes_compose(whisker_left(x.target, y), whisker_right(x, y.source));
  const int nx = static_cast<int>(x.layers.size()), ny = static_cast<int>(y.layers.size());
  std::vector<int> to(nx + ny);
  for (int j = 0; j < ny; ++j) to[j] = nx + j;
  for (int i = 0; i < nx; ++i) to[ny + i] = i;
  return layer_bijection(m, src, tgt, to);
}

ThreeMorphism tensorator_inverse(const GrayModel& m, const TwoMorphismDiagram& x,
                                 const TwoMorphismDiagram& y) {
  auto src = otimes_compose(whisker_left(x.target, y), whisker_right(x, y.source));
  auto tgt = box_compose(x, y);
  const int nx = static_cast<int>(x.layers.size()), ny = static_cast<int>(y.layers.size());
  std::vector<int> to(nx + ny);
  for (int i = 0; i < nx; ++i) to[i] = ny + i;
  for (int j = 0; j < ny; ++j) to[nx + j] = j;
  return layer_bijection(m, src, tgt, to);
}

ThreeMorphism triangulator(const GrayModel& m, const OneMorphismWord& a) {
  return pairing_morphism(m, zigzag(a), identity_diagram(a), {}, {});
}

ThreeMorphism triangulator_inverse(const GrayModel& m, const OneMorphismWord& a) {
  return pairing_morphism(m, identity_diagram(a), zigzag(a), {}, {});
}

ThreeMorphism coev3(const GrayModel& m, const TwoMorphismDiagram& x) {
  auto tgt = otimes_compose(dagger_dual(x), x);
  const int n = static_cast<int>(x.layers.size());
  std::vector<std::pair<LegRef, LegRef>> eq;
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> pairs;
  for (int k = 0; k < n; ++k) {
    int kd = 2 * n - 1 - k;
    match_dagger_legs(eq, x.layers[k], {1, k, 0}, {1, kd, 0});
    if (x.layers[k].kind == EventKind::Vertex) pairs.push_back({{1, k}, {1, kd}});
  }
  return pairing_morphism(m, identity_diagram(x.source), tgt, eq, pairs);
}

ThreeMorphism ev3(const GrayModel& m, const TwoMorphismDiagram& x) {
  auto src = otimes_compose(x, dagger_dual(x));
  const int n = static_cast<int>(x.layers.size());
  std::vector<std::pair<LegRef, LegRef>> eq;
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> pairs;
  for (int k = 0; k < n; ++k) {
    int kd = n - 1 - k;  // dagger layer of x layer k
    match_dagger_legs(eq, x.layers[k], {0, n + k, 0}, {0, kd, 0});
    if (x.layers[k].kind == EventKind::Vertex) pairs.push_back({{0, n + k}, {0, kd}});
  }
  return pairing_morphism(m, src, identity_diagram(x.target), eq, pairs);
}

double distance(const ThreeMorphism& a, const ThreeMorphism& b) {
  if (!(a.source == b.source) || !(a.target == b.target) || a.engine != b.engine)
    return std::numeric_limits<double>::infinity();
  if (a.engine == Engine::StateSum) return std::abs(a.scalar - b.scalar);
  double d = 0.0;
  for (const auto& [k, M] : a.blocks) {
    auto it = b.blocks.find(k);
    if (M.size() == 0) continue;
    double r = it == b.blocks.end() ? M.cwiseAbs().maxCoeff()
               : (M.rows() == it->second.rows() && M.cols() == it->second.cols())
                   ? (M - it->second).cwiseAbs().maxCoeff()
                   : std::numeric_limits<double>::infinity();
    d = std::max(d, r);
  }
  for (const auto& [k, M] : b.blocks)
    if (!a.blocks.count(k) && M.size()) d = std::max(d, M.cwiseAbs().maxCoeff());
  return d;
}

// ---------------------------------------------------------------- movies

std::string to_string(MovieEventKind k) {
  switch (k) {
    case MovieEventKind::Insert: return "insert";
    case MovieEventKind::Crossing: return "crossing";
    case MovieEventKind::Coev: return "coev";
    case MovieEventKind::Ev: return "ev";
    case MovieEventKind::Triangulator: return "triangulator";
    case MovieEventKind::TriangulatorInverse: return "triangulator_inverse";
  }
  return "?";
}

namespace {

LinearWord level_word(const TwoMorphismDiagram& d, int i) {
  return i == 0 ? d.source.entries : d.layers[i - 1].after();
}

TwoMorphismDiagram sub_diagram(const TwoMorphismDiagram& d, int from, int to) {
  if (from < 0 || to > static_cast<int>(d.layers.size()) || from > to)
    throw ComposeError("movie event outside the frame");
  const auto& obj = d.source.source;
  return {make_word(level_word(d, from), obj), make_word(level_word(d, to), obj),
          {d.layers.begin() + from, d.layers.begin() + to}};
}

TwoMorphismDiagram layer_diagram(const std::vector<LayerEvent>& layers, const std::string& obj) {
  if (layers.empty()) throw ComposeError("movie event without layers");
  return {make_word(layers.front().before(), obj), make_word(layers.back().after(), obj), layers};
}

LinearWord slice(const LinearWord& w, std::size_t a, std::size_t b) {
  return {w.begin() + static_cast<long>(a), w.begin() + static_cast<long>(b)};
}

struct Step {
  TwoMorphismDiagram frame;
  ThreeMorphism morphism;
};

// the local 3-morphism on layers [at, at + count), extended by identities
Step apply_event(const GrayModel& m, const TwoMorphismDiagram& f, const MovieEvent& ev) {
  const auto& obj = f.source.source;
  const int n = static_cast<int>(f.layers.size());
  int count = ev.count;
  ThreeMorphism local;
  switch (ev.kind) {
    case MovieEventKind::Insert: {
      auto src = sub_diagram(f, ev.at, ev.at + count);
      TwoMorphismDiagram tgt = ev.layers.empty() ? identity_diagram(src.source)
                                                 : layer_diagram(ev.layers, obj);
      if (tgt.source != src.source || tgt.target != src.target)
        throw ComposeError("inserted layers do not fit the frame");
      local = scale(hom_basis_element(m, src, tgt, ev.basis), ev.coefficient);
      break;
    }
    case MovieEventKind::Crossing: {
      count = 2;
      if (ev.at + 1 >= n) throw ComposeError("crossing needs two layers");
      const auto& lo = f.layers[ev.at];
      const auto& up = f.layers[ev.at + 1];
      const std::size_t pl = lo.left.size(), pu = up.left.size();
      auto bare = [](LayerEvent e, LinearWord left) {
        e.left = std::move(left);
        e.right.clear();
        return e;
      };
      if (pu + up.lower().size() <= pl) {
        auto X = single_layer(bare(up, {}), obj);
        auto Y = single_layer(bare(lo, slice(lo.left, pu + up.lower().size(), pl)), obj);
        local = whisker_left(m, make_word(up.left, obj),
                             whisker_right(m, tensorator(m, X, Y), make_word(lo.right, obj)));
      } else if (pl + lo.upper().size() <= pu) {
        auto X = single_layer(bare(lo, {}), obj);
        auto Y = single_layer(bare(up, slice(up.left, pl + lo.upper().size(), pu)), obj);
        local = whisker_left(m, make_word(lo.left, obj),
                             whisker_right(m, tensorator_inverse(m, X, Y), make_word(up.right, obj)));
      } else {
        throw ComposeError("crossing layers overlap");
      }
      break;
    }
    case MovieEventKind::Coev:
      count = 0;
      local = coev3(m, layer_diagram(ev.layers, obj));
      break;
    case MovieEventKind::Ev:
      count = 2 * static_cast<int>(ev.layers.size());
      local = ev3(m, dagger_dual(layer_diagram(ev.layers, obj)));
      break;
    case MovieEventKind::Triangulator: {
      count = 2 * static_cast<int>(ev.word.entries.size());
      if (ev.at >= n) throw ComposeError("triangulator outside the frame");
      auto lw = f.layers[ev.at].left;
      auto w = level_word(f, ev.at);
      const std::size_t r0 = lw.size() + ev.word.entries.size();
      if (r0 > w.size()) throw ComposeError("triangulator word does not fit");
      local = whisker_left(m, make_word(lw, obj),
                           whisker_right(m, triangulator(m, ev.word), make_word(slice(w, r0, w.size()), obj)));
      break;
    }
    case MovieEventKind::TriangulatorInverse: {
      count = 0;
      auto w = level_word(f, ev.at);
      const std::size_t r0 = ev.offset + ev.word.entries.size();
      if (ev.offset < 0 || r0 > w.size()) throw ComposeError("zigzag word does not fit");
      local = whisker_left(m, make_word(slice(w, 0, ev.offset), obj),
                           whisker_right(m, triangulator_inverse(m, ev.word),
                                         make_word(slice(w, r0, w.size()), obj)));
      break;
    }
  }
  auto here = sub_diagram(f, ev.at, ev.at + count);
  if (!(local.source == here))
    throw ComposeError(to_string(ev.kind) + " event does not match the frame at layer " +
                       std::to_string(ev.at));
  auto below = sub_diagram(f, 0, ev.at);
  auto above = sub_diagram(f, ev.at + count, n);
  Step s;
  s.frame = otimes_compose(above, otimes_compose(local.target, below));
  s.morphism = otimes_compose(m, identity3(m, above), otimes_compose(m, local, identity3(m, below)));
  return s;
}

}  // namespace

std::vector<TwoMorphismDiagram> movie_frames(const Movie& mv) {
  // frames need no payloads; the state sum engine skips them
  GrayModel shape{Engine::StateSum, nullptr, nullptr};
  std::vector<TwoMorphismDiagram> out{mv.start};
  for (const auto& ev : mv.events) {
    if (ev.kind == MovieEventKind::Insert) {
      auto src = sub_diagram(out.back(), ev.at, ev.at + ev.count);
      auto tgt = ev.layers.empty() ? identity_diagram(src.source)
                                   : layer_diagram(ev.layers, out.back().source.source);
      if (tgt.source != src.source || tgt.target != src.target)
        throw ComposeError("inserted layers do not fit the frame");
      auto below = sub_diagram(out.back(), 0, ev.at);
      auto above = sub_diagram(out.back(), ev.at + ev.count, static_cast<int>(out.back().layers.size()));
      out.push_back(otimes_compose(above, otimes_compose(tgt, below)));
      continue;
    }
    out.push_back(apply_event(shape, out.back(), ev).frame);
  }
  return out;
}

ThreeMorphism evaluate_3d_diagram(const GrayModel& m, const Movie& mv) {
  auto rep = validate_diagram_structure(mv.start);
  if (!rep.clean()) throw ComposeError("movie start: " + rep.items.front().what);
  if (m.dd) {
    auto full = validate_diagram(*m.dd, mv.start);
    if (!full.clean()) throw ComposeError("movie start: " + full.items.front().what);
  }
  ThreeMorphism acc = identity3(m, mv.start);
  TwoMorphismDiagram frame = mv.start;
  for (const auto& ev : mv.events) {
    auto s = apply_event(m, frame, ev);
    acc = circ_compose(s.morphism, acc);
    frame = std::move(s.frame);
  }
  return acc;
}

}  // namespace dtqft
