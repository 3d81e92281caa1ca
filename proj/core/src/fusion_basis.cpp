#include <Eigen/Dense>
#include <numeric>

#include "dtqft/fusion.hpp"
#include "engines_internal.hpp"
#include "planar_net.hpp"

namespace dtqft {

HomSpaceBasis hom_basis(const FusionCategory& cat, const SignedSimpleWord& w) {
  HomSpaceBasis basis{w, {}};
  const int m = static_cast<int>(w.size());
  std::vector<int> x(m);
  for (int i = 0; i < m; ++i) x[i] = object_of(cat, w[i]);
  if (m == 0) {
    basis.trees.push_back({});
    return basis;
  }
  if (m == 1) {
    if (x[0] == cat.unit) basis.trees.push_back({x[0]});
    return basis;
  }
  // depth-first over k[1..m-2], deterministic order
  std::vector<int> k(m - 1);
  k[0] = x[0];
  auto rec = [&](auto&& self, int i) -> void {
    if (i == m - 1) {
      if (k[m - 2] == cat.dual(x[m - 1])) basis.trees.push_back(k);
      return;
    }
    for (int c : cat.channels(k[i - 1], x[i])) {
      k[i] = c;
      self(self, i + 1);
    }
  };
  if (m == 2) {
    if (x[1] == cat.dual(x[0])) basis.trees.push_back(k);
  } else {
    rec(rec, 1);
  }
  return basis;
}

SignedSimpleWord ColoredSphereGraph::vertex_word(int v) const {
  SignedSimpleWord w;
  for (const auto& d : rotation[v])
    w.push_back({edges[d.edge].colour, d.at_tail ? Sign::Plus : Sign::Minus});
  return w;
}

int ColoredSphereGraph::euler_defect() const {
  // darts: 2e + (tail/head); check per component V - E + F = 2
  const int E = static_cast<int>(edges.size());
  const int V = static_cast<int>(rotation.size());
  std::vector<int> vert(2 * E, -1), sig(2 * E, -1);
  for (int v = 0; v < V; ++v) {
    const auto& r = rotation[v];
    for (std::size_t i = 0; i < r.size(); ++i) {
      int d = 2 * r[i].edge + (r[i].at_tail ? 0 : 1);
      int nx = 2 * r[(i + 1) % r.size()].edge + (r[(i + 1) % r.size()].at_tail ? 0 : 1);
      if (vert[d] >= 0) return -1000;  // dart used twice
      vert[d] = v;
      sig[d] = nx;
    }
  }
  for (int d = 0; d < 2 * E; ++d)
    if (vert[d] < 0) return -1000;
  for (int e = 0; e < E; ++e)
    if (vert[2 * e] != edges[e].tail || vert[2 * e + 1] != edges[e].head) return -1000;
  // union-find over vertices
  std::vector<int> parent(V);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const auto& e : edges) parent[find(e.tail)] = find(e.head);
  std::vector<long> chi(V, 0);
  for (int v = 0; v < V; ++v) chi[find(v)] += 1;
  for (const auto& e : edges) chi[find(e.tail)] -= 1;
  std::vector<char> seen(2 * E, 0);
  for (int s = 0; s < 2 * E; ++s) {
    if (seen[s]) continue;
    for (int d = s; !seen[d]; d = sig[d ^ 1]) seen[d] = 1;
    chi[find(vert[s])] += 1;
  }
  for (int v = 0; v < V; ++v)
    if (rotation[v].empty()) chi[find(v)] += 1;
  int defect = 0;
  for (int v = 0; v < V; ++v)
    if (find(v) == v) defect += static_cast<int>(std::abs(chi[v] - 2));
  return defect;
}

namespace {

detail::Net build_net(const FusionCategory& cat, const ColoredSphereGraph& g,
                      const std::vector<HomSpaceBasis>& bases, const std::vector<int>& choice) {
  detail::Net n;
  const int E = static_cast<int>(g.edges.size());
  std::vector<int> dart(2 * E, -1);
  int vid = 0;
  for (int e = 0; e < E; ++e) {
    dart[2 * e] = n.add_dart(-1, g.edges[e].colour);
    dart[2 * e + 1] = n.add_dart(-1, cat.dual(g.edges[e].colour));
    n.link(dart[2 * e], dart[2 * e + 1]);
  }
  for (std::size_t v = 0; v < g.rotation.size(); ++v) {
    const auto& rot = g.rotation[v];
    const int m = static_cast<int>(rot.size());
    std::vector<int> legs;
    for (const auto& d : rot) legs.push_back(dart[2 * d.edge + (d.at_tail ? 0 : 1)]);
    if (m <= 3) {
      for (int d : legs) n.vert[d] = vid;
      if (m) n.ring(legs);
      ++vid;
      continue;
    }
    const auto& k = bases[v].trees[choice[v]];
    int back = -1;
    for (int i = 1; i <= m - 2; ++i) {
      std::vector<int> piece;
      if (i == 1) piece = {legs[0], legs[1]};
      else piece = {back, legs[i]};
      if (i == m - 2) {
        piece.push_back(legs[m - 1]);
      } else {
        int fwd = n.add_dart(-1, cat.dual(k[i]));
        int nb = n.add_dart(-1, k[i]);
        n.link(fwd, nb);
        piece.push_back(fwd);
        back = nb;
      }
      for (int d : piece) n.vert[d] = vid;
      n.ring(piece);
      ++vid;
    }
  }
  for (int c : g.free_loops) n.loops.push_back(c);
  return n;
}

}  // namespace

cplx evaluate_sphere_graph_at(const FusionCategory& cat, const ColoredSphereGraph& g,
                              const std::vector<HomSpaceBasis>& bases,
                              const std::vector<int>& choice) {
  detail::NetEvaluator ev(cat);
  return ev.value(build_net(cat, g, bases, choice));
}

GraphValue evaluate_sphere_graph(const FusionCategory& cat, const ColoredSphereGraph& g) {
  detail::NetEvaluator ev(cat);
  return evaluate_sphere_graph_with(ev, cat, g);
}

GraphValue evaluate_sphere_graph_with(detail::NetEvaluator& ev, const FusionCategory& cat,
                                      const ColoredSphereGraph& g) {
  if (g.euler_defect() != 0) throw TopologyError("graph is not a planar map on spheres");
  for (const auto& e : g.edges)
    if (e.colour < 0 || e.colour >= cat.n()) throw ColourError("edge colour out of range");
  GraphValue out;
  std::vector<HomSpaceBasis> bases;
  for (std::size_t v = 0; v < g.rotation.size(); ++v) {
    bases.push_back(hom_basis(cat, g.vertex_word(static_cast<int>(v))));
    out.dims.push_back(bases.back().dim());
  }
  std::size_t total = 1;
  for (int d : out.dims) total *= static_cast<std::size_t>(d);
  out.values.assign(total, 0.0);
  if (total == 0) return out;
  std::vector<int> choice(out.dims.size(), 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    out.values[idx] = ev.value(build_net(cat, g, bases, choice));
    for (int p = static_cast<int>(choice.size()) - 1; p >= 0; --p) {
      if (++choice[p] < out.dims[p]) break;
      choice[p] = 0;
    }
  }
  return out;
}

EdgePairing edge_pairing(const FusionCategory& cat, const SignedSimpleWord& w) {
  const int m = static_cast<int>(w.size());
  ColoredSphereGraph g;
  g.rotation.assign(2, {});
  // vertex 0 carries w, vertex 1 carries w^#; leg i <-> leg m-1-i
  for (int i = 0; i < m; ++i) {
    ColoredSphereGraph::Edge e;
    e.colour = w[i].simple;
    bool out0 = w[i].sign == Sign::Plus;
    e.tail = out0 ? 0 : 1;
    e.head = out0 ? 1 : 0;
    g.edges.push_back(e);
  }
  for (int i = 0; i < m; ++i) g.rotation[0].push_back({i, w[i].sign == Sign::Plus});
  for (int j = 0; j < m; ++j) {
    int i = m - 1 - j;
    g.rotation[1].push_back({i, w[i].sign != Sign::Plus});
  }
  EdgePairing out;
  if (m == 0) {
    out.ev = {{1.0}};
    out.coev = {{1.0}};
    return out;
  }
  auto val = evaluate_sphere_graph(cat, g);
  const int d0 = val.dims[0], d1 = val.dims[1];
  if (d0 == 0) return out;
  Eigen::MatrixXcd P(d0, d1);
  for (int i = 0; i < d0; ++i)
    for (int j = 0; j < d1; ++j) P(i, j) = val.values[i * d1 + j];
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(P);
  if (d0 != d1 || !lu.isInvertible() ||
      std::abs(lu.determinant()) < 1e-12)
    throw DegeneracyError("edge pairing is degenerate for word of length " + std::to_string(m));
  Eigen::MatrixXcd Q = lu.inverse();  // coev[j][i], j over w^#, i over w
  out.ev.assign(d0, std::vector<cplx>(d1));
  out.coev.assign(d1, std::vector<cplx>(d0));
  for (int i = 0; i < d0; ++i)
    for (int j = 0; j < d1; ++j) out.ev[i][j] = P(i, j);
  for (int j = 0; j < d1; ++j)
    for (int i = 0; i < d0; ++i) out.coev[j][i] = Q(j, i);
  return out;
}

}  // namespace dtqft
