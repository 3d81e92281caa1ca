#include <algorithm>
#include <map>
#include <set>

#include "dtqft/strata.hpp"

namespace dtqft {

namespace {

int parity(std::array<int, 4> p) {
  int inv = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) inv += p[i] > p[j] ? 1 : 0;
  return inv % 2 == 0 ? 1 : -1;
}

using Tri = std::array<int, 3>;

Tri sorted3(Tri t) {
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

Triangulation boundary_delta4() {
  Triangulation t;
  t.num_vertices = 5;
  for (int skip = 0; skip < 5; ++skip) {
    std::array<int, 4> tet{};
    int k = 0;
    for (int v = 0; v < 5; ++v)
      if (v != skip) tet[k++] = v;
    t.tets.push_back(tet);
  }
  return t;
}

Triangulation sphere_times_circle(int layers) {
  if (layers < 3) throw TopologyError("sphere_times_circle needs at least 3 layers");
  Triangulation t;
  t.num_vertices = 4 * layers;
  const Tri faces[4] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  for (int l = 0; l < layers; ++l) {
    int n = (l + 1) % layers;
    for (const auto& f : faces) {
      int a = f[0] + 4 * l, b = f[1] + 4 * l, c = f[2] + 4 * l;
      int a2 = f[0] + 4 * n, b2 = f[1] + 4 * n, c2 = f[2] + 4 * n;
      t.tets.push_back({a, b, c, c2});
      t.tets.push_back({a, b, b2, c2});
      t.tets.push_back({a, a2, b2, c2});
    }
  }
  return t;
}

StratifiedBordism triangulation_bordism(
    const Triangulation& t, const std::string& neutral,
    const std::vector<std::pair<std::array<int, 3>, std::string>>& labels) {
  const int T = static_cast<int>(t.tets.size());
  std::map<std::pair<int, int>, int> edge_id;
  std::map<Tri, int> tri_id;
  std::vector<std::pair<int, int>> edges;
  std::vector<Tri> tris;
  std::vector<std::vector<int>> tri_tets;
  std::vector<std::array<int, 4>> tets;
  for (auto tet : t.tets) {
    std::sort(tet.begin(), tet.end());
    for (int i = 0; i < 4; ++i)
      if (tet[i] < 0 || tet[i] >= t.num_vertices || (i && tet[i] == tet[i - 1]))
        throw TopologyError("degenerate tetrahedron");
    tets.push_back(tet);
  }
  for (int k = 0; k < T; ++k) {
    const auto& tet = tets[k];
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (edge_id.emplace(std::pair{tet[i], tet[j]}, static_cast<int>(edges.size())).second)
          edges.push_back({tet[i], tet[j]});
    for (int skip = 0; skip < 4; ++skip) {
      Tri f{};
      int q = 0;
      for (int i = 0; i < 4; ++i)
        if (i != skip) f[q++] = tet[i];
      auto [it, fresh] = tri_id.emplace(f, static_cast<int>(tris.size()));
      if (fresh) {
        tris.push_back(f);
        tri_tets.emplace_back();
      }
      tri_tets[it->second].push_back(k);
    }
  }
  for (const auto& tt : tri_tets)
    if (tt.size() != 2) throw TopologyError("triangulation is not a closed 3-manifold");

  // coherent orientation: sign of the sorted order of each tet
  std::vector<int> orient(T, 0);
  auto induced = [&](int k, int tri) {
    // orientation induced on the sorted triangle by tet k
    const auto& tet = tets[k];
    int skip = 0;
    for (int i = 0; i < 4; ++i)
      if (std::find(tris[tri].begin(), tris[tri].end(), tet[i]) == tris[tri].end()) skip = i;
    return orient[k] * (skip % 2 == 0 ? 1 : -1);
  };
  for (int seed = 0; seed < T; ++seed) {
    if (orient[seed]) continue;
    orient[seed] = 1;
    std::vector<int> stack{seed};
    while (!stack.empty()) {
      int k = stack.back();
      stack.pop_back();
      for (std::size_t f = 0; f < tris.size(); ++f) {
        const auto& tt = tri_tets[f];
        if (tt[0] != k && tt[1] != k) continue;
        int o = tt[0] == k ? tt[1] : tt[0];
        int want = -induced(k, static_cast<int>(f));
        if (!orient[o]) {
          orient[o] = 1;
          if (induced(o, static_cast<int>(f)) != want) orient[o] = -1;
          stack.push_back(o);
        } else if (induced(o, static_cast<int>(f)) != want) {
          throw TopologyError("triangulation is not orientable");
        }
      }
    }
  }

  StratifiedBordism b;
  b.s0.resize(t.num_vertices);
  for (int k = 0; k < T; ++k) b.s3.push_back({"*", true});
  // oriented cycle of each triangle
  std::vector<Tri> cycle(tris);
  b.s2.resize(tris.size());
  for (std::size_t f = 0; f < tris.size(); ++f) b.s2[f].label = neutral;
  for (const auto& [tri, lab] : labels) {
    auto it = tri_id.find(sorted3(tri));
    if (it == tri_id.end()) throw TopologyError("labelled triangle not in the triangulation");
    b.s2[it->second].label = lab;
    cycle[it->second] = tri;
  }
  auto sign_in = [&](int f, int i, int j) {
    const auto& c = cycle[f];
    for (int q = 0; q < 3; ++q)
      if (c[q] == i && c[(q + 1) % 3] == j) return Sign::Plus;
    return Sign::Minus;
  };

  // 1-strata: loop around i -> j goes from ijx to ijy when (i,j,x,y) is positive
  std::vector<std::map<int, int>> slot_of(edges.size());  // triangle -> position
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [i, j] = edges[e];
    std::map<int, std::pair<int, int>> next;  // from-tri -> (tet, to-tri)
    for (int k = 0; k < T; ++k) {
      const auto& tet = tets[k];
      if (std::find(tet.begin(), tet.end(), i) == tet.end() ||
          std::find(tet.begin(), tet.end(), j) == tet.end())
        continue;
      int x = -1, y = -1;
      for (int v : tet)
        if (v != i && v != j) (x < 0 ? x : y) = v;
      if (parity({i, j, x, y}) * orient[k] < 0) std::swap(x, y);
      next[tri_id.at(sorted3({i, j, x}))] = {k, tri_id.at(sorted3({i, j, y}))};
    }
    Stratum1 s;
    s.start = i;
    s.end = j;
    int f0 = next.begin()->first;
    int f = f0;
    do {
      slot_of[e][f] = static_cast<int>(s.word.size());
      s.word.push_back({f, sign_in(f, i, j)});
      f = next.at(f).second;
    } while (f != f0 && s.word.size() <= next.size());
    if (s.word.size() != next.size()) throw TopologyError("edge link is not a single cycle");
    // sides from the wedges
    const int m = static_cast<int>(s.word.size());
    int ff = f0;
    for (int q = 0; q < m; ++q) {
      auto [k, to] = next.at(ff);
      auto& a = b.s2[s.word[q].stratum];
      (s.word[q].sign == Sign::Plus ? a.pos : a.neg) = k;
      auto& c = b.s2[s.word[(q + 1) % m].stratum];
      (s.word[(q + 1) % m].sign == Sign::Plus ? c.neg : c.pos) = k;
      ff = to;
    }
    b.s1.push_back(std::move(s));
  }
  // corners: triangle {v,x,y} joins the ends vx and vy at v
  for (std::size_t f = 0; f < tris.size(); ++f) {
    const auto& tr = tris[f];
    for (int q = 0; q < 3; ++q) {
      int v = tr[q], x = tr[(q + 1) % 3], y = tr[(q + 2) % 3];
      auto end_slot = [&](int w) {
        int e = edge_id.at({std::min(v, w), std::max(v, w)});
        int pos = slot_of[e].at(static_cast<int>(f));
        int m = static_cast<int>(b.s1[e].word.size());
        return v < w ? std::pair{2 * e, pos} : std::pair{2 * e + 1, m - 1 - pos};
      };
      auto [ea, sa] = end_slot(x);
      auto [eb, sb] = end_slot(y);
      b.s0[v].corners.push_back({ea, sa, eb, sb});
    }
  }
  return b;
}

}  // namespace dtqft

namespace dtqft {

namespace {

BoundaryComponent boundary_of(const DecoratedSurface& s, bool incoming, std::string name) {
  BoundaryComponent bc;
  bc.name = std::move(name);
  bc.incoming = incoming;
  bc.surface = s;
  bc.vertex_stratum.assign(s.num_vertices(), -1);
  bc.edge_stratum.assign(s.num_edges(), -1);
  bc.region_stratum.assign(s.regions.size(), -1);
  return bc;
}

int add_boundary_vertex(StratifiedBordism& b, int comp, int x) {
  Stratum0 z;
  z.boundary = true;
  z.component = comp;
  z.surface_vertex = x;
  b.s0.push_back(z);
  b.boundary[comp].vertex_stratum[x] = static_cast<int>(b.s0.size()) - 1;
  return static_cast<int>(b.s0.size()) - 1;
}

}  // namespace

StratifiedBordism product_cylinder(const DecoratedSurface& s) {
  StratifiedBordism b;
  b.boundary.push_back(boundary_of(s, true, "in"));
  b.boundary.push_back(boundary_of(s, false, "out"));
  for (std::size_t r = 0; r < s.regions.size(); ++r) {
    bool ball = s.regions[r].faces.size() <= 1;
    b.s3.push_back({s.regions[r].label, ball});
    b.boundary[0].region_stratum[r] = b.boundary[1].region_stratum[r] = static_cast<int>(r);
  }
  for (int e = 0; e < s.num_edges(); ++e) {
    Stratum2 r;
    r.label = s.edges[e].label;
    r.chi = s.edges[e].circle() ? 0 : 1;
    r.neg = s.region_right(2 * e);
    r.pos = s.region_right(2 * e + 1);
    b.s2.push_back(r);
    b.boundary[0].edge_stratum[e] = b.boundary[1].edge_stratum[e] = e;
  }
  for (int v = 0; v < s.num_vertices(); ++v) {
    Stratum1 line;
    line.d1 = s.vertex_label[v];
    for (const auto& d : s.rotation[v])
      line.word.push_back({d.edge, d.at_tail ? Sign::Plus : Sign::Minus});
    if (line.word.empty()) line.anchor = s.region_of_face(-1 - v);
    line.start = add_boundary_vertex(b, 0, v);
    line.end = add_boundary_vertex(b, 1, v);
    b.s1.push_back(line);
  }
  return b;
}

StratifiedBordism cylinder(const DecoratedSurface& s0, const std::string& neutral) {
  const DecoratedSurface s = fine_surface(s0, neutral);
  const int V = s.num_vertices(), E = s.num_edges();
  const int F = static_cast<int>(s.regions.size());
  StratifiedBordism b;
  b.boundary.push_back(boundary_of(s, true, "in"));
  b.boundary.push_back(boundary_of(s, false, "out"));
  // 3-strata: lower L_f = f, upper U_f = F + f
  for (int f = 0; f < F; ++f) b.s3.push_back({s.regions[f].label, true});
  for (int f = 0; f < F; ++f) b.s3.push_back({s.regions[f].label, true});
  auto L = [&](int f) { return f; };
  auto U = [&](int f) { return F + f; };
  for (int f = 0; f < F; ++f) {
    b.boundary[0].region_stratum[f] = L(f);
    b.boundary[1].region_stratum[f] = U(f);
  }
  // 2-strata: T_e = e, B_e = E + e, M_f = 2E + f
  auto T = [&](int e) { return e; };
  auto B = [&](int e) { return E + e; };
  auto M = [&](int f) { return 2 * E + f; };
  std::vector<int> right(E), left(E);
  for (int e = 0; e < E; ++e) {
    right[e] = s.region_right(2 * e);
    left[e] = s.region_right(2 * e + 1);
  }
  for (int e = 0; e < E; ++e) b.s2.push_back({s.edges[e].label, 1, U(right[e]), U(left[e])});
  for (int e = 0; e < E; ++e) b.s2.push_back({s.edges[e].label, 1, L(right[e]), L(left[e])});
  for (int f = 0; f < F; ++f) b.s2.push_back({neutral, 1, L(f), U(f)});
  for (int e = 0; e < E; ++e) {
    b.boundary[0].edge_stratum[e] = B(e);
    b.boundary[1].edge_stratum[e] = T(e);
  }
  // 0-strata: mid vertices, then boundary vertices
  for (int v = 0; v < V; ++v) b.s0.push_back(Stratum0{});
  std::vector<int> bottom(V), top(V);
  for (int v = 0; v < V; ++v) {
    bottom[v] = add_boundary_vertex(b, 0, v);
    top[v] = add_boundary_vertex(b, 1, v);
  }
  // 1-strata: Up_v = v, Down_v = V + v, H_e = 2V + e
  for (int v = 0; v < V; ++v) {
    Stratum1 up;
    up.d1 = s.vertex_label[v];
    for (const auto& d : s.rotation[v]) up.word.push_back({T(d.edge), d.at_tail ? Sign::Plus : Sign::Minus});
    up.start = v;
    up.end = top[v];
    b.s1.push_back(up);
  }
  for (int v = 0; v < V; ++v) {
    Stratum1 down;
    down.d1 = s.vertex_label[v];
    for (const auto& d : s.rotation[v]) down.word.push_back({B(d.edge), d.at_tail ? Sign::Plus : Sign::Minus});
    down.start = bottom[v];
    down.end = v;
    b.s1.push_back(down);
  }
  for (int e = 0; e < E; ++e) {
    Stratum1 h;
    h.word = {{T(e), Sign::Minus}, {M(right[e]), Sign::Minus}, {B(e), Sign::Plus},
              {M(left[e]), Sign::Plus}};
    h.start = s.edges[e].tail;
    h.end = s.edges[e].head;
    b.s1.push_back(h);
  }
  // corners at each mid vertex
  for (int v = 0; v < V; ++v) {
    const auto& rot = s.rotation[v];
    const int m = static_cast<int>(rot.size());
    const int up_end = 2 * v, down_end = 2 * (V + v) + 1;
    auto h_end = [&](const SurfaceDart& d) { return 2 * (2 * V + d.edge) + (d.at_tail ? 0 : 1); };
    auto slot_T = [](const SurfaceDart& d) { return d.at_tail ? 0 : 3; };
    auto slot_B = [](const SurfaceDart& d) { return d.at_tail ? 2 : 1; };
    auto slot_left = [](const SurfaceDart& d) { return d.at_tail ? 3 : 2; };
    auto slot_right = [](const SurfaceDart& d) { return d.at_tail ? 1 : 0; };
    auto& cs = b.s0[v].corners;
    for (int i = 0; i < m; ++i) {
      const auto& d = rot[i];
      cs.push_back({up_end, i, h_end(d), slot_T(d)});
      cs.push_back({down_end, m - 1 - i, h_end(d), slot_B(d)});
      const auto& nx = rot[(i + 1) % m];
      cs.push_back({h_end(d), slot_left(d), h_end(nx), slot_right(nx)});
    }
  }
  return b;
}

}  // namespace dtqft

namespace dtqft {

StratifiedBordism disjoint_union(const StratifiedBordism& a, const StratifiedBordism& b) {
  StratifiedBordism out = a;
  const int o0 = static_cast<int>(a.s0.size()), o1 = static_cast<int>(a.s1.size());
  const int o2 = static_cast<int>(a.s2.size()), o3 = static_cast<int>(a.s3.size());
  const int oc = static_cast<int>(a.boundary.size());
  for (auto z : b.s0) {
    if (z.boundary) z.component += oc;
    for (auto& c : z.corners) {
      c.end_a += 2 * o1;
      c.end_b += 2 * o1;
    }
    out.s0.push_back(z);
  }
  for (auto e : b.s1) {
    for (auto& x : e.word) x.stratum += o2;
    if (e.start >= 0) e.start += o0;
    if (e.end >= 0) e.end += o0;
    if (e.anchor >= 0) e.anchor += o3;
    out.s1.push_back(e);
  }
  for (auto r : b.s2) {
    r.neg += o3;
    r.pos += o3;
    out.s2.push_back(r);
  }
  for (const auto& u : b.s3) out.s3.push_back(u);
  for (auto c : b.boundary) {
    for (int& v : c.vertex_stratum) v += o0;
    for (int& r : c.edge_stratum) r += o2;
    for (int& u : c.region_stratum) u += o3;
    out.boundary.push_back(c);
  }
  return out;
}

namespace {

bool same_surface(const DecoratedSurface& x, const DecoratedSurface& y) {
  if (x.num_vertices() != y.num_vertices() || x.num_edges() != y.num_edges() ||
      x.regions.size() != y.regions.size())
    return false;
  for (int v = 0; v < x.num_vertices(); ++v)
    if (!(x.rotation[v] == y.rotation[v])) return false;
  for (int e = 0; e < x.num_edges(); ++e)
    if (x.edges[e].label != y.edges[e].label || x.edges[e].tail != y.edges[e].tail ||
        x.edges[e].head != y.edges[e].head)
      return false;
  for (std::size_t r = 0; r < x.regions.size(); ++r)
    if (x.regions[r].label != y.regions[r].label || x.regions[r].faces != y.regions[r].faces)
      return false;
  return true;
}

struct DSU {
  std::vector<int> p;
  explicit DSU(int n) : p(n) {
    for (int i = 0; i < n; ++i) p[i] = i;
  }
  int find(int a) {
    while (p[a] != a) a = p[a] = p[p[a]];
    return a;
  }
};

// reverse a 1-stratum; corner end ids swap, slots stay
void reverse_line(StratifiedBordism& b, int e) {
  auto& s = b.s1[e];
  std::swap(s.start, s.end);
  s.word = hash_word(s.word);
  for (auto& z : b.s0)
    for (auto& c : z.corners) {
      if (c.end_a / 2 == e) c.end_a ^= 1;
      if (c.end_b / 2 == e) c.end_b ^= 1;
    }
}

}  // namespace

StratifiedBordism self_glue(const StratifiedBordism& in_b, int out_comp, int in_comp) {
  StratifiedBordism b = in_b;
  const auto& co = b.boundary.at(out_comp);
  const auto& ci = b.boundary.at(in_comp);
  if (co.incoming || !ci.incoming) throw ComposeError("glue needs an outgoing and an incoming side");
  if (!same_surface(co.surface, ci.surface))
    throw ComposeError("boundary surfaces differ; cannot glue");
  const DecoratedSurface sf = co.surface;
  const int N1 = static_cast<int>(b.s1.size()), N2 = static_cast<int>(b.s2.size());
  const int N3 = static_cast<int>(b.s3.size());
  // 3-strata
  DSU u3(N3);
  std::vector<char> ball(N3);
  for (int u = 0; u < N3; ++u) ball[u] = b.s3[u].ball;
  for (std::size_t f = 0; f < sf.regions.size(); ++f) {
    int x = u3.find(co.region_stratum[f]), y = u3.find(ci.region_stratum[f]);
    bool disc = sf.regions[f].faces.size() == 1;
    if (x == y) {
      ball[x] = 0;
      continue;
    }
    u3.p[x] = y;
    ball[y] = ball[x] && ball[y] && disc;
  }
  // 2-strata
  DSU u2(N2);
  std::vector<int> chi(N2);
  for (int r = 0; r < N2; ++r) chi[r] = b.s2[r].chi;
  for (int e = 0; e < sf.num_edges(); ++e) {
    int x = u2.find(co.edge_stratum[e]), y = u2.find(ci.edge_stratum[e]);
    int seam = sf.edges[e].circle() ? 0 : 1;
    if (x == y) {
      chi[x] -= seam;
      continue;
    }
    u2.p[x] = y;
    chi[y] = chi[x] + chi[y] - seam;
  }
  // 1-strata through each glued vertex
  DSU u1(N1);
  std::vector<int> dead0;
  for (int v = 0; v < sf.num_vertices(); ++v) {
    int vo = co.vertex_stratum[v], vi = ci.vertex_stratum[v];
    dead0.push_back(vo);
    dead0.push_back(vi);
    int eo = b.ends_at(vo).at(0) / 2, ei = b.ends_at(vi).at(0) / 2;
    int ro = u1.find(eo), ri = u1.find(ei);
    if (ro == ri) {
      // the chain closes up
      auto& s = b.s1[ro];
      s.start = s.end = -1;
      continue;
    }
    // orient the out chain towards vo and the in chain away from vi
    if (b.s1[ro].end != vo) reverse_line(b, ro);
    if (b.s1[ri].start != vi) reverse_line(b, ri);
    auto& a = b.s1[ro];
    const auto& c = b.s1[ri];
    a.end = c.end;
    // the word is carried across the seam unchanged up to 2-strata identification
    u1.p[ri] = ro;
    // corners that referenced ri's end now reference ro's end
    for (auto& z : b.s0)
      for (auto& k : z.corners) {
        if (k.end_a == 2 * ri + 1) k.end_a = 2 * ro + 1;
        if (k.end_b == 2 * ri + 1) k.end_b = 2 * ro + 1;
      }
    b.s1[ri].start = b.s1[ri].end = -2;  // absorbed
  }
  // compact
  std::vector<char> dead(b.s0.size(), 0);
  for (int v : dead0) dead[v] = 1;
  std::vector<int> map0(b.s0.size(), -1), map1(N1, -1), map2(N2, -1), map3(N3, -1);
  StratifiedBordism out;
  for (std::size_t v = 0; v < b.s0.size(); ++v)
    if (!dead[v]) {
      map0[v] = static_cast<int>(out.s0.size());
      out.s0.push_back(b.s0[v]);
    }
  for (int u = 0; u < N3; ++u)
    if (u3.find(u) == u) {
      map3[u] = static_cast<int>(out.s3.size());
      out.s3.push_back({b.s3[u].label, ball[u] != 0});
    }
  for (int u = 0; u < N3; ++u) map3[u] = map3[u3.find(u)];
  for (int r = 0; r < N2; ++r)
    if (u2.find(r) == r) {
      map2[r] = static_cast<int>(out.s2.size());
      Stratum2 s = b.s2[r];
      s.chi = chi[r];
      s.neg = map3[s.neg];
      s.pos = map3[s.pos];
      out.s2.push_back(s);
    }
  for (int r = 0; r < N2; ++r) map2[r] = map2[u2.find(r)];
  for (int e = 0; e < N1; ++e)
    if (b.s1[e].start != -2) {
      map1[e] = static_cast<int>(out.s1.size());
      Stratum1 s = b.s1[e];
      for (auto& x : s.word) x.stratum = map2[x.stratum];
      if (s.start >= 0) s.start = map0[s.start];
      if (s.end >= 0) s.end = map0[s.end];
      if (s.anchor >= 0) s.anchor = map3[s.anchor];
      out.s1.push_back(s);
    }
  for (auto& z : out.s0)
    for (auto& k : z.corners) {
      k.end_a = 2 * map1[k.end_a / 2] + (k.end_a % 2);
      k.end_b = 2 * map1[k.end_b / 2] + (k.end_b % 2);
    }
  std::vector<int> mapc(b.boundary.size(), -1);
  for (std::size_t c = 0; c < b.boundary.size(); ++c) {
    if (static_cast<int>(c) == out_comp || static_cast<int>(c) == in_comp) continue;
    mapc[c] = static_cast<int>(out.boundary.size());
    auto bc = b.boundary[c];
    for (int& v : bc.vertex_stratum) v = map0[v];
    for (int& r : bc.edge_stratum) r = map2[r];
    for (int& u : bc.region_stratum) u = map3[u];
    out.boundary.push_back(bc);
  }
  for (auto& z : out.s0)
    if (z.boundary) z.component = mapc[z.component];
  return out;
}

StratifiedBordism glue(const StratifiedBordism& a, int out_comp, const StratifiedBordism& b,
                       int in_comp) {
  auto u = disjoint_union(a, b);
  return self_glue(u, out_comp, static_cast<int>(a.boundary.size()) + in_comp);
}

StratifiedBordism circle_product(const DecoratedSurface& s, const std::string& neutral) {
  return self_glue(cylinder(s, neutral), 1, 0);
}

StratifiedBordism sphere_fiber_product(const std::string& label, const std::string& neutral) {
  auto b = circle_product(bare_sphere(), neutral);
  // the middle slices are the only 2-strata with one 3-stratum on both sides
  for (auto& r : b.s2)
    if (r.neg == r.pos) r.label = label;
  return b;
}

}  // namespace dtqft

namespace dtqft {

StratifiedBordism linear_fill(const SphereGraphHandle& s) {
  if (!s.all_spheres() || s.num_components() != 1)
    throw TopologyError("linear_fill needs a single sphere");
  StratifiedBordism b;
  const int V = s.num_vertices(), E = s.num_edges();
  b.boundary.push_back(boundary_of(s, false, "out"));
  for (std::size_t f = 0; f < s.regions.size(); ++f) {
    b.s3.push_back({s.regions[f].label, true});
    b.boundary[0].region_stratum[f] = static_cast<int>(f);
  }
  for (int e = 0; e < E; ++e) {
    Stratum2 r;
    r.label = s.edges[e].label;
    r.neg = s.region_right(2 * e);
    r.pos = s.region_right(2 * e + 1);
    b.s2.push_back(r);
    b.boundary[0].edge_stratum[e] = e;
  }
  if (V == 0) return b;  // discs spanning the circles, or nothing
  for (int v = 0; v < V; ++v)
    if (s.rotation[v].empty() || s.num_free_circles())
      throw TopologyError("linear_fill needs a connected graph; refine the surface first");
  b.s0.push_back(Stratum0{});  // apex
  for (int v = 0; v < V; ++v) {
    Stratum1 line;
    line.d1 = s.vertex_label[v];
    for (const auto& d : s.rotation[v]) line.word.push_back({d.edge, d.at_tail ? Sign::Plus : Sign::Minus});
    line.start = 0;
    line.end = add_boundary_vertex(b, 0, v);
    b.s1.push_back(line);
  }
  for (int e = 0; e < E; ++e) {
    auto slot = [&](int dart) {
      int v = s.vertex_of(dart);
      const auto& rot = s.rotation[v];
      for (std::size_t i = 0; i < rot.size(); ++i)
        if (rot[i].id() == dart) return std::pair{2 * v, static_cast<int>(i)};
      throw TopologyError("dart missing");
    };
    auto [ea, sa] = slot(2 * e);
    auto [eb, sb] = slot(2 * e + 1);
    b.s0[0].corners.push_back({ea, sa, eb, sb});
  }
  return b;
}

}  // namespace dtqft
