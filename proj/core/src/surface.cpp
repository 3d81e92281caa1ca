#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "dtqft/strata.hpp"

namespace dtqft {

namespace {

struct DartTables {
  std::vector<int> vert, sig;
};

DartTables dart_tables(const DecoratedSurface& s) {
  DartTables t;
  t.vert.assign(2 * s.edges.size(), -1);
  t.sig.assign(2 * s.edges.size(), -1);
  for (int v = 0; v < s.num_vertices(); ++v) {
    const auto& r = s.rotation[v];
    for (std::size_t i = 0; i < r.size(); ++i) {
      int d = r[i].id();
      if (d < 0 || d >= static_cast<int>(t.vert.size())) continue;
      t.vert[d] = v;
      t.sig[d] = r[(i + 1) % r.size()].id();
    }
  }
  return t;
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int a) {
    while (p[a] != a) a = p[a] = p[p[a]];
    return a;
  }
  void join(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

int DecoratedSurface::add_vertex(std::vector<SurfaceDart> rot, std::string label) {
  rotation.push_back(std::move(rot));
  vertex_label.push_back(std::move(label));
  return num_vertices() - 1;
}

int DecoratedSurface::add_edge(std::string label, int tail, int head) {
  edges.push_back({std::move(label), tail, head});
  return num_edges() - 1;
}

LinearWord DecoratedSurface::vertex_word(int v) const {
  LinearWord w;
  for (const auto& d : rotation.at(v))
    w.push_back({edges.at(d.edge).label, d.at_tail ? Sign::Plus : Sign::Minus});
  return w;
}

int DecoratedSurface::vertex_of(int dart) const {
  const auto& e = edges.at(dart / 2);
  return dart % 2 == 0 ? e.tail : e.head;
}

int DecoratedSurface::sigma(int dart) const {
  if (edges.at(dart / 2).circle()) return dart;
  const auto& r = rotation.at(vertex_of(dart));
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i].id() == dart) return r[(i + 1) % r.size()].id();
  throw TopologyError("dart missing from its rotation");
}

std::vector<std::vector<int>> DecoratedSurface::map_faces() const {
  auto t = dart_tables(*this);
  const int D = static_cast<int>(t.vert.size());
  std::vector<char> seen(D, 0);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < D; ++s) {
    if (seen[s] || edges[s / 2].circle() || t.vert[s] < 0) continue;
    std::vector<int> f;
    for (int d = s; d >= 0 && !seen[d]; d = t.sig[d ^ 1]) {
      seen[d] = 1;
      f.push_back(d);
    }
    out.push_back(std::move(f));
  }
  return out;
}

int DecoratedSurface::face_key(int dart) const {
  if (edges.at(dart / 2).circle()) return dart;
  auto t = dart_tables(*this);
  int best = dart;
  for (int d = t.sig[dart ^ 1]; d != dart && d >= 0; d = t.sig[d ^ 1]) best = std::min(best, d);
  return best;
}

std::vector<int> DecoratedSurface::all_face_keys() const {
  std::vector<int> keys;
  for (const auto& f : map_faces()) keys.push_back(*std::min_element(f.begin(), f.end()));
  for (int e = 0; e < num_edges(); ++e)
    if (edges[e].circle()) {
      keys.push_back(2 * e);
      keys.push_back(2 * e + 1);
    }
  for (int v = 0; v < num_vertices(); ++v)
    if (rotation[v].empty()) keys.push_back(-1 - v);
  std::sort(keys.begin(), keys.end());
  return keys;
}

int DecoratedSurface::region_of_face(int key) const {
  for (std::size_t r = 0; r < regions.size(); ++r)
    for (int k : regions[r].faces)
      if (k == key) return static_cast<int>(r);
  return -1;
}

void DecoratedSurface::default_regions(const std::string& label) {
  regions.clear();
  for (int k : all_face_keys()) regions.push_back({label, {k}});
  if (regions.empty()) regions.push_back({label, {}});
}

namespace {

// items: vertex components and circles; returns item per face key and count
struct Items {
  int count = 0;
  std::vector<int> of_vertex, of_edge;
};

Items graph_items(const DecoratedSurface& s) {
  UnionFind uf(s.num_vertices());
  for (const auto& e : s.edges)
    if (!e.circle() && e.tail >= 0 && e.head >= 0 && e.tail < s.num_vertices() &&
        e.head < s.num_vertices())
      uf.join(e.tail, e.head);
  Items it;
  std::map<int, int> id;
  it.of_vertex.assign(s.num_vertices(), -1);
  for (int v = 0; v < s.num_vertices(); ++v) {
    int r = uf.find(v);
    if (!id.count(r)) id[r] = it.count++;
    it.of_vertex[v] = id[r];
  }
  it.of_edge.assign(s.num_edges(), -1);
  for (int e = 0; e < s.num_edges(); ++e)
    it.of_edge[e] = s.edges[e].circle() ? it.count++ : it.of_vertex[s.edges[e].tail];
  return it;
}

int item_of_key(const DecoratedSurface&, const Items& it, int key) {
  if (key < 0) return it.of_vertex.at(-1 - key);
  return it.of_edge.at(key / 2);
}

}  // namespace

std::vector<int> DecoratedSurface::component_euler() const {
  Items it = graph_items(*this);
  const int R = static_cast<int>(regions.size());
  UnionFind uf(it.count + R);
  for (int r = 0; r < R; ++r)
    for (int k : regions[r].faces) uf.join(it.count + r, item_of_key(*this, it, k));
  std::map<int, int> chi;
  for (int v = 0; v < num_vertices(); ++v) chi[uf.find(it.of_vertex[v])] += 1;
  for (int e = 0; e < num_edges(); ++e) {
    int root = uf.find(it.of_edge[e]);
    chi[root] += 0;
    if (!edges[e].circle()) chi[root] -= 1;
  }
  for (int r = 0; r < R; ++r)
    chi[uf.find(it.count + r)] += 2 - static_cast<int>(regions[r].faces.size());
  std::vector<int> out;
  for (auto& [root, c] : chi) out.push_back(c);
  return out;
}

int DecoratedSurface::num_components() const {
  return static_cast<int>(component_euler().size());
}

int DecoratedSurface::euler_characteristic() const {
  auto c = component_euler();
  return std::accumulate(c.begin(), c.end(), 0);
}

bool DecoratedSurface::all_spheres() const {
  for (int c : component_euler())
    if (c != 2) return false;
  return true;
}

int DecoratedSurface::num_free_circles() const {
  int n = 0;
  for (const auto& e : edges) n += e.circle() ? 1 : 0;
  return n;
}

bool DecoratedSurface::is_fine() const {
  if (num_free_circles()) return false;
  for (const auto& r : rotation)
    if (r.empty()) return false;
  for (const auto& r : regions)
    if (r.faces.size() != 1) return false;
  return true;
}

ValidationReport validate_surface_structure(const DecoratedSurface& s) {
  ValidationReport rep;
  const int E = s.num_edges(), V = s.num_vertices();
  if (static_cast<int>(s.vertex_label.size()) != V)
    rep.add("surface", "vertex_label size differs from vertex count");
  std::vector<int> used(2 * E, 0);
  for (int v = 0; v < V; ++v)
    for (const auto& d : s.rotation[v]) {
      if (d.edge < 0 || d.edge >= E) {
        rep.add("vertex " + std::to_string(v), "dart refers to a missing edge");
        continue;
      }
      const auto& e = s.edges[d.edge];
      if (e.circle()) {
        rep.add("vertex " + std::to_string(v), "circle edge appears in a rotation");
        continue;
      }
      if ((d.at_tail ? e.tail : e.head) != v)
        rep.add("vertex " + std::to_string(v),
                "dart of edge " + std::to_string(d.edge) + " disagrees with its endpoint");
      used[d.id()] += 1;
    }
  for (int e = 0; e < E; ++e) {
    const auto& ed = s.edges[e];
    if (ed.circle()) {
      if (ed.tail != ed.head) rep.add("edge " + std::to_string(e), "half-attached circle");
      continue;
    }
    if (ed.tail >= V || ed.head >= V || ed.head < 0) {
      rep.add("edge " + std::to_string(e), "endpoint out of range");
      continue;
    }
    for (int k = 0; k < 2; ++k)
      if (used[2 * e + k] != 1)
        rep.add("edge " + std::to_string(e),
                std::string(k ? "head" : "tail") + " dart used " +
                    std::to_string(used[2 * e + k]) + " times");
  }
  if (!rep.clean()) return rep;
  auto keys = s.all_face_keys();
  std::map<int, int> hits;
  for (std::size_t r = 0; r < s.regions.size(); ++r)
    for (int k : s.regions[r].faces) {
      if (!std::binary_search(keys.begin(), keys.end(), k))
        rep.add("region " + std::to_string(r), "unknown face " + std::to_string(k));
      hits[k] += 1;
    }
  for (int k : keys)
    if (hits[k] != 1)
      rep.add("face " + std::to_string(k),
              "belongs to " + std::to_string(hits[k]) + " regions");
  if (s.regions.empty()) rep.add("surface", "no regions");
  return rep;
}

ValidationReport validate_surface(const DefectData& dd, const DecoratedSurface& s) {
  ValidationReport rep = validate_surface_structure(s);
  if (!rep.clean()) return rep;
  for (std::size_t r = 0; r < s.regions.size(); ++r)
    if (!dd.has_d3(s.regions[r].label))
      rep.add("region " + std::to_string(r), "label '" + s.regions[r].label + "' not in D3");
  for (int e = 0; e < s.num_edges(); ++e) {
    const auto& lab = s.edges[e].label;
    if (!dd.has_d2(lab)) {
      rep.add("edge " + std::to_string(e), "label '" + lab + "' not in D2");
      continue;
    }
    int right = s.region_right(2 * e), left = s.region_right(2 * e + 1);
    if (right >= 0 && s.regions[right].label != dd.s.at(lab))
      rep.add("edge " + std::to_string(e), "right region is not the source of " + lab);
    if (left >= 0 && s.regions[left].label != dd.t.at(lab))
      rep.add("edge " + std::to_string(e), "left region is not the target of " + lab);
  }
  for (int v = 0; v < s.num_vertices(); ++v) {
    auto w = s.vertex_word(v);
    if (w.empty()) continue;
    bool ok = true;
    for (const auto& x : w) ok = ok && dd.has_d2(x.label);
    if (ok && !dd.accepts(s.vertex_label[v], CyclicWord(w)))
      rep.add("vertex " + std::to_string(v), "word " + to_string(w) + " not in D1");
  }
  return rep;
}

DecoratedSurface reversed(const DecoratedSurface& s) {
  DecoratedSurface out = s;
  for (auto& r : out.rotation) std::reverse(r.begin(), r.end());
  // the face right of d is now the old face right of d^1
  for (auto& reg : out.regions)
    for (int& k : reg.faces)
      if (k >= 0) k = k ^ 1;
  for (auto& reg : out.regions)
    for (int& k : reg.faces)
      if (k >= 0) k = out.face_key(k);
  return out;
}

DecoratedSurface fine_surface(const DecoratedSurface& s, const std::string& neutral) {
  if (s.is_fine()) return s;
  DecoratedSurface out = s;
  // regions as representative darts, or -1-v for isolated vertices
  for (int e = 0; e < out.num_edges(); ++e)
    if (out.edges[e].circle()) {
      int v = out.add_vertex({{e, true}, {e, false}}, "");
      out.edges[e].tail = out.edges[e].head = v;
    }
  auto add_loop = [&](int v, std::size_t region) {
    int f = out.add_edge(neutral, v, v);
    out.rotation[v] = {{f, true}, {f, false}};
    Region inner{out.regions[region].label, {2 * f + 1}};
    out.regions.push_back(inner);
    return 2 * f;
  };
  for (std::size_t r = 0; r < out.regions.size(); ++r) {
    if (out.regions[r].faces.empty()) {
      int v = out.add_vertex({}, "");
      int key = add_loop(v, r);
      out.regions[r].faces = {key};
      continue;
    }
    for (std::size_t i = 0; i < out.regions[r].faces.size(); ++i) {
      int k = out.regions[r].faces[i];
      if (k < 0) {
        int key = add_loop(-1 - k, r);
        out.regions[r].faces[i] = key;
      }
    }
  }
  // connect faces of one region
  for (std::size_t r = 0; r < out.regions.size(); ++r) {
    while (out.regions[r].faces.size() > 1) {
      int x0 = out.regions[r].faces[0], xj = out.regions[r].faces[1];
      int u = out.vertex_of(x0), w = out.vertex_of(xj);
      int g = out.add_edge(neutral, u, w);
      auto insert_before = [&](int v, int x, SurfaceDart nd) {
        auto& rot = out.rotation[v];
        auto it = std::find_if(rot.begin(), rot.end(), [&](const SurfaceDart& d) { return d.id() == x; });
        rot.insert(it, nd);
      };
      insert_before(u, x0, {g, true});
      insert_before(w, xj, {g, false});
      // rekey every region by representatives
      for (auto& reg : out.regions)
        for (int& k : reg.faces) k = out.face_key(k);
      auto& f = out.regions[r].faces;
      std::sort(f.begin(), f.end());
      f.erase(std::unique(f.begin(), f.end()), f.end());
    }
  }
  for (auto& reg : out.regions)
    for (int& k : reg.faces) k = out.face_key(k);
  if (!out.is_fine()) throw TopologyError("surface could not be refined to a fine one");
  return out;
}

std::string surface_signature(const DecoratedSurface& s) {
  // per connected map component: min over starting darts of a BFS code
  auto t = dart_tables(s);
  const int D = static_cast<int>(t.vert.size());
  std::vector<std::string> parts;
  std::vector<char> done(D, 0);
  auto region_label = [&](int dart) {
    int r = s.region_right(dart);
    return r < 0 ? std::string("?") : s.regions[r].label;
  };
  for (int s0 = 0; s0 < D; ++s0) {
    if (done[s0] || s.edges[s0 / 2].circle()) continue;
    std::vector<int> comp;
    std::vector<int> stack{s0};
    done[s0] = 1;
    while (!stack.empty()) {
      int d = stack.back();
      stack.pop_back();
      comp.push_back(d);
      for (int nb : {t.sig[d], d ^ 1})
        if (!done[nb]) {
          done[nb] = 1;
          stack.push_back(nb);
        }
    }
    std::string best;
    for (int start : comp) {
      std::map<int, int> num{{start, 0}};
      std::vector<int> order{start};
      for (std::size_t h = 0; h < order.size(); ++h)
        for (int nb : {t.sig[order[h]], order[h] ^ 1})
          if (!num.count(nb)) {
            num[nb] = static_cast<int>(order.size());
            order.push_back(nb);
          }
      std::ostringstream os;
      for (int d : order)
        os << num[t.sig[d]] << ',' << num[d ^ 1] << ',' << (d % 2) << ','
           << s.edges[d / 2].label << ',' << s.vertex_label[t.vert[d]] << ','
           << region_label(d) << ';';
      if (best.empty() || os.str() < best) best = os.str();
    }
    parts.push_back(best);
  }
  for (int e = 0; e < s.num_edges(); ++e)
    if (s.edges[e].circle())
      parts.push_back("circle:" + s.edges[e].label + ":" + region_label(2 * e) + "|" +
                      region_label(2 * e + 1));
  for (int v = 0; v < s.num_vertices(); ++v)
    if (s.rotation[v].empty()) parts.push_back("point:" + s.vertex_label[v]);
  for (const auto& r : s.regions)
    if (r.faces.empty()) parts.push_back("sphere:" + r.label);
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) out += "[" + p + "]";
  return out;
}

DecoratedSurface bare_sphere() {
  DecoratedSurface s;
  s.regions.push_back({"*", {}});
  return s;
}

DecoratedSurface circle_sphere(const std::string& label) {
  DecoratedSurface s;
  s.add_edge(label, -1, -1);
  s.regions = {{"*", {0}}, {"*", {1}}};
  return s;
}

DecoratedSurface theta_sphere(const std::vector<std::string>& labels) {
  DecoratedSurface s;
  const int m = static_cast<int>(labels.size());
  s.add_vertex();
  s.add_vertex();
  for (int i = 0; i < m; ++i) {
    s.add_edge(labels[i], 0, 1);
    s.rotation[0].push_back({i, true});
  }
  for (int i = m - 1; i >= 0; --i) s.rotation[1].push_back({i, false});
  s.default_regions();
  return s;
}

}  // namespace dtqft
