#pragma once
// Test oracle: flat G-connections on a closed 3-manifold, counted as
// homomorphisms pi_1 -> G from a presentation. For Vec_G the state sum
// must equal |Hom(pi_1, G)| / |G|.
#include <algorithm>
#include <array>
#include <cstdlib>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "dtqft/defect_data.hpp"
#include "dtqft/strata.hpp"

namespace oracle {

// letters are +-(generator + 1)
struct Presentation {
  int generators = 0;
  std::vector<std::vector<int>> relators;
};

inline Presentation sphere3() { return {0, {}}; }
inline Presentation sphere2_times_circle() { return {1, {}}; }
inline Presentation torus3() {
  // [a,b], [b,c], [a,c]
  return {3, {{1, 2, -1, -2}, {2, 3, -2, -3}, {1, 3, -1, -3}}};
}

// edge-path group: generators are the edges off a spanning tree, one relator
// per triangle
inline Presentation presentation_of(const dtqft::Triangulation& t) {
  std::set<std::pair<int, int>> edges;
  std::set<std::array<int, 3>> tris;
  for (auto tet : t.tets) {
    std::sort(tet.begin(), tet.end());
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        edges.insert({tet[i], tet[j]});
        for (int k = j + 1; k < 4; ++k) tris.insert({tet[i], tet[j], tet[k]});
      }
  }
  std::vector<std::vector<int>> adj(t.num_vertices);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::set<std::pair<int, int>> tree;
  std::vector<bool> seen(t.num_vertices, false);
  std::queue<int> q;
  q.push(0);
  seen[0] = true;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        tree.insert({std::min(v, w), std::max(v, w)});
        q.push(w);
      }
  }
  Presentation p;
  std::map<std::pair<int, int>, int> gen;
  for (const auto& e : edges)
    if (!tree.count(e)) gen[e] = ++p.generators;
  auto letter = [&](int a, int b, int sign, std::vector<int>& w) {
    auto it = gen.find({a, b});
    if (it != gen.end()) w.push_back(sign * it->second);
  };
  for (const auto& [a, b, c] : tris) {
    std::vector<int> w;
    letter(a, b, 1, w);
    letter(b, c, 1, w);
    letter(a, c, -1, w);
    if (!w.empty()) p.relators.push_back(w);
  }
  return p;
}

// backtracking with propagation through relators missing a single generator
inline long count_homs(const Presentation& p, const dtqft::GroupTable& g) {
  const int n = p.generators;
  std::vector<int> val(n, -1);
  auto value_of = [&](int letter) {
    int x = val[std::abs(letter) - 1];
    return letter > 0 ? x : g.inv(x);
  };
  // returns false on a contradiction; records assigned generators in `trail`
  std::function<bool(std::vector<int>&)> propagate = [&](std::vector<int>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& r : p.relators) {
        int missing = 0, count = 0;  // letters are nonzero
        for (int l : r)
          if (val[std::abs(l) - 1] < 0) {
            if (missing == 0 || std::abs(l) == std::abs(missing)) ++count;
            if (missing == 0) missing = l;
            else if (std::abs(l) != std::abs(missing)) count = 99;
          }
        if (missing == 0) {
          int prod = g.identity();
          for (int l : r) prod = g.mul(prod, value_of(l));
          if (prod != g.identity()) return false;
          continue;
        }
        if (count != 1) continue;
        // u x^e v = 1  =>  x^e = u^-1 v^-1
        int u = g.identity(), v = g.identity();
        bool before = true;
        for (int l : r) {
          if (l == missing) {
            before = false;
            continue;
          }
          if (before) u = g.mul(u, value_of(l));
          else v = g.mul(v, value_of(l));
        }
        int xe = g.mul(g.inv(u), g.inv(v));
        val[std::abs(missing) - 1] = missing > 0 ? xe : g.inv(xe);
        trail.push_back(std::abs(missing) - 1);
        changed = true;
      }
    }
    return true;
  };
  std::function<long()> rec = [&]() -> long {
    int next = -1;
    for (int i = 0; i < n && next < 0; ++i)
      if (val[i] < 0) next = i;
    if (next < 0) return 1;
    long total = 0;
    for (std::size_t h = 0; h < g.order(); ++h) {
      std::vector<int> trail{next};
      val[next] = static_cast<int>(h);
      if (propagate(trail)) total += rec();
      for (int i : trail) val[i] = -1;
    }
    return total;
  };
  std::vector<int> trail;
  if (!propagate(trail)) return 0;
  return rec();
}

inline double flat_invariant(const Presentation& p, const dtqft::GroupTable& g) {
  return static_cast<double>(count_homs(p, g)) / static_cast<double>(g.order());
}

}  // namespace oracle
