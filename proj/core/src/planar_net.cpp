#include "planar_net.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace dtqft::detail {

namespace {

int ring_length(const Net& n, int d) {
  int len = 1;
  for (int x = n.sig[d]; x != d; x = n.sig[x]) ++len;
  return len;
}

int ring_pred(const Net& n, int d) {
  int x = d;
  while (n.sig[x] != d) x = n.sig[x];
  return x;
}

void remove_dart(Net& n, int d) {
  int p = ring_pred(n, d);
  if (p != d) n.sig[p] = n.sig[d];
  n.alive[d] = 0;
}

// face successor: cross the edge, then turn to the next dart ccw
int phi(const Net& n, int d) { return n.sig[n.alp[d]]; }

}  // namespace

bool NetEvaluator::simplify(Net& n, cplx& scalar) const {
  const int u = cat_.unit;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int d = 0; d < static_cast<int>(n.vert.size()); ++d) {
      if (!n.alive[d]) continue;
      if (n.col[d] == u) {
        int e = n.alp[d];
        remove_dart(n, d);
        remove_dart(n, e);
        changed = true;
        continue;
      }
      int len = ring_length(n, d);
      if (len == 1) return false;  // a non-unit leg ending in nothing
      if (len == 2) {
        int y = n.sig[d];
        if (n.col[y] != cat_.dual(n.col[d])) return false;
        if (n.alp[d] == y) {
          n.loops.push_back(n.col[d]);
        } else {
          n.link(n.alp[d], n.alp[y]);
        }
        n.alive[d] = 0;
        n.alive[y] = 0;
        changed = true;
        continue;
      }
      if (len > 3) throw TopologyError("planar net vertex of degree > 3");
    }
  }
  for (int c : n.loops) scalar *= cat_.qdim(c);
  n.loops.clear();
  return true;
}

std::vector<int> NetEvaluator::canonical_code(const Net& c) const {
  const int D = static_cast<int>(c.vert.size());
  std::vector<int> best;
  std::vector<int> num(D), order;
  order.reserve(D);
  for (int s = 0; s < D; ++s) {
    std::fill(num.begin(), num.end(), -1);
    order.clear();
    num[s] = 0;
    order.push_back(s);
    for (std::size_t h = 0; h < order.size(); ++h) {
      for (int nb : {c.sig[order[h]], c.alp[order[h]]})
        if (num[nb] < 0) {
          num[nb] = static_cast<int>(order.size());
          order.push_back(nb);
        }
    }
    std::vector<int> code;
    code.reserve(3 * D);
    bool worse = false, better = best.empty();
    for (int d : order) {
      for (int v : {num[c.sig[d]], num[c.alp[d]], c.col[d]}) {
        if (!better && !worse) {
          int ref = best[code.size()];
          if (v < ref) better = true;
          else if (v > ref) worse = true;
        }
        code.push_back(v);
      }
      if (worse) break;
    }
    if (better) best = std::move(code);
  }
  return best;
}

cplx NetEvaluator::value(Net n) {
  cplx scalar = 1.0;
  if (!simplify(n, scalar)) return 0.0;
  // split into connected components
  const int D = static_cast<int>(n.vert.size());
  std::vector<int> comp(D, -1);
  int ncomp = 0;
  for (int s = 0; s < D; ++s) {
    if (!n.alive[s] || comp[s] >= 0) continue;
    std::deque<int> q{s};
    comp[s] = ncomp;
    while (!q.empty()) {
      int d = q.front();
      q.pop_front();
      for (int nb : {n.sig[d], n.alp[d]})
        if (comp[nb] < 0) {
          comp[nb] = ncomp;
          q.push_back(nb);
        }
    }
    ++ncomp;
  }
  for (int k = 0; k < ncomp && scalar != 0.0; ++k) {
    Net c;
    std::vector<int> idx(D, -1);
    for (int d = 0; d < D; ++d)
      if (comp[d] == k) idx[d] = c.add_dart(n.vert[d], n.col[d]);
    for (int d = 0; d < D; ++d)
      if (comp[d] == k) {
        c.sig[idx[d]] = idx[n.sig[d]];
        c.alp[idx[d]] = idx[n.alp[d]];
      }
    scalar *= component_value(c);
  }
  return scalar;
}

cplx NetEvaluator::component_value(const Net& c) {
  const int D = static_cast<int>(c.vert.size());
  if (D == 0) return 1.0;
  auto key = canonical_code(c);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  // faces
  std::vector<int> face(D, -1);
  std::vector<std::vector<int>> faces;
  for (int s = 0; s < D; ++s) {
    if (face[s] >= 0) continue;
    std::vector<int> f;
    for (int d = s; face[d] < 0; d = phi(c, d)) {
      face[d] = static_cast<int>(faces.size());
      f.push_back(d);
    }
    faces.push_back(std::move(f));
  }
  cplx result = 0.0;
  bool bridge = false;
  for (int d = 0; d < D; ++d)
    if (face[d] == face[c.alp[d]]) bridge = true;  // same face on both sides
  if (!bridge) {
    std::size_t fi = 0;
    for (std::size_t i = 1; i < faces.size(); ++i)
      if (faces[i].size() < faces[fi].size()) fi = i;
    const auto& f = faces[fi];
    auto qd = [&](int col) { return cat_.qdim(col); };
    if (f.size() == 2) {
      const int x = f[0];
      const int y = f[1];  // = sig[alp[x]]
      const int ay = c.alp[y];
      const int u3 = c.sig[x] == ay ? c.sig[ay] : c.sig[x];
      const int w3 = c.sig[y] == c.alp[x] ? c.sig[c.alp[x]] : c.sig[y];
      if (c.alp[u3] == w3) {
        result = std::sqrt(qd(c.col[x]) * qd(c.col[ay]) * qd(c.col[u3]));
      } else if (c.col[w3] == cat_.dual(c.col[u3])) {
        Net m = c;
        for (int d : {x, c.alp[x], y, ay, u3, w3}) m.alive[d] = 0;
        m.link(c.alp[u3], c.alp[w3]);
        double factor = std::sqrt(qd(c.col[x]) * qd(c.col[y]) / qd(c.col[u3]));
        result = factor * value(std::move(m));
      }
    } else if (f.size() >= 3) {
      int d = -1;
      for (int x : f)
        if (c.vert[x] != c.vert[c.alp[x]] && c.sig[x] != c.alp[x] &&
            c.sig[c.sig[x]] != c.alp[x]) {
          d = x;
          break;
        }
      if (d < 0) throw TopologyError("no flippable edge on a face");
      const int ad = c.alp[d];
      const int p = c.sig[d], q = c.sig[p], r = c.sig[ad], s = c.sig[r];
      const int a = c.col[p], b = c.col[q], cc = c.col[r], dd = c.col[s];
      const int k = c.col[ad];
      const int u = c.vert[d], w = c.vert[ad];
      for (int j = 0; j < cat_.n(); ++j) {
        cplx coef = cat_.F(a, b, cc, cat_.dual(dd), k, j);
        if (coef == 0.0) continue;
        Net m = c;
        m.sig[d] = q;
        m.sig[q] = r;
        m.sig[r] = d;
        m.sig[ad] = s;
        m.sig[s] = p;
        m.sig[p] = ad;
        m.vert[r] = u;
        m.vert[p] = w;
        m.col[d] = cat_.dual(j);
        m.col[ad] = j;
        result += coef * value(std::move(m));
      }
    }
  }
  cache_.emplace(std::move(key), result);
  return result;
}

}  // namespace dtqft::detail
