#include <algorithm>
#include <map>
#include <set>

#include "dtqft/strata.hpp"
#include "strata_internal.hpp"

namespace dtqft {

std::string to_string(RefineMove m) {
  switch (m) {
    case RefineMove::EdgeSubdivide: return "edge_subdivide";
    case RefineMove::FaceStar: return "face_star";
    case RefineMove::CellCone: return "cell_cone";
  }
  return "?";
}

RefineMove parse_refine_move(const std::string& s) {
  if (s == "edge_subdivide") return RefineMove::EdgeSubdivide;
  if (s == "face_star") return RefineMove::FaceStar;
  if (s == "cell_cone") return RefineMove::CellCone;
  throw ParseError("unknown refinement move: " + s);
}

namespace {

int add_interior_vertex(StratifiedBordism& b) {
  b.s0.push_back(Stratum0{});
  return static_cast<int>(b.s0.size()) - 1;
}

// insert x into the word of line e before position p, shifting corner slots
void insert_incidence(StratifiedBordism& b, int e, int p, Incidence x) {
  auto& word = b.s1[e].word;
  const int m = static_cast<int>(word.size());
  for (auto& v : b.s0)
    for (auto& c : v.corners) {
      auto fix = [&](int end, int& slot) {
        if (end == 2 * e && slot >= p) ++slot;
        if (end == 2 * e + 1 && m - 1 - slot < p) ++slot;
      };
      fix(c.end_a, c.slot_a);
      fix(c.end_b, c.slot_b);
    }
  word.insert(word.begin() + p, x);
}

int find_corner(const Stratum0& v, int end, int slot, int* partner_end, int* partner_slot) {
  for (std::size_t i = 0; i < v.corners.size(); ++i) {
    const auto& c = v.corners[i];
    if (c.end_a == end && c.slot_a == slot) {
      *partner_end = c.end_b;
      *partner_slot = c.slot_b;
      return static_cast<int>(i);
    }
    if (c.end_b == end && c.slot_b == slot) {
      *partner_end = c.end_a;
      *partner_slot = c.slot_a;
      return static_cast<int>(i);
    }
  }
  return -1;
}

StratifiedBordism edge_subdivide(const StratifiedBordism& in, int e) {
  if (e < 0 || e >= static_cast<int>(in.s1.size())) throw SiteError("no such 1-stratum");
  if (in.s1[e].word.empty()) throw SiteError("1-stratum with an empty word");
  StratifiedBordism b = in;
  const int n = add_interior_vertex(b);
  const int m = static_cast<int>(b.s1[e].word.size());
  int second_start;  // end id of the piece leaving n
  if (b.s1[e].closed()) {
    b.s1[e].start = b.s1[e].end = n;
    second_start = 2 * e;
  } else {
    Stratum1 tail = b.s1[e];
    tail.start = n;
    const int e2 = static_cast<int>(b.s1.size());
    for (auto& v : b.s0)
      for (auto& c : v.corners) {
        if (c.end_a == 2 * e + 1) c.end_a = 2 * e2 + 1;
        if (c.end_b == 2 * e + 1) c.end_b = 2 * e2 + 1;
      }
    b.s1[e].end = n;
    b.s1.push_back(tail);
    second_start = 2 * e2;
  }
  for (int i = 0; i < m; ++i) b.s0[n].corners.push_back({second_start, i, 2 * e + 1, m - 1 - i});
  return b;
}

struct FaceWalk {
  std::vector<std::pair<int, int>> segments;  // (line, position) in boundary order
  std::vector<int> vertices;                  // vertex reached after each segment
  std::vector<int> corners;                   // corner index used there
  std::vector<std::pair<int, int>> arrive;    // (end, slot) of each arrival
  std::vector<std::pair<int, int>> leave;     // (end, slot) of the next departure
};

FaceWalk walk_face(const StratifiedBordism& b, int r) {
  std::vector<std::pair<int, int>> occ;
  for (int e = 0; e < static_cast<int>(b.s1.size()); ++e)
    for (int p = 0; p < static_cast<int>(b.s1[e].word.size()); ++p)
      if (b.s1[e].word[p].stratum == r) occ.push_back({e, p});
  if (occ.empty()) throw SiteError("2-stratum without boundary 1-strata");
  FaceWalk w;
  auto cur = occ[0];
  do {
    auto [e, p] = cur;
    const auto& line = b.s1[e];
    if (line.closed()) throw SiteError("2-stratum bounded by a closed 1-stratum");
    const int m = static_cast<int>(line.word.size());
    bool forward = line.word[p].sign == Sign::Plus;
    int x = forward ? 2 * e + 1 : 2 * e;
    int j = forward ? m - 1 - p : p;
    int v = forward ? line.end : line.start;
    if (b.s0[v].boundary) throw SiteError("2-stratum reaches the boundary");
    int x2 = -1, j2 = -1;
    int c = find_corner(b.s0[v], x, j, &x2, &j2);
    if (c < 0) throw TopologyError("unmatched slot");
    w.segments.push_back(cur);
    w.vertices.push_back(v);
    w.corners.push_back(c);
    w.arrive.push_back({x, j});
    w.leave.push_back({x2, j2});
    const int e2 = x2 / 2;
    const int m2 = static_cast<int>(b.s1[e2].word.size());
    cur = {e2, x2 % 2 == 0 ? j2 : m2 - 1 - j2};
    if (w.segments.size() > occ.size()) throw SiteError("boundary walk does not close");
  } while (cur != occ[0]);
  if (w.segments.size() != occ.size()) throw SiteError("2-stratum is not a disc");
  return w;
}

StratifiedBordism face_star(const StratifiedBordism& in, int r) {
  if (r < 0 || r >= static_cast<int>(in.s2.size())) throw SiteError("no such 2-stratum");
  if (in.touches_boundary_2(r)) throw SiteError("2-stratum meets the boundary");
  if (in.s2[r].chi != 1) throw SiteError("2-stratum is not a disc");
  const FaceWalk w = walk_face(in, r);
  StratifiedBordism b = in;
  const int L = static_cast<int>(w.segments.size());
  std::vector<int> piece(L);
  piece[0] = r;
  for (int k = 1; k < L; ++k) {
    piece[k] = static_cast<int>(b.s2.size());
    b.s2.push_back(b.s2[r]);
  }
  for (int k = 0; k < L; ++k) b.s1[w.segments[k].first].word[w.segments[k].second].stratum = piece[k];
  const int z = add_interior_vertex(b);
  // spoke k ends at the vertex between piece k and piece k+1
  std::vector<int> spoke(L);
  std::vector<int> remove;
  for (int k = 0; k < L; ++k) {
    Stratum1 s;
    s.word = {{piece[k], Sign::Minus}, {piece[(k + 1) % L], Sign::Plus}};
    s.start = z;
    s.end = w.vertices[k];
    spoke[k] = static_cast<int>(b.s1.size());
    b.s1.push_back(s);
  }
  // at the rim: seen from w_k the spoke reads [(P_{k+1},-), (P_k,+)]
  std::map<int, std::vector<int>> drop;
  for (int k = 0; k < L; ++k) drop[w.vertices[k]].push_back(w.corners[k]);
  for (auto& [v, list] : drop) {
    std::sort(list.rbegin(), list.rend());
    for (int c : list) b.s0[v].corners.erase(b.s0[v].corners.begin() + c);
  }
  for (int k = 0; k < L; ++k) {
    auto& v = b.s0[w.vertices[k]];
    const int end = 2 * spoke[k] + 1;
    v.corners.push_back({w.arrive[k].first, w.arrive[k].second, end, 1});
    v.corners.push_back({end, 0, w.leave[k].first, w.leave[k].second});
  }
  // centre: piece k+1 runs between spoke k and spoke k+1
  for (int k = 0; k < L; ++k) b.s0[z].corners.push_back({2 * spoke[k], 1, 2 * spoke[(k + 1) % L], 0});
  return b;
}

// a side of a 2-stratum facing the cell: (2-stratum, sign)
using Face = std::pair<int, Sign>;

StratifiedBordism cell_cone(const StratifiedBordism& in, int R, const std::string& neutral) {
  if (R < 0 || R >= static_cast<int>(in.s3.size())) throw SiteError("no such 3-stratum");
  if (!in.s3[R].ball) throw SiteError("3-stratum is not a ball");
  for (const auto& c : in.boundary)
    for (int x : c.region_stratum)
      if (x == R) throw SiteError("3-stratum meets the boundary");
  for (const auto& e : in.s1) {
    if (e.word.empty() && e.anchor == R) throw SiteError("3-stratum holds an isolated 1-stratum");
    if (e.closed())
      for (const auto& x : e.word)
        if (in.s2[x.stratum].neg == R || in.s2[x.stratum].pos == R)
          throw SiteError("3-stratum bounded by a closed 1-stratum");
  }
  StratifiedBordism b = in;
  // new cells, one per face of the boundary sphere
  std::map<Face, int> cell;
  for (int r = 0; r < static_cast<int>(in.s2.size()); ++r)
    for (Sign s : {Sign::Minus, Sign::Plus})
      if (in.s2[r].side(s) == R) {
        int id = cell.empty() ? R : static_cast<int>(b.s3.size());
        if (!cell.empty()) b.s3.push_back(in.s3[R]);
        cell[{r, s}] = id;
      }
  if (cell.empty()) throw SiteError("3-stratum without boundary 2-strata");
  for (auto& [f, id] : cell) {
    if (f.second == Sign::Plus)
      b.s2[f.first].pos = id;
    else
      b.s2[f.first].neg = id;
  }
  // fins: one per wedge of a line lying in R, keyed by (line, wedge after position)
  std::map<std::pair<int, int>, int> fin;
  for (int e = 0; e < static_cast<int>(in.s1.size()); ++e) {
    const auto& word = in.s1[e].word;
    const int m = static_cast<int>(word.size());
    for (int i = 0; i < m; ++i) {
      if (in.s2[word[i].stratum].side(word[i].sign) != R) continue;
      const auto& y = word[(i + 1) % m];
      Stratum2 f;
      f.label = neutral;
      f.chi = 1;
      f.neg = cell.at({word[i].stratum, word[i].sign});
      f.pos = cell.at({y.stratum, flip(y.sign)});
      fin[{e, i}] = static_cast<int>(b.s2.size());
      b.s2.push_back(f);
    }
  }
  // R-vertices: link faces in R, each as ccw corner list (end, wedge slot)
  struct Apex {
    int v;
    std::vector<std::pair<int, int>> corners;  // (end, slot the wedge follows)
  };
  std::vector<Apex> apexes;
  for (int v = 0; v < static_cast<int>(in.s0.size()); ++v) {
    if (in.s0[v].boundary) continue;
    std::map<std::pair<int, int>, int> slot_dart;
    auto g = detail::link_with_slots(in, v, &slot_dart);
    std::map<int, std::pair<int, int>> dart_slot;
    for (auto& [k, d] : slot_dart) dart_slot[d] = k;
    std::set<int> done;
    for (auto& [k, d] : slot_dart) {
      auto [end, slot] = k;
      auto word = in.seen_word(end);
      const int m = static_cast<int>(word.size());
      // the wedge before this slot lies in the face of this dart
      const auto& prev = word[(slot + m - 1) % m];
      if (in.s2[prev.stratum].side(prev.sign) != R) continue;
      int key = g.face_key(d);
      if (!done.insert(key).second) continue;
      Apex a{v, {}};
      int x = d;
      do {
        auto [xe, xs] = dart_slot.at(x);
        const int xm = static_cast<int>(in.seen_word(xe).size());
        a.corners.push_back({xe, (xs + xm - 1) % xm});
        x = g.phi(x);
      } while (x != d);
      std::reverse(a.corners.begin(), a.corners.end());
      apexes.push_back(std::move(a));
    }
  }
  // fin of a wedge seen from an end: (end, slot) -> wedge after word position
  auto wedge_of = [&](int end, int slot) {
    const int e = end / 2;
    const int m = static_cast<int>(in.s1[e].word.size());
    // slot is the seen position the wedge follows
    if (end % 2 == 0) return std::pair{e, slot};
    // seen position s is word position m-1-s; the wedge after it in the seen
    // word is the wedge before it in the word
    int i = m - 1 - slot;
    return std::pair{e, (i + m - 1) % m};
  };
  const int c = add_interior_vertex(b);
  std::vector<int> spoke_of(apexes.size());
  // (fin) -> slot in the spoke word for the start / end apex
  std::map<int, std::pair<int, int>> fin_start, fin_end;
  for (std::size_t a = 0; a < apexes.size(); ++a) {
    const auto& ap = apexes[a];
    const int n = static_cast<int>(ap.corners.size());
    Stratum1 s;
    s.start = c;
    s.end = ap.v;
    // seen from the apex the ccw list reads (fin, - at a start, + at an end)
    IncidenceWord seen;
    for (auto [end, slot] : ap.corners)
      seen.push_back({fin.at(wedge_of(end, slot)), end % 2 == 0 ? Sign::Minus : Sign::Plus});
    s.word = hash_word(seen);
    spoke_of[a] = static_cast<int>(b.s1.size());
    b.s1.push_back(s);
    for (int k = 0; k < n; ++k) {
      auto [end, slot] = ap.corners[k];
      int f = fin.at(wedge_of(end, slot));
      int word_pos = n - 1 - k;
      (end % 2 == 0 ? fin_start : fin_end)[f] = {spoke_of[a], word_pos};
    }
  }
  // insert fins into their lines (descending position keeps indices valid)
  for (auto it = fin.rbegin(); it != fin.rend(); ++it) {
    auto [e, i] = it->first;
    insert_incidence(b, e, i + 1, {it->second, Sign::Plus});
  }
  // corners at the apexes: spoke slot <-> fin slot in the line
  for (std::size_t a = 0; a < apexes.size(); ++a) {
    const auto& ap = apexes[a];
    const int n = static_cast<int>(ap.corners.size());
    for (int k = 0; k < n; ++k) {
      auto [end, slot] = ap.corners[k];
      auto [e, i] = wedge_of(end, slot);
      const int m1 = static_cast<int>(b.s1[e].word.size());
      int pos = 0;  // position of the fin in the new word
      for (int q = 0; q < m1; ++q)
        if (b.s1[e].word[q].stratum == fin.at({e, i})) pos = q;
      int seen_slot = end % 2 == 0 ? pos : m1 - 1 - pos;
      b.s0[ap.v].corners.push_back({2 * spoke_of[a] + 1, k, end, seen_slot});
    }
  }
  // corners at the cone point
  for (auto& [key, f] : fin) {
    auto s = fin_start.at(f), t = fin_end.at(f);
    b.s0[c].corners.push_back({2 * s.first, s.second, 2 * t.first, t.second});
  }
  return b;
}

}  // namespace

StratifiedBordism refine(const StratifiedBordism& b, RefineMove move, int site,
                         const std::string& neutral) {
  switch (move) {
    case RefineMove::EdgeSubdivide: return edge_subdivide(b, site);
    case RefineMove::FaceStar: return face_star(b, site);
    case RefineMove::CellCone: return cell_cone(b, site, neutral);
  }
  throw SiteError("unknown move");
}

std::vector<int> refine_sites(const StratifiedBordism& b, RefineMove move) {
  std::vector<int> out;
  int n = 0;
  switch (move) {
    case RefineMove::EdgeSubdivide: n = static_cast<int>(b.s1.size()); break;
    case RefineMove::FaceStar: n = static_cast<int>(b.s2.size()); break;
    case RefineMove::CellCone: n = static_cast<int>(b.s3.size()); break;
  }
  for (int i = 0; i < n; ++i) {
    try {
      refine(b, move, i, "e");
      out.push_back(i);
    } catch (const SiteError&) {
    } catch (const TopologyError&) {
    }
  }
  return out;
}

}  // namespace dtqft
