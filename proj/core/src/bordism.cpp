#include <algorithm>
#include <map>
#include <set>

#include "dtqft/strata.hpp"
#include "strata_internal.hpp"

namespace dtqft {

IncidenceWord hash_word(const IncidenceWord& w) {
  IncidenceWord out(w.rbegin(), w.rend());
  for (auto& x : out) x.sign = flip(x.sign);
  return out;
}

IncidenceWord StratifiedBordism::seen_word(int end) const {
  const auto& e = s1.at(end / 2);
  return end % 2 == 0 ? e.word : hash_word(e.word);
}

int StratifiedBordism::end_vertex(int end) const {
  const auto& e = s1.at(end / 2);
  return end % 2 == 0 ? e.start : e.end;
}

std::vector<int> StratifiedBordism::ends_at(int v) const {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(s1.size()); ++e) {
    if (s1[e].start == v) out.push_back(2 * e);
    if (s1[e].end == v) out.push_back(2 * e + 1);
  }
  return out;
}

std::vector<int> StratifiedBordism::interior_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(s0.size()); ++v)
    if (!s0[v].boundary) out.push_back(v);
  return out;
}

bool StratifiedBordism::touches_boundary_2(int r) const {
  for (const auto& c : boundary)
    for (int x : c.edge_stratum)
      if (x == r) return true;
  return false;
}

namespace {

std::string where0(int v) { return "0-stratum " + std::to_string(v); }
std::string where1(int e) { return "1-stratum " + std::to_string(e); }
std::string where2(int r) { return "2-stratum " + std::to_string(r); }

// link surface of an interior vertex plus, per end, the dart id of each slot
SphereGraphHandle build_link(const StratifiedBordism& b, int v, std::vector<int>* edge_stratum,
                             std::map<std::pair<int, int>, int>* slot_dart) {
  SphereGraphHandle g;
  auto ends = b.ends_at(v);
  std::map<int, int> vid;
  std::vector<IncidenceWord> words;
  for (int end : ends) {
    vid[end] = g.add_vertex({}, b.s1[end / 2].d1);
    words.push_back(b.seen_word(end));
    g.rotation.back().assign(words.back().size(), {-1, true});
  }
  if (edge_stratum) edge_stratum->clear();
  for (const auto& c : b.s0[v].corners) {
    if (!vid.count(c.end_a) || !vid.count(c.end_b))
      throw TopologyError(where0(v) + ": corner names an end not at this vertex");
    const auto& wa = words[vid[c.end_a]];
    const auto& wb = words[vid[c.end_b]];
    if (c.slot_a < 0 || c.slot_a >= static_cast<int>(wa.size()) || c.slot_b < 0 ||
        c.slot_b >= static_cast<int>(wb.size()))
      throw TopologyError(where0(v) + ": corner slot out of range");
    bool a_tail = wa[c.slot_a].sign == Sign::Plus;
    int tail_v = a_tail ? vid[c.end_a] : vid[c.end_b];
    int head_v = a_tail ? vid[c.end_b] : vid[c.end_a];
    int r = wa[c.slot_a].stratum;
    int e = g.add_edge(b.s2.at(r).label, tail_v, head_v);
    if (edge_stratum) edge_stratum->push_back(r);
    auto& sa = g.rotation[vid[c.end_a]][c.slot_a];
    auto& sb = g.rotation[vid[c.end_b]][c.slot_b];
    if (sa.edge >= 0 || sb.edge >= 0) throw TopologyError(where0(v) + ": slot used twice");
    sa = {e, a_tail};
    sb = {e, !a_tail};
    if (slot_dart) {
      (*slot_dart)[{c.end_a, c.slot_a}] = sa.id();
      (*slot_dart)[{c.end_b, c.slot_b}] = sb.id();
    }
  }
  for (const auto& rot : g.rotation)
    for (const auto& d : rot)
      if (d.edge < 0) throw TopologyError(where0(v) + ": unmatched slot");
  g.default_regions();
  return g;
}

}  // namespace

SphereGraphHandle vertex_link_graph(const StratifiedBordism& b, int vertex,
                                    std::vector<int>* edge_stratum) {
  if (vertex < 0 || vertex >= static_cast<int>(b.s0.size()) || b.s0[vertex].boundary)
    throw SiteError("not an interior 0-stratum: " + std::to_string(vertex));
  return build_link(b, vertex, edge_stratum, nullptr);
}

namespace detail {
SphereGraphHandle link_with_slots(const StratifiedBordism& b, int v,
                                  std::map<std::pair<int, int>, int>* slot_dart) {
  return build_link(b, v, nullptr, slot_dart);
}
}  // namespace detail

EdgeLink edge_link(const StratifiedBordism& b, int one_stratum) {
  const auto& e = b.s1.at(one_stratum);
  LinearWord w;
  for (const auto& x : e.word) w.push_back({std::to_string(x.stratum), x.sign});
  return {CyclicWord(w), e.word.empty() ? e.anchor : -1};
}

ValidationReport validate_bordism_structure(const StratifiedBordism& b) {
  ValidationReport rep;
  const int N0 = static_cast<int>(b.s0.size()), N1 = static_cast<int>(b.s1.size());
  const int N2 = static_cast<int>(b.s2.size()), N3 = static_cast<int>(b.s3.size());
  auto in3 = [&](int x) { return x >= 0 && x < N3; };
  for (int r = 0; r < N2; ++r)
    if (!in3(b.s2[r].neg) || !in3(b.s2[r].pos)) rep.add(where2(r), "side 3-stratum missing");
  if (!rep.clean()) return rep;

  // 1-strata: ranges and wedge consistency
  for (int e = 0; e < N1; ++e) {
    const auto& s = b.s1[e];
    if ((s.start < 0) != (s.end < 0)) rep.add(where1(e), "one endpoint missing");
    if (s.start >= N0 || s.end >= N0) rep.add(where1(e), "endpoint out of range");
    bool ok = true;
    for (const auto& x : s.word)
      if (x.stratum < 0 || x.stratum >= N2) ok = false;
    if (!ok) {
      rep.add(where1(e), "word names a missing 2-stratum");
      continue;
    }
    const int m = static_cast<int>(s.word.size());
    if (m == 0 && !in3(s.anchor)) rep.add(where1(e), "empty word without a 3-stratum anchor");
    for (int i = 0; i < m; ++i) {
      const auto& x = s.word[i];
      const auto& y = s.word[(i + 1) % m];
      int after = b.s2[x.stratum].side(x.sign);
      int before = b.s2[y.stratum].side(flip(y.sign));
      if (after != before)
        rep.add(where1(e), "wedge after position " + std::to_string(i + 1) +
                               " lies in two 3-strata");
    }
  }
  if (!rep.clean()) return rep;

  // interior links
  for (int v = 0; v < N0; ++v) {
    if (b.s0[v].boundary) continue;
    if (b.ends_at(v).empty()) {
      rep.add(where0(v), "interior 0-stratum without 1-strata");
      continue;
    }
    std::map<std::pair<int, int>, int> slot_dart;
    SphereGraphHandle g;
    try {
      g = build_link(b, v, nullptr, &slot_dart);
    } catch (const Error& ex) {
      rep.add(where0(v), ex.what());
      continue;
    }
    for (const auto& c : b.s0[v].corners) {
      auto x = b.seen_word(c.end_a)[c.slot_a];
      auto y = b.seen_word(c.end_b)[c.slot_b];
      if (x.stratum != y.stratum || x.sign == y.sign)
        rep.add(where0(v), "corner joins mismatched slots");
    }
    auto chi = g.component_euler();
    if (chi.size() != 1 || chi[0] != 2) {
      rep.add(where0(v), "link is not a connected sphere graph");
      continue;
    }
    // sectors of one link face lie in one 3-stratum
    std::map<int, int> face_wedge;
    for (int end : b.ends_at(v)) {
      auto w = b.seen_word(end);
      const int m = static_cast<int>(w.size());
      for (int j = 0; j < m; ++j) {
        int wedge = b.s2[w[j].stratum].side(w[j].sign);
        int key = g.face_key(slot_dart.at({end, (j + 1) % m}));
        auto [it, fresh] = face_wedge.emplace(key, wedge);
        if (!fresh && it->second != wedge) {
          rep.add(where0(v), "link face meets two 3-strata");
          break;
        }
      }
    }
  }

  // boundary
  const int C = static_cast<int>(b.boundary.size());
  for (int v = 0; v < N0; ++v) {
    if (!b.s0[v].boundary) continue;
    const auto& s = b.s0[v];
    auto ends = b.ends_at(v);
    if (ends.size() != 1) {
      rep.add(where0(v), "boundary 0-stratum with " + std::to_string(ends.size()) + " ends");
      continue;
    }
    if (s.component < 0 || s.component >= C) {
      rep.add(where0(v), "boundary component out of range");
      continue;
    }
    const auto& bc = b.boundary[s.component];
    if (s.surface_vertex < 0 || s.surface_vertex >= bc.surface.num_vertices() ||
        bc.vertex_stratum.at(s.surface_vertex) != v) {
      rep.add(where0(v), "surface vertex map is inconsistent");
      continue;
    }
    IncidenceWord expect;
    for (const auto& d : bc.surface.rotation[s.surface_vertex])
      expect.push_back({bc.edge_stratum.at(d.edge), d.at_tail ? Sign::Plus : Sign::Minus});
    if (!bc.incoming) expect = hash_word(expect);
    if (b.seen_word(ends[0]) != expect)
      rep.add(where0(v), "1-stratum word differs from the boundary vertex word");
  }
  for (int c = 0; c < C; ++c) {
    const auto& bc = b.boundary[c];
    const auto& sf = bc.surface;
    std::string wc = "boundary " + std::to_string(c);
    rep.merge(validate_surface_structure(sf));
    if (static_cast<int>(bc.vertex_stratum.size()) != sf.num_vertices() ||
        static_cast<int>(bc.edge_stratum.size()) != sf.num_edges() ||
        bc.region_stratum.size() != sf.regions.size()) {
      rep.add(wc, "map sizes differ from the surface");
      continue;
    }
    for (int x = 0; x < sf.num_vertices(); ++x) {
      int v = bc.vertex_stratum[x];
      if (v < 0 || v >= N0 || !b.s0[v].boundary || b.s0[v].component != c ||
          b.s0[v].surface_vertex != x)
        rep.add(wc, "vertex " + std::to_string(x) + " maps to a wrong 0-stratum");
    }
    for (int e = 0; e < sf.num_edges(); ++e) {
      int r = bc.edge_stratum[e];
      if (r < 0 || r >= N2) {
        rep.add(wc, "edge " + std::to_string(e) + " maps to a missing 2-stratum");
        continue;
      }
      if (b.s2[r].label != sf.edges[e].label)
        rep.add(wc, "edge " + std::to_string(e) + " label differs from its 2-stratum");
      // the positive side is to the left of the edge
      int right = sf.region_right(2 * e), left = sf.region_right(2 * e + 1);
      if (right < 0 || left < 0) continue;
      int want_pos = bc.region_stratum[left];
      int want_neg = bc.region_stratum[right];
      if (b.s2[r].pos != want_pos || b.s2[r].neg != want_neg)
        rep.add(wc, "edge " + std::to_string(e) + " sides differ from its 2-stratum");
    }
    for (std::size_t r = 0; r < sf.regions.size(); ++r) {
      int u = bc.region_stratum[r];
      if (!in3(u)) rep.add(wc, "region maps to a missing 3-stratum");
      else if (b.s3[u].label != sf.regions[r].label)
        rep.add(wc, "region " + std::to_string(r) + " label differs from its 3-stratum");
    }
  }
  return rep;
}

ValidationReport validate_bordism(const DefectData& dd, const StratifiedBordism& b) {
  ValidationReport rep = validate_bordism_structure(b);
  for (std::size_t u = 0; u < b.s3.size(); ++u)
    if (!dd.has_d3(b.s3[u].label))
      rep.add("3-stratum " + std::to_string(u), "label '" + b.s3[u].label + "' not in D3");
  for (int r = 0; r < static_cast<int>(b.s2.size()); ++r) {
    const auto& s = b.s2[r];
    if (!dd.has_d2(s.label)) {
      rep.add(where2(r), "label '" + s.label + "' not in D2");
      continue;
    }
    if (s.neg >= 0 && s.neg < static_cast<int>(b.s3.size()) &&
        b.s3[s.neg].label != dd.s.at(s.label))
      rep.add(where2(r), "negative side is not the source of " + s.label);
    if (s.pos >= 0 && s.pos < static_cast<int>(b.s3.size()) &&
        b.s3[s.pos].label != dd.t.at(s.label))
      rep.add(where2(r), "positive side is not the target of " + s.label);
  }
  for (int e = 0; e < static_cast<int>(b.s1.size()); ++e) {
    const auto& s = b.s1[e];
    LinearWord w;
    bool ok = true;
    for (const auto& x : s.word) {
      if (x.stratum < 0 || x.stratum >= static_cast<int>(b.s2.size())) {
        ok = false;
        break;
      }
      w.push_back({b.s2[x.stratum].label, x.sign});
    }
    if (!ok || w.empty()) continue;
    bool labels_ok = true;
    for (const auto& x : w) labels_ok = labels_ok && dd.has_d2(x.label);
    if (labels_ok && !dd.accepts(s.d1, CyclicWord(w)))
      rep.add(where1(e), "link word " + to_string(w) + " not in D1");
  }
  for (std::size_t c = 0; c < b.boundary.size(); ++c) {
    auto sub = validate_surface(dd, b.boundary[c].surface);
    for (const auto& it : sub.items)
      rep.add("boundary " + std::to_string(c) + " " + it.where, it.what, it.residual);
  }
  return rep;
}

ValidationReport check_fine(const StratifiedBordism& b) {
  ValidationReport rep;
  for (std::size_t u = 0; u < b.s3.size(); ++u)
    if (!b.s3[u].ball) rep.add("3-stratum " + std::to_string(u), "not a ball");
  std::map<int, int> touches;
  for (std::size_t c = 0; c < b.boundary.size(); ++c) {
    const auto& bc = b.boundary[c];
    if (!bc.surface.is_fine())
      rep.add("boundary " + std::to_string(c), "surface is not fine");
    for (int r : bc.edge_stratum)
      if (b.s2[r].chi != 1) rep.add(where2(r), "boundary 2-stratum is not a disc");
    for (int u : bc.region_stratum) touches[u] += 1;
  }
  for (auto [u, k] : touches)
    if (k > 1)
      rep.add("3-stratum " + std::to_string(u), "meets the boundary in " + std::to_string(k) +
                                                   " regions");
  return rep;
}

}  // namespace dtqft
