#include <algorithm>
#include <map>

#include "dtqft/computad.hpp"
#include "dtqft/gray.hpp"

namespace dtqft {

namespace {

LinearWord cat(LinearWord a, const LinearWord& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

struct UnionFind {
  std::vector<int> p;
  int make() {
    p.push_back(static_cast<int>(p.size()));
    return static_cast<int>(p.size()) - 1;
  }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

// compact component ids in order of first appearance
std::vector<int> compact(UnionFind& uf, int n, int* count) {
  std::vector<int> id(n, -1), out(n);
  int c = 0;
  for (int i = 0; i < n; ++i) {
    int r = uf.find(i);
    if (id[r] < 0) id[r] = c++;
    out[i] = id[r];
  }
  *count = c;
  return out;
}

}  // namespace

std::string to_string(Engine e) { return e == Engine::Triv ? "triv" : "statesum"; }

Engine parse_engine(const std::string& s) {
  if (s == "triv") return Engine::Triv;
  if (s == "statesum") return Engine::StateSum;
  throw ParseError("unknown engine: " + s);
}

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::Vertex: return "vertex";
    case EventKind::Cap: return "cap";
    case EventKind::Cup: return "cup";
  }
  return "?";
}

// ---------------------------------------------------------------- words

OneMorphismWord make_word(const LinearWord& entries, const std::string& object) {
  return {object, object, entries};
}

ValidationReport validate_word(const DefectData& dd, const OneMorphismWord& w) {
  ValidationReport rep;
  for (std::size_t i = 0; i < w.entries.size(); ++i)
    if (!dd.has_d2(w.entries[i].label)) rep.add("entry " + std::to_string(i), "unknown D_2 label");
  if (!rep.clean()) return rep;
  for (auto i : chain_violations(dd, w.entries, false))
    rep.add("entry " + std::to_string(i), "source does not match previous target");
  if (w.entries.empty()) {
    if (w.source != w.target) rep.add("word", "empty word with distinct ends");
    if (!dd.has_d3(w.source)) rep.add("word", "unknown D_3 label " + w.source);
  } else {
    if (signed_endpoint(dd, w.entries.front(), Endpoint::Source) != w.source)
      rep.add("word", "source mismatch");
    if (signed_endpoint(dd, w.entries.back(), Endpoint::Target) != w.target)
      rep.add("word", "target mismatch");
  }
  return rep;
}

OneMorphismWord box_compose(const OneMorphismWord& a, const OneMorphismWord& b) {
  if (a.target != b.source) throw ComposeError("box: target " + a.target + " != source " + b.source);
  return {a.source, b.target, cat(a.entries, b.entries)};
}

OneMorphismWord hash_dual(const OneMorphismWord& a) {
  return {a.target, a.source, hash_word(a.entries)};
}

// ---------------------------------------------------------------- events

LinearWord LayerEvent::lower() const {
  switch (kind) {
    case EventKind::Vertex: return in_word;
    case EventKind::Cap: return {};
    case EventKind::Cup: return {label, flipped(label)};
  }
  return {};
}

LinearWord LayerEvent::upper() const {
  switch (kind) {
    case EventKind::Vertex: return out_word;
    case EventKind::Cap: return {label, flipped(label)};
    case EventKind::Cup: return {};
  }
  return {};
}

LinearWord LayerEvent::concat(const LinearWord& mid) const { return cat(cat(left, mid), right); }

LinearWord LayerEvent::vertex_word() const { return cat(out_word, hash_word(in_word)); }

bool LayerEvent::operator==(const LayerEvent& o) const {
  if (kind != o.kind || left != o.left || right != o.right) return false;
  if (kind == EventKind::Vertex) return d1 == o.d1 && in_word == o.in_word && out_word == o.out_word;
  return label == o.label;
}

LayerEvent vertex_event(const std::string& d1, const LinearWord& in, const LinearWord& out,
                        const LinearWord& left, const LinearWord& right) {
  LayerEvent e;
  e.kind = EventKind::Vertex;
  e.d1 = d1;
  e.in_word = in;
  e.out_word = out;
  e.left = left;
  e.right = right;
  return e;
}

LayerEvent cap_event(const SignedLabel& x, const LinearWord& left, const LinearWord& right) {
  LayerEvent e;
  e.kind = EventKind::Cap;
  e.label = x;
  e.left = left;
  e.right = right;
  return e;
}

LayerEvent cup_event(const SignedLabel& x, const LinearWord& left, const LinearWord& right) {
  auto e = cap_event(x, left, right);
  e.kind = EventKind::Cup;
  return e;
}

// ---------------------------------------------------------------- diagrams

int TwoMorphismDiagram::num_vertices() const {
  return static_cast<int>(std::count_if(layers.begin(), layers.end(),
                                        [](const LayerEvent& e) { return e.kind == EventKind::Vertex; }));
}

TwoMorphismDiagram identity_diagram(const OneMorphismWord& a) { return {a, a, {}}; }

TwoMorphismDiagram single_layer(const LayerEvent& e, const std::string& object) {
  return {make_word(e.before(), object), make_word(e.after(), object), {e}};
}

ValidationReport validate_diagram_structure(const TwoMorphismDiagram& x) {
  ValidationReport rep;
  if (x.source.source != x.target.source || x.source.target != x.target.target)
    rep.add("diagram", "source and target words are not parallel");
  LinearWord cur = x.source.entries;
  for (std::size_t k = 0; k < x.layers.size(); ++k) {
    const auto& e = x.layers[k];
    if (e.before() != cur) rep.add("layer " + std::to_string(k), "lower word does not match");
    if (e.kind == EventKind::Vertex && e.in_word.empty() && e.out_word.empty())
      rep.add("layer " + std::to_string(k), "vertex without legs");
    cur = e.after();
  }
  if (cur != x.target.entries) rep.add("diagram", "last layer does not reach the target word");
  return rep;
}

ValidationReport validate_diagram(const DefectData& dd, const TwoMorphismDiagram& x) {
  auto rep = validate_diagram_structure(x);
  rep.merge(validate_word(dd, x.source));
  rep.merge(validate_word(dd, x.target));
  for (std::size_t k = 0; k < x.layers.size(); ++k) {
    const auto& e = x.layers[k];
    auto where = "layer " + std::to_string(k);
    if (e.kind != EventKind::Vertex) {
      if (!dd.has_d2(e.label.label)) rep.add(where, "unknown D_2 label " + e.label.label);
      continue;
    }
    if (!dd.accepts(e.d1, CyclicWord(e.vertex_word())))
      rep.add(where, "vertex word " + to_string(e.vertex_word()) + " not accepted by " + e.d1);
  }
  return rep;
}

TwoMorphismDiagram whisker_left(const OneMorphismWord& a, const TwoMorphismDiagram& x) {
  TwoMorphismDiagram out{box_compose(a, x.source), box_compose(a, x.target), x.layers};
  for (auto& e : out.layers) e.left = cat(a.entries, e.left);
  return out;
}

TwoMorphismDiagram whisker_right(const TwoMorphismDiagram& x, const OneMorphismWord& a) {
  TwoMorphismDiagram out{box_compose(x.source, a), box_compose(x.target, a), x.layers};
  for (auto& e : out.layers) e.right = cat(e.right, a.entries);
  return out;
}

TwoMorphismDiagram otimes_compose(const TwoMorphismDiagram& x, const TwoMorphismDiagram& y) {
  if (y.target != x.source)
    throw ComposeError("otimes: " + to_string(y.target.entries) + " != " + to_string(x.source.entries));
  TwoMorphismDiagram out{y.source, x.target, y.layers};
  out.layers.insert(out.layers.end(), x.layers.begin(), x.layers.end());
  return out;
}

TwoMorphismDiagram box_compose(const TwoMorphismDiagram& x, const TwoMorphismDiagram& y) {
  return otimes_compose(whisker_right(x, y.target), whisker_left(x.source, y));
}

TwoMorphismDiagram dagger_dual(const TwoMorphismDiagram& x) {
  TwoMorphismDiagram out{x.target, x.source, {x.layers.rbegin(), x.layers.rend()}};
  for (auto& e : out.layers) {
    if (e.kind == EventKind::Vertex)
      std::swap(e.in_word, e.out_word);
    else
      e.kind = e.kind == EventKind::Cap ? EventKind::Cup : EventKind::Cap;
    e.splitting = -1;
  }
  return out;
}

TwoMorphismDiagram fold(const OneMorphismWord& a) {
  OneMorphismWord unit{a.source, a.source, {}};
  TwoMorphismDiagram out{unit, box_compose(a, hash_dual(a)), {}};
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    LinearWord pre(a.entries.begin(), a.entries.begin() + static_cast<long>(i));
    out.layers.push_back(cap_event(a.entries[i], pre, hash_word(pre)));
  }
  return out;
}

TwoMorphismDiagram ev_fold(const OneMorphismWord& a) { return dagger_dual(fold(hash_dual(a))); }

TwoMorphismDiagram zigzag(const OneMorphismWord& a) {
  return otimes_compose(whisker_left(a, ev_fold(a)), whisker_right(fold(a), a));
}

// ---------------------------------------------------------------- lines

namespace {

// Sweep of a diagram: ports joined into lines, and gaps (regions between
// strands) joined into regions.
struct Sweep {
  DiagramLines lines;
  std::vector<int> line_sign_pos;  // per line: first position seen
  std::vector<Sign> line_sign;     // its sign there
  std::vector<int> line_left_gap, line_right_gap;
  // gaps
  int num_gaps = 0;
  std::vector<int> gap_region;  // gap -> compact region
  int num_regions = 0;
  std::vector<int> bottom_gaps, top_gaps;
  std::vector<std::vector<int>> before_gaps, after_gaps;  // per layer, region ids
};

Sweep sweep(const TwoMorphismDiagram& x) {
  auto rep = validate_diagram_structure(x);
  if (!rep.clean()) throw ComposeError("malformed diagram: " + rep.items.front().where + ": " +
                                       rep.items.front().what);
  UnionFind ports, gaps;
  std::vector<std::string> port_label;
  struct Seen {
    int port;
    int pos;
    Sign sign;
    std::vector<int> gaps;  // gap ids at that level
  };
  std::vector<Seen> seen;  // first sighting of fresh strands
  auto new_port = [&](const SignedLabel& l) {
    port_label.push_back(l.label);
    return ports.make();
  };
  std::vector<int> cur, cur_gaps;
  for (const auto& l : x.source.entries) cur.push_back(new_port(l));
  const int nb = static_cast<int>(cur.size());
  for (int i = 0; i <= nb; ++i) cur_gaps.push_back(gaps.make());
  std::vector<int> bottom_ports = cur, bottom_gap_ids = cur_gaps;
  for (int i = 0; i < nb; ++i) seen.push_back({cur[i], i, x.source.entries[i].sign, cur_gaps});
  std::vector<std::vector<int>> layer_ports;
  std::vector<std::vector<int>> before_ids, after_ids;
  for (const auto& e : x.layers) {
    const int p = static_cast<int>(e.left.size());
    auto lo = e.lower();
    auto up = e.upper();
    const int nin = static_cast<int>(lo.size()), nout = static_cast<int>(up.size());
    before_ids.push_back(cur_gaps);
    std::vector<int> legs;
    std::vector<int> next(cur.begin(), cur.begin() + p);
    std::vector<int> next_gaps(cur_gaps.begin(), cur_gaps.begin() + p + 1);
    if (e.kind == EventKind::Vertex) {
      for (int j = 0; j < nin; ++j) {
        int q = new_port(lo[j]);
        ports.unite(q, cur[p + j]);
        legs.push_back(q);
      }
      for (int j = 0; j < nout; ++j) {
        int q = new_port(up[j]);
        legs.push_back(q);
        next.push_back(q);
      }
    } else if (e.kind == EventKind::Cap) {
      int q = new_port(e.label);
      legs.push_back(q);
      next.push_back(q);
      next.push_back(q);
    } else {
      int q = new_port(e.label);
      ports.unite(q, cur[p]);
      ports.unite(q, cur[p + 1]);
      legs.push_back(q);
    }
    for (int j = 1; j < nout; ++j) next_gaps.push_back(gaps.make());
    if (nout == 0) {
      gaps.unite(cur_gaps[p], cur_gaps[p + nin]);
    } else {
      next_gaps.push_back(cur_gaps[p + nin]);
    }
    next.insert(next.end(), cur.begin() + p + nin, cur.end());
    next_gaps.insert(next_gaps.end(), cur_gaps.begin() + p + nin + 1, cur_gaps.end());
    if (e.kind == EventKind::Vertex || e.kind == EventKind::Cap)
      for (int j = 0; j < nout; ++j) seen.push_back({next[p + j], p + j, up[j].sign, next_gaps});
    layer_ports.push_back(legs);
    after_ids.push_back(next_gaps);
    cur = std::move(next);
    cur_gaps = std::move(next_gaps);
  }
  const int nt = static_cast<int>(cur.size());
  std::vector<int> top_ports;
  for (int j = 0; j < nt; ++j) {
    int q = new_port(x.target.entries[j]);
    ports.unite(q, cur[j]);
    top_ports.push_back(q);
  }
  // a closed strand between a cap and a cup is still a line
  Sweep s;
  auto& L = s.lines;
  int nports = static_cast<int>(port_label.size());
  auto line_of = compact(ports, nports, &L.num_lines);
  L.label.assign(L.num_lines, "");
  for (int q = 0; q < nports; ++q) L.label[line_of[q]] = port_label[q];
  for (int q : bottom_ports) L.bottom.push_back(line_of[q]);
  for (int q : top_ports) L.top.push_back(line_of[q]);
  for (const auto& legs : layer_ports) {
    std::vector<int> ls;
    for (int q : legs) ls.push_back(line_of[q]);
    L.layer_lines.push_back(ls);
  }
  auto region_of = compact(gaps, static_cast<int>(gaps.p.size()), &s.num_regions);
  s.num_gaps = static_cast<int>(gaps.p.size());
  s.gap_region = region_of;
  auto to_regions = [&](const std::vector<int>& ids) {
    std::vector<int> r;
    for (int g : ids) r.push_back(region_of[g]);
    return r;
  };
  s.bottom_gaps = to_regions(bottom_gap_ids);
  s.top_gaps = to_regions(cur_gaps);
  for (std::size_t k = 0; k < x.layers.size(); ++k) {
    s.before_gaps.push_back(to_regions(before_ids[k]));
    s.after_gaps.push_back(to_regions(after_ids[k]));
  }
  s.line_sign_pos.assign(L.num_lines, -1);
  s.line_sign.assign(L.num_lines, Sign::Plus);
  s.line_left_gap.assign(L.num_lines, -1);
  s.line_right_gap.assign(L.num_lines, -1);
  for (const auto& sn : seen) {
    int l = line_of[sn.port];
    if (s.line_sign_pos[l] >= 0) continue;
    s.line_sign_pos[l] = sn.pos;
    s.line_sign[l] = sn.sign;
    s.line_left_gap[l] = region_of[sn.gaps[sn.pos]];
    s.line_right_gap[l] = region_of[sn.gaps[sn.pos + 1]];
  }
  return s;
}

}  // namespace

DiagramLines diagram_lines(const TwoMorphismDiagram& x) { return sweep(x).lines; }

SphereSheets sphere_sheets(const TwoMorphismDiagram& x, const TwoMorphismDiagram& y) {
  if (x.source != y.source || x.target != y.target)
    throw ParallelError("sphere needs parallel 2-morphisms");
  auto lx = diagram_lines(x), ly = diagram_lines(y);
  UnionFind uf;
  const int n = lx.num_lines + ly.num_lines;
  for (int i = 0; i < n; ++i) uf.make();
  for (std::size_t i = 0; i < lx.bottom.size(); ++i) uf.unite(lx.bottom[i], lx.num_lines + ly.bottom[i]);
  for (std::size_t j = 0; j < lx.top.size(); ++j) uf.unite(lx.top[j], lx.num_lines + ly.top[j]);
  SphereSheets s;
  auto sheet = compact(uf, n, &s.num_sheets);
  s.x_sheet.assign(sheet.begin(), sheet.begin() + lx.num_lines);
  s.y_sheet.assign(sheet.begin() + lx.num_lines, sheet.end());
  s.label.assign(s.num_sheets, "");
  for (int l = 0; l < lx.num_lines; ++l) s.label[s.x_sheet[l]] = lx.label[l];
  for (int l = 0; l < ly.num_lines; ++l) s.label[s.y_sheet[l]] = ly.label[l];
  return s;
}

// ---------------------------------------------------------------- glue_sphere

DecoratedSurface glue_sphere(const TwoMorphismDiagram& x, const TwoMorphismDiagram& y) {
  auto sheets = sphere_sheets(x, y);
  const Sweep sw[2] = {sweep(x), sweep(y)};
  const TwoMorphismDiagram* dg[2] = {&x, &y};
  const std::string object = x.source.source;

  DecoratedSurface s;
  // legs per sheet: (vertex, leg index in rotation, leaves)
  struct Leg {
    int vertex, slot;
    bool leaves;
  };
  std::vector<std::vector<Leg>> sheet_legs(sheets.num_sheets);
  struct VertexInfo {
    int side, layer;
    std::vector<int> lines;       // in rotation order
    std::vector<bool> leaves;
    std::vector<int> corner_gap;  // region id of the corner after slot i
  };
  std::vector<VertexInfo> info;
  for (int side = 0; side < 2; ++side) {
    const auto& d = *dg[side];
    const auto& lines = sw[side].lines;
    for (std::size_t k = 0; k < d.layers.size(); ++k) {
      const auto& e = d.layers[k];
      if (e.kind != EventKind::Vertex) continue;
      const int nin = static_cast<int>(e.in_word.size()), nout = static_cast<int>(e.out_word.size());
      const int p = static_cast<int>(e.left.size());
      const auto& bg = sw[side].before_gaps[k];
      const auto& ag = sw[side].after_gaps[k];
      const auto& ll = lines.layer_lines[k];
      VertexInfo vi{side, static_cast<int>(k), {}, {}, {}};
      // picture sign of a leg: + when it points away from the vertex
      std::vector<std::pair<int, bool>> legs;  // (line, leaves in the picture)
      if (side == 0) {
        // back disc: clockwise in the picture, out legs left to right, in legs right to left
        for (int j = 0; j < nout; ++j) {
          legs.push_back({ll[nin + j], e.out_word[j].sign == Sign::Plus});
          vi.corner_gap.push_back(j + 1 < nout ? ag[p + 1 + j] : (nin ? bg[p + nin] : bg[p]));
        }
        for (int j = nin - 1; j >= 0; --j) {
          legs.push_back({ll[j], e.in_word[j].sign == Sign::Minus});
          vi.corner_gap.push_back(j > 0 ? bg[p + j] : bg[p]);
        }
      } else {
        // front disc: counterclockwise, out legs right to left, in legs left to right
        for (int j = nout - 1; j >= 0; --j) {
          legs.push_back({ll[nin + j], e.out_word[j].sign == Sign::Plus});
          vi.corner_gap.push_back(j > 0 ? ag[p + j] : bg[p]);
        }
        for (int j = 0; j < nin; ++j) {
          legs.push_back({ll[j], e.in_word[j].sign == Sign::Minus});
          vi.corner_gap.push_back(j + 1 < nin ? bg[p + 1 + j] : (nout ? bg[p + nin] : bg[p]));
        }
      }
      for (auto [l, lv] : legs) {
        vi.lines.push_back(l);
        vi.leaves.push_back(lv);
      }
      info.push_back(vi);
    }
  }
  // regions: gaps of both discs, glued along the boundary arcs
  UnionFind reg;
  const int r0 = sw[0].num_regions, r1 = sw[1].num_regions;
  for (int i = 0; i < r0 + r1; ++i) reg.make();
  for (std::size_t i = 0; i < sw[0].bottom_gaps.size(); ++i)
    reg.unite(sw[0].bottom_gaps[i], r0 + sw[1].bottom_gaps[i]);
  for (std::size_t i = 0; i < sw[0].top_gaps.size(); ++i)
    reg.unite(sw[0].top_gaps[i], r0 + sw[1].top_gaps[i]);
  auto region_id = [&](int side, int r) { return reg.find(side == 0 ? r : r0 + r); };

  for (std::size_t v = 0; v < info.size(); ++v) {
    const auto& e = dg[info[v].side]->layers[info[v].layer];
    s.add_vertex({}, e.d1);
    for (std::size_t i = 0; i < info[v].lines.size(); ++i) {
      int l = info[v].lines[i];
      int sh = info[v].side == 0 ? sheets.x_sheet[l] : sheets.y_sheet[l];
      // sphere direction: back disc keeps the picture sign, front disc flips it
      bool leaves = info[v].leaves[i];
      if (info[v].side == 1) leaves = !leaves;
      sheet_legs[sh].push_back({static_cast<int>(v), static_cast<int>(i), leaves});
    }
  }
  for (std::size_t v = 0; v < info.size(); ++v) s.rotation[v].resize(info[v].lines.size());
  // circle sheets: remember a representative line for the sides
  std::vector<int> sheet_edge(sheets.num_sheets, -1);
  for (int sh = 0; sh < sheets.num_sheets; ++sh) {
    const auto& legs = sheet_legs[sh];
    if (legs.empty()) {
      sheet_edge[sh] = s.add_edge(sheets.label[sh], -1, -1);
      continue;
    }
    if (legs.size() != 2 || legs[0].leaves == legs[1].leaves)
      throw TopologyError("sheet " + std::to_string(sh) + " is not an oriented arc");
    const auto& t = legs[0].leaves ? legs[0] : legs[1];
    const auto& h = legs[0].leaves ? legs[1] : legs[0];
    int e = s.add_edge(sheets.label[sh], t.vertex, h.vertex);
    sheet_edge[sh] = e;
    s.rotation[t.vertex][t.slot] = {e, true};
    s.rotation[h.vertex][h.slot] = {e, false};
  }
  // faces: the corner after slot i lies in the face of the next dart
  std::map<int, int> face_region;
  auto assign = [&](int key, int region) {
    auto [it, fresh] = face_region.insert({key, region});
    if (!fresh && it->second != region) throw TopologyError("face meets two regions");
  };
  for (std::size_t v = 0; v < info.size(); ++v) {
    const int m = static_cast<int>(info[v].lines.size());
    for (int i = 0; i < m; ++i) {
      int next = s.rotation[v][(i + 1) % m].id();
      assign(s.face_key(next), region_id(info[v].side, info[v].corner_gap[i]));
    }
  }
  for (int sh = 0; sh < sheets.num_sheets; ++sh) {
    if (!sheet_legs[sh].empty()) continue;
    int side = 0, l = -1;
    for (int q = 0; q < sw[0].lines.num_lines && l < 0; ++q)
      if (sheets.x_sheet[q] == sh && sw[0].line_sign_pos[q] >= 0) l = q;
    if (l < 0) {
      side = 1;
      for (int q = 0; q < sw[1].lines.num_lines && l < 0; ++q)
        if (sheets.y_sheet[q] == sh && sw[1].line_sign_pos[q] >= 0) l = q;
    }
    if (l < 0) throw TopologyError("circle sheet without a position");
    const auto& S = sw[side];
    int lg = S.line_left_gap[l], rg = S.line_right_gap[l];
    // the edge runs along the line's coorientation; in both discs that puts
    // the left gap on its right for a + entry
    bool plus = S.line_sign[l] == Sign::Plus;
    int right = plus ? lg : rg, left = plus ? rg : lg;
    assign(2 * sheet_edge[sh], region_id(side, right));
    assign(2 * sheet_edge[sh] + 1, region_id(side, left));
  }
  std::map<int, std::vector<int>> by_region;
  for (auto [key, r] : face_region) by_region[r].push_back(key);
  if (by_region.empty()) {
    s.regions.push_back({object, {}});
  } else {
    for (auto& [r, keys] : by_region) s.regions.push_back({object, keys});
  }
  return s;
}

}  // namespace dtqft
