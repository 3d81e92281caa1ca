#include "dtqft/io.hpp"

#include "dtqft/gray.hpp"
#include "dtqft/strata.hpp"

#include <cstdlib>
#include <fstream>

#ifndef DTQFT_DATA_DIR
#define DTQFT_DATA_DIR "data"
#endif

namespace dtqft {

namespace fs = std::filesystem;

json read_json_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw ParseError("cannot open " + p.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(p.string() + ": " + e.what());
  }
}

fs::path resolve_data_path(const std::string& name_or_path, const std::string& kind) {
  fs::path p(name_or_path);
  if (fs::exists(p)) return p;
  std::vector<fs::path> roots;
  if (const char* env = std::getenv("DTQFT_DATA")) roots.emplace_back(env);
  roots.emplace_back(DTQFT_DATA_DIR);
  for (const auto& r : roots)
    for (const auto& cand : {r / kind / name_or_path, r / kind / (name_or_path + ".json")})
      if (fs::exists(cand)) return cand;
  throw ParseError("cannot resolve " + kind + " '" + name_or_path + "'");
}

// ---------------------------------------------------------------- groups

GroupTable group_from_json(const json& j) {
  try {
    if (j.contains("cyclic")) return GroupTable::cyclic(j.at("cyclic").get<int>());
    if (j.contains("symmetric") && j.at("symmetric").get<int>() == 3)
      return GroupTable::symmetric3();
    return GroupTable(j.at("elements").get<std::vector<std::string>>(),
                      j.at("product").get<std::vector<std::vector<int>>>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("group: ") + e.what());
  }
}

json group_to_json(const GroupTable& g) {
  return {{"elements", g.elements()}, {"product", g.table()}};
}

// ---------------------------------------------------------------- categories

static cplx complex_from_json(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2) return {v[0].get<double>(), v[1].get<double>()};
  throw ParseError("complex value must be a number or [re, im]");
}

FusionCategory category_from_json(const json& j) {
  FusionCategory cat;
  try {
    cat.name = j.value("name", "");
    cat.group = group_from_json(j.at("group"));
    for (const auto& s : j.at("simples")) {
      Simple x;
      x.id = s.at("id").get<std::string>();
      x.grade = cat.group.index(s.value("grade", cat.group.name(cat.group.identity())));
      x.qdim = s.at("qdim").get<double>();
      cat.simples.push_back(x);
    }
    cat.init_tables();
    for (std::size_t i = 0; i < cat.simples.size(); ++i)
      cat.simples[i].dual = cat.index(j.at("simples")[i].at("dual").get<std::string>());
    cat.unit = cat.index(j.at("unit").get<std::string>());
    for (const auto& t : j.at("fusion")) {
      if (t.size() == 4 && t[3].get<int>() > 1)
        throw ParseError("fusion multiplicity > 1 is not supported");
      cat.set_fusion(cat.index(t[0]), cat.index(t[1]), cat.index(t[2]));
    }
    if (j.contains("F_default")) cat.default_F = complex_from_json(j.at("F_default"));
    if (j.contains("F"))
      for (const auto& f : j.at("F")) {
        FIndex idx{};
        const auto& ix = f.at("index");
        if (ix.size() != 6) throw ParseError("F index must have 6 entries");
        for (int k = 0; k < 6; ++k) idx[k] = cat.index(ix[k].get<std::string>());
        cat.set_F(idx, complex_from_json(f.at("value")));
      }
    if (j.contains("pivotal"))
      for (const auto& [id, v] : j.at("pivotal").items())
        cat.pivotal[cat.index(id)] = complex_from_json(v);
  } catch (const json::exception& e) {
    throw ParseError(std::string("category: ") + e.what());
  } catch (const LabelError& e) {
    throw ParseError(std::string("category: ") + e.what());
  }
  return cat;
}

FusionCategory load_category(const fs::path& p) {
  return category_from_json(read_json_file(p));
}

// ---------------------------------------------------------------- defect data

static LinearWord word_from_json(const json& j) {
  LinearWord w;
  for (const auto& x : j) w.push_back(parse_signed_label(x.get<std::string>()));
  return w;
}

DefectData defect_data_from_json(const json& j) {
  try {
    std::string family = j.value("family", "explicit");
    DefectData dd;
    if (family == "group") {
      dd = build_group_defect_data(group_from_json(j.at("group")));
    } else if (family == "rt") {
      dd = build_rt_defect_data(j.at("objects").get<std::vector<std::string>>());
    } else if (family == "explicit") {
      dd.d3 = j.at("d3").get<std::vector<std::string>>();
      for (const auto& x : j.at("d2")) {
        auto id = x.at("id").get<std::string>();
        dd.d2.push_back(id);
        dd.s[id] = x.at("s").get<std::string>();
        dd.t[id] = x.at("t").get<std::string>();
      }
      for (const auto& e : j.value("d1", json::array())) {
        D1Element el;
        el.id = e.at("id").get<std::string>();
        if (e.contains("word")) el.word = CyclicWord(word_from_json(e.at("word")));
        el.d3 = e.value("d3", "");
        dd.d1.push_back(el);
      }
    } else {
      throw ParseError("unknown defect data family: " + family);
    }
    dd.max_word_len = j.value("max_word_len", 8);
    return dd;
  } catch (const json::exception& e) {
    throw ParseError(std::string("defect data: ") + e.what());
  }
}

DefectData load_defect_data(const fs::path& p) {
  return defect_data_from_json(read_json_file(p));
}

// ---------------------------------------------------------------- surfaces

static Sign sign_from_json(const json& j) {
  auto s = j.get<std::string>();
  if (s == "+") return Sign::Plus;
  if (s == "-") return Sign::Minus;
  throw ParseError("sign must be + or -: " + s);
}

static std::string sign_json(Sign s) { return s == Sign::Plus ? "+" : "-"; }

DecoratedSurface surface_from_json(const json& j) {
  try {
    DecoratedSurface s;
    for (const auto& e : j.value("edges", json::array()))
      s.edges.push_back({e.at("label").get<std::string>(), e.value("tail", -1), e.value("head", -1)});
    for (const auto& v : j.value("vertices", json::array())) {
      std::vector<SurfaceDart> rot;
      for (const auto& d : v.at("rotation")) {
        auto end = d.at(1).get<std::string>();
        if (end != "tail" && end != "head") throw ParseError("dart end must be tail or head");
        rot.push_back({d.at(0).get<int>(), end == "tail"});
      }
      s.rotation.push_back(std::move(rot));
      s.vertex_label.push_back(v.value("label", ""));
    }
    if (j.contains("regions")) {
      for (const auto& r : j.at("regions"))
        s.regions.push_back({r.value("label", "*"), r.value("faces", std::vector<int>{})});
    } else {
      s.default_regions(j.value("region_label", "*"));
    }
    return s;
  } catch (const json::exception& e) {
    throw ParseError(std::string("surface: ") + e.what());
  }
}

json surface_to_json(const DecoratedSurface& s) {
  json j;
  j["vertices"] = json::array();
  for (int v = 0; v < s.num_vertices(); ++v) {
    json rot = json::array();
    for (const auto& d : s.rotation[v]) rot.push_back({d.edge, d.at_tail ? "tail" : "head"});
    j["vertices"].push_back({{"label", s.vertex_label[v]}, {"rotation", rot}});
  }
  j["edges"] = json::array();
  for (const auto& e : s.edges) {
    json x = {{"label", e.label}};
    if (!e.circle()) {
      x["tail"] = e.tail;
      x["head"] = e.head;
    }
    j["edges"].push_back(x);
  }
  j["regions"] = json::array();
  for (const auto& r : s.regions) j["regions"].push_back({{"label", r.label}, {"faces", r.faces}});
  return j;
}

// ---------------------------------------------------------------- bordisms

StratifiedBordism bordism_from_json(const json& j) {
  try {
    StratifiedBordism b;
    const auto& st = j.at("strata");
    for (const auto& x : st.value("3", json::array()))
      b.s3.push_back({x.value("label", "*"), x.value("ball", true)});
    for (const auto& x : st.value("2", json::array()))
      b.s2.push_back({x.at("label").get<std::string>(), x.value("chi", 1), x.at("neg").get<int>(),
                      x.at("pos").get<int>()});
    for (const auto& x : st.value("1", json::array())) {
      Stratum1 e;
      e.d1 = x.value("label", "");
      for (const auto& y : x.value("word", json::array()))
        e.word.push_back({y.at(0).get<int>(), sign_from_json(y.at(1))});
      e.start = x.value("start", -1);
      e.end = x.value("end", -1);
      e.anchor = x.value("anchor", -1);
      b.s1.push_back(std::move(e));
    }
    for (const auto& x : st.value("0", json::array())) {
      Stratum0 v;
      v.boundary = x.value("boundary", false);
      v.component = x.value("component", -1);
      v.surface_vertex = x.value("surface_vertex", -1);
      for (const auto& c : x.value("corners", json::array()))
        v.corners.push_back({c.at(0).get<int>(), c.at(1).get<int>(), c.at(2).get<int>(), c.at(3).get<int>()});
      b.s0.push_back(std::move(v));
    }
    for (const auto& x : j.value("boundary", json::array())) {
      BoundaryComponent c;
      c.name = x.value("name", "");
      auto role = x.at("role").get<std::string>();
      if (role != "in" && role != "out") throw ParseError("boundary role must be in or out");
      c.incoming = role == "in";
      c.surface = surface_from_json(x.at("surface"));
      c.vertex_stratum = x.value("vertex_stratum", std::vector<int>{});
      c.edge_stratum = x.value("edge_stratum", std::vector<int>{});
      c.region_stratum = x.value("region_stratum", std::vector<int>{});
      b.boundary.push_back(std::move(c));
    }
    return b;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bordism: ") + e.what());
  }
}

json bordism_to_json(const StratifiedBordism& b) {
  json st;
  st["3"] = json::array();
  for (const auto& x : b.s3) st["3"].push_back({{"label", x.label}, {"ball", x.ball}});
  st["2"] = json::array();
  for (const auto& x : b.s2)
    st["2"].push_back({{"label", x.label}, {"chi", x.chi}, {"neg", x.neg}, {"pos", x.pos}});
  st["1"] = json::array();
  for (const auto& x : b.s1) {
    json w = json::array();
    for (const auto& y : x.word) w.push_back({y.stratum, sign_json(y.sign)});
    json e = {{"label", x.d1}, {"word", w}};
    if (!x.closed()) {
      e["start"] = x.start;
      e["end"] = x.end;
    }
    if (x.word.empty()) e["anchor"] = x.anchor;
    st["1"].push_back(e);
  }
  st["0"] = json::array();
  for (const auto& x : b.s0) {
    if (x.boundary) {
      st["0"].push_back({{"boundary", true}, {"component", x.component}, {"surface_vertex", x.surface_vertex}});
      continue;
    }
    json cs = json::array();
    for (const auto& c : x.corners) cs.push_back({c.end_a, c.slot_a, c.end_b, c.slot_b});
    st["0"].push_back({{"boundary", false}, {"corners", cs}});
  }
  json j;
  j["strata"] = st;
  j["boundary"] = json::array();
  for (const auto& c : b.boundary)
    j["boundary"].push_back({{"name", c.name},
                             {"role", c.incoming ? "in" : "out"},
                             {"surface", surface_to_json(c.surface)},
                             {"vertex_stratum", c.vertex_stratum},
                             {"edge_stratum", c.edge_stratum},
                             {"region_stratum", c.region_stratum}});
  return j;
}

// ---------------------------------------------------------------- diagrams

static json word_json(const LinearWord& w) {
  json a = json::array();
  for (const auto& x : w) a.push_back(to_string(x));
  return a;
}

static LayerEvent event_from_json(const json& j) {
  auto kind = j.at("kind").get<std::string>();
  auto left = word_from_json(j.value("left", json::array()));
  auto right = word_from_json(j.value("right", json::array()));
  if (kind == "vertex")
    return vertex_event(j.value("d1", ""), word_from_json(j.value("in", json::array())),
                        word_from_json(j.value("out", json::array())), left, right);
  auto label = parse_signed_label(j.at("label").get<std::string>());
  if (kind == "cap") return cap_event(label, left, right);
  if (kind == "cup") return cup_event(label, left, right);
  throw ParseError("unknown layer kind: " + kind);
}

static json event_json(const LayerEvent& e) {
  json j = {{"kind", to_string(e.kind)}};
  if (e.kind == EventKind::Vertex) {
    j["d1"] = e.d1;
    j["in"] = word_json(e.in_word);
    j["out"] = word_json(e.out_word);
  } else {
    j["label"] = to_string(e.label);
  }
  j["left"] = word_json(e.left);
  j["right"] = word_json(e.right);
  return j;
}

static std::vector<LayerEvent> layers_from_json(const json& j) {
  std::vector<LayerEvent> out;
  for (const auto& e : j) out.push_back(event_from_json(e));
  return out;
}

TwoMorphismDiagram diagram_from_json(const json& j) {
  try {
    const auto obj = j.value("object", std::string("*"));
    TwoMorphismDiagram d;
    d.layers = layers_from_json(j.value("layers", json::array()));
    if (j.contains("source"))
      d.source = make_word(word_from_json(j.at("source")), obj);
    else if (!d.layers.empty())
      d.source = make_word(d.layers.front().before(), obj);
    else
      throw ParseError("diagram without layers needs a source word");
    if (j.contains("target"))
      d.target = make_word(word_from_json(j.at("target")), obj);
    else
      d.target = d.layers.empty() ? d.source : make_word(d.layers.back().after(), obj);
    return d;
  } catch (const json::exception& e) {
    throw ParseError(std::string("diagram: ") + e.what());
  }
}

json diagram_to_json(const TwoMorphismDiagram& d) {
  json j = {{"object", d.source.source},
            {"source", word_json(d.source.entries)},
            {"target", word_json(d.target.entries)},
            {"layers", json::array()}};
  for (const auto& e : d.layers) j["layers"].push_back(event_json(e));
  return j;
}

Movie movie_from_json(const json& j) {
  try {
    Movie mv;
    mv.start = diagram_from_json(j.at("start"));
    const auto obj = mv.start.source.source;
    for (const auto& e : j.value("events", json::array())) {
      MovieEvent ev;
      auto kind = e.at("kind").get<std::string>();
      bool known = false;
      for (auto k : {MovieEventKind::Insert, MovieEventKind::Crossing, MovieEventKind::Coev,
                     MovieEventKind::Ev, MovieEventKind::Triangulator,
                     MovieEventKind::TriangulatorInverse})
        if (to_string(k) == kind) {
          ev.kind = k;
          known = true;
        }
      if (!known) throw ParseError("unknown movie event: " + kind);
      ev.at = e.value("at", 0);
      ev.count = e.value("count", 0);
      ev.layers = layers_from_json(e.value("layers", json::array()));
      ev.word = make_word(word_from_json(e.value("word", json::array())), obj);
      ev.offset = e.value("offset", 0);
      ev.basis = e.value("basis", 0);
      if (e.contains("coefficient")) ev.coefficient = complex_from_json(e.at("coefficient"));
      mv.events.push_back(std::move(ev));
    }
    return mv;
  } catch (const json::exception& e) {
    throw ParseError(std::string("movie: ") + e.what());
  }
}

json movie_to_json(const Movie& mv) {
  json j = {{"start", diagram_to_json(mv.start)}, {"events", json::array()}};
  for (const auto& ev : mv.events) {
    json e = {{"kind", to_string(ev.kind)}, {"at", ev.at}, {"count", ev.count}};
    if (!ev.layers.empty()) {
      e["layers"] = json::array();
      for (const auto& l : ev.layers) e["layers"].push_back(event_json(l));
    }
    if (!ev.word.entries.empty()) e["word"] = word_json(ev.word.entries);
    if (ev.offset != 0) e["offset"] = ev.offset;
    if (ev.kind == MovieEventKind::Insert) {
      e["basis"] = ev.basis;
      e["coefficient"] = {ev.coefficient.real(), ev.coefficient.imag()};
    }
    j["events"].push_back(std::move(e));
  }
  return j;
}

}  // namespace dtqft
