#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "dtqft/computad.hpp"
#include "dtqft/gray.hpp"
#include "dtqft/io.hpp"
#include "dtqft/strata.hpp"
#include "dtqft/tqft_engines.hpp"

namespace dtqft::cli {
namespace {

constexpr double kCoherenceTol = 1e-9;
constexpr double kInvariantTol = 1e-6;

struct Config {
  std::optional<double> tolerance;  // from the flag
  int max_word_length = 8;
  int workers = 1;
  std::string output = "text";
};

struct Report {
  std::string command;
  json inputs = json::object();
  json config = json::object();
  json results = json::object();
  json residuals = json::object();
  std::vector<std::string> text;
  bool ok = true;
};

// flag, then environment, then the subcommand default
std::pair<double, std::string> resolve_tolerance(const Config& cfg, double fallback) {
  if (cfg.tolerance) return {*cfg.tolerance, "flag"};
  if (const char* env = std::getenv(kToleranceEnv)) {
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw ParseError(std::string(kToleranceEnv) + " is not a number: " + env);
    }
    if (!(v > 0.0)) throw ParseError(std::string(kToleranceEnv) + " must be positive");
    return {v, "env"};
  }
  return {fallback, "default"};
}

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(10) << x;
  return s.str();
}

std::string fmt(cplx z) {
  if (std::abs(z.imag()) < 1e-15) return fmt(z.real());
  std::ostringstream s;
  s << fmt(z.real()) << (z.imag() < 0 ? " - " : " + ") << fmt(std::abs(z.imag())) << "i";
  return s.str();
}

json cjson(cplx z) { return {z.real(), z.imag()}; }

json matrix_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(cjson(m(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

json violations_json(const ValidationReport& r) {
  json a = json::array();
  for (const auto& v : r.items)
    a.push_back({{"where", v.where}, {"what", v.what}, {"residual", v.residual}});
  return a;
}

void violations_text(Report& rep, const ValidationReport& r, std::size_t limit = 20) {
  for (std::size_t i = 0; i < r.items.size() && i < limit; ++i)
    rep.text.push_back("  " + r.items[i].where + ": " + r.items[i].what);
  if (r.items.size() > limit)
    rep.text.push_back("  ... " + std::to_string(r.items.size() - limit) + " more");
}

FusionCategory category_arg(const std::string& name) {
  return load_category(resolve_data_path(name, "categories"));
}

DefectData defect_arg(const std::string& name, const Config& cfg) {
  auto dd = load_defect_data(resolve_data_path(name, "defect"));
  dd.max_word_len = cfg.max_word_length;
  return dd;
}

StratifiedBordism bordism_arg(const std::string& name) {
  return bordism_from_json(read_json_file(resolve_data_path(name, "bordisms")));
}

TwoMorphismDiagram diagram_arg(const std::string& name) {
  return diagram_from_json(read_json_file(resolve_data_path(name, "diagrams")));
}

Movie movie_arg(const std::string& name) {
  std::filesystem::path p;
  try {
    p = resolve_data_path(name + ".movie", "diagrams");
  } catch (const ParseError&) {
    p = resolve_data_path(name, "diagrams");
  }
  return movie_from_json(read_json_file(p));
}

json counts_json(const StratifiedBordism& b) {
  return {{"s0", b.s0.size()}, {"s1", b.s1.size()}, {"s2", b.s2.size()},
          {"s3", b.s3.size()}, {"boundary", b.boundary.size()}};
}

std::string counts_text(const StratifiedBordism& b) {
  return std::to_string(b.s0.size()) + "/" + std::to_string(b.s1.size()) + "/" +
         std::to_string(b.s2.size()) + "/" + std::to_string(b.s3.size());
}

// ---------------------------------------------------------------- commands

void validate_category_cmd(Report& rep, const Config& cfg, const std::string& name) {
  auto [tol, src] = resolve_tolerance(cfg, kCoherenceTol);
  rep.inputs["category"] = name;
  rep.config["tolerance"] = tol;
  rep.config["tolerance_source"] = src;
  auto cat = category_arg(name);
  auto chk = check_category(cat, tol);
  rep.ok = chk.report.clean();
  rep.results = {{"name", cat.name},
                 {"simples", cat.n()},
                 {"grading_order", cat.group.order()},
                 {"clean", rep.ok},
                 {"violations", violations_json(chk.report)}};
  rep.residuals = {{"pentagon", chk.pentagon_residual},
                   {"unit", chk.unit_residual},
                   {"sphericality", chk.sphericality_residual},
                   {"rotation", chk.rotation_residual},
                   {"unitarity", chk.unitarity_residual},
                   {"dimension", chk.dimension_residual}};
  rep.text.push_back("category " + cat.name + ": " + std::to_string(cat.n()) + " simples, " +
                     (rep.ok ? "valid" : "INVALID"));
  for (const auto& [k, v] : rep.residuals.items())
    rep.text.push_back("  " + k + " residual " + fmt(v.get<double>()));
  violations_text(rep, chk.report);
}

void validate_defect_data_cmd(Report& rep, const Config& cfg, const std::string& name) {
  rep.inputs["defect_data"] = name;
  auto dd = defect_arg(name, cfg);
  auto r = validate_defect_data(dd);
  auto k = build_computad(dd, cfg.max_word_length);
  auto rk = validate_computad(k);
  rep.ok = r.clean() && rk.clean();
  const char* family = dd.family == DefectFamily::Group ? "group"
                       : dd.family == DefectFamily::RT  ? "rt"
                                                        : "explicit";
  rep.results = {{"family", family},
                 {"d3", dd.d3.size()},
                 {"d2", dd.d2.size()},
                 {"d1", dd.enumerate_d1().size()},
                 {"computad", {{"k2", k.k2.size()}, {"k1", k.k1.size()}, {"k0", k.k0.size()}}},
                 {"clean", rep.ok},
                 {"violations", violations_json(r)},
                 {"computad_violations", violations_json(rk)}};
  rep.text.push_back(std::string("defect data (") + family + "): |D3|=" +
                     std::to_string(dd.d3.size()) + " |D2|=" + std::to_string(dd.d2.size()) +
                     " |D1|=" + std::to_string(rep.results["d1"].get<std::size_t>()) + ", " +
                     (r.clean() ? "valid" : "INVALID"));
  violations_text(rep, r);
  rep.text.push_back("computad: |K0|=" + std::to_string(k.k0.size()) + " |K1|=" +
                     std::to_string(k.k1.size()) + " |K2|=" + std::to_string(k.k2.size()) + ", " +
                     (rk.clean() ? "valid" : "INVALID"));
  violations_text(rep, rk);
}

void validate_bordism_cmd(Report& rep, const Config& cfg, const std::string& name,
                          const std::string& dd_name) {
  rep.inputs["bordism"] = name;
  if (!dd_name.empty()) rep.inputs["defect_data"] = dd_name;
  auto b = bordism_arg(name);
  ValidationReport r = dd_name.empty() ? validate_bordism_structure(b)
                                       : validate_bordism(defect_arg(dd_name, cfg), b);
  auto fine = check_fine(b);
  rep.ok = r.clean();
  rep.results = {{"strata", counts_json(b)},
                 {"closed", b.closed_manifold()},
                 {"fine", fine.clean()},
                 {"clean", rep.ok},
                 {"violations", violations_json(r)}};
  rep.text.push_back("bordism: strata (0/1/2/3) " + counts_text(b) + ", " +
                     std::to_string(b.boundary.size()) + " boundary components, " +
                     (fine.clean() ? "fine" : "not fine") + ", " + (rep.ok ? "valid" : "INVALID"));
  violations_text(rep, r);
}

GrayModel gray_model(Engine e, const FusionCategory& cat, const DefectData* dd) {
  return {e, &cat, dd};
}

void require_valid(const std::optional<DefectData>& dd, const TwoMorphismDiagram& x,
                   const std::string& what) {
  auto r = dd ? validate_diagram(*dd, x) : validate_diagram_structure(x);
  if (!r.clean()) throw ComposeError(what + ": " + r.items.front().where + ": " + r.items.front().what);
}

void hom_dim_cmd(Report& rep, const Config& cfg, const std::string& engine, const std::string& cat_name,
                 const std::string& dd_name, const std::string& src, const std::string& tgt) {
  rep.inputs = {{"engine", engine}, {"category", cat_name}, {"source", src}, {"target", tgt}};
  if (!dd_name.empty()) rep.inputs["defect_data"] = dd_name;
  auto cat = category_arg(cat_name);
  std::optional<DefectData> dd;
  if (!dd_name.empty()) dd = defect_arg(dd_name, cfg);
  auto x = diagram_arg(src), y = diagram_arg(tgt);
  require_valid(dd, x, "source");
  require_valid(dd, y, "target");
  auto m = gray_model(parse_engine(engine), cat, dd ? &*dd : nullptr);
  auto h = hom_space(m, x, y);
  json blocks = json::array();
  for (std::size_t i = 0; i < h.colourings.size(); ++i)
    blocks.push_back({{"colouring", h.colourings[i]},
                      {"rows", h.shapes[i].first},
                      {"cols", h.shapes[i].second}});
  rep.results = {{"dim", h.dim}, {"blocks", blocks}};
  rep.text.push_back("dim Hom(" + src + ", " + tgt + ") = " + std::to_string(h.dim));
}

void invariant_cmd(Report& rep, const Config& cfg, const std::string& engine, const std::string& cat_name,
                   const std::string& b_name, const std::string& dd_name) {
  auto [tol, src] = resolve_tolerance(cfg, kInvariantTol);
  rep.inputs = {{"engine", engine}, {"category", cat_name}, {"bordism", b_name}};
  if (!dd_name.empty()) rep.inputs["defect_data"] = dd_name;
  rep.config["tolerance"] = tol;
  rep.config["tolerance_source"] = src;
  const Engine e = parse_engine(engine);
  auto cat = category_arg(cat_name);
  auto b = bordism_arg(b_name);
  auto r = dd_name.empty() ? validate_bordism_structure(b) : validate_bordism(defect_arg(dd_name, cfg), b);
  if (!r.clean()) throw TopologyError("invalid bordism: " + r.items.front().where + ": " + r.items.front().what);
  if (b.closed_manifold()) {
    cplx z = e == Engine::StateSum ? closed_invariant(cat, b) : triv_invariant(cat, b);
    rep.results = {{"kind", "scalar"}, {"value", cjson(z)}, {"real", std::abs(z.imag()) <= tol}};
    rep.residuals["imaginary_part"] = std::abs(z.imag());
    rep.text.push_back(fmt(z));
    return;
  }
  Eigen::MatrixXcd m = e == Engine::StateSum ? statesum_map(cat, b) : triv_map(cat, b);
  rep.results = {{"kind", "map"}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", matrix_json(m)}};
  rep.text.push_back("map " + std::to_string(m.rows()) + " x " + std::to_string(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::string line = " ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) line += " " + fmt(m(i, j));
    rep.text.push_back(line);
  }
}

void state_space_cmd(Report& rep, const Config& cfg, const std::string& engine, const std::string& cat_name,
                     const std::string& s_name) {
  auto [tol, src] = resolve_tolerance(cfg, kInvariantTol);
  rep.inputs = {{"engine", engine}, {"category", cat_name}, {"surface", s_name}};
  rep.config["tolerance"] = tol;
  rep.config["tolerance_source"] = src;
  auto cat = category_arg(cat_name);
  auto s = surface_from_json(read_json_file(resolve_data_path(s_name, "surfaces")));
  auto sr = validate_surface_structure(s);
  if (!sr.clean()) throw TopologyError("invalid surface: " + sr.items.front().what);

  auto colourings_json = [&](const RawSpace& raw, Report& out) {
    json a = json::array();
    for (std::size_t c = 0; c < raw.colourings.size(); ++c) {
      json ids = json::array();
      std::string line = "  (";
      for (std::size_t k = 0; k < raw.colourings[c].size(); ++k) {
        const auto& id = cat.simples[raw.colourings[c][k]].id;
        ids.push_back(id);
        line += (k ? "," : "") + id;
      }
      a.push_back({{"colouring", ids}, {"dim", raw.block_dim(c)}});
      out.text.push_back(line + ") dim " + std::to_string(raw.block_dim(c)));
    }
    return a;
  };

  if (parse_engine(engine) == Engine::Triv) {
    auto raw = raw_space(cat, s);
    rep.text.push_back("raw dim " + std::to_string(raw.total));
    rep.results = {{"colourings", colourings_json(raw, rep)}, {"raw_dim", raw.total}, {"rank", raw.total}};
    return;
  }
  auto st = state_space(cat, s, tol);
  rep.text.push_back("raw dim " + std::to_string(st.raw.total) + ", rank " + std::to_string(st.rank) +
                     ", idempotence residual " + fmt(st.idempotence_residual));
  json edges = json::array();
  for (const auto& e : st.surface.edges) edges.push_back(e.label);
  rep.results = {{"edge_labels", edges},
                 {"colourings", colourings_json(st.raw, rep)},
                 {"raw_dim", st.raw.total},
                 {"rank", st.rank},
                 {"idempotent", st.idempotence_residual <= tol}};
  rep.residuals["idempotence"] = st.idempotence_residual;
}

void gray_check_cmd(Report& rep, const Config& cfg, const std::string& engine, const std::string& cat_name,
                    const std::string& dd_name, int sample, unsigned seed, bool equivalence,
                    bool wrong_tensorator) {
  auto [tol, src] = resolve_tolerance(cfg, kCoherenceTol);
  rep.inputs = {{"engine", engine}, {"category", cat_name}, {"defect_data", dd_name}};
  rep.config.update({{"tolerance", tol}, {"tolerance_source", src}, {"sample", sample}, {"seed", seed},
                     {"equivalence", equivalence}, {"wrong_tensorator", wrong_tensorator}});
  auto cat = category_arg(cat_name);
  auto dd = defect_arg(dd_name, cfg);
  auto m = gray_model(parse_engine(engine), cat, &dd);
  GrayCheckOptions opt;
  opt.sample_size = sample;
  opt.tolerance = tol;
  opt.wrong_tensorator = wrong_tensorator;
  opt.seed = seed;
  auto ax = check_gray_axioms(m, opt);
  std::vector<std::pair<std::string, AxiomReport>> parts{{"axioms", ax}};
  if (equivalence) parts.emplace_back("equivalence", check_model_equivalence(m, opt));

  rep.ok = true;
  json table = json::object(), failures = json::array();
  rep.text.push_back("axiom                          instances  failures  max residual");
  int instances = 0;
  for (const auto& [part, r] : parts) {
    rep.ok = rep.ok && r.clean();
    instances += r.instances;
    for (const auto& [axiom, sum] : r.per_axiom) {
      table[axiom] = {{"instances", sum.instances}, {"failures", sum.failures}, {"max_residual", sum.max_residual}};
      rep.residuals[axiom] = sum.max_residual;
      std::ostringstream line;
      line << std::left << std::setw(31) << axiom << std::right << std::setw(9) << sum.instances
           << std::setw(10) << sum.failures << "  " << fmt(sum.max_residual);
      rep.text.push_back(line.str());
    }
    for (const auto& it : r.items)
      if (!it.ok && failures.size() < 50)
        failures.push_back({{"axiom", it.axiom}, {"instance", it.instance}, {"residual", it.residual}});
  }
  rep.results = {{"clean", rep.ok}, {"instances", instances}, {"axioms", table}, {"failures", failures}};
  rep.text.push_back(std::to_string(instances) + " instances, " + (rep.ok ? "clean" : "FAILED"));
  for (const auto& f : failures)
    rep.text.push_back("  " + f["axiom"].get<std::string>() + " " + f["instance"].get<std::string>() +
                       " residual " + fmt(f["residual"].get<double>()));
}

void eval_diagram_cmd(Report& rep, const Config& cfg, const std::string& engine, const std::string& cat_name,
                      const std::string& dd_name, const std::string& movie) {
  auto [tol, src] = resolve_tolerance(cfg, kCoherenceTol);
  rep.inputs = {{"engine", engine}, {"category", cat_name}, {"movie", movie}};
  if (!dd_name.empty()) rep.inputs["defect_data"] = dd_name;
  rep.config["tolerance"] = tol;
  rep.config["tolerance_source"] = src;
  auto cat = category_arg(cat_name);
  std::optional<DefectData> dd;
  if (!dd_name.empty()) dd = defect_arg(dd_name, cfg);
  auto mv = movie_arg(movie);
  auto m = gray_model(parse_engine(engine), cat, dd ? &*dd : nullptr);
  auto frames = movie_frames(mv);
  auto phi = evaluate_3d_diagram(m, mv);
  json layers = json::array();
  for (const auto& f : frames) layers.push_back(f.layers.size());
  rep.results = {{"frames", frames.size()},
                 {"frame_layers", layers},
                 {"source", diagram_to_json(phi.source)},
                 {"target", diagram_to_json(phi.target)}};
  rep.text.push_back(std::to_string(frames.size()) + " frames, layers " + std::to_string(phi.source.layers.size()) +
                     " -> " + std::to_string(phi.target.layers.size()));
  if (phi.engine == Engine::StateSum) {
    rep.results["scalar"] = cjson(phi.scalar);
    rep.text.push_back("scalar " + fmt(phi.scalar));
  } else {
    json blocks = json::array();
    for (const auto& [key, mat] : phi.blocks) {
      blocks.push_back({{"colouring", key}, {"entries", matrix_json(mat)}});
      std::string line = "  block";
      for (int c : key) line += " " + cat.simples[c].id;
      line += ":";
      for (Eigen::Index i = 0; i < mat.rows(); ++i)
        for (Eigen::Index j = 0; j < mat.cols(); ++j) line += " " + fmt(mat(i, j));
      rep.text.push_back(line);
    }
    rep.results["blocks"] = blocks;
  }
  if (phi.source == phi.target) {
    double d = distance(phi, identity3(m, phi.source));
    rep.results["identity"] = d <= tol;
    rep.residuals["distance_to_identity"] = d;
    rep.text.push_back("distance to identity " + fmt(d));
  }
}

void refine_cmd(Report& rep, const Config& cfg, const std::string& b_name, const std::string& move_name,
                std::optional<int> site, unsigned seed, bool list, const std::string& neutral,
                const std::string& out_path, const std::string& cat_name) {
  auto [tol, src] = resolve_tolerance(cfg, kInvariantTol);
  rep.inputs = {{"bordism", b_name}, {"move", move_name}};
  if (!cat_name.empty()) rep.inputs["category"] = cat_name;
  rep.config.update({{"tolerance", tol}, {"tolerance_source", src}, {"seed", seed}, {"neutral", neutral}});
  const auto move = parse_refine_move(move_name);
  auto b = bordism_arg(b_name);
  auto sites = refine_sites(b, move);
  if (list) {
    rep.results = {{"move", move_name}, {"sites", sites}};
    std::string line = std::to_string(sites.size()) + " sites:";
    for (int s : sites) line += " " + std::to_string(s);
    rep.text.push_back(line);
    return;
  }
  if (sites.empty()) throw SiteError("no valid site for " + move_name);
  int chosen = site ? *site : sites[std::mt19937(seed)() % sites.size()];
  auto r = refine(b, move, chosen, neutral);
  auto v = validate_bordism_structure(r);
  if (!v.clean()) throw TopologyError("refined bordism invalid: " + v.items.front().what);
  rep.results = {{"move", move_name}, {"site", chosen}, {"before", counts_json(b)}, {"after", counts_json(r)}};
  rep.text.push_back(move_name + " at site " + std::to_string(chosen) + ": strata " + counts_text(b) + " -> " +
                     counts_text(r));
  if (!cat_name.empty() && b.closed_manifold()) {
    auto cat = category_arg(cat_name);
    cplx z0 = closed_invariant(cat, b), z1 = closed_invariant(cat, r);
    double d = std::abs(z1 - z0);
    rep.results["invariant_before"] = cjson(z0);
    rep.results["invariant_after"] = cjson(z1);
    rep.results["invariant_preserved"] = d <= tol;
    rep.residuals["invariant_change"] = d;
    rep.text.push_back("invariant " + fmt(z0) + " -> " + fmt(z1));
  }
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw Error("cannot write " + out_path);
    f << bordism_to_json(r).dump(1) << "\n";
    rep.results["written"] = out_path;
    rep.text.push_back("wrote " + out_path);
  } else if (cfg.output == "structured") {
    rep.results["bordism"] = bordism_to_json(r);
  }
}

void emit(const Report& rep, const Config& cfg, std::ostream& out) {
  if (cfg.output == "structured") {
    json doc = {{"command", rep.command},
                {"inputs", rep.inputs},
                {"config", rep.config},
                {"results", rep.results},
                {"residuals", rep.residuals}};
    out << doc.dump(2) << "\n";
    return;
  }
  for (const auto& l : rep.text) out << l << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Defect TQFT toolkit: categories, defect data, bordisms, state sums, Gray checks"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "Expand all help");

  Config cfg;
  double tol = 0.0;
  auto* tol_opt = app.add_option("--tolerance", tol, "Numerical tolerance (overrides DTQFT_TOLERANCE)")
                      ->check(CLI::PositiveNumber);
  app.add_option("--max-word-length", cfg.max_word_length, "Bound for enumerated words")
      ->check(CLI::PositiveNumber);
  app.add_option("--workers", cfg.workers, "Worker count")->check(CLI::PositiveNumber);
  app.add_option("--output", cfg.output, "Output format")->check(CLI::IsMember({"text", "structured"}));

  std::string category, defect, bordism, surface, source, target, movie, move, neutral = "1", out_path;
  std::string engine = "statesum";
  int sample = 0, site = -1;
  unsigned seed = 1;
  bool equivalence = false, wrong_tensorator = false, list_sites = false;
  const auto engines = CLI::IsMember({"triv", "statesum"});

  auto* vc = app.add_subcommand("validate-category", "Check the coherence of a fusion category");
  vc->add_option("category", category, "Category name or file")->required();

  auto* vd = app.add_subcommand("validate-defect-data", "Check defect data and its computad");
  vd->add_option("defect_data", defect, "Defect data name or file")->required();

  auto* vb = app.add_subcommand("validate-bordism", "Check a stratified bordism");
  vb->add_option("bordism", bordism, "Bordism name or file")->required();
  vb->add_option("--defect-data", defect, "Also check labels against defect data");

  auto* hd = app.add_subcommand("hom-dim", "Dimension of a 3-morphism space");
  hd->add_option("--engine", engine)->check(engines);
  hd->add_option("--category", category)->required();
  hd->add_option("--defect-data", defect);
  hd->add_option("--source", source, "Source diagram")->required();
  hd->add_option("--target", target, "Target diagram")->required();

  auto* inv = app.add_subcommand("invariant", "Evaluate a bordism");
  inv->add_option("--engine", engine)->check(engines);
  inv->add_option("--category", category)->required();
  inv->add_option("--bordism", bordism)->required();
  inv->add_option("--defect-data", defect);

  auto* ss = app.add_subcommand("state-space", "State space of a decorated surface");
  ss->add_option("--engine", engine)->check(engines);
  ss->add_option("--category", category)->required();
  ss->add_option("--surface", surface)->required();

  auto* gc = app.add_subcommand("gray-check", "Check the Gray category axioms");
  gc->add_option("--engine", engine)->check(engines);
  gc->add_option("--category", category)->required();
  gc->add_option("--defect-data", defect)->required();
  gc->add_option("--sample", sample, "Random sample size per axiom (0: all)")->check(CLI::NonNegativeNumber);
  gc->add_option("--seed", seed);
  gc->add_flag("--equivalence", equivalence, "Also compare with the algebraic model");
  gc->add_flag("--wrong-tensorator", wrong_tensorator, "Negative control: identity tensorator");

  auto* ed = app.add_subcommand("eval-diagram", "Evaluate a 3d diagram (movie)");
  ed->add_option("--engine", engine)->check(engines);
  ed->add_option("--category", category)->required();
  ed->add_option("--defect-data", defect);
  ed->add_option("--movie", movie)->required();

  auto* rf = app.add_subcommand("refine", "Apply a refinement move");
  rf->add_option("--bordism", bordism)->required();
  rf->add_option("--move", move)->required()->check(CLI::IsMember({"edge_subdivide", "face_star", "cell_cone"}));
  rf->add_option("--site", site);
  rf->add_option("--seed", seed);
  rf->add_flag("--list-sites", list_sites);
  rf->add_option("--neutral", neutral, "Label of new 2-strata");
  rf->add_option("--out", out_path, "Write the refined bordism");
  rf->add_option("--category", category, "Compare closed invariants");

  std::vector<std::string> argv{args.rbegin(), args.rend()};
  Report rep;
  try {
    try {
      app.parse(argv);
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::CallForHelp&) {
      auto subs = app.get_subcommands();
      out << (subs.empty() ? app.help() : subs.front()->help());
      return kOk;
    } catch (const CLI::Success&) {
      return kOk;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << "\n";
      return kParseError;
    }
    if (!tol_opt->empty()) cfg.tolerance = tol;
    rep.command = app.get_subcommands().front()->get_name();
    rep.config = {{"max_word_length", cfg.max_word_length}, {"workers", cfg.workers}, {"output", cfg.output}};

    if (*vc) validate_category_cmd(rep, cfg, category);
    else if (*vd) validate_defect_data_cmd(rep, cfg, defect);
    else if (*vb) validate_bordism_cmd(rep, cfg, bordism, defect);
    else if (*hd) hom_dim_cmd(rep, cfg, engine, category, defect, source, target);
    else if (*inv) invariant_cmd(rep, cfg, engine, category, bordism, defect);
    else if (*ss) state_space_cmd(rep, cfg, engine, category, surface);
    else if (*gc) gray_check_cmd(rep, cfg, engine, category, defect, sample, seed, equivalence, wrong_tensorator);
    else if (*ed) eval_diagram_cmd(rep, cfg, engine, category, defect, movie);
    else if (*rf)
      refine_cmd(rep, cfg, bordism, move, site >= 0 ? std::optional<int>(site) : std::nullopt, seed, list_sites,
                 neutral, out_path, category);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const json::exception& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kComputationError;
  }
  emit(rep, cfg, out);
  return rep.ok ? kOk : kComputationError;
}

}  // namespace dtqft::cli
