#include <algorithm>
#include <cmath>
#include <map>

#include "dtqft/tqft_engines.hpp"
#include "engines_internal.hpp"
#include "planar_net.hpp"
#include "tensor_net.hpp"

namespace dtqft {

std::vector<int> colour_domain(const FusionCategory& cat, const std::string& label) {
  if (cat.group.contains(label)) return cat.simples_of_grade(cat.group.index(label));
  for (int i = 0; i < cat.n(); ++i)
    if (cat.simples[i].id == label) return {i};
  throw LabelError("label '" + label + "' is neither a grade nor a simple");
}

int RawSpace::find(const std::vector<int>& colouring) const {
  auto it = std::lower_bound(colourings.begin(), colourings.end(), colouring);
  if (it == colourings.end() || *it != colouring) return -1;
  return static_cast<int>(it - colourings.begin());
}

namespace {

SignedSimpleWord coloured_word(const DecoratedSurface& s, int v, const std::vector<int>& col) {
  SignedSimpleWord w;
  for (const auto& d : s.rotation[v])
    w.push_back({col[d.edge], d.at_tail ? Sign::Plus : Sign::Minus});
  return w;
}

}  // namespace

RawSpace raw_space(const FusionCategory& cat, const DecoratedSurface& s) {
  RawSpace raw;
  const int E = s.num_edges(), V = s.num_vertices();
  std::vector<std::vector<int>> dom(E);
  for (int e = 0; e < E; ++e) dom[e] = colour_domain(cat, s.edges[e].label);
  // a vertex is checked once its largest edge is coloured
  std::vector<std::vector<int>> check_at(E);
  for (int v = 0; v < V; ++v) {
    int last = -1;
    for (const auto& d : s.rotation[v]) last = std::max(last, d.edge);
    if (last >= 0) check_at[last].push_back(v);
  }
  std::vector<int> col(E, -1);
  raw.offsets.push_back(0);
  auto rec = [&](auto&& self, int e) -> void {
    if (e == E) {
      std::vector<int> dims;
      int block = 1;
      for (int v = 0; v < V; ++v) {
        int d = hom_dimension(cat, coloured_word(s, v, col));
        dims.push_back(d);
        block *= d;
      }
      raw.colourings.push_back(col);
      raw.vertex_dims.push_back(dims);
      raw.total += block;
      raw.offsets.push_back(raw.total);
      return;
    }
    for (int c : dom[e]) {
      col[e] = c;
      bool ok = true;
      for (int v : check_at[e])
        if (hom_dimension(cat, coloured_word(s, v, col)) == 0) {
          ok = false;
          break;
        }
      if (ok) self(self, e + 1);
    }
    col[e] = -1;
  };
  rec(rec, 0);
  return raw;
}

namespace detail {

namespace {

SignedSimpleWord colour_incidences(const IncidenceWord& w, const std::vector<int>& col) {
  SignedSimpleWord out;
  for (const auto& x : w) out.push_back({col[x.stratum], x.sign});
  return out;
}

std::vector<int> distinct_strata(const IncidenceWord& w) {
  std::vector<int> r;
  for (const auto& x : w)
    if (std::find(r.begin(), r.end(), x.stratum) == r.end()) r.push_back(x.stratum);
  return r;
}

// enumerate colourings of `strata`, calling f(col) with col indexed by stratum
template <class Check, class F>
void for_each_colouring(const std::vector<int>& strata,
                        const std::vector<std::vector<int>>& dom, std::vector<int>& col,
                        Check&& check, F&& f) {
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == strata.size()) {
      f();
      return;
    }
    int r = strata[i];
    for (int c : dom[r]) {
      col[r] = c;
      if (check(i)) self(self, i + 1);
    }
    col[r] = -1;
  };
  rec(rec, 0);
}

}  // namespace

Eigen::MatrixXcd bordism_map(const FusionCategory& cat, const StratifiedBordism& b, Model model,
                             StateSumStats* stats) {
  const int N1 = static_cast<int>(b.s1.size());
  const int N2 = static_cast<int>(b.s2.size());
  int in_comp = -1, out_comp = -1;
  for (int c = 0; c < static_cast<int>(b.boundary.size()); ++c) {
    int& slot = b.boundary[c].incoming ? in_comp : out_comp;
    if (slot >= 0) throw Error("engine supports one incoming and one outgoing boundary");
    slot = c;
  }
  if (model == Model::Triv && !b.interior_vertices().empty())
    throw TopologyError("trivial model needs a bordism without interior 0-strata");

  std::vector<std::vector<int>> dom(N2);
  for (int r = 0; r < N2; ++r) {
    // the grade weights need the whole grade; a pinned simple is triv only
    if (model == Model::StateSum && !cat.group.contains(b.s2[r].label))
      throw LabelError("state sum needs grade labels, got '" + b.s2[r].label + "'");
    dom[r] = colour_domain(cat, b.s2[r].label);
  }
  std::vector<int> col(N2, -1);
  auto basis_label = [&](int end) { return N2 + end; };

  std::vector<Tensor> ts;
  // 2-strata weights
  for (int r = 0; r < N2; ++r) {
    Tensor t;
    t.labels = {r};
    t.dims = {cat.n()};
    for (int c : dom[r])
      t.nz[c] = model == Model::StateSum ? std::pow(cat.qdim(c), b.s2[r].chi) : 1.0;
    ts.push_back(std::move(t));
  }
  // end dimensions
  std::vector<int> end_dim(2 * N1, 1);
  for (int e = 0; e < N1; ++e) {
    const auto& w = b.s1[e].word;
    auto strata = distinct_strata(w);
    int best = w.empty() ? 1 : 0;
    for_each_colouring(strata, dom, col, [](std::size_t) { return true; }, [&] {
      best = std::max(best, hom_dimension(cat, colour_incidences(w, col)));
    });
    end_dim[2 * e] = end_dim[2 * e + 1] = std::max(best, 1);
  }
  // 1-strata
  for (int e = 0; e < N1; ++e) {
    const auto& s = b.s1[e];
    auto strata = distinct_strata(s.word);
    Tensor t;
    t.labels = strata;
    for (std::size_t i = 0; i < strata.size(); ++i) t.dims.push_back(cat.n());
    const int de = end_dim[2 * e];
    if (!s.closed()) {
      t.labels.push_back(basis_label(2 * e + 1));
      t.labels.push_back(basis_label(2 * e));
      t.dims.push_back(de);
      t.dims.push_back(de);
    }
    for_each_colouring(strata, dom, col, [](std::size_t) { return true; }, [&] {
      auto w = colour_incidences(s.word, col);
      std::size_t off = 0;
      for (int r : strata) off = off * cat.n() + col[r];
      if (s.closed()) {
        t.add(off, static_cast<double>(hom_dimension(cat, w)));
        return;
      }
      auto pairing = edge_pairing(cat, w);
      for (std::size_t j = 0; j < pairing.coev.size(); ++j)
        for (std::size_t i = 0; i < pairing.coev[j].size(); ++i)
          t.add((off * de + j) * de + i, pairing.coev[j][i]);
    });
    ts.push_back(std::move(t));
  }
  // interior 0-strata
  NetEvaluator evaluator(cat);
  for (int v : b.interior_vertices()) {
    std::vector<int> edge_stratum;
    auto link = vertex_link_graph(b, v, &edge_stratum);
    auto ends = b.ends_at(v);
    std::vector<int> strata;
    for (int r : edge_stratum)
      if (std::find(strata.begin(), strata.end(), r) == strata.end()) strata.push_back(r);
    // check an end once all its strata are coloured
    std::vector<std::vector<int>> check_at(strata.size());
    for (std::size_t k = 0; k < ends.size(); ++k) {
      std::size_t last = 0;
      for (const auto& x : b.seen_word(ends[k]))
        last = std::max(last, static_cast<std::size_t>(
                                  std::find(strata.begin(), strata.end(), x.stratum) -
                                  strata.begin()));
      if (!b.seen_word(ends[k]).empty()) check_at[last].push_back(static_cast<int>(k));
    }
    Tensor t;
    t.labels = strata;
    for (std::size_t i = 0; i < strata.size(); ++i) t.dims.push_back(cat.n());
    for (int end : ends) {
      t.labels.push_back(basis_label(end));
      t.dims.push_back(end_dim[end]);
    }
    ColoredSphereGraph g;
    g.rotation.resize(link.num_vertices());
    for (int x = 0; x < link.num_vertices(); ++x)
      for (const auto& d : link.rotation[x]) g.rotation[x].push_back({d.edge, d.at_tail});
    for (const auto& e : link.edges) g.edges.push_back({e.tail, e.head, 0});  // coloured below
    auto check = [&](std::size_t i) {
      for (int k : check_at[i])
        if (hom_dimension(cat, colour_incidences(b.seen_word(ends[k]), col)) == 0) return false;
      return true;
    };
    for_each_colouring(strata, dom, col, check, [&] {
      for (std::size_t q = 0; q < g.edges.size(); ++q) g.edges[q].colour = col[edge_stratum[q]];
      auto val = evaluate_sphere_graph_with(evaluator, cat, g);
      if (stats) ++stats->link_evaluations;
      std::size_t off = 0;
      for (int r : strata) off = off * cat.n() + col[r];
      // val is row-major over link vertices (= ends); embed into padded dims
      std::vector<int> idx(ends.size(), 0);
      for (std::size_t n = 0; n < val.values.size(); ++n) {
        std::size_t o = off;
        for (std::size_t k = 0; k < ends.size(); ++k) o = o * end_dim[ends[k]] + idx[k];
        t.add(o, val.values[n]);
        for (int p = static_cast<int>(ends.size()) - 1; p >= 0; --p) {
          if (++idx[p] < val.dims[p]) break;
          idx[p] = 0;
        }
      }
    });
    if (stats) ++stats->vertex_tensors;
    ts.push_back(std::move(t));
  }

  // open labels: per side, colours of edge strata then vertex bases
  struct Side {
    const BoundaryComponent* bc = nullptr;
    std::vector<int> colour_labels, basis_labels;
  };
  auto make_side = [&](int c) {
    Side s;
    if (c < 0) return s;
    s.bc = &b.boundary[c];
    for (int r : s.bc->edge_stratum)
      if (std::find(s.colour_labels.begin(), s.colour_labels.end(), r) == s.colour_labels.end())
        s.colour_labels.push_back(r);
    for (int v0 : s.bc->vertex_stratum) s.basis_labels.push_back(basis_label(b.ends_at(v0).at(0)));
    return s;
  };
  Side in = make_side(in_comp), out = make_side(out_comp);
  std::vector<int> keep;
  for (int l : out.colour_labels) keep.push_back(l);
  for (int l : in.colour_labels)
    if (std::find(keep.begin(), keep.end(), l) == keep.end()) keep.push_back(l);
  const std::size_t ncol = keep.size();
  for (int l : out.basis_labels) keep.push_back(l);
  for (int l : in.basis_labels) keep.push_back(l);
  Tensor T = contract_network(std::move(ts), keep);

  double prefactor = 1.0;
  const double D2 = global_dimension_neutral(cat);
  if (model == Model::StateSum) prefactor = std::pow(D2, -static_cast<double>(b.s3.size()));

  RawSpace raw_in, raw_out;
  if (in.bc) raw_in = raw_space(cat, in.bc->surface);
  else raw_in = RawSpace{{{}}, {{}}, {0, 1}, 1};
  if (out.bc) raw_out = raw_space(cat, out.bc->surface);
  else raw_out = RawSpace{{{}}, {{}}, {0, 1}, 1};

  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(raw_out.total, raw_in.total);
  std::vector<std::size_t> stride(keep.size());
  {
    std::size_t s = 1;
    for (int i = static_cast<int>(keep.size()) - 1; i >= 0; --i) {
      stride[i] = s;
      s *= static_cast<std::size_t>(T.dims[i]);
    }
  }
  const int nv_out = static_cast<int>(out.basis_labels.size());
  const int nv_in = static_cast<int>(in.basis_labels.size());
  for (std::size_t co = 0; co < raw_out.colourings.size(); ++co) {
    if (raw_out.block_dim(co) == 0) continue;
    // normalisation and out-side pairings
    double norm = 1.0;
    std::vector<EdgePairing> pair(nv_out);
    if (out.bc) {
      const auto& sf = out.bc->surface;
      if (model == Model::StateSum) {
        norm = std::pow(D2, static_cast<double>(sf.regions.size()));
        for (int e = 0; e < sf.num_edges(); ++e) norm /= cat.qdim(raw_out.colourings[co][e]);
      }
      for (int x = 0; x < nv_out; ++x)
        pair[x] = edge_pairing(cat, coloured_word(sf, x, raw_out.colourings[co]));
    }
    for (std::size_t ci = 0; ci < raw_in.colourings.size(); ++ci) {
      if (raw_in.block_dim(ci) == 0) continue;
      // colour offset; shared strata must agree
      std::vector<int> cl(N2, -1);
      bool ok = true;
      auto assign = [&](const Side& s, const std::vector<int>& c) {
        if (!s.bc) return;
        for (std::size_t e = 0; e < s.bc->edge_stratum.size(); ++e) {
          int r = s.bc->edge_stratum[e];
          if (cl[r] >= 0 && cl[r] != c[e]) ok = false;
          cl[r] = c[e];
        }
      };
      assign(out, raw_out.colourings[co]);
      assign(in, raw_in.colourings[ci]);
      if (!ok) continue;
      std::size_t base = 0;
      for (std::size_t i = 0; i < ncol; ++i) base += stride[i] * static_cast<std::size_t>(cl[keep[i]]);
      const auto& dout = raw_out.vertex_dims[co];
      const auto& din = raw_in.vertex_dims[ci];
      // X[out t-tuple][in tuple] then apply pairings on out axes
      int n_in = raw_in.block_dim(static_cast<int>(ci));
      std::vector<int> tdims(nv_out);
      int n_t = 1;
      for (int x = 0; x < nv_out; ++x) {
        tdims[x] = dout[x];  // dim H(W^#) = dim H(W)
        n_t *= tdims[x];
      }
      Eigen::MatrixXcd X(n_t, n_in);
      std::vector<int> ti(nv_out, 0), ii(nv_in, 0);
      for (int a = 0; a < n_t; ++a) {
        std::fill(ii.begin(), ii.end(), 0);
        for (int c = 0; c < n_in; ++c) {
          std::size_t o = base;
          for (int x = 0; x < nv_out; ++x) o += stride[ncol + x] * ti[x];
          for (int x = 0; x < nv_in; ++x) o += stride[ncol + nv_out + x] * ii[x];
          X(a, c) = T.get(o);
          for (int p = nv_in - 1; p >= 0; --p) {
            if (++ii[p] < din[p]) break;
            ii[p] = 0;
          }
        }
        for (int p = nv_out - 1; p >= 0; --p) {
          if (++ti[p] < tdims[p]) break;
          ti[p] = 0;
        }
      }
      // apply ev on each out axis: new[i] = sum_j ev[i][j] old[j]
      for (int x = 0; x < nv_out; ++x) {
        int inner = 1;
        for (int y = x + 1; y < nv_out; ++y) inner *= tdims[y];
        int outer = n_t / (inner * tdims[x]);
        Eigen::MatrixXcd Y = Eigen::MatrixXcd::Zero(n_t, n_in);
        const auto& ev = pair[x].ev;
        for (int o1 = 0; o1 < outer; ++o1)
          for (int i = 0; i < tdims[x]; ++i)
            for (int j = 0; j < tdims[x]; ++j) {
              cplx f = ev[i][j];
              if (f == 0.0) continue;
              for (int q = 0; q < inner; ++q)
                Y.row((o1 * tdims[x] + i) * inner + q) += f * X.row((o1 * tdims[x] + j) * inner + q);
            }
        X = std::move(Y);
      }
      M.block(raw_out.offsets[co], raw_in.offsets[ci], n_t, n_in) = prefactor * norm * X;
    }
  }
  return M;
}

}  // namespace detail

Eigen::MatrixXcd statesum_map(const FusionCategory& cat, const StratifiedBordism& b,
                              StateSumStats* stats) {
  auto fine = check_fine(b);
  if (!fine.clean())
    throw FinenessError("bordism is not fine: " + fine.items[0].where + ": " + fine.items[0].what);
  return detail::bordism_map(cat, b, detail::Model::StateSum, stats);
}

Eigen::VectorXcd statesum_vector(const FusionCategory& cat, const StratifiedBordism& b) {
  for (const auto& c : b.boundary)
    if (c.incoming) throw Error("statesum_vector needs a bordism without incoming boundary");
  Eigen::MatrixXcd M = statesum_map(cat, b);
  return M.col(0);
}

cplx closed_invariant(const FusionCategory& cat, const StratifiedBordism& b) {
  if (!b.boundary.empty()) throw Error("closed_invariant needs a closed bordism");
  Eigen::MatrixXcd M = statesum_map(cat, b);
  return M(0, 0);
}

StateSpace state_space(const FusionCategory& cat, const DecoratedSurface& s, double rank_tol) {
  const std::string neutral = cat.group.name(cat.group.identity());
  StateSpace out;
  out.surface = fine_surface(s, neutral);
  out.raw = raw_space(cat, out.surface);
  auto cyl = cylinder(s, neutral);
  out.projector = statesum_map(cat, cyl);
  out.idempotence_residual = (out.projector * out.projector - out.projector).norm();
  if (out.projector.size() > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(out.projector);
    const auto& sv = svd.singularValues();
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > rank_tol) ++out.rank;
  }
  return out;
}

int triv_state_space_dim(const FusionCategory& cat, const DecoratedSurface& s) {
  return raw_space(cat, s).total;
}

Eigen::MatrixXcd triv_map(const FusionCategory& cat, const StratifiedBordism& b) {
  return detail::bordism_map(cat, b, detail::Model::Triv, nullptr);
}

cplx triv_invariant(const FusionCategory& cat, const StratifiedBordism& b) {
  if (!b.boundary.empty()) throw Error("triv_invariant needs a closed bordism");
  return triv_map(cat, b)(0, 0);
}

}  // namespace dtqft
