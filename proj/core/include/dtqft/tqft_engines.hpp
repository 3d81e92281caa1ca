#pragma once
#include <Eigen/Dense>
#include <string>
#include <vector>

#include "dtqft/defect_data.hpp"
#include "dtqft/fusion.hpp"
#include "dtqft/strata.hpp"

namespace dtqft {

// ------------------------------------------------------------ state sum

// simples allowed on a 2-stratum label: the simples of that grade, or a
// simple with that id (trivial model only; the state sum rejects it)
std::vector<int> colour_domain(const FusionCategory& cat, const std::string& label);

// H_c(S) summed over admissible colourings c of the edges of S
struct RawSpace {
  std::vector<std::vector<int>> colourings;
  std::vector<std::vector<int>> vertex_dims;  // per colouring, per vertex
  std::vector<int> offsets;                   // block start per colouring
  int total = 0;

  int block_dim(std::size_t c) const { return offsets[c + 1] - offsets[c]; }
  // block index of a colouring, -1 if absent
  int find(const std::vector<int>& colouring) const;
};
RawSpace raw_space(const FusionCategory& cat, const DecoratedSurface& s);

struct StateSumStats {
  int vertex_tensors = 0;
  int link_evaluations = 0;
};

// map H(in) -> H(out) of a fine bordism with at most one incoming and one
// outgoing boundary component; an absent side is C
Eigen::MatrixXcd statesum_map(const FusionCategory& cat, const StratifiedBordism& b,
                              StateSumStats* stats = nullptr);
Eigen::VectorXcd statesum_vector(const FusionCategory& cat, const StratifiedBordism& b);
cplx closed_invariant(const FusionCategory& cat, const StratifiedBordism& b);

struct StateSpace {
  DecoratedSurface surface;  // the fine surface the raw space lives on
  RawSpace raw;
  Eigen::MatrixXcd projector;
  int rank = 0;
  double idempotence_residual = 0.0;
};
StateSpace state_space(const FusionCategory& cat, const DecoratedSurface& s,
                       double rank_tol = 1e-8);

// ------------------------------------------------------------ trivial model

// trivial model: no normalisation, no interior 0-strata, H(S) is the raw space
int triv_state_space_dim(const FusionCategory& cat, const DecoratedSurface& s);
// standard-form bordism without interior 0-strata
Eigen::MatrixXcd triv_map(const FusionCategory& cat, const StratifiedBordism& b);
cplx triv_invariant(const FusionCategory& cat, const StratifiedBordism& b);

}  // namespace dtqft
