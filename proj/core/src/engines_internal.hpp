#pragma once
// Shared pieces of the state-sum and trivial engines (internal).
#include "dtqft/tqft_engines.hpp"
#include "planar_net.hpp"

namespace dtqft {

GraphValue evaluate_sphere_graph_with(detail::NetEvaluator& ev, const FusionCategory& cat,
                                      const ColoredSphereGraph& g);

namespace detail {

enum class Model { StateSum, Triv };

Eigen::MatrixXcd bordism_map(const FusionCategory& cat, const StratifiedBordism& b, Model model,
                             StateSumStats* stats);

}  // namespace detail
}  // namespace dtqft
