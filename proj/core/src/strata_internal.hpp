#pragma once
#include <map>
#include <utility>

#include "dtqft/strata.hpp"

namespace dtqft::detail {

// link of an interior vertex; slot_dart maps (end, slot) to the link dart
SphereGraphHandle link_with_slots(const StratifiedBordism& b, int v,
                                  std::map<std::pair<int, int>, int>* slot_dart);

}  // namespace dtqft::detail
