#pragma once
// String-net reduction on planar trivalent graphs (internal).
#include <map>
#include <vector>

#include "dtqft/fusion.hpp"

namespace dtqft::detail {

// Darts with vertex, ccw successor (sig), opposite dart (alp) and the
// colour of the edge oriented away from the dart's vertex.
struct Net {
  std::vector<int> vert, sig, alp, col;
  std::vector<char> alive;
  std::vector<int> loops;

  int add_dart(int v, int colour) {
    vert.push_back(v);
    sig.push_back(-1);
    alp.push_back(-1);
    col.push_back(colour);
    alive.push_back(1);
    return static_cast<int>(vert.size()) - 1;
  }
  void link(int a, int b) {
    alp[a] = b;
    alp[b] = a;
  }
  // close a vertex: darts in ccw order
  void ring(const std::vector<int>& ds) {
    for (std::size_t i = 0; i < ds.size(); ++i) sig[ds[i]] = ds[(i + 1) % ds.size()];
  }
};

class NetEvaluator {
 public:
  explicit NetEvaluator(const FusionCategory& cat) : cat_(cat) {}
  cplx value(Net net);

 private:
  bool simplify(Net& net, cplx& scalar) const;
  cplx component_value(const Net& comp);
  std::vector<int> canonical_code(const Net& comp) const;

  const FusionCategory& cat_;
  std::map<std::vector<int>, cplx> cache_;
};

}  // namespace dtqft::detail
