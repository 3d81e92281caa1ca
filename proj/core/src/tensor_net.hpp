#pragma once
// Sparse tensors with labelled indices and bucket-elimination contraction (internal).
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "dtqft/fusion.hpp"

namespace dtqft::detail {

struct Tensor {
  std::vector<int> labels;
  std::vector<int> dims;
  // nonzero entries by row-major offset, first label most significant
  std::unordered_map<std::uint64_t, cplx> nz;

  double dense_size() const {
    double n = 1;
    for (int d : dims) n *= d;
    return n;
  }
  void add(std::uint64_t off, cplx v) {
    if (v != cplx(0.0)) nz[off] += v;
  }
  cplx get(std::uint64_t off) const {
    auto it = nz.find(off);
    return it == nz.end() ? cplx(0.0) : it->second;
  }
  static Tensor scalar(cplx v) {
    Tensor t;
    t.add(0, v);
    return t;
  }
};

// Contract all tensors; labels in `keep` stay open, every other label is
// summed once no other tensor carries it. The result carries `keep` in order.
Tensor contract_network(std::vector<Tensor> ts, const std::vector<int>& keep);

}  // namespace dtqft::detail
