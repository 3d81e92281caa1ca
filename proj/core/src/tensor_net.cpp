#include "tensor_net.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace dtqft::detail {

namespace {

using Index = std::vector<int>;

std::map<int, int> label_dims(const std::vector<Tensor>& ts) {
  std::map<int, int> d;
  for (const auto& t : ts)
    for (std::size_t i = 0; i < t.labels.size(); ++i) d[t.labels[i]] = t.dims[i];
  return d;
}

void check_size(const std::vector<int>& dims) {
  double n = 1;
  for (int d : dims) n *= d;
  if (n >= 1.8e19) throw Error("tensor index space exceeds 64 bits");
}

Index decode(std::uint64_t off, const std::vector<int>& dims) {
  Index idx(dims.size());
  for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
    idx[i] = static_cast<int>(off % static_cast<std::uint64_t>(dims[i]));
    off /= static_cast<std::uint64_t>(dims[i]);
  }
  return idx;
}

// merge a and b; sum over labels in `sum`
Tensor merge(const Tensor& a, const Tensor& b, const std::set<int>& sum) {
  std::vector<int> all = a.labels;
  std::vector<int> all_dims = a.dims;
  for (std::size_t i = 0; i < b.labels.size(); ++i)
    if (std::find(all.begin(), all.end(), b.labels[i]) == all.end()) {
      all.push_back(b.labels[i]);
      all_dims.push_back(b.dims[i]);
    }
  Tensor out;
  std::vector<int> out_pos;  // position in `all`
  for (std::size_t i = 0; i < all.size(); ++i)
    if (!sum.count(all[i])) {
      out.labels.push_back(all[i]);
      out.dims.push_back(all_dims[i]);
      out_pos.push_back(static_cast<int>(i));
    }
  check_size(out.dims);
  // positions of b's labels in `all`, and of shared labels in a and b
  std::vector<int> b_pos(b.labels.size());
  std::vector<std::pair<int, int>> shared;
  for (std::size_t j = 0; j < b.labels.size(); ++j) {
    b_pos[j] = static_cast<int>(std::find(all.begin(), all.end(), b.labels[j]) - all.begin());
    auto it = std::find(a.labels.begin(), a.labels.end(), b.labels[j]);
    if (it != a.labels.end()) shared.push_back({static_cast<int>(it - a.labels.begin()), static_cast<int>(j)});
  }
  auto shared_key = [&](const Index& idx, bool from_a) {
    std::uint64_t k = 0;
    for (auto [i, j] : shared) {
      int p = from_a ? i : j;
      k = k * static_cast<std::uint64_t>(from_a ? a.dims[p] : b.dims[p]) +
          static_cast<std::uint64_t>(idx[p]);
    }
    return k;
  };
  std::unordered_map<std::uint64_t, std::vector<std::pair<Index, cplx>>> table;
  for (const auto& [off, v] : b.nz) {
    Index idx = decode(off, b.dims);
    table[shared_key(idx, false)].push_back({std::move(idx), v});
  }
  Index full(all.size());
  for (const auto& [off, v] : a.nz) {
    Index ia = decode(off, a.dims);
    auto it = table.find(shared_key(ia, true));
    if (it == table.end()) continue;
    std::copy(ia.begin(), ia.end(), full.begin());
    for (const auto& [ib, w] : it->second) {
      for (std::size_t j = 0; j < ib.size(); ++j) full[b_pos[j]] = ib[j];
      std::uint64_t o = 0;
      for (std::size_t q = 0; q < out_pos.size(); ++q)
        o = o * static_cast<std::uint64_t>(out.dims[q]) + static_cast<std::uint64_t>(full[out_pos[q]]);
      out.nz[o] += v * w;
    }
  }
  return out;
}

// sum out labels that only t carries
Tensor reduce_single(const Tensor& t, const std::set<int>& sum) {
  bool any = false;
  for (int l : t.labels) any = any || sum.count(l);
  if (!any) return t;
  return merge(t, Tensor::scalar(1.0), sum);
}

bool has(const Tensor& t, int l) {
  return std::find(t.labels.begin(), t.labels.end(), l) != t.labels.end();
}

}  // namespace

Tensor contract_network(std::vector<Tensor> ts, const std::vector<int>& keep) {
  const auto dims = label_dims(ts);
  std::set<int> keep_set(keep.begin(), keep.end());
  auto private_labels = [&](const Tensor& t, const std::vector<Tensor>& others, const Tensor* self) {
    std::set<int> sum;
    for (int l : t.labels) {
      if (keep_set.count(l)) continue;
      bool elsewhere = false;
      for (const auto& o : others) elsewhere = elsewhere || (&o != self && has(o, l));
      if (!elsewhere) sum.insert(l);
    }
    return sum;
  };
  for (auto& t : ts) t = reduce_single(t, private_labels(t, ts, &t));
  // bucket elimination: sum out the label whose bucket merges smallest
  while (true) {
    std::set<int> pending;
    for (const auto& t : ts)
      for (int l : t.labels)
        if (!keep_set.count(l)) pending.insert(l);
    if (pending.empty()) break;
    int best_l = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int l : pending) {
      std::set<int> u;
      for (const auto& t : ts)
        if (has(t, l)) u.insert(t.labels.begin(), t.labels.end());
      double size = 0.0;
      for (int x : u) size += std::log(static_cast<double>(dims.at(x)));
      if (size < best) {
        best = size;
        best_l = l;
      }
    }
    std::vector<Tensor> bucket, rest;
    for (auto& t : ts) (has(t, best_l) ? bucket : rest).push_back(std::move(t));
    // smallest first keeps intermediates sparse
    std::sort(bucket.begin(), bucket.end(),
              [](const Tensor& x, const Tensor& y) { return x.nz.size() < y.nz.size(); });
    Tensor acc = std::move(bucket[0]);
    for (std::size_t i = 1; i < bucket.size(); ++i) {
      std::set<int> sum;
      if (i + 1 == bucket.size()) {
        Tensor u;
        u.labels = acc.labels;
        u.labels.insert(u.labels.end(), bucket[i].labels.begin(), bucket[i].labels.end());
        sum = private_labels(u, rest, nullptr);
      }
      acc = merge(acc, bucket[i], sum);
    }
    if (bucket.size() == 1) acc = reduce_single(acc, private_labels(acc, rest, nullptr));
    rest.push_back(std::move(acc));
    ts = std::move(rest);
  }
  Tensor r = Tensor::scalar(1.0);
  for (const auto& t : ts) r = merge(r, t, {});
  // permute to `keep` order
  Tensor out;
  for (int l : keep) {
    out.labels.push_back(l);
    out.dims.push_back(dims.count(l) ? dims.at(l) : 1);
  }
  std::vector<int> where(r.labels.size());
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    auto it = std::find(keep.begin(), keep.end(), r.labels[i]);
    if (it == keep.end()) throw Error("contraction left an unexpected label");
    where[i] = static_cast<int>(it - keep.begin());
  }
  for (const auto& [off, v] : r.nz) {
    Index idx = decode(off, r.dims);
    Index o(keep.size(), 0);
    for (std::size_t i = 0; i < idx.size(); ++i) o[where[i]] = idx[i];
    std::uint64_t k = 0;
    for (std::size_t q = 0; q < o.size(); ++q)
      k = k * static_cast<std::uint64_t>(out.dims[q]) + static_cast<std::uint64_t>(o[q]);
    out.nz[k] += v;
  }
  return out;
}

}  // namespace dtqft::detail
