#pragma once
#include <cstdint>
#include <numeric>
#include <vector>

namespace loopsoup {

// Union-find with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(uint32_t n = 0) { reset(n); }

  void reset(uint32_t n) {
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), 0u);
    size_.assign(n, 1u);
    components_ = n;
  }

  uint32_t size() const { return static_cast<uint32_t>(parent_.size()); }
  uint32_t components() const { return components_; }

  uint32_t find(uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(uint32_t a, uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --components_;
    return true;
  }

  bool connected(uint32_t a, uint32_t b) { return find(a) == find(b); }
  uint32_t component_size(uint32_t x) { return size_[find(x)]; }

  // Dense component labels in [0, n_components).
  std::vector<uint32_t> labels() {
    std::vector<uint32_t> lab(parent_.size(), UINT32_MAX);
    uint32_t next = 0;
    for (uint32_t i = 0; i < parent_.size(); ++i) {
      const uint32_t r = find(i);
      if (lab[r] == UINT32_MAX) lab[r] = next++;
    }
    std::vector<uint32_t> out(parent_.size());
    for (uint32_t i = 0; i < parent_.size(); ++i) out[i] = lab[find(i)];
    return out;
  }

 private:
  std::vector<uint32_t> parent_;
  std::vector<uint32_t> size_;
  uint32_t components_ = 0;
};

}  // namespace loopsoup
