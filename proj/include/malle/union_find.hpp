#ifndef MALLE_UNION_FIND_HPP
#define MALLE_UNION_FIND_HPP

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace malle {

/// Disjoint sets over 0..n-1 with union by size and path halving.
class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1), components_(n) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b)
      return false;
    if (size_[a] < size_[b])
      std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --components_;
    return true;
  }

  std::size_t components() const { return components_; }
  std::size_t size() const { return parent_.size(); }

private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
  std::size_t components_;
};

} // namespace malle

#endif // MALLE_UNION_FIND_HPP
