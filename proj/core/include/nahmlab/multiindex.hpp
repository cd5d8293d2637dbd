#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace nahmlab {

/// Exponent vector of a monomial x1^a1 x2^a2 x3^a3 x4^a4.
using MIdx = std::array<int, 4>;

inline int midx_degree(const MIdx& a) { return a[0] + a[1] + a[2] + a[3]; }

inline MIdx midx_add(const MIdx& a, const MIdx& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

inline long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Graded-lexicographic rank of a monomial among all monomials of R^4.
/// The ordering is fixed so every matrix assembled over it is reproducible.
inline int midx_rank(const MIdx& a) {
  const int d = midx_degree(a);
  return int(binom(d + 3, 4) + binom(d - a[0] + 2, 3) + binom(d - a[0] - a[1] + 1, 2) + a[3]);
}

/// All monomials of total degree <= N in graded lexicographic order.
class MonomialTable {
 public:
  explicit MonomialTable(int max_degree) : max_degree_(max_degree) {
    if (max_degree < 0 || max_degree > 40) throw std::invalid_argument("MonomialTable: bad degree");
    for (int d = 0; d <= max_degree; ++d)
      for (int a0 = d; a0 >= 0; --a0)
        for (int a1 = d - a0; a1 >= 0; --a1)
          for (int a2 = d - a0 - a1; a2 >= 0; --a2)
            list_.push_back({a0, a1, a2, d - a0 - a1 - a2});
  }

  int size() const { return int(list_.size()); }
  int max_degree() const { return max_degree_; }
  const MIdx& operator[](int i) const { return list_[i]; }

  /// Index of a monomial, or -1 if its degree exceeds the table.
  int find(const MIdx& a) const {
    if (midx_degree(a) > max_degree_) return -1;
    return midx_rank(a);
  }

  /// Number of monomials of degree <= d.
  static int cumulative(int d) { return d < 0 ? 0 : int(binom(d + 4, 4)); }

 private:
  int max_degree_;
  std::vector<MIdx> list_;
};

}  // namespace nahmlab
