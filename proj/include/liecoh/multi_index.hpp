#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

namespace liecoh {

using Index = std::vector<int>;

/// Renders an index tuple as "(i1,i2,...)" for witness strings.
inline std::string index_to_string(const Index& idx) {
  std::string s = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(idx[i]);
  }
  return s + ")";
}

/// Sorts idx ascending in place and returns the permutation sign, or 0 if an
/// index repeats. Insertion sort; tuples here are short (degree <= ~8).
inline int sort_with_parity(Index& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    int v = idx[i];
    std::size_t j = i;
    while (j > 0 && idx[j - 1] > v) {
      idx[j] = idx[j - 1];
      --j;
      sign = -sign;
    }
    idx[j] = v;
  }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1]) return 0;
  return sign;
}

/// Parity of the permutation taking sorted order to perm (perm must be a
/// permutation of distinct values).
inline int permutation_sign(const Index& perm) {
  Index copy = perm;
  return sort_with_parity(copy);
}

/// Merges two strictly increasing tuples into out; returns 0 when they share
/// an element, else the parity sign of interleaving b into a.
inline int merge_with_parity(const Index& a, const Index& b, Index& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  int swaps = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return 0;
    if (a[i] < b[j]) {
      out.push_back(a[i++]);
    } else {
      // b[j] jumps over the remaining elements of a
      swaps += static_cast<int>(a.size() - i);
      out.push_back(b[j++]);
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return (swaps % 2 == 0) ? 1 : -1;
}

/// Visits every strictly increasing k-tuple drawn from {0,...,n-1}.
inline void for_each_combination(int n, int k,
                                 const std::function<void(const Index&)>& fn) {
  if (k < 0 || k > n) return;
  Index c(k);
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    fn(c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

/// Visits every non-decreasing k-tuple (multiset) drawn from {0,...,n-1}.
inline void for_each_multiset(int n, int k,
                              const std::function<void(const Index&)>& fn) {
  if (k < 0 || (n == 0 && k > 0)) return;
  Index c(k, 0);
  while (true) {
    fn(c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - 1) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[i];
  }
}

/// Splits the sorted tuple K into a p-element subtuple I and its complement J
/// (both kept in K's order) for every choice of positions, invoking
/// fn(I, J, sign) with the (p, |K|-p)-shuffle sign of the rearrangement
/// (I followed by J) relative to K.
inline void for_each_split(const Index& K, int p,
                           const std::function<void(const Index&, const Index&, int)>& fn) {
  const int n = static_cast<int>(K.size());
  if (p < 0 || p > n) return;
  std::vector<int> pos(p);
  std::iota(pos.begin(), pos.end(), 0);
  Index I(p), J(n - p);
  while (true) {
    int psum = 0;
    {
      std::size_t ii = 0, jj = 0;
      for (int t = 0; t < n; ++t) {
        if (ii < pos.size() && pos[ii] == t) {
          I[ii] = K[t];
          psum += t - static_cast<int>(ii);
          ++ii;
        } else {
          J[jj++] = K[t];
        }
      }
    }
    fn(I, J, (psum % 2 == 0) ? 1 : -1);
    int i = p - 1;
    while (i >= 0 && pos[i] == n - p + i) --i;
    if (i < 0) break;
    ++pos[i];
    for (int j = i + 1; j < p; ++j) pos[j] = pos[j - 1] + 1;
  }
}

/// Visits all permutations of {0,...,n-1} with their signs.
inline void for_each_permutation(int n,
                                 const std::function<void(const Index&, int)>& fn) {
  Index p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    fn(p, permutation_sign(p));
  } while (std::next_permutation(p.begin(), p.end()));
}

} // namespace liecoh
