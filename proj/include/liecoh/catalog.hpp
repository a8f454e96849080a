#pragma once

#include "liecoh/error.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace liecoh {

/// Catalog row for a simple algebra: dimension, the orders m_1..m_l of its
/// primitive invariant polynomials, and the degrees 2 m_i - 1 of the
/// associated primitive cocycles. Both sequences have length = rank and are
/// sorted ascending; the product of (1 + t^{c_i}) over the cocycle degrees is
/// the Poincare polynomial.
struct CatalogEntry {
  std::string label;
  char series;
  int rank;
  int dim;
  std::vector<int> invariant_orders;
  std::vector<int> cocycle_degrees;
  bool constructible; // exact matrix basis available via build_algebra
};

inline CatalogEntry catalog(const std::string& label) {
  auto fail = [&]() -> CatalogEntry {
    throw CheckFailure("bad-label", "catalog: unrecognized simple-algebra label: " + label);
  };
  if (label.size() < 2) return fail();
  const char series = label[0];
  int rank = 0;
  for (std::size_t p = 1; p < label.size(); ++p) {
    if (label[p] < '0' || label[p] > '9') return fail();
    rank = rank * 10 + (label[p] - '0');
  }
  if (rank < 1) return fail();

  CatalogEntry e;
  e.label = label;
  e.series = series;
  e.rank = rank;
  switch (series) {
    case 'A': {
      e.dim = (rank + 1) * (rank + 1) - 1;
      for (int m = 2; m <= rank + 1; ++m) e.invariant_orders.push_back(m);
      e.constructible = true;
      break;
    }
    case 'B': {
      if (rank < 2) return fail();
      e.dim = rank * (2 * rank + 1);
      for (int m = 2; m <= 2 * rank; m += 2) e.invariant_orders.push_back(m);
      e.constructible = true;
      break;
    }
    case 'C': {
      if (rank < 3) return fail();
      e.dim = rank * (2 * rank + 1);
      for (int m = 2; m <= 2 * rank; m += 2) e.invariant_orders.push_back(m);
      e.constructible = true;
      break;
    }
    case 'D': {
      if (rank < 3) return fail();
      e.dim = rank * (2 * rank - 1);
      for (int m = 2; m <= 2 * rank - 2; m += 2) e.invariant_orders.push_back(m);
      e.invariant_orders.push_back(rank); // Pfaffian order
      std::sort(e.invariant_orders.begin(), e.invariant_orders.end());
      e.constructible = true;
      break;
    }
    case 'G': {
      if (rank != 2) return fail();
      e.dim = 14;
      e.invariant_orders = {2, 6};
      e.constructible = false;
      break;
    }
    case 'F': {
      if (rank != 4) return fail();
      e.dim = 52;
      e.invariant_orders = {2, 6, 8, 12};
      e.constructible = false;
      break;
    }
    case 'E': {
      if (rank == 6) {
        e.dim = 78;
        e.invariant_orders = {2, 5, 6, 8, 9, 12};
      } else if (rank == 7) {
        e.dim = 133;
        e.invariant_orders = {2, 6, 8, 10, 12, 14, 18};
      } else if (rank == 8) {
        e.dim = 248;
        e.invariant_orders = {2, 8, 12, 14, 18, 20, 24, 30};
      } else {
        return fail();
      }
      e.constructible = false;
      break;
    }
    default:
      return fail();
  }
  for (int m : e.invariant_orders) e.cocycle_degrees.push_back(2 * m - 1);
  return e;
}

inline std::vector<CatalogEntry> catalog_all() {
  std::vector<CatalogEntry> rows;
  for (int l = 1; l <= 8; ++l) rows.push_back(catalog("A" + std::to_string(l)));
  for (int l = 2; l <= 8; ++l) rows.push_back(catalog("B" + std::to_string(l)));
  for (int l = 3; l <= 8; ++l) rows.push_back(catalog("C" + std::to_string(l)));
  for (int l = 3; l <= 8; ++l) rows.push_back(catalog("D" + std::to_string(l)));
  rows.push_back(catalog("G2"));
  rows.push_back(catalog("F4"));
  rows.push_back(catalog("E6"));
  rows.push_back(catalog("E7"));
  rows.push_back(catalog("E8"));
  return rows;
}

/// Coefficients (index = exponent) of prod_i (1 + t^{c_i}) over the entry's
/// cocycle degrees, expanded over the integers. The value at t = -1 is zero
/// (every factor vanishes there) and the top coefficient sits at sum c_i = dim.
inline std::vector<std::int64_t> poincare_polynomial(const CatalogEntry& e) {
  std::vector<std::int64_t> p{1};
  for (int c : e.cocycle_degrees) {
    std::vector<std::int64_t> q(p.size() + static_cast<std::size_t>(c), 0);
    for (std::size_t k = 0; k < p.size(); ++k) {
      q[k] += p[k];
      q[k + static_cast<std::size_t>(c)] += p[k];
    }
    p = std::move(q);
  }
  return p;
}

} // namespace liecoh
