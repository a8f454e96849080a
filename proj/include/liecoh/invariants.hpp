#pragma once

#include "liecoh/lie_algebra.hpp"
#include "liecoh/parallel.hpp"
#include "liecoh/tensor_ops.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace liecoh {

/// Symmetric m-linear form on g, invariant under the adjoint action:
/// sum_r C_{l i_r}^s k_{i_1 ... s ... i_m} = 0 for every l and every tuple.
struct InvariantPolynomial {
  std::string algebra;
  int order = 0;
  SymTensor tensor;
};

struct InvarianceReport {
  bool invariant = true;
  int rho = -1;    // acting basis index l of the worst violation
  Index where;     // its multi-index
  Scalar residual; // its value (exact zero never stored here)
};

/// Exhaustive exact invariance check of a symmetric tensor under ad(X_l) for
/// every l. Reports the maximum-magnitude violated component, magnitude being
/// |residual|^2 over the rationals.
inline InvarianceReport check_invariance(const LieAlgebra& g, const SymTensor& k) {
  InvarianceReport rep;
  Rational best(0);
  const int n = g.dim(), m = k.degree();
  for_each_multiset(n, m, [&](const Index& M) {
    for (int l = 0; l < n; ++l) {
      Scalar res;
      for (int r = 0; r < m; ++r)
        for (const auto& [s, v] : g.bracket_coeffs(l, M[r])) {
          Index sub = M;
          sub[r] = s;
          res += v * k.component(std::move(sub));
        }
      if (!res.is_zero()) {
        Rational mag = res.norm2();
        if (rep.invariant || mag > best) {
          rep.invariant = false;
          best = mag;
          rep.rho = l;
          rep.where = M;
          rep.residual = res;
        }
      }
    }
  });
  return rep;
}

namespace detail {

// Tr(A B) without forming the product.
inline Scalar trace_of_product(const Matrix& a, const Matrix& b) {
  Scalar t;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) {
      const Scalar& x = a.at(r, c);
      if (x.is_zero()) continue;
      const Scalar& y = b.at(c, r);
      if (!y.is_zero()) t += x * y;
    }
  return t;
}

} // namespace detail

/// k_{i_1...i_m} = (1/m!) sum over all m! orderings of Tr(X_{i_1} ... X_{i_m})
/// in the defining representation. Exact; the output is verified ad-invariant
/// before being returned. Guarded to m <= 6 and dim(g) <= 15.
inline InvariantPolynomial symmetrized_trace(const LieAlgebra& g, int m) {
  if (!g.has_generators())
    throw CheckFailure("abstract-algebra",
                       g.name() + ": symmetrized traces need a matrix basis");
  if (m < 2 || m > 6 || g.dim() > 15)
    throw CheckFailure("resource-guard",
                       g.name() + ": symmetrized trace guarded to 2 <= m <= 6, dim <= 15; "
                                  "choose a smaller order");
  const int n = g.dim();
  const std::vector<Matrix>& gen = g.generators();

  // All ordered products of two generators, reused by every permutation.
  std::vector<Matrix> pairprod;
  pairprod.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) pairprod.push_back(gen[i] * gen[j]);

  // Trace of the ordered product X_{arr[0]} ... X_{arr[m-1]} via pair blocks.
  auto chain_trace = [&](const Index& arr) -> Scalar {
    std::vector<const Matrix*> segs;
    for (int i = 0; i + 1 < m; i += 2)
      segs.push_back(&pairprod[static_cast<std::size_t>(arr[i]) * n + arr[i + 1]]);
    if (m % 2) segs.push_back(&gen[arr[m - 1]]);
    if (segs.size() == 1) return segs[0]->trace();
    if (segs.size() == 2) return detail::trace_of_product(*segs[0], *segs[1]);
    Matrix w = *segs[0];
    for (std::size_t i = 1; i + 1 < segs.size(); ++i) w = w * *segs[i];
    return detail::trace_of_product(w, *segs.back());
  };

  std::vector<Index> msets;
  for_each_multiset(n, m, [&](const Index& M) { msets.push_back(M); });
  std::vector<Scalar> vals(msets.size());
  parallel_for(msets.size(), [&](std::size_t t) {
    Index arr = msets[t];
    Scalar acc;
    do {
      acc += chain_trace(arr);
    } while (std::next_permutation(arr.begin(), arr.end()));
    // acc covers each distinct arrangement once; in the sum over all m!
    // orderings an arrangement repeats prod(multiplicity!) times.
    Rational rep(1);
    for (std::size_t i = 0; i < msets[t].size();) {
      std::size_t j = i;
      while (j < msets[t].size() && msets[t][j] == msets[t][i]) ++j;
      rep *= factorial(static_cast<unsigned>(j - i));
      i = j;
    }
    vals[t] = Scalar(rep / factorial(static_cast<unsigned>(m))) * acc;
  });

  InvariantPolynomial out;
  out.algebra = g.name();
  out.order = m;
  out.tensor = SymTensor(m, n);
  for (std::size_t t = 0; t < msets.size(); ++t)
    if (!vals[t].is_zero()) out.tensor.set(msets[t], vals[t]);

  InvarianceReport chk = check_invariance(g, out.tensor);
  if (!chk.invariant)
    throw CheckFailure("invariance", g.name() + ": symmetrized trace failed invariance",
                       "rho=" + std::to_string(chk.rho));
  return out;
}

/// Symmetric tensor product with projector normalization:
/// (ab)(K) = (1 / C(p+q, p)) * sum over position subsets S of a(K_S) b(K_!S),
/// i.e. the full symmetrization of the outer product.
inline SymTensor sym_product(const SymTensor& a, const SymTensor& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("sym_product: dimension mismatch");
  const int p = a.degree(), q = b.degree(), n = a.dim();
  SymTensor out(p + q, n);
  const Scalar norm(Rational(1) / Rational(binomial(p + q, p)));
  for_each_multiset(n, p + q, [&](const Index& K) {
    Scalar acc;
    for_each_split(K, p, [&](const Index& I, const Index& J, int) {
      Scalar av = a.component(I);
      if (!av.is_zero()) acc += av * b.component(J);
    });
    if (!acc.is_zero()) out.set(K, acc * norm);
  });
  return out;
}

struct PrimitivityReport {
  bool primitive = false;
  // (order_a, order_b, coefficient) per symmetrized product in the witness
  std::vector<std::tuple<int, int, Scalar>> decomposition;
};

/// Exact span-membership of k in the symmetrized pair products of the given
/// lower-order invariants. Primitive means k is outside that span. The zero
/// polynomial is never primitive. When decomposable, the explicit
/// coefficients are returned.
inline PrimitivityReport is_primitive(const InvariantPolynomial& k,
                                      const std::vector<InvariantPolynomial>& lower) {
  PrimitivityReport rep;
  if (k.tensor.is_zero()) return rep; // 0 = 0 * anything
  std::vector<std::pair<std::pair<int, int>, SymTensor>> prods;
  for (std::size_t a = 0; a < lower.size(); ++a)
    for (std::size_t b = a; b < lower.size(); ++b)
      if (lower[a].order + lower[b].order == k.order) {
        SymTensor p = sym_product(lower[a].tensor, lower[b].tensor);
        if (!p.is_zero()) prods.emplace_back(std::make_pair(lower[a].order, lower[b].order),
                                             std::move(p));
      }
  if (prods.empty()) {
    rep.primitive = true;
    return rep;
  }
  std::set<Index> rows;
  for (const auto& [K, v] : k.tensor.entries()) rows.insert(K);
  for (const auto& [o, p] : prods)
    for (const auto& [K, v] : p.entries()) rows.insert(K);
  Matrix sys(static_cast<int>(rows.size()), static_cast<int>(prods.size()));
  std::vector<Scalar> rhs;
  rhs.reserve(rows.size());
  int r = 0;
  for (const Index& K : rows) {
    for (std::size_t c = 0; c < prods.size(); ++c) sys.at(r, static_cast<int>(c)) = prods[c].second.component(K);
    rhs.push_back(k.tensor.component(K));
    ++r;
  }
  auto sol = sys.solve(rhs);
  if (!sol) {
    rep.primitive = true;
    return rep;
  }
  for (std::size_t c = 0; c < prods.size(); ++c)
    rep.decomposition.emplace_back(prods[c].first.first, prods[c].first.second, (*sol)[c]);
  return rep;
}

/// Every nonzero symmetrized trace of order 2 .. below-1, the candidate pool
/// primitivity is decided against.
inline std::vector<InvariantPolynomial> lower_invariants(const LieAlgebra& g, int below) {
  std::vector<InvariantPolynomial> lows;
  for (int m = 2; m < below; ++m) {
    InvariantPolynomial p = symmetrized_trace(g, m);
    if (!p.tensor.is_zero()) lows.push_back(std::move(p));
  }
  return lows;
}

/// Contracts the given metric into every slot of a symmetric tensor, one slot
/// at a time: t'(i_1..i_m) = metric(i_1,j_1)...metric(i_m,j_m) t(j_1..j_m).
inline SymTensor sym_metric_all_slots(const SymTensor& k, const Matrix& metric) {
  const int m = k.degree(), n = k.dim();
  if (metric.rows() != n || metric.cols() != n)
    throw std::invalid_argument("sym_metric_all_slots: metric shape mismatch");
  // Intermediate after r slots: tensor symmetric in the r contracted slots
  // and in the m-r pending ones separately; key = sorted(contracted) ++
  // sorted(pending).
  std::map<Index, Scalar> cur;
  for (const auto& [M, v] : k.entries()) cur.emplace(M, v);
  for (int r = 0; r < m; ++r) {
    std::map<Index, Scalar> nxt;
    for_each_multiset(n, r + 1, [&](const Index& A) {
      for_each_multiset(n, m - r - 1, [&](const Index& B) {
        Scalar acc;
        for (int b = 0; b < n; ++b) {
          const Scalar& gv = metric.at(A[0], b);
          if (gv.is_zero()) continue;
          Index key;
          key.reserve(static_cast<std::size_t>(m));
          key.insert(key.end(), A.begin() + 1, A.end());
          Index low = B;
          low.insert(std::lower_bound(low.begin(), low.end(), b), b);
          key.insert(key.end(), low.begin(), low.end());
          auto it = cur.find(key);
          if (it != cur.end()) acc += gv * it->second;
        }
        if (!acc.is_zero()) {
          Index key = A;
          key.insert(key.end(), B.begin(), B.end());
          nxt.emplace(std::move(key), std::move(acc));
        }
      });
    });
    cur = std::move(nxt);
  }
  SymTensor out(m, n);
  for (const auto& [K, v] : cur) out.set(K, v);
  return out;
}

/// The order-m Casimir of the defining representation:
/// sum k^{i_1..i_m} X_{i_1} ... X_{i_m}, indices raised with the inverse
/// Killing form. Commutes exactly with every generator.
inline Matrix casimir_matrix(const LieAlgebra& g, const SymTensor& k) {
  if (!g.has_generators())
    throw CheckFailure("abstract-algebra", g.name() + ": Casimir needs a matrix basis");
  SymTensor up = sym_metric_all_slots(k, g.killing_inverse());
  const int d = g.matrix_size(), m = k.degree();
  Matrix c(d, d);
  for (const auto& [M, v] : up.entries()) {
    Index arr = M;
    do {
      Matrix w = g.generators()[arr[0]];
      for (int r = 1; r < m; ++r) w = w * g.generators()[arr[r]];
      c += v * w;
    } while (std::next_permutation(arr.begin(), arr.end()));
  }
  return c;
}

/// Inverse bridge from an odd cocycle to an invariant polynomial:
/// t^{i_1..i_m} = Omega^{j_1..j_{2m-2} i_m} C^{i_1}_{j_1 j_2} ...
/// C^{i_{m-1}}_{j_{2m-3} j_{2m-2}}, omega of degree 2m-1 with indices raised
/// by the inverse Killing form; the result is lowered back and returned as a
/// symmetric tensor (symmetry is verified exactly, not assumed).
inline SymTensor polynomial_from_cocycle(const LieAlgebra& g, const AltTensor& omega) {
  if (omega.degree() < 3 || omega.degree() % 2 == 0)
    throw CheckFailure("even-degree",
                       "polynomial_from_cocycle: cocycle degree must be odd and >= 3");
  if (omega.dim() != g.dim())
    throw CheckFailure("shape", "polynomial_from_cocycle: cocycle dimension mismatch");
  const int m = (omega.degree() + 1) / 2, n = g.dim();
  AltTensor up = apply_metric_all_slots(omega, g.killing_inverse());

  GeneralTensor t(m, n);
  Index arr(static_cast<std::size_t>(2 * m - 1));
  for (const auto& [K, v] : up.entries()) {
    for_each_permutation(2 * m - 1, [&](const Index& p, int sign) {
      for (int i = 0; i < 2 * m - 1; ++i) arr[i] = K[p[i]];
      Index out(static_cast<std::size_t>(m));
      out[m - 1] = arr[2 * m - 2];
      Scalar base = (sign > 0) ? v : -v;
      // expand the product of structure-constant factors, one per j-pair
      auto expand = [&](auto&& self, int r, const Scalar& coeff) -> void {
        if (r == m - 1) {
          t.add(out, coeff);
          return;
        }
        for (const auto& [iq, cv] : g.bracket_coeffs(arr[2 * r], arr[2 * r + 1])) {
          out[r] = iq;
          self(self, r + 1, coeff * cv);
        }
      };
      expand(expand, 0, base);
    });
  }

  SymTensor sym = symmetrize(t);
  for (const auto& [K, v] : t.entries())
    if (!(v == sym.component(K)))
      throw CheckFailure("not-symmetric",
                         "polynomial_from_cocycle: contraction is not symmetric");
  for (const auto& [M, v] : sym.entries()) {
    Index arr2 = M;
    do {
      if (!(t.component(arr2) == v))
        throw CheckFailure("not-symmetric",
                           "polynomial_from_cocycle: contraction is not symmetric");
    } while (std::next_permutation(arr2.begin(), arr2.end()));
  }
  return sym_metric_all_slots(sym, g.killing_form());
}

} // namespace liecoh
