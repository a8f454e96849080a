#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "liecoh/alt_tensor.hpp"
#include "liecoh/cohomology.hpp"
#include "liecoh/error.hpp"
#include "liecoh/invariants.hpp"
#include "liecoh/lie_algebra.hpp"
#include "liecoh/matrix.hpp"
#include "liecoh/multi_index.hpp"
#include "liecoh/parallel.hpp"
#include "liecoh/tensor_ops.hpp"

namespace liecoh {

/// Order-n multibracket of associative operators: the signed sum of all n!
/// products, [A_1,...,A_n] = sum_{s in S_n} sign(s) A_{s(1)} ... A_{s(n)}.
/// Fully antisymmetric and multilinear; order 2 is the plain commutator.
inline Matrix multibracket(const std::vector<Matrix>& mats) {
  if (mats.empty())
    throw CheckFailure("shape", "multibracket: at least one argument required");
  const int sz = mats[0].rows();
  for (const auto& m : mats)
    if (m.rows() != sz || m.cols() != sz)
      throw CheckFailure("shape", "multibracket: arguments must share one square shape");
  const int n = static_cast<int>(mats.size());
  if (n > 8)
    throw CheckFailure("resource-guard",
                       "multibracket: order " + std::to_string(n) +
                           " needs n! products; the guard is 8");
  Matrix acc(sz, sz);
  for_each_permutation(n, [&](const Index& p, int sign) {
    Matrix prod = mats[static_cast<std::size_t>(p[0])];
    for (int i = 1; i < n; ++i) prod = prod * mats[static_cast<std::size_t>(p[i])];
    if (sign > 0)
      acc += prod;
    else
      acc -= prod;
  });
  return acc;
}

/// The nested-bracket sum over the split transversal:
///
///   n! (m-1)! * sum over ascending splits (I|J) of {1..n+m-1}, |I| = n, of
///       sign(I|J) [ [A_I...], A_J... ]
///
/// which equals the full signed sum over S_{n+m-1} of
/// [[A_{s(1)},...,A_{s(n)}], A_{s(n+1)},..., A_{s(n+m-1)}] because both the
/// inner and the outer bracket are already alternating.  Vanishes identically
/// when n and m are both even; collapses to a single multibracket otherwise.
inline Matrix gji_sum_transversal(const std::vector<Matrix>& mats, int n, int m) {
  if (n < 1 || m < 1 || mats.size() != static_cast<std::size_t>(n + m - 1))
    throw CheckFailure("shape", "gji_sum_transversal: need n+m-1 arguments");
  const int sz = mats[0].rows();
  Matrix acc(sz, sz);
  Index all(static_cast<std::size_t>(n + m - 1));
  std::iota(all.begin(), all.end(), 0);
  for_each_split(all, n, [&](const Index& I, const Index& J, int sign) {
    std::vector<Matrix> inner;
    inner.reserve(static_cast<std::size_t>(n));
    for (int i : I) inner.push_back(mats[static_cast<std::size_t>(i)]);
    std::vector<Matrix> outer;
    outer.reserve(static_cast<std::size_t>(m));
    outer.push_back(multibracket(inner));
    for (int j : J) outer.push_back(mats[static_cast<std::size_t>(j)]);
    Matrix term = multibracket(outer);
    if (sign > 0)
      acc += term;
    else
      acc -= term;
  });
  const Scalar weight{factorial(static_cast<unsigned>(n)) *
                      factorial(static_cast<unsigned>(m - 1))};
  return weight * acc;
}

/// Slow trust anchor for gji_sum_transversal: the same nested sum taken
/// literally over all (n+m-1)! permutations.
inline Matrix gji_sum_all_permutations(const std::vector<Matrix>& mats, int n, int m) {
  if (n < 1 || m < 1 || mats.size() != static_cast<std::size_t>(n + m - 1))
    throw CheckFailure("shape", "gji_sum_all_permutations: need n+m-1 arguments");
  const int total = n + m - 1;
  if (total > 8)
    throw CheckFailure("resource-guard", "gji_sum_all_permutations: (n+m-1)! guard is 8!");
  const int sz = mats[0].rows();
  // Inner brackets repeat across permutations; memoize them per sorted choice.
  std::map<Index, Matrix> inner_cache;
  Matrix acc(sz, sz);
  for_each_permutation(total, [&](const Index& p, int sign) {
    Index chosen(p.begin(), p.begin() + n);
    Index sorted = chosen;
    int inner_sign = sort_with_parity(sorted);
    auto it = inner_cache.find(sorted);
    if (it == inner_cache.end()) {
      std::vector<Matrix> inner;
      for (int i : sorted) inner.push_back(mats[static_cast<std::size_t>(i)]);
      it = inner_cache.emplace(sorted, multibracket(inner)).first;
    }
    std::vector<Matrix> outer;
    outer.reserve(static_cast<std::size_t>(m));
    outer.push_back(inner_sign > 0 ? it->second : Scalar(-1) * it->second);
    for (int i = n; i < total; ++i)
      outer.push_back(mats[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])]);
    Matrix term = multibracket(outer);
    if (sign > 0)
      acc += term;
    else
      acc -= term;
  });
  return acc;
}

struct OddGjiReport {
  int order = 0;            // the bracket order n
  Rational factor;          // n!(n-1)!n for odd n, 0 for even n
  bool even_case_zero = false; // even n: the sum vanished identically
  bool proportional = false;   // odd n: sum == factor * [A_1,...,A_{2n-1}]
};

/// Witnesses the parity dichotomy of the generalized Jacobi sum: for even
/// bracket order the signed S_{2n-1} sum of nested brackets is the exact zero
/// matrix, for odd order it equals n!(n-1)!n times the order-(2n-1)
/// multibracket of all arguments.  Both statements are verified exactly.
inline OddGjiReport odd_gji_witness(const std::vector<Matrix>& mats, int n) {
  if (n < 2 || mats.size() != static_cast<std::size_t>(2 * n - 1))
    throw CheckFailure("shape", "odd_gji_witness: need 2n-1 arguments, n >= 2");
  if (2 * n - 1 > 8)
    throw CheckFailure("resource-guard", "odd_gji_witness: order guard 2n-1 <= 8");
  OddGjiReport rep;
  rep.order = n;
  Matrix lhs = gji_sum_transversal(mats, n, n);
  if (n % 2 == 0) {
    rep.factor = Rational(0);
    rep.even_case_zero = lhs.is_zero();
    rep.proportional = rep.even_case_zero;
  } else {
    rep.factor = factorial(static_cast<unsigned>(n)) *
                 factorial(static_cast<unsigned>(n - 1)) * n;
    Matrix rhs = Scalar(rep.factor) * multibracket(mats);
    rhs -= lhs;
    rep.proportional = rhs.is_zero();
  }
  return rep;
}

/// An even-order generalized Lie algebra extracted from matrix multibrackets:
/// [X_{i_1},...,X_{i_n}] = W_{i_1...i_n}{}^s X_s with the structure tensor
/// stored fully lowered by the Killing form.
struct MultiBracketAlgebra {
  std::string algebra;
  int order = 0;
  AltTensor structure; // degree order+1, all indices down
};

/// Decomposes every order-n multibracket of basis generators over the span
/// {X_i} + {identity} using the trace form.  The identity coefficient must
/// vanish exactly and the remainder must lie in the span; the lowered
/// coefficient tensor must be fully antisymmetric.  Any violation throws with
/// a witness, since each would falsify the construction.  When n+1 exceeds
/// dim(g) there are no admissible index tuples and the structure is zero.
inline MultiBracketAlgebra extract_structure(const LieAlgebra& g, int order) {
  const int n = g.dim();
  if (order < 2 || order % 2 != 0)
    throw CheckFailure("degree-range",
                       "extract_structure: order must be even and >= 2");
  const auto& gens = g.generators();
  if (gens.empty())
    throw CheckFailure("abstract-algebra",
                       g.name() + ": no matrix generators to multiply");
  const Matrix& B = g.killing_form();
  g.killing_inverse(); // the lowered tensor is faithful only for invertible B

  MultiBracketAlgebra out;
  out.algebra = g.name();
  out.order = order;
  out.structure = AltTensor(order + 1, n);
  if (order + 1 > n) return out; // no strictly increasing tuples exist

  // Gram matrix of {X_1,...,X_n, 1} under the trace form, inverted once.
  const int msz = gens[0].rows();
  Matrix gram(n + 1, n + 1);
  auto tr2 = [&](const Matrix& a, const Matrix& b) {
    Scalar t;
    for (int r = 0; r < a.rows(); ++r)
      for (int c = 0; c < a.cols(); ++c) t += a.at(r, c) * b.at(c, r);
    return t;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Scalar t = tr2(gens[static_cast<std::size_t>(i)], gens[static_cast<std::size_t>(j)]);
      gram.at(i, j) = t;
      gram.at(j, i) = t;
    }
    Scalar t = gens[static_cast<std::size_t>(i)].trace();
    gram.at(i, n) = t;
    gram.at(n, i) = t;
  }
  gram.at(n, n) = Scalar(msz);
  Matrix gram_inv(0, 0);
  try {
    gram_inv = gram.inverse();
  } catch (const std::domain_error&) {
    throw CheckFailure("trace-degenerate",
                       g.name() + ": trace form plus identity has a singular Gram matrix");
  }

  std::vector<Index> tuples;
  for_each_combination(n, order, [&](const Index& I) { tuples.push_back(I); });
  std::vector<std::vector<Scalar>> mixed(tuples.size(),
                                         std::vector<Scalar>(static_cast<std::size_t>(n)));
  std::vector<std::exception_ptr> failed(tuples.size());

  parallel_for(tuples.size(), [&](std::size_t t) {
    try {
    const Index& I = tuples[t];
    std::vector<Matrix> args;
    args.reserve(static_cast<std::size_t>(order));
    for (int i : I) args.push_back(gens[static_cast<std::size_t>(i)]);
    Matrix M = multibracket(args);
    std::vector<Scalar> rhs(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j < n; ++j) rhs[static_cast<std::size_t>(j)] = tr2(M, gens[static_cast<std::size_t>(j)]);
    rhs[static_cast<std::size_t>(n)] = M.trace();
    std::vector<Scalar> coeff(static_cast<std::size_t>(n) + 1);
    for (int r = 0; r <= n; ++r) {
      Scalar v;
      for (int c = 0; c <= n; ++c) {
        const Scalar& gv = gram_inv.at(r, c);
        if (!gv.is_zero() && !rhs[static_cast<std::size_t>(c)].is_zero())
          v += gv * rhs[static_cast<std::size_t>(c)];
      }
      coeff[static_cast<std::size_t>(r)] = std::move(v);
    }
    if (!coeff[static_cast<std::size_t>(n)].is_zero())
      throw CheckFailure("identity-component",
                         g.name() + ": multibracket has a nonzero identity part",
                         index_to_string(I));
    Matrix resid = M;
    for (int j = 0; j < n; ++j)
      if (!coeff[static_cast<std::size_t>(j)].is_zero())
        resid -= coeff[static_cast<std::size_t>(j)] * gens[static_cast<std::size_t>(j)];
    if (!resid.is_zero())
      throw CheckFailure("off-span",
                         g.name() + ": multibracket leaves span{X_i, identity}",
                         index_to_string(I));
    coeff.pop_back();
    mixed[t] = std::move(coeff);
    } catch (...) {
      failed[t] = std::current_exception();
    }
  });
  for (const auto& err : failed)
    if (err) std::rethrow_exception(err);

  // Lower the free index and assemble the candidate alternating tensor from
  // tuples whose lowered index exceeds the rest; then verify every slice.
  std::map<Index, std::vector<Scalar>> lowered;
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    std::vector<Scalar> low(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
      Scalar v;
      for (int tau = 0; tau < n; ++tau) {
        const Scalar& bv = B.at(tau, s);
        if (!bv.is_zero() && !mixed[t][static_cast<std::size_t>(tau)].is_zero())
          v += mixed[t][static_cast<std::size_t>(tau)] * bv;
      }
      low[static_cast<std::size_t>(s)] = std::move(v);
    }
    lowered.emplace(tuples[t], std::move(low));
  }
  for_each_combination(n, order + 1, [&](const Index& K) {
    Index head(K.begin(), K.end() - 1);
    Scalar v = lowered.at(head)[static_cast<std::size_t>(K.back())];
    if (!v.is_zero()) out.structure.set(K, v);
  });
  Index probe(static_cast<std::size_t>(order) + 1);
  for (const auto& [I, low] : lowered)
    for (int s = 0; s < n; ++s) {
      std::copy(I.begin(), I.end(), probe.begin());
      probe.back() = s;
      if (!(out.structure.component(probe) == low[static_cast<std::size_t>(s)]))
        throw CheckFailure("not-antisymmetric",
                           g.name() + ": lowered multibracket coefficients are "
                                      "not fully antisymmetric",
                           index_to_string(probe));
    }
  return out;
}

/// Exact ratio between the extracted structure tensor of order n = 2m-2 and
/// the degree-(2m-1) cocycle built from the order-m symmetrized trace.  The
/// two must agree up to one global rational scalar; any componentwise
/// disagreement throws.
inline Scalar structure_cocycle_ratio(const LieAlgebra& g,
                                      const MultiBracketAlgebra& mba) {
  const int m = mba.order / 2 + 1;
  AltTensor omega = cocycle_from_polynomial(g, symmetrized_trace(g, m));
  if (omega.is_zero()) {
    if (mba.structure.is_zero()) return Scalar(0);
    throw CheckFailure("not-proportional",
                       g.name() + ": zero cocycle against nonzero structure");
  }
  const auto& first = *omega.entries().begin();
  Scalar ratio = mba.structure.component(first.first) / first.second;
  for (const auto& [idx, v] : omega.entries())
    if (!(mba.structure.component(idx) == ratio * v))
      throw CheckFailure("not-proportional",
                         g.name() + ": structure and cocycle are not proportional",
                         index_to_string(idx));
  for (const auto& [idx, v] : mba.structure.entries())
    if (!(v == ratio * omega.component(idx)))
      throw CheckFailure("not-proportional",
                         g.name() + ": structure has support off the cocycle",
                         index_to_string(idx));
  return ratio;
}

struct GjiReport {
  bool zero = true;
  Cochain residual; // residual.comp[rho] is the alternating part over i_1..i_{n+m-1}
  Index witness;    // (i_1,...,i_{n+m-1}, rho) of the first nonzero component
};

/// Generalized Jacobi contraction of two lowered structure tensors a (order
/// n = deg a - 1) and b (order m = deg b - 1):
///
///   R_{i_1..i_{n+m-1} rho} =
///     eps^{j...}_{i...} (B^{st} a_{j_1..j_n t}) b_{s j_{n+1}..j_{n+m-1} rho}
///
/// evaluated blockwise (the unit-weight antisymmetrizer over an n-form and an
/// (m-1)-form is n!(m-1)! times their exterior product), with B^{st} the
/// inverse Killing form of g.  Exact zero verdict iff every component is zero.
inline GjiReport gji_check(const LieAlgebra& g, const AltTensor& a,
                           const AltTensor& b) {
  const int dim = g.dim();
  if (a.dim() != dim || b.dim() != dim)
    throw CheckFailure("shape", "gji_check: tensor dimension mismatch");
  const int n = a.degree() - 1;
  const int m = b.degree() - 1;
  if (n < 1 || m < 1)
    throw CheckFailure("shape", "gji_check: tensors must have degree >= 2");
  const Matrix Binv = g.killing_inverse();

  // A^s = a with its last index raised; sliced by the raised value.
  std::vector<AltTensor> A(static_cast<std::size_t>(dim), AltTensor(n, dim));
  for (const auto& [T, v] : a.entries())
    for (std::size_t p = 0; p < T.size(); ++p) {
      Index J;
      J.reserve(T.size() - 1);
      for (std::size_t q = 0; q < T.size(); ++q)
        if (q != p) J.push_back(T[q]);
      const int tau = T[p];
      const bool flip = (T.size() - 1 - p) % 2 != 0;
      for (int s = 0; s < dim; ++s) {
        const Scalar& bv = Binv.at(s, tau);
        if (bv.is_zero()) continue;
        A[static_cast<std::size_t>(s)].add(J, flip ? -(bv * v) : bv * v);
      }
    }

  // b sliced by (first index = s, last index = rho).
  std::vector<std::vector<AltTensor>> S(
      static_cast<std::size_t>(dim),
      std::vector<AltTensor>(static_cast<std::size_t>(dim), AltTensor(m - 1, dim)));
  for (const auto& [U, v] : b.entries()) {
    (void)v;
    for (std::size_t x = 0; x < U.size(); ++x)
      for (std::size_t y = 0; y < U.size(); ++y) {
        if (x == y) continue;
        Index arr;
        arr.reserve(U.size());
        arr.push_back(U[x]);
        for (std::size_t q = 0; q < U.size(); ++q)
          if (q != x && q != y) arr.push_back(U[q]);
        arr.push_back(U[y]);
        Scalar val = b.component(arr);
        if (val.is_zero()) continue;
        Index mid(arr.begin() + 1, arr.end() - 1);
        S[static_cast<std::size_t>(U[x])][static_cast<std::size_t>(U[y])].set(mid, val);
      }
  }

  const Scalar weight{factorial(static_cast<unsigned>(n)) *
                      factorial(static_cast<unsigned>(m - 1))};
  GjiReport rep;
  rep.residual = Cochain(n + m - 1, dim, dim);
  std::vector<Cochain> partial(static_cast<std::size_t>(dim),
                               Cochain(n + m - 1, dim, dim));
  parallel_for(static_cast<std::size_t>(dim), [&](std::size_t s) {
    if (A[s].is_zero()) return;
    for (int rho = 0; rho < dim; ++rho) {
      const AltTensor& slice = S[s][static_cast<std::size_t>(rho)];
      if (slice.is_zero()) continue;
      AltTensor w = wedge(A[s], slice);
      for (const auto& [idx, v] : w.entries())
        partial[s].comp[static_cast<std::size_t>(rho)].add(idx, weight * v);
    }
  });
  for (const auto& part : partial)
    for (int rho = 0; rho < dim; ++rho)
      for (const auto& [idx, v] : part.comp[static_cast<std::size_t>(rho)].entries())
        rep.residual.comp[static_cast<std::size_t>(rho)].add(idx, v);

  for (int rho = 0; rho < dim && rep.zero; ++rho) {
    const auto& t = rep.residual.comp[static_cast<std::size_t>(rho)];
    if (t.is_zero()) continue;
    rep.zero = false;
    rep.witness = t.entries().begin()->first;
    rep.witness.push_back(rho);
  }
  return rep;
}

/// Unit-weight antisymmetrization of the free index of a residual family:
/// A_{k_1..k_{q+1}} = sum_p (-1)^{q-p} R^{(k_p)}_{k_1..^p..k_{q+1}}.  Applied
/// to a generalized-Jacobi residual this produces the derived cocycle-type
/// contraction; it vanishes whenever the residual itself does.
inline AltTensor antisymmetrize_free_index(const Cochain& r) {
  const int q = r.degree;
  AltTensor out(q + 1, r.dim());
  for_each_combination(r.dim(), q + 1, [&](const Index& K) {
    Scalar val;
    Index sub(static_cast<std::size_t>(q));
    for (int p = 0; p <= q; ++p) {
      for (int t = 0, d = 0; t <= q; ++t)
        if (t != p) sub[static_cast<std::size_t>(d++)] = K[static_cast<std::size_t>(t)];
      Scalar c = r.comp[static_cast<std::size_t>(K[static_cast<std::size_t>(p)])].component(sub);
      if (c.is_zero()) continue;
      val += ((q - p) % 2 == 0) ? c : -c;
    }
    if (!val.is_zero()) out.set(K, val);
  });
  return out;
}

struct ShReport {
  bool zero = true;
  Cochain residual; // degree n over V, one component per output direction
  Index witness;    // (i_1..i_n, b) of the first nonzero component
};

/// Evaluates the strong-homotopy identity of arity n for a collection of
/// skew maps l_k : V^k -> V (each given as a Cochain: component tensors per
/// output direction, degree = arity):
///
///   sum_{i+j=n+1} (-1)^{i(j-1)} sum_{unshuffles} sign *
///       l_i(l_j(v_{first j}) (x) v_{rest})
///
/// on every canonical basis tuple; the total is alternating, so basis tuples
/// are spanning.  A single even map reproduces the generalized Jacobi
/// contraction.
inline ShReport sh_identity_check(const std::vector<Cochain>& maps, int n) {
  if (maps.empty())
    throw CheckFailure("shape", "sh_identity_check: no maps given");
  const int dim = maps[0].dim();
  if (dim > 8)
    throw CheckFailure("resource-guard", "sh_identity_check: dim V guard is 8");
  if (n < 1)
    throw CheckFailure("shape", "sh_identity_check: arity must be positive");
  std::map<int, const Cochain*> by_arity;
  for (const auto& mp : maps) {
    if (mp.dim() != dim || mp.vdim != dim)
      throw CheckFailure("shape",
                         "sh_identity_check: maps must be endomorphism-valued "
                         "over one space");
    if (!by_arity.emplace(mp.degree, &mp).second)
      throw CheckFailure("shape", "sh_identity_check: duplicate arity " +
                                      std::to_string(mp.degree));
  }

  ShReport rep;
  rep.residual = Cochain(n, dim, dim);
  for_each_combination(dim, n, [&](const Index& K) {
    std::vector<Scalar> acc(static_cast<std::size_t>(dim));
    for (int j = 1; j <= n; ++j) {
      const int i = n + 1 - j;
      auto jt = by_arity.find(j);
      auto it = by_arity.find(i);
      if (jt == by_arity.end() || it == by_arity.end()) continue;
      const Cochain& lj = *jt->second;
      const Cochain& li = *it->second;
      const bool phase_neg = (i * (j - 1)) % 2 != 0;
      for_each_split(K, j, [&](const Index& first, const Index& rest, int sign) {
        Index arg(static_cast<std::size_t>(i));
        std::copy(rest.begin(), rest.end(), arg.begin() + 1);
        for (int a = 0; a < dim; ++a) {
          Scalar va = lj.comp[static_cast<std::size_t>(a)].component(first);
          if (va.is_zero()) continue;
          if (sign < 0) va = -va;
          if (phase_neg) va = -va;
          arg[0] = a;
          for (int b = 0; b < dim; ++b) {
            Scalar c = li.comp[static_cast<std::size_t>(b)].component(arg);
            if (!c.is_zero()) acc[static_cast<std::size_t>(b)] += va * c;
          }
        }
      });
    }
    for (int b = 0; b < dim; ++b)
      if (!acc[static_cast<std::size_t>(b)].is_zero())
        rep.residual.comp[static_cast<std::size_t>(b)].set(K, acc[static_cast<std::size_t>(b)]);
  });
  for (int b = 0; b < dim && rep.zero; ++b) {
    const auto& t = rep.residual.comp[static_cast<std::size_t>(b)];
    if (t.is_zero()) continue;
    rep.zero = false;
    rep.witness = t.entries().begin()->first;
    rep.witness.push_back(b);
  }
  return rep;
}

} // namespace liecoh
