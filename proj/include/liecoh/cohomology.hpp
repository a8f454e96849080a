#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "liecoh/alt_tensor.hpp"
#include "liecoh/error.hpp"
#include "liecoh/invariants.hpp"
#include "liecoh/lie_algebra.hpp"
#include "liecoh/matrix.hpp"
#include "liecoh/multi_index.hpp"
#include "liecoh/tensor_ops.hpp"

namespace liecoh {

/// Degree-q cochain on a Lie algebra with values in a vdim-dimensional
/// coefficient space: one alternating tensor per coefficient direction.
struct Cochain {
  int degree = 0;
  int vdim = 1;
  std::vector<AltTensor> comp;

  Cochain() = default;
  Cochain(int degree_, int dim_, int vdim_)
      : degree(degree_), vdim(vdim_), comp() {
    if (vdim_ <= 0) throw std::invalid_argument("Cochain: vdim must be positive");
    comp.assign(static_cast<std::size_t>(vdim_), AltTensor(degree_, dim_));
  }

  /// Wraps a plain alternating form as a trivial-coefficient cochain.
  static Cochain from_form(const AltTensor& w) {
    Cochain c(w.degree(), w.dim(), 1);
    c.comp[0] = w;
    return c;
  }

  int dim() const { return comp.empty() ? 0 : comp[0].dim(); }

  bool is_zero() const {
    for (const auto& t : comp)
      if (!t.is_zero()) return false;
    return true;
  }

  friend bool operator==(const Cochain& a, const Cochain& b) {
    return a.degree == b.degree && a.vdim == b.vdim && a.comp == b.comp;
  }
};

/// Chevalley-Eilenberg coboundary of a degree-q cochain, q < dim(g):
///
///   (s w)^A_{i_1..i_{q+1}} =
///       sum_r (-1)^{r+1} rho(X_{i_r})^A_B w^B_{.. no i_r ..}
///     + sum_{r<t} (-1)^{r+t} C_{i_r i_t}^k w^A_{k, .. no i_r, i_t ..}
///
/// The coefficient term vanishes identically for the trivial representation.
inline Cochain coboundary(const LieAlgebra& g, const Representation& rho,
                          const Cochain& w) {
  const int n = g.dim();
  if (w.dim() != n)
    throw CheckFailure("shape", "coboundary: cochain is over dimension " +
                                    std::to_string(w.dim()) + ", algebra has " +
                                    std::to_string(n));
  if (w.vdim != rho.vdim)
    throw CheckFailure("shape", "coboundary: cochain values have dimension " +
                                    std::to_string(w.vdim) +
                                    ", representation acts on dimension " +
                                    std::to_string(rho.vdim));
  if (w.degree >= n)
    throw CheckFailure("degree-range",
                       "coboundary: degree " + std::to_string(w.degree) +
                           " is not below dim " + std::to_string(n));

  const int q = w.degree;
  Cochain out(q + 1, n, w.vdim);
  const bool use_rho = !rho.is_trivial();

  for_each_combination(n, q + 1, [&](const Index& K) {
    Index sub(static_cast<std::size_t>(q));
    for (int A = 0; A < w.vdim; ++A) {
      Scalar val;
      if (use_rho) {
        for (int p = 0; p < q + 1; ++p) {
          for (int s = 0, d = 0; s < q + 1; ++s)
            if (s != p) sub[static_cast<std::size_t>(d++)] = K[static_cast<std::size_t>(s)];
          const Matrix& R = rho.rho[static_cast<std::size_t>(K[static_cast<std::size_t>(p)])];
          Scalar term;
          for (int B = 0; B < w.vdim; ++B) {
            const Scalar& rab = R.at(A, B);
            if (rab.is_zero()) continue;
            Scalar c = w.comp[static_cast<std::size_t>(B)].component(sub);
            if (!c.is_zero()) term += rab * c;
          }
          if (!term.is_zero()) val += (p % 2 == 0) ? term : -term;
        }
      }
      Index shifted(static_cast<std::size_t>(q));
      for (int p = 0; p < q + 1; ++p)
        for (int t = p + 1; t < q + 1; ++t) {
          const auto& br = g.bracket_coeffs(K[static_cast<std::size_t>(p)],
                                            K[static_cast<std::size_t>(t)]);
          if (br.empty()) continue;
          Scalar term;
          for (const auto& [k, cv] : br) {
            shifted[0] = k;
            for (int s = 0, d = 1; s < q + 1; ++s)
              if (s != p && s != t)
                shifted[static_cast<std::size_t>(d++)] = K[static_cast<std::size_t>(s)];
            Scalar c = w.comp[static_cast<std::size_t>(A)].component(shifted);
            if (!c.is_zero()) term += cv * c;
          }
          if (!term.is_zero()) val += ((p + t) % 2 == 0) ? term : -term;
        }
      if (!val.is_zero()) out.comp[static_cast<std::size_t>(A)].set(K, val);
    }
  });
  return out;
}

/// Coboundary of a plain alternating form with trivial coefficients.
inline AltTensor coboundary(const LieAlgebra& g, const AltTensor& w) {
  return coboundary(g, Representation::trivial(g), Cochain::from_form(w)).comp[0];
}

/// Quadratic Casimir of a representation: B^{ij} rho(X_i) rho(X_j) with B the
/// inverse Killing form.  For an irreducible representation this is a scalar
/// matrix; the scalar drives the contracting-homotopy identity below.
inline Matrix casimir_operator(const LieAlgebra& g, const Representation& rho) {
  const Matrix Binv = g.killing_inverse();
  Matrix out(rho.vdim, rho.vdim);
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j) {
      const Scalar& bij = Binv.at(i, j);
      if (bij.is_zero()) continue;
      out += bij * (rho.rho[static_cast<std::size_t>(i)] *
                    rho.rho[static_cast<std::size_t>(j)]);
    }
  return out;
}

struct CohomologyOptions {
  bool allow_modular = false;
  // Exact ranks are computed while the coboundary matrix stays within these
  // bounds; beyond them the rank is taken modulo a random word-sized prime,
  // which is fast but probabilistic, and requires allow_modular.
  std::size_t max_exact_columns = 10000;
  std::size_t max_exact_entries = 2000000;
  std::size_t max_modular_entries = 100000000;
  std::uint64_t modular_seed = 0x51ec0de;
};

struct DegreeRow {
  int degree = 0;
  std::int64_t cochain_dim = 0;
  std::int64_t rank_s = 0;       // rank of the coboundary leaving this degree
  std::int64_t cocycles = 0;     // dim ker s_q
  std::int64_t coboundaries = 0; // dim im s_{q-1}
  std::int64_t betti = 0;        // cocycles - coboundaries
  std::string method = "exact";  // "exact" or "modular (probabilistic)"
};

struct CohomologyReport {
  std::string algebra;
  std::string coefficients;
  std::vector<DegreeRow> rows;

  std::vector<std::int64_t> betti() const {
    std::vector<std::int64_t> b;
    b.reserve(rows.size());
    for (const auto& r : rows) b.push_back(r.betti);
    return b;
  }

  bool used_modular() const {
    for (const auto& r : rows)
      if (r.method != "exact") return true;
    return false;
  }
};

namespace detail {

/// Canonical strictly-increasing q-tuples over {0..n-1}, in lexicographic
/// order, together with their ordinals.  This fixes the basis layout of every
/// cochain-space matrix: column = tuple_ordinal * vdim + coefficient_index.
struct TupleBasis {
  std::vector<Index> tuples;
  std::map<Index, int> ordinal;

  TupleBasis(int n, int q) {
    if (q < 0 || q > n) return;
    for_each_combination(n, q, [&](const Index& K) {
      ordinal.emplace(K, static_cast<int>(tuples.size()));
      tuples.push_back(K);
    });
  }

  std::size_t size() const { return tuples.size(); }
};

/// Sparse columns of the coboundary matrix s_q : C^q -> C^{q+1}.
inline std::vector<std::vector<std::pair<int, Scalar>>> coboundary_columns(
    const LieAlgebra& g, const Representation& rho, int q,
    const TupleBasis& dom, const TupleBasis& cod) {
  const int vdim = rho.vdim;
  std::vector<std::vector<std::pair<int, Scalar>>> cols(dom.size() *
                                                        static_cast<std::size_t>(vdim));
  for (std::size_t t = 0; t < dom.size(); ++t)
    for (int A = 0; A < vdim; ++A) {
      Cochain basis(q, g.dim(), vdim);
      basis.comp[static_cast<std::size_t>(A)].set(dom.tuples[t], Scalar(1));
      Cochain img = coboundary(g, rho, basis);
      auto& col = cols[t * static_cast<std::size_t>(vdim) + static_cast<std::size_t>(A)];
      for (int B = 0; B < vdim; ++B)
        for (const auto& [K, v] : img.comp[static_cast<std::size_t>(B)].entries()) {
          int row = cod.ordinal.at(K) * vdim + B;
          col.emplace_back(row, v);
        }
      std::sort(col.begin(), col.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
    }
  return cols;
}

/// Rank of a sparse-column matrix, exact when within the option bounds and
/// modulo a random prime beyond them.  Returns {rank, method}.
inline std::pair<std::int64_t, std::string> sparse_rank(
    const std::vector<std::vector<std::pair<int, Scalar>>>& cols,
    std::size_t rows, const CohomologyOptions& opts, std::uint64_t seed_salt) {
  const std::size_t ncols = cols.size();
  if (rows == 0 || ncols == 0) return {0, "exact"};
  const std::size_t entries = rows * ncols;
  if (ncols <= opts.max_exact_columns && entries <= opts.max_exact_entries) {
    Matrix m(static_cast<int>(rows), static_cast<int>(ncols));
    for (std::size_t c = 0; c < ncols; ++c)
      for (const auto& [r, v] : cols[c]) m.at(r, static_cast<int>(c)) = v;
    return {m.rank(), "exact"};
  }
  if (!opts.allow_modular)
    throw CheckFailure("resource-guard",
                       "rank of a " + std::to_string(rows) + " x " +
                           std::to_string(ncols) +
                           " matrix exceeds the exact-arithmetic bound; enable "
                           "the modular fallback to proceed probabilistically");
  if (entries > opts.max_modular_entries)
    throw CheckFailure("resource-guard",
                       "matrix with " + std::to_string(entries) +
                           " entries exceeds the modular bound");
  std::uint64_t seed = opts.modular_seed + seed_salt;
  for (;;) {
    const std::uint64_t p = modular::random_prime(seed);
    const std::uint64_t iu = modular::imaginary_unit(p);
    try {
      std::vector<std::vector<std::uint64_t>> m(
          rows, std::vector<std::uint64_t>(ncols, 0));
      for (std::size_t c = 0; c < ncols; ++c)
        for (const auto& [r, v] : cols[c])
          m[static_cast<std::size_t>(r)][c] = modular::residue(v, p, iu);
      return {modular::rank(m, p), "modular (probabilistic)"};
    } catch (const std::domain_error&) {
      seed += 1000000007ull; // denominator hit the prime; redraw
    }
  }
}

} // namespace detail

/// Full cohomology table of g with coefficients in rho for degrees
/// 0..max_degree: cochain dimensions, coboundary ranks, cocycle/coboundary
/// counts and their difference per degree.  Ranks are exact unless the matrix
/// outgrows the option bounds, in which case (with permission) they are
/// computed modulo a random prime and flagged per degree.
inline CohomologyReport cohomology(const LieAlgebra& g, const Representation& rho,
                                   int max_degree,
                                   const CohomologyOptions& opts = {}) {
  if (max_degree < 0)
    throw CheckFailure("degree-range", "cohomology: negative max degree");
  rho.verify(g);
  const int n = g.dim();

  CohomologyReport rep;
  rep.algebra = g.name();
  rep.coefficients = rho.kind;

  std::vector<detail::TupleBasis> bases;
  bases.reserve(static_cast<std::size_t>(max_degree) + 2);
  for (int q = 0; q <= max_degree + 1; ++q) bases.emplace_back(n, q);

  std::vector<std::int64_t> rank(static_cast<std::size_t>(max_degree) + 1, 0);
  std::vector<std::string> method(static_cast<std::size_t>(max_degree) + 1, "exact");
  for (int q = 0; q <= max_degree; ++q) {
    const std::size_t dom = bases[static_cast<std::size_t>(q)].size() *
                            static_cast<std::size_t>(rho.vdim);
    const std::size_t cod = bases[static_cast<std::size_t>(q) + 1].size() *
                            static_cast<std::size_t>(rho.vdim);
    if (dom == 0 || cod == 0 || q >= n) continue;
    auto cols = detail::coboundary_columns(g, rho, q, bases[static_cast<std::size_t>(q)],
                                           bases[static_cast<std::size_t>(q) + 1]);
    auto [r, how] = detail::sparse_rank(cols, cod, opts, static_cast<std::uint64_t>(q));
    rank[static_cast<std::size_t>(q)] = r;
    method[static_cast<std::size_t>(q)] = how;
  }

  for (int q = 0; q <= max_degree; ++q) {
    DegreeRow row;
    row.degree = q;
    row.cochain_dim = static_cast<std::int64_t>(bases[static_cast<std::size_t>(q)].size()) *
                      rho.vdim;
    row.rank_s = rank[static_cast<std::size_t>(q)];
    row.cocycles = row.cochain_dim - row.rank_s;
    row.coboundaries = q > 0 ? rank[static_cast<std::size_t>(q) - 1] : 0;
    row.betti = row.cocycles - row.coboundaries;
    row.method = method[static_cast<std::size_t>(q)];
    if (q > 0 && method[static_cast<std::size_t>(q) - 1] != "exact")
      row.method = method[static_cast<std::size_t>(q) - 1];
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

struct WhiteheadReport {
  bool holds = false;          // (s tau + tau s) w == casimir * w on every basis cochain
  bool scalar_casimir = false; // the Casimir operator is a scalar matrix
  Scalar casimir;              // its eigenvalue
};

/// Contracting homotopy tau against a nontrivial representation:
///   (tau w)^A_{i_1..i_{q-1}} = B^{jk} rho(X_j)^A_B w^B_{k, i_1..i_{q-1}}
/// with B the inverse Killing form.
inline Cochain homotopy_contraction(const LieAlgebra& g, const Representation& rho,
                                    const Cochain& w) {
  const int n = g.dim();
  if (w.dim() != n || w.vdim != rho.vdim)
    throw CheckFailure("shape", "homotopy_contraction: shape mismatch");
  if (w.degree == 0)
    throw CheckFailure("degree-range", "homotopy_contraction: degree-0 cochain");
  const Matrix Binv = g.killing_inverse();
  Cochain out(w.degree - 1, n, w.vdim);
  for_each_combination(n, w.degree - 1, [&](const Index& J) {
    Index full(static_cast<std::size_t>(w.degree));
    std::copy(J.begin(), J.end(), full.begin() + 1);
    for (int A = 0; A < w.vdim; ++A) {
      Scalar val;
      for (int j = 0; j < n; ++j) {
        const Matrix& R = rho.rho[static_cast<std::size_t>(j)];
        for (int k = 0; k < n; ++k) {
          const Scalar& bjk = Binv.at(j, k);
          if (bjk.is_zero()) continue;
          full[0] = k;
          for (int B = 0; B < w.vdim; ++B) {
            const Scalar& rab = R.at(A, B);
            if (rab.is_zero()) continue;
            Scalar c = w.comp[static_cast<std::size_t>(B)].component(full);
            if (!c.is_zero()) val += bjk * rab * c;
          }
        }
      }
      if (!val.is_zero()) out.comp[static_cast<std::size_t>(A)].set(J, val);
    }
  });
  return out;
}

/// Verifies the homotopy identity (s tau + tau s) w = I2(rho) w on every basis
/// cochain of the given degree, where I2(rho) is the quadratic Casimir scalar.
/// A nontrivial representation is required: with trivial coefficients the
/// Casimir vanishes and no contracting homotopy exists.
inline WhiteheadReport whitehead_homotopy_check(const LieAlgebra& g,
                                                const Representation& rho,
                                                int degree) {
  if (rho.is_trivial())
    throw CheckFailure("trivial-coefficients",
                       "whitehead_homotopy_check: the Casimir of the trivial "
                       "representation vanishes; no contracting homotopy");
  const int n = g.dim();
  if (degree < 0 || degree > n)
    throw CheckFailure("degree-range", "whitehead_homotopy_check: degree " +
                                           std::to_string(degree) +
                                           " outside 0.." + std::to_string(n));
  rho.verify(g);

  WhiteheadReport rep;
  const Matrix cas = casimir_operator(g, rho);
  rep.casimir = cas.at(0, 0);
  Matrix dev = cas;
  for (int i = 0; i < rho.vdim; ++i) dev.at(i, i) -= rep.casimir;
  rep.scalar_casimir = dev.is_zero() && !rep.casimir.is_zero();
  if (!rep.scalar_casimir) return rep;

  rep.holds = true;
  for_each_combination(n, degree, [&](const Index& J) {
    for (int A = 0; A < rho.vdim && rep.holds; ++A) {
      Cochain w(degree, n, rho.vdim);
      w.comp[static_cast<std::size_t>(A)].set(J, Scalar(1));
      Cochain lhs(degree, n, rho.vdim);
      if (degree > 0) {
        Cochain tw = homotopy_contraction(g, rho, w);
        lhs = coboundary(g, rho, tw);
      }
      if (degree < n) {
        Cochain sw = coboundary(g, rho, w);
        Cochain tsw = homotopy_contraction(g, rho, sw);
        for (int B = 0; B < rho.vdim; ++B)
          for (const auto& [K, v] : tsw.comp[static_cast<std::size_t>(B)].entries())
            lhs.comp[static_cast<std::size_t>(B)].add(K, v);
      }
      Cochain rhs(degree, n, rho.vdim);
      rhs.comp[static_cast<std::size_t>(A)].set(J, rep.casimir);
      if (!(lhs == rhs)) rep.holds = false;
    }
  });
  return rep;
}

/// Odd cocycle attached to an order-m invariant symmetric polynomial k:
///
///   W_{r i_2..i_{2m-2} s} = k_{r l_1..l_{m-1}}
///       C^{l_1}_{j_2 j_3} ... C^{l_{m-2}}_{j_{2m-4} j_{2m-3}}
///       C^{l_{m-1}}_{j_{2m-2} s} eps^{j...}_{i...}
///
/// evaluated blockwise: the unit-weight antisymmetrizer over a product of
/// two-forms and a one-form equals 2^{m-2} times their exterior product.
/// The result is fully antisymmetric of degree 2m-1 and satisfies s W = 0;
/// both properties are verified exactly before returning.  Non-primitive
/// input polynomials produce the zero tensor.
inline AltTensor cocycle_from_polynomial(const LieAlgebra& g,
                                         const InvariantPolynomial& k) {
  const int n = g.dim();
  const int m = k.order;
  if (k.tensor.degree() != m || k.tensor.dim() != n)
    throw CheckFailure("shape", "cocycle_from_polynomial: polynomial shape mismatch");
  if (m < 2 || 2 * m - 1 > n)
    throw CheckFailure("degree-range",
                       "cocycle_from_polynomial: cocycle degree " +
                           std::to_string(2 * m - 1) + " outside 3.." +
                           std::to_string(n));
  {
    auto inv = check_invariance(g, k.tensor);
    if (!inv.invariant)
      throw CheckFailure("non-invariant",
                         "cocycle_from_polynomial: input polynomial is not "
                         "invariant under the coadjoint action");
  }

  // One-forms V^{t,s}_e = C^t_{e s} and the structure two-forms C^l.
  std::vector<std::vector<AltTensor>> V(
      static_cast<std::size_t>(n),
      std::vector<AltTensor>(static_cast<std::size_t>(n), AltTensor(1, n)));
  for (int e = 0; e < n; ++e)
    for (int s = 0; s < n; ++s) {
      if (e == s) continue;
      for (const auto& [t, v] : g.bracket_coeffs(e, s))
        V[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)].add(Index{e}, v);
    }

  // Partial sums S^{r,t} = sum over (m-2)-multisets L of
  //   arrangements(L) * k(r, L, t) * wedge of C^{l in L},
  // using that even-degree factors commute and k is symmetric.
  AltTensor unit0(0, n);
  unit0.set(Index{}, Scalar(1));
  std::vector<std::vector<AltTensor>> S(
      static_cast<std::size_t>(n),
      std::vector<AltTensor>(static_cast<std::size_t>(n),
                             AltTensor(2 * (m - 2), n)));
  for_each_multiset(n, m - 2, [&](const Index& L) {
    AltTensor W = unit0;
    for (int l : L) W = wedge(W, g.c_tensor(l));
    if (m > 2 && W.is_zero()) return;
    Rational arrangements = factorial(static_cast<unsigned>(m - 2));
    for (std::size_t i = 0; i < L.size();) {
      std::size_t j = i;
      while (j < L.size() && L[j] == L[i]) ++j;
      arrangements /= factorial(static_cast<unsigned>(j - i));
      i = j;
    }
    const Scalar weight{arrangements};
    Index key(static_cast<std::size_t>(m));
    std::copy(L.begin(), L.end(), key.begin() + 1);
    for (int r = 0; r < n; ++r) {
      key[0] = r;
      for (int t = 0; t < n; ++t) {
        key[static_cast<std::size_t>(m) - 1] = t;
        Index sorted = key;
        std::sort(sorted.begin(), sorted.end());
        Scalar kv = k.tensor.component(sorted);
        if (kv.is_zero()) continue;
        kv *= weight;
        auto& slot = S[static_cast<std::size_t>(r)][static_cast<std::size_t>(t)];
        for (const auto& [idx, v] : W.entries()) slot.add(idx, kv * v);
      }
    }
  });

  // Slices T^{r,s} over the middle indices, then assembly and verification.
  const Scalar block_factor = Scalar(1 << (m - 2));
  std::vector<std::vector<AltTensor>> T(
      static_cast<std::size_t>(n),
      std::vector<AltTensor>(static_cast<std::size_t>(n), AltTensor(2 * m - 3, n)));
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      AltTensor acc(2 * m - 3, n);
      for (int t = 0; t < n; ++t) {
        const AltTensor& St = S[static_cast<std::size_t>(r)][static_cast<std::size_t>(t)];
        const AltTensor& Vt = V[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)];
        if (St.is_zero() || Vt.is_zero()) continue;
        AltTensor piece = wedge(St, Vt);
        for (const auto& [idx, v] : piece.entries()) acc.add(idx, v);
      }
      for (const auto& [idx, v] : acc.entries())
        T[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)].add(idx,
                                                                        block_factor * v);
    }

  AltTensor omega(2 * m - 1, n);
  for_each_combination(n, 2 * m - 1, [&](const Index& K) {
    Index mid(K.begin() + 1, K.end() - 1);
    Scalar v = T[static_cast<std::size_t>(K.front())][static_cast<std::size_t>(K.back())]
                   .component(mid);
    if (!v.is_zero()) omega.set(K, v);
  });

  Index probe(static_cast<std::size_t>(2 * m - 1));
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      for (const auto& [mid, v] : T[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)]
                                      .entries()) {
        probe.front() = r;
        std::copy(mid.begin(), mid.end(), probe.begin() + 1);
        probe.back() = s;
        if (!(omega.component(probe) == v))
          throw CheckFailure("not-antisymmetric",
                             "cocycle_from_polynomial: slice assembly is not "
                             "fully antisymmetric",
                             index_to_string(probe));
      }

  if (2 * m - 1 < n) { // top-degree forms are closed for free
    AltTensor sw = coboundary(g, omega);
    if (!sw.is_zero())
      throw CheckFailure("not-a-cocycle",
                         "cocycle_from_polynomial: coboundary of the result is "
                         "nonzero",
                         index_to_string(sw.entries().begin()->first));
  }
  return omega;
}

/// Cohomology of g relative to the subalgebra spanned by the listed basis
/// indices, with trivial coefficients.  Relative cochains are horizontal
/// (vanish when any argument lies in the subalgebra) and invariant under its
/// adjoint action; the coboundary provably preserves that subcomplex, and this
/// is verified exactly on every basis element before ranks are taken.
inline CohomologyReport relative_cohomology(const LieAlgebra& g,
                                            std::vector<int> h,
                                            int max_degree,
                                            const CohomologyOptions& opts = {}) {
  const int n = g.dim();
  if (max_degree < 0)
    throw CheckFailure("degree-range", "relative_cohomology: negative max degree");
  std::sort(h.begin(), h.end());
  h.erase(std::unique(h.begin(), h.end()), h.end());
  for (int i : h)
    if (i < 0 || i >= n)
      throw CheckFailure("shape", "relative_cohomology: basis index " +
                                      std::to_string(i) + " out of range");
  std::vector<bool> in_h(static_cast<std::size_t>(n), false);
  for (int i : h) in_h[static_cast<std::size_t>(i)] = true;
  for (int a : h)
    for (int b : h) {
      if (a >= b) continue;
      for (const auto& [k, v] : g.bracket_coeffs(a, b))
        if (!in_h[static_cast<std::size_t>(k)])
          throw CheckFailure("not-subalgebra",
                             "relative_cohomology: bracket of basis elements " +
                                 std::to_string(a) + "," + std::to_string(b) +
                                 " leaves the span",
                             index_to_string(Index{a, b, k}));
    }

  std::vector<int> comp;
  for (int i = 0; i < n; ++i)
    if (!in_h[static_cast<std::size_t>(i)]) comp.push_back(i);
  const int cn = static_cast<int>(comp.size());

  // Horizontal q-cochains are spanned by tuples from the complement; the
  // invariance constraints cut out the relative subcomplex inside them.
  struct DegreeData {
    std::vector<Index> tuples;            // canonical tuples, complement indices
    std::map<Index, int> ordinal;
    std::vector<std::vector<Scalar>> basis; // relative basis vectors, coordinates
  };
  auto lie_derivative_row = [&](int l, const Index& K)
      -> std::map<Index, Scalar> {
    std::map<Index, Scalar> row; // coordinates of the constraint functional
    Index shifted = K;
    for (std::size_t r = 0; r < K.size(); ++r) {
      for (const auto& [s, v] : g.bracket_coeffs(l, K[r])) {
        if (in_h[static_cast<std::size_t>(s)]) continue; // horizontal component
        shifted = K;
        shifted[r] = s;
        Index sorted = shifted;
        int sign = sort_with_parity(sorted);
        if (sign == 0) continue;
        row[sorted] += sign > 0 ? v : -v;
      }
    }
    for (auto it = row.begin(); it != row.end();)
      it = it->second.is_zero() ? row.erase(it) : std::next(it);
    return row;
  };

  std::vector<DegreeData> data(static_cast<std::size_t>(max_degree) + 2);
  for (int q = 0; q <= max_degree + 1; ++q) {
    auto& d = data[static_cast<std::size_t>(q)];
    if (q > cn) continue;
    for_each_combination(cn, q, [&](const Index& P) {
      Index K(P.size());
      for (std::size_t i = 0; i < P.size(); ++i)
        K[i] = comp[static_cast<std::size_t>(P[i])];
      d.ordinal.emplace(K, static_cast<int>(d.tuples.size()));
      d.tuples.push_back(K);
    });
    const int cols = static_cast<int>(d.tuples.size());
    if (cols == 0) continue;
    std::vector<std::vector<Scalar>> rows;
    for (int l : h)
      for (const auto& K : d.tuples) {
        auto row = lie_derivative_row(l, K);
        if (row.empty()) continue;
        std::vector<Scalar> dense(static_cast<std::size_t>(cols));
        for (const auto& [idx, v] : row)
          dense[static_cast<std::size_t>(d.ordinal.at(idx))] = v;
        rows.push_back(std::move(dense));
      }
    if (rows.empty()) {
      d.basis.assign(static_cast<std::size_t>(cols), {});
      for (int c = 0; c < cols; ++c) {
        d.basis[static_cast<std::size_t>(c)]
            .assign(static_cast<std::size_t>(cols), Scalar());
        d.basis[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)] = Scalar(1);
      }
    } else {
      Matrix con(static_cast<int>(rows.size()), cols);
      for (int r = 0; r < static_cast<int>(rows.size()); ++r)
        for (int c = 0; c < cols; ++c)
          con.at(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      d.basis = con.nullspace();
    }
  }

  auto to_form = [&](const DegreeData& d, const std::vector<Scalar>& vec, int q) {
    AltTensor w(q, n);
    for (std::size_t i = 0; i < d.tuples.size(); ++i)
      if (!vec[i].is_zero()) w.set(d.tuples[i], vec[i]);
    return w;
  };

  CohomologyReport rep;
  rep.algebra = g.name();
  rep.coefficients = "trivial, relative";

  std::vector<std::int64_t> rank(static_cast<std::size_t>(max_degree) + 1, 0);
  for (int q = 0; q <= max_degree; ++q) {
    const auto& dom = data[static_cast<std::size_t>(q)];
    const auto& cod = data[static_cast<std::size_t>(q) + 1];
    if (dom.basis.empty() || q >= n) continue;
    std::vector<std::vector<std::pair<int, Scalar>>> cols;
    for (const auto& vec : dom.basis) {
      AltTensor sw = coboundary(g, to_form(dom, vec, q));
      std::vector<std::pair<int, Scalar>> col;
      for (const auto& [K, v] : sw.entries()) {
        bool horizontal = true;
        for (int idx : K)
          if (in_h[static_cast<std::size_t>(idx)]) horizontal = false;
        if (!horizontal)
          throw CheckFailure("not-preserved",
                             "relative_cohomology: coboundary left the "
                             "horizontal subspace",
                             index_to_string(K));
        col.emplace_back(cod.ordinal.at(K), v);
      }
      for (int l : h)
        for (const auto& K : cod.tuples) {
          auto row = lie_derivative_row(l, K);
          Scalar resid;
          for (const auto& [idx, v] : row) resid += v * sw.component(idx);
          if (!resid.is_zero())
            throw CheckFailure("not-preserved",
                               "relative_cohomology: coboundary broke the "
                               "invariance constraints",
                               index_to_string(K));
        }
      cols.push_back(std::move(col));
    }
    auto [r, how] =
        detail::sparse_rank(cols, cod.tuples.size(), opts, static_cast<std::uint64_t>(q));
    rank[static_cast<std::size_t>(q)] = r;
    (void)how;
  }

  for (int q = 0; q <= max_degree; ++q) {
    DegreeRow row;
    row.degree = q;
    row.cochain_dim = static_cast<std::int64_t>(data[static_cast<std::size_t>(q)].basis.size());
    row.rank_s = rank[static_cast<std::size_t>(q)];
    row.cocycles = row.cochain_dim - row.rank_s;
    row.coboundaries = q > 0 ? rank[static_cast<std::size_t>(q) - 1] : 0;
    row.betti = row.cocycles - row.coboundaries;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

} // namespace liecoh
