#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "liecoh/alt_tensor.hpp"
#include "liecoh/cohomology.hpp"
#include "liecoh/error.hpp"
#include "liecoh/lie_algebra.hpp"
#include "liecoh/matrix.hpp"
#include "liecoh/multi_index.hpp"
#include "liecoh/parallel.hpp"

namespace liecoh {

/// Element of the finite Grassmann algebra on `dim` odd generators, with
/// values in a vdim-dimensional coefficient space (vdim 1 = plain scalars).
/// Monomials are stored as strictly increasing generator subsets; the
/// anticommutation c^i c^j = -c^j c^i lives entirely in the canonicalization
/// parity.  The empty subset is the unit monomial.
struct GhostElement {
  int dim = 0;
  int vdim = 1;
  std::map<Index, std::vector<Scalar>> terms;

  GhostElement() = default;
  GhostElement(int dim_, int vdim_) : dim(dim_), vdim(vdim_) {
    if (dim_ < 0 || vdim_ <= 0)
      throw CheckFailure("shape", "GhostElement: bad dimensions");
  }

  static GhostElement monomial(int dim, Index subset, int vdim = 1,
                               int component = 0, Scalar value = Scalar(1)) {
    GhostElement e(dim, vdim);
    e.add_term(std::move(subset), component, std::move(value));
    return e;
  }

  /// Adds value * c^{subset} (x) e_component, canonicalizing the subset with
  /// its sorting parity; a repeated generator annihilates the term.
  void add_term(Index subset, int component, Scalar value) {
    if (component < 0 || component >= vdim)
      throw CheckFailure("shape", "GhostElement: component out of range");
    int sign = sort_with_parity(subset);
    if (sign == 0 || value.is_zero()) return;
    for (int i : subset)
      if (i < 0 || i >= dim)
        throw CheckFailure("shape", "GhostElement: generator index out of range");
    auto [it, fresh] = terms.try_emplace(std::move(subset),
                                         std::vector<Scalar>(static_cast<std::size_t>(vdim)));
    auto& vec = it->second;
    vec[static_cast<std::size_t>(component)] += (sign > 0) ? value : -value;
    if (!fresh) {
      for (const auto& v : vec)
        if (!v.is_zero()) return;
      terms.erase(it);
    } else if (vec[static_cast<std::size_t>(component)].is_zero()) {
      terms.erase(it);
    }
  }

  void add(const GhostElement& o) {
    if (o.dim != dim || o.vdim != vdim)
      throw CheckFailure("shape", "GhostElement: mixed shapes in addition");
    for (const auto& [I, vec] : o.terms) {
      auto [it, fresh] = terms.try_emplace(I, std::vector<Scalar>(static_cast<std::size_t>(vdim)));
      bool live = false;
      for (int a = 0; a < vdim; ++a) {
        it->second[static_cast<std::size_t>(a)] += vec[static_cast<std::size_t>(a)];
        live = live || !it->second[static_cast<std::size_t>(a)].is_zero();
      }
      if (!live) terms.erase(it);
    }
  }

  bool is_zero() const { return terms.empty(); }

  friend bool operator==(const GhostElement& a, const GhostElement& b) {
    return a.dim == b.dim && a.vdim == b.vdim && a.terms == b.terms;
  }
};

/// Grassmann product.  At least one factor must be scalar-valued; the result
/// carries the other factor's coefficient space.
inline GhostElement ghost_mul(const GhostElement& a, const GhostElement& b) {
  if (a.dim != b.dim)
    throw CheckFailure("shape", "ghost_mul: generator count mismatch");
  if (a.vdim != 1 && b.vdim != 1)
    throw CheckFailure("shape", "ghost_mul: both factors carry coefficients");
  GhostElement out(a.dim, std::max(a.vdim, b.vdim));
  Index merged;
  for (const auto& [I, va] : a.terms)
    for (const auto& [J, vb] : b.terms) {
      int sign = merge_with_parity(I, J, merged);
      if (sign == 0) continue;
      if (out.vdim == a.vdim && b.vdim == 1) {
        for (int c = 0; c < out.vdim; ++c) {
          Scalar v = va[static_cast<std::size_t>(c)] * vb[0];
          if (sign < 0) v = -v;
          out.add_term(merged, c, std::move(v));
        }
      } else {
        for (int c = 0; c < out.vdim; ++c) {
          Scalar v = va[0] * vb[static_cast<std::size_t>(c)];
          if (sign < 0) v = -v;
          out.add_term(merged, c, std::move(v));
        }
      }
    }
  return out;
}

/// Odd first-order operator on the ghost algebra: a sum of terms, each a
/// scalar ghost polynomial times either a left derivative d/dc^k or a
/// coefficient-space action rho(X_i).  The left derivative removes c^k from
/// position p of a monomial with sign (-1)^p.
struct GhostOperator {
  struct Term {
    GhostElement coeff; // scalar-valued ghost polynomial
    int derivative = -1; // k of d/dc^k, or
    int rho_index = -1;  // i of rho(X_i)
  };
  int dim = 0;
  int vdim = 1; // coefficient space of the elements it acts on
  std::vector<Term> terms;
  std::vector<Matrix> rho; // representation matrices for rho terms

  GhostElement apply(const GhostElement& x) const {
    if (x.dim != dim || x.vdim != vdim)
      throw CheckFailure("shape", "GhostOperator: element shape mismatch");
    GhostElement out(dim, vdim);
    for (const auto& term : terms) {
      if (term.derivative >= 0) {
        const int k = term.derivative;
        for (const auto& [I, vec] : x.terms) {
          auto pos = std::lower_bound(I.begin(), I.end(), k);
          if (pos == I.end() || *pos != k) continue;
          const int p = static_cast<int>(pos - I.begin());
          Index J;
          J.reserve(I.size() - 1);
          for (int idx : I)
            if (idx != k) J.push_back(idx);
          GhostElement stripped(dim, vdim);
          for (int c = 0; c < vdim; ++c) {
            Scalar v = vec[static_cast<std::size_t>(c)];
            if (v.is_zero()) continue;
            stripped.add_term(J, c, (p % 2 == 0) ? v : -v);
          }
          if (!stripped.is_zero()) out.add(ghost_mul(term.coeff, stripped));
        }
      } else {
        const Matrix& m = rho[static_cast<std::size_t>(term.rho_index)];
        for (const auto& [I, vec] : x.terms) {
          GhostElement rotated(dim, vdim);
          for (int r = 0; r < vdim; ++r) {
            Scalar v;
            for (int c = 0; c < vdim; ++c) {
              const Scalar& mv = m.at(r, c);
              if (!mv.is_zero() && !vec[static_cast<std::size_t>(c)].is_zero())
                v += mv * vec[static_cast<std::size_t>(c)];
            }
            if (!v.is_zero()) rotated.add_term(I, r, std::move(v));
          }
          if (!rotated.is_zero()) out.add(ghost_mul(term.coeff, rotated));
        }
      }
    }
    return out;
  }
};

/// The ghost-differential on trivial coefficients,
/// (1/2) C_ij^k c^j c^i d/dc^k, whose action on generators is
/// c^k -> -(1/2) C_ij^k c^i c^j.
inline GhostOperator brst_trivial(const LieAlgebra& g) {
  const int n = g.dim();
  GhostOperator op;
  op.dim = n;
  op.vdim = 1;
  for (int k = 0; k < n; ++k) {
    GhostElement coeff(n, 1);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Scalar c = g.c(i, j, k);
        if (!c.is_zero()) coeff.add_term({i, j}, 0, -c);
      }
    if (coeff.is_zero()) continue;
    GhostOperator::Term t;
    t.coeff = std::move(coeff);
    t.derivative = k;
    op.terms.push_back(std::move(t));
  }
  return op;
}

/// The full differential on V-valued elements,
/// c^i rho(X_i) + (1/2) C_ij^k c^j c^i d/dc^k.
inline GhostOperator brst_rho(const LieAlgebra& g, const Representation& rep) {
  const int n = g.dim();
  if (static_cast<int>(rep.rho.size()) != n)
    throw CheckFailure("shape", "brst_rho: representation size mismatch");
  GhostOperator op = brst_trivial(g);
  op.vdim = rep.vdim;
  if (!rep.is_trivial()) {
    op.rho = rep.rho;
    for (int i = 0; i < n; ++i) {
      if (op.rho[static_cast<std::size_t>(i)].is_zero()) continue;
      GhostOperator::Term t;
      t.coeff = GhostElement::monomial(n, {i});
      t.rho_index = i;
      op.terms.push_back(std::move(t));
    }
  }
  return op;
}

/// The structure constants with the upper index lowered by the Killing form,
/// as an alternating 3-tensor: W_ijk = C_ij^l B_lk.  This is the lowest rung
/// of the cocycle tower; brst_higher applied to it reproduces brst_trivial.
inline AltTensor lowered_bracket_form(const LieAlgebra& g) {
  const int n = g.dim();
  const Matrix& B = g.killing_form();
  AltTensor out(3, n);
  for_each_combination(n, 3, [&](const Index& K) {
    Scalar v;
    for (int l = 0; l < n; ++l) {
      const Scalar& c = g.c(K[0], K[1], l);
      if (!c.is_zero()) v += c * B.at(l, K[2]);
    }
    if (!v.is_zero()) out.set(K, v);
  });
  return out;
}

/// The higher-order differential attached to a lowered odd cocycle of degree
/// 2m-1: -1/(2m-2)! c^{i_1}..c^{i_{2m-2}} W_{i_1..i_{2m-2}}{}^s d/dc^s, i.e.
/// c^s -> -sum over sorted tuples of the raised coefficients.  Degree 3
/// reproduces brst_trivial.
inline GhostOperator brst_higher(const LieAlgebra& g, const AltTensor& omega) {
  const int n = g.dim();
  if (omega.dim() != n)
    throw CheckFailure("shape", "brst_higher: tensor dimension mismatch");
  if (omega.degree() < 3 || omega.degree() % 2 == 0)
    throw CheckFailure("degree-range",
                       "brst_higher: cocycle degree must be odd and >= 3");
  const Matrix& Binv = g.killing_inverse();
  GhostOperator op;
  op.dim = n;
  op.vdim = 1;
  for (int s = 0; s < n; ++s) {
    GhostElement coeff(n, 1);
    for (const auto& [T, v] : omega.entries())
      for (std::size_t p = 0; p < T.size(); ++p) {
        const Scalar& bv = Binv.at(s, T[p]);
        if (bv.is_zero()) continue;
        Index I;
        I.reserve(T.size() - 1);
        for (std::size_t q = 0; q < T.size(); ++q)
          if (q != p) I.push_back(T[q]);
        const bool flip = (T.size() - 1 - p) % 2 != 0;
        Scalar raised = bv * v;
        coeff.add_term(I, 0, flip ? raised : -raised);
      }
    if (coeff.is_zero()) continue;
    GhostOperator::Term t;
    t.coeff = std::move(coeff);
    t.derivative = s;
    op.terms.push_back(std::move(t));
  }
  return op;
}

/// Embeds a V-valued cochain as a ghost element: the monomial c^{i_1<..<i_q}
/// carries the coefficient vector w^A_{i_1..i_q} (the 1/q! of the ghost
/// normal form cancels against the q! equal orderings).
inline GhostElement ghost_embed(const Cochain& w) {
  GhostElement e(w.dim(), w.vdim);
  for (int a = 0; a < w.vdim; ++a)
    for (const auto& [I, v] : w.comp[static_cast<std::size_t>(a)].entries())
      e.add_term(I, a, v);
  return e;
}

inline GhostElement ghost_embed(const AltTensor& w) {
  return ghost_embed(Cochain::from_form(w));
}

struct BrstReport {
  std::vector<int> orders;       // ghost degrees 2m_i - 2 of the parts
  std::int64_t monomials = 0;    // monomials swept per pair
  bool generator_complete = true; // pairs vanish on every generator c^s
  bool all_zero = true;
};

struct CompleteBrst {
  std::vector<GhostOperator> parts;
  GhostOperator total;
  BrstReport report;
};

namespace detail {

/// Deterministic monomial batch for anticommutator sweeps: everything for
/// dim <= 10, else all subsets of size <= 2 or >= dim-1 plus a seeded
/// mid-degree sample.
inline std::vector<Index> monomial_batch(int dim) {
  std::vector<Index> out;
  if (dim <= 10) {
    for (std::uint32_t mask = 0; mask < (1u << dim); ++mask) {
      Index I;
      for (int i = 0; i < dim; ++i)
        if (mask & (1u << i)) I.push_back(i);
      out.push_back(std::move(I));
    }
    return out;
  }
  for (int k : {0, 1, 2, dim - 1, dim})
    for_each_combination(dim, k, [&](const Index& I) { out.push_back(I); });
  std::uint64_t state = 0x9005 + static_cast<std::uint64_t>(dim);
  for (int draw = 0; draw < 200; ++draw) {
    Index I;
    for (int i = 0; i < dim; ++i) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      if ((state >> 33) & 1) I.push_back(i);
    }
    out.push_back(std::move(I));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

} // namespace detail

/// Builds the sum of the higher-order differentials attached to the given
/// lowered cocycles and proves its nilpotency: every pairwise anticommutator
/// {s_a, s_b} (a square for a = b) is an even derivation, so vanishing on
/// all generators c^s makes it vanish on the whole algebra; a deterministic
/// monomial batch re-checks the composition machinery on top.  Any nonzero
/// component throws with the offending pair and monomial.
inline CompleteBrst complete_brst(const LieAlgebra& g,
                                  const std::vector<AltTensor>& cocycles) {
  if (cocycles.empty())
    throw CheckFailure("shape", "complete_brst: no cocycles given");
  const int n = g.dim();
  CompleteBrst out;
  for (const auto& w : cocycles) {
    out.parts.push_back(brst_higher(g, w));
    out.report.orders.push_back(w.degree() - 1);
  }
  out.total.dim = n;
  out.total.vdim = 1;
  for (const auto& p : out.parts)
    out.total.terms.insert(out.total.terms.end(), p.terms.begin(), p.terms.end());

  const auto batch = detail::monomial_batch(n);
  out.report.monomials = static_cast<std::int64_t>(batch.size());
  for (std::size_t a = 0; a < out.parts.size(); ++a)
    for (std::size_t b = a; b < out.parts.size(); ++b) {
      const GhostOperator& sa = out.parts[a];
      const GhostOperator& sb = out.parts[b];
      auto anti = [&](const GhostElement& x) {
        GhostElement y = sa.apply(sb.apply(x));
        y.add(sb.apply(sa.apply(x)));
        return y;
      };
      for (int s = 0; s < n; ++s) {
        GhostElement r = anti(GhostElement::monomial(n, {s}));
        if (!r.is_zero())
          throw CheckFailure(
              "anticommutator",
              g.name() + ": {s_" + std::to_string(out.report.orders[a]) + ",s_" +
                  std::to_string(out.report.orders[b]) + "} != 0",
              "generator c^" + std::to_string(s));
      }
      std::vector<std::uint8_t> bad(batch.size(), 0);
      parallel_for(batch.size(), [&](std::size_t t) {
        if (!anti(GhostElement::monomial(n, batch[t])).is_zero()) bad[t] = 1;
      });
      for (std::size_t t = 0; t < batch.size(); ++t)
        if (bad[t])
          throw CheckFailure(
              "anticommutator",
              g.name() + ": {s_" + std::to_string(out.report.orders[a]) + ",s_" +
                  std::to_string(out.report.orders[b]) + "} != 0",
              "monomial c^" + index_to_string(batch[t]));
    }
  return out;
}

} // namespace liecoh
