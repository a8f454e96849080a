#pragma once

#include "liecoh/alt_tensor.hpp"
#include "liecoh/matrix.hpp"

namespace liecoh {

/// Alternating projector: (At)_{i1...iq} = (1/q!) sum_sigma sign(sigma) t_{sigma(i)}.
/// Idempotent on already-alternating component arrays; any degree > dim input
/// collapses to the (representable) zero tensor.
inline AltTensor antisymmetrize(const GeneralTensor& t) {
  AltTensor out(t.degree(), t.dim());
  const Scalar w(Rational(1) / factorial(static_cast<unsigned>(t.degree())));
  for (const auto& [idx, v] : t.entries()) out.add(idx, w * v);
  return out;
}

/// Symmetrizing projector: (St)_{i1...iq} = (1/q!) sum_sigma t_{sigma(i)}.
/// On multiset storage each component-array entry carries the stabilizer
/// weight prod(multiplicity!)/q!: position permutations fixing a tuple with
/// repeated indices all hit the same entry.
inline SymTensor symmetrize(const GeneralTensor& t) {
  SymTensor out(t.degree(), t.dim());
  const Rational qfact = factorial(static_cast<unsigned>(t.degree()));
  for (const auto& [idx, v] : t.entries()) {
    Index s = idx;
    std::sort(s.begin(), s.end());
    Rational stab(1);
    for (std::size_t i = 0; i < s.size();) {
      std::size_t j = i;
      while (j < s.size() && s[j] == s[i]) ++j;
      stab *= factorial(static_cast<unsigned>(j - i));
      i = j;
    }
    out.add(std::move(s), Scalar(stab / qfact) * v);
  }
  return out;
}

/// Exterior product in the determinant convention: coefficients on the
/// strictly increasing basis combine by (p,q)-shuffle sums with no
/// combinatorial prefactor, (a ^ b)_K = sum_{shuffles K=(I|J)} sign a_I b_J.
/// Graded-commutative and associative; w^1 ^ w^2 ^ w^3 has coefficient 1 on
/// (0,1,2). Degrees exceeding dim give the zero tensor.
inline AltTensor wedge(const AltTensor& a, const AltTensor& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge: dim mismatch");
  AltTensor out(a.degree() + b.degree(), a.dim());
  if (a.degree() + b.degree() > a.dim()) return out;
  Index k(a.degree() + b.degree());
  for (const auto& [ia, va] : a.entries()) {
    for (const auto& [ib, vb] : b.entries()) {
      std::copy(ia.begin(), ia.end(), k.begin());
      std::copy(ib.begin(), ib.end(), k.begin() + ia.size());
      out.add(k, va * vb);
    }
  }
  return out;
}

/// Raw positional contraction of the last `shared` slots of a against the
/// first `shared` slots of b, slot r against slot r:
///   R_{I,J} = sum_{c1..cs} a_{I,c1..cs} b_{c1..cs,J}          (no metric)
///   R_{I,J} = sum a_{I,c..} g(c1,d1)...g(cs,ds) b_{d..,J}     (metric g)
/// The result is a full component array: alternating within the I block and
/// within the J block but in general NOT across them (contracting the dim-3
/// epsilon with itself over two pairs yields the symmetric 2*delta).
inline GeneralTensor contract(const AltTensor& a, const AltTensor& b, int shared,
                              const Matrix* metric = nullptr) {
  if (a.dim() != b.dim()) throw std::invalid_argument("contract: dim mismatch");
  if (shared < 0 || shared > a.degree() || shared > b.degree())
    throw std::invalid_argument("contract: bad shared count");
  const int s = shared;
  const int pf = a.degree() - s;
  const int qf = b.degree() - s;
  GeneralTensor out(pf + qf, a.dim());
  const Scalar sfact(factorial(static_cast<unsigned>(s)));

  // Block-canonical accumulation first (free blocks sorted), then expansion
  // to the full component array. Summing the contracted block over all of its
  // s! orderings cancels the two parities, leaving the factor s! (plain case)
  // or s! * det g[S_a, S_b] (metric case).
  std::map<Index, Scalar> canon;
  for (const auto& [ia, va] : a.entries()) {
    for_each_split(ia, pf, [&](const Index& F, const Index& S, int sgA) {
      for (const auto& [ib, vb] : b.entries()) {
        for_each_split(ib, s, [&](const Index& Sb, const Index& G, int sgB) {
          Scalar joint;
          if (metric == nullptr) {
            if (Sb != S) return;
            joint = sfact;
          } else {
            joint = sfact * minor_det(*metric, S, Sb);
            if (joint.is_zero()) return;
          }
          Scalar term = va * vb * joint;
          if (sgA * sgB < 0) term = -term;
          Index key(pf + qf);
          std::copy(F.begin(), F.end(), key.begin());
          std::copy(G.begin(), G.end(), key.begin() + pf);
          auto [it, fresh] = canon.emplace(key, term);
          if (!fresh) it->second += term;
        });
      }
    });
  }

  // Expand each block-canonical value over all arrangements of its blocks.
  for (const auto& [key, v] : canon) {
    if (v.is_zero()) continue;
    Index F(key.begin(), key.begin() + pf);
    Index G(key.begin() + pf, key.end());
    std::vector<std::pair<Index, int>> permsF, permsG;
    {
      Index p = F;
      do permsF.emplace_back(p, permutation_sign(p) * permutation_sign(F));
      while (std::next_permutation(p.begin(), p.end()));
    }
    {
      Index p = G;
      do permsG.emplace_back(p, permutation_sign(p) * permutation_sign(G));
      while (std::next_permutation(p.begin(), p.end()));
    }
    Index full(pf + qf);
    for (const auto& [fp, sf] : permsF) {
      for (const auto& [gp, sg] : permsG) {
        std::copy(fp.begin(), fp.end(), full.begin());
        std::copy(gp.begin(), gp.end(), full.begin() + pf);
        out.add(full, (sf * sg > 0) ? v : -v);
      }
    }
  }
  return out;
}

/// Antisymmetrized contraction: the raw contraction projected onto its fully
/// alternating part at shuffle normalization, so shared = 0 reproduces
/// wedge(a, b) exactly. Free blocks with overlapping indices drop out.
inline AltTensor alt_contract(const AltTensor& a, const AltTensor& b, int shared,
                              const Matrix* metric = nullptr) {
  if (a.dim() != b.dim()) throw std::invalid_argument("alt_contract: dim mismatch");
  if (shared < 0 || shared > a.degree() || shared > b.degree())
    throw std::invalid_argument("alt_contract: bad shared count");
  const int s = shared;
  const int pf = a.degree() - s;
  const int qf = b.degree() - s;
  AltTensor out(pf + qf, a.dim());
  if (pf + qf > a.dim()) return out;
  const Scalar sfact(factorial(static_cast<unsigned>(s)));
  Index key(pf + qf);
  for (const auto& [ia, va] : a.entries()) {
    for_each_split(ia, pf, [&](const Index& F, const Index& S, int sgA) {
      for (const auto& [ib, vb] : b.entries()) {
        for_each_split(ib, s, [&](const Index& Sb, const Index& G, int sgB) {
          Scalar joint;
          if (metric == nullptr) {
            if (Sb != S) return;
            joint = sfact;
          } else {
            joint = sfact * minor_det(*metric, S, Sb);
            if (joint.is_zero()) return;
          }
          Scalar term = va * vb * joint;
          if (sgA * sgB < 0) term = -term;
          std::copy(F.begin(), F.end(), key.begin());
          std::copy(G.begin(), G.end(), key.begin() + pf);
          out.add(key, term);
        });
      }
    });
  }
  return out;
}

/// Unit-weight epsilon symbol of the given degree: +-1 on permutations of
/// (0,...,degree-1), zero otherwise. (The generalized Kronecker delta
/// epsilon^{j...}_{i...} is realized by the shuffle machinery, not stored.)
inline AltTensor epsilon_symbol(int degree, int dim) {
  AltTensor eps(degree, dim);
  if (degree <= dim) {
    Index idx(degree);
    std::iota(idx.begin(), idx.end(), 0);
    eps.set(idx, Scalar(1));
  }
  return eps;
}

/// All slots of an alternating tensor raised (or lowered) through the given
/// symmetric invertible matrix, done densely slot by slot; intended for the
/// small dims where index gymnastics are needed (dim <= 15, degree <= 5).
inline AltTensor apply_metric_all_slots(const AltTensor& t, const Matrix& g) {
  const int q = t.degree();
  const int d = t.dim();
  if (q == 0) return t;
  std::size_t total = 1;
  for (int r = 0; r < q; ++r) total *= static_cast<std::size_t>(d);
  std::vector<Scalar> dense(total);
  std::vector<std::size_t> stride(q);
  stride[q - 1] = 1;
  for (int r = q - 2; r >= 0; --r) stride[r] = stride[r + 1] * d;
  // seed the dense array from the sparse entries, all arrangements
  for (const auto& [idx, v] : t.entries()) {
    Index p = idx;
    std::sort(p.begin(), p.end());
    do {
      std::size_t off = 0;
      for (int r = 0; r < q; ++r) off += stride[r] * static_cast<std::size_t>(p[r]);
      dense[off] = (permutation_sign(p) > 0) ? v : -v;
    } while (std::next_permutation(p.begin(), p.end()));
  }
  // contract one slot at a time
  std::vector<Scalar> next(total);
  for (int slot = 0; slot < q; ++slot) {
    std::fill(next.begin(), next.end(), Scalar());
    for (std::size_t off = 0; off < total; ++off) {
      if (dense[off].is_zero()) continue;
      const int old = static_cast<int>(off / stride[slot]) % d;
      const std::size_t base = off - static_cast<std::size_t>(old) * stride[slot];
      for (int nw = 0; nw < d; ++nw) {
        const Scalar& gv = g.at(nw, old);
        if (gv.is_zero()) continue;
        next[base + static_cast<std::size_t>(nw) * stride[slot]] += gv * dense[off];
      }
    }
    std::swap(dense, next);
  }
  AltTensor out(q, d);
  Index idx(q);
  std::function<void(int, std::size_t)> walk = [&](int r, std::size_t off) {
    if (r == q) {
      if (!dense[off].is_zero()) out.set(idx, dense[off]);
      return;
    }
    const int lo = (r == 0) ? 0 : idx[r - 1] + 1;
    for (int v = lo; v < d; ++v) {
      idx[r] = v;
      walk(r + 1, off + stride[r] * static_cast<std::size_t>(v));
    }
  };
  walk(0, 0);
  return out;
}

} // namespace liecoh
