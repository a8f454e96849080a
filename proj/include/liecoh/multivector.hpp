#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "liecoh/alt_tensor.hpp"
#include "liecoh/error.hpp"
#include "liecoh/lie_algebra.hpp"
#include "liecoh/multi_index.hpp"
#include "liecoh/polynomial.hpp"
#include "liecoh/scalar.hpp"

namespace liecoh {

/// Multivector field on the dual space: degree-q antisymmetric contravariant
/// tensor whose components are exact polynomials in the coordinates x_i.
/// Components are stored on strictly increasing index tuples, exactly like
/// AltTensor; the polynomial variable space has the same dimension as the
/// index range.
class Multivector {
public:
  Multivector() : degree_(0), dim_(0) {}
  Multivector(int degree, int dim) : degree_(degree), dim_(dim) {
    if (degree < 0 || dim < 0)
      throw CheckFailure("shape", "Multivector: bad shape");
  }

  /// Lifts a constant alternating tensor.
  static Multivector constant(const AltTensor& t) {
    Multivector out(t.degree(), t.dim());
    for (const auto& [K, v] : t.entries())
      out.set(K, PolyFunction::constant(t.dim(), v));
    return out;
  }

  int degree() const { return degree_; }
  int dim() const { return dim_; }
  bool is_zero() const { return comp_.empty(); }
  const std::map<Index, PolyFunction>& entries() const { return comp_; }

  /// Sets the canonical (strictly increasing) component.
  void set(const Index& K, PolyFunction f) {
    check(K, f);
    for (std::size_t i = 1; i < K.size(); ++i)
      if (K[i] <= K[i - 1])
        throw CheckFailure("shape", "Multivector::set: tuple not strictly increasing",
                           index_to_string(K));
    if (f.is_zero())
      comp_.erase(K);
    else
      comp_[K] = std::move(f);
  }

  /// Scatter-accumulates f at an arbitrary tuple, resolving parity.
  void add(Index K, const PolyFunction& f) {
    check(K, f);
    if (f.is_zero()) return;
    int sign = sort_with_parity(K);
    if (sign == 0) return;
    auto it = comp_.find(K);
    if (it == comp_.end()) it = comp_.emplace(std::move(K), PolyFunction(dim_)).first;
    if (sign > 0)
      it->second += f;
    else
      it->second -= f;
    if (it->second.is_zero()) comp_.erase(it);
  }

  /// Component at an arbitrary tuple (any order; repeats give zero).
  PolyFunction component(Index K) const {
    if (static_cast<int>(K.size()) != degree_)
      throw CheckFailure("shape", "Multivector: index arity mismatch",
                         index_to_string(K));
    int sign = sort_with_parity(K);
    if (sign == 0) return PolyFunction(dim_);
    auto it = comp_.find(K);
    if (it == comp_.end()) return PolyFunction(dim_);
    return sign > 0 ? it->second : -it->second;
  }

  Multivector& operator+=(const Multivector& o) {
    if (o.degree_ != degree_ || o.dim_ != dim_)
      throw CheckFailure("shape", "Multivector: shape mismatch in sum");
    for (const auto& [K, f] : o.comp_) add(K, f);
    return *this;
  }

  Multivector& operator-=(const Multivector& o) {
    if (o.degree_ != degree_ || o.dim_ != dim_)
      throw CheckFailure("shape", "Multivector: shape mismatch in sum");
    for (const auto& [K, f] : o.comp_) add(K, -f);
    return *this;
  }

  friend Multivector operator*(const Scalar& c, const Multivector& m) {
    Multivector out(m.degree_, m.dim_);
    if (c.is_zero()) return out;
    for (const auto& [K, f] : m.comp_) out.set(K, c * f);
    return out;
  }

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }

  bool operator==(const Multivector& o) const {
    return degree_ == o.degree_ && dim_ == o.dim_ && comp_ == o.comp_;
  }
  bool operator!=(const Multivector& o) const { return !(*this == o); }

private:
  void check(const Index& K, const PolyFunction& f) const {
    if (static_cast<int>(K.size()) != degree_)
      throw CheckFailure("shape", "Multivector: index arity mismatch",
                         index_to_string(K));
    for (int v : K)
      if (v < 0 || v >= dim_)
        throw CheckFailure("shape", "Multivector: index out of range",
                           index_to_string(K));
    if (f.dim() != dim_)
      throw CheckFailure("shape", "Multivector: coefficient variable space mismatch");
  }

  int degree_, dim_;
  std::map<Index, PolyFunction> comp_;
};

/// Exterior product; shuffle convention without weight factors, matching the
/// wedge used for alternating tensors.
inline Multivector wedge(const Multivector& a, const Multivector& b) {
  if (a.dim() != b.dim())
    throw CheckFailure("shape", "wedge: multivectors on different spaces");
  Multivector out(a.degree() + b.degree(), a.dim());
  Index merged;
  for (const auto& [K, f] : a.entries())
    for (const auto& [L, g] : b.entries()) {
      int sign = merge_with_parity(K, L, merged);
      if (sign == 0) continue;
      PolyFunction p = f * g;
      out.add(merged, sign > 0 ? p : -p);
    }
  return out;
}

namespace detail {

/// Left derivative with respect to the odd direction i: strips i from each
/// index set with the sign of its position.
inline Multivector odd_derivative(const Multivector& a, int i) {
  Multivector out(std::max(a.degree() - 1, 0), a.dim());
  for (const auto& [K, f] : a.entries()) {
    auto it = std::lower_bound(K.begin(), K.end(), i);
    if (it == K.end() || *it != i) continue;
    int pos = static_cast<int>(it - K.begin());
    Index stripped;
    stripped.reserve(K.size() - 1);
    stripped.insert(stripped.end(), K.begin(), it);
    stripped.insert(stripped.end(), it + 1, K.end());
    out.add(stripped, pos % 2 == 0 ? f : -f);
  }
  return out;
}

/// Componentwise coordinate derivative.
inline Multivector coordinate_derivative(const Multivector& a, int i) {
  Multivector out(a.degree(), a.dim());
  for (const auto& [K, f] : a.entries()) out.set(K, f.partial(i));
  return out;
}

} // namespace detail

/// Schouten bracket of multivector fields: the graded extension of the vector
/// field commutator, realized as the canonical odd bracket
///   [a,b] = (-1)^{p-1} sum_i (da/dxi_i)(db/dx_i) - sum_i (da/dx_i)(db/dxi_i)
/// on polynomial multivectors (p = deg a).  Degree-1 inputs reproduce the Lie
/// bracket of vector fields; the convention is pinned by that reduction plus
/// graded antisymmetry.
inline Multivector snb(const Multivector& a, const Multivector& b) {
  if (a.dim() != b.dim())
    throw CheckFailure("shape", "snb: multivectors on different spaces");
  const int p = a.degree(), q = b.degree();
  Multivector out(std::max(p + q - 1, 0), a.dim());
  const bool flip = p % 2 == 0; // (-1)^{p-1}
  for (int i = 0; i < a.dim(); ++i) {
    Multivector first = wedge(detail::odd_derivative(a, i),
                              detail::coordinate_derivative(b, i));
    Multivector second = wedge(detail::coordinate_derivative(a, i),
                               detail::odd_derivative(b, i));
    for (const auto& [K, f] : first.entries()) out.add(K, flip ? -f : f);
    for (const auto& [K, f] : second.entries()) out.add(K, -f);
  }
  return out;
}

/// Bracket lookup table: canonical s-tuple I -> coefficients of the order-s
/// bracket [X_I] in the algebra basis (upper index).  Built either from the
/// binary bracket or from an all-lower structure tensor whose last index is
/// raised with the inverse Killing metric.
class BracketTable {
public:
  static BracketTable from_algebra(const LieAlgebra& g) {
    BracketTable t;
    t.order_ = 2;
    t.dim_ = g.dim();
    for (int i = 0; i < g.dim(); ++i)
      for (int j = i + 1; j < g.dim(); ++j) {
        const auto& pairs = g.bracket_coeffs(i, j);
        if (pairs.empty()) continue;
        std::vector<Scalar> row(static_cast<std::size_t>(g.dim()));
        for (const auto& [k, v] : pairs) row[static_cast<std::size_t>(k)] = v;
        t.table_.emplace(Index{i, j}, std::move(row));
      }
    return t;
  }

  /// `lowered` has degree s+1 with all indices down; the table stores
  /// [X_I]^rho = lowered_{I,tau} B^{tau rho}.
  static BracketTable from_structure(const LieAlgebra& g, const AltTensor& lowered) {
    if (lowered.dim() != g.dim())
      throw CheckFailure("shape", "BracketTable: tensor dimension mismatch");
    if (lowered.degree() < 2)
      throw CheckFailure("degree-range", "BracketTable: structure tensor degree < 2");
    const int s = lowered.degree() - 1;
    const Matrix& binv = g.killing_inverse();
    // gather the lowered slices lowered_{I, tau} for canonical I
    std::map<Index, std::vector<Scalar>> low;
    for (const auto& [T, v] : lowered.entries()) {
      for (std::size_t p = 0; p < T.size(); ++p) {
        Index I;
        I.reserve(T.size() - 1);
        for (std::size_t r = 0; r < T.size(); ++r)
          if (r != p) I.push_back(T[r]);
        // moving T[p] to the last slot crosses size-1-p entries
        const bool even = (T.size() - 1 - p) % 2 == 0;
        auto it = low.find(I);
        if (it == low.end())
          it = low.emplace(I, std::vector<Scalar>(static_cast<std::size_t>(g.dim()))).first;
        it->second[static_cast<std::size_t>(T[p])] += even ? v : -v;
      }
    }
    BracketTable t;
    t.order_ = s;
    t.dim_ = g.dim();
    for (const auto& [I, lv] : low) {
      std::vector<Scalar> row(static_cast<std::size_t>(g.dim()));
      bool any = false;
      for (int rho = 0; rho < g.dim(); ++rho) {
        Scalar acc;
        for (int tau = 0; tau < g.dim(); ++tau)
          if (!lv[static_cast<std::size_t>(tau)].is_zero())
            acc += lv[static_cast<std::size_t>(tau)] * binv.at(tau, rho);
        if (!acc.is_zero()) any = true;
        row[static_cast<std::size_t>(rho)] = acc;
      }
      if (any) t.table_.emplace(I, std::move(row));
    }
    return t;
  }

  int order() const { return order_; }
  int dim() const { return dim_; }
  const std::map<Index, std::vector<Scalar>>& entries() const { return table_; }

  /// Coefficients of [X_I] for canonical I, or nullptr when the bracket is zero.
  const std::vector<Scalar>* slice(const Index& I) const {
    auto it = table_.find(I);
    return it == table_.end() ? nullptr : &it->second;
  }

private:
  BracketTable() : order_(0), dim_(0) {}
  int order_, dim_;
  std::map<Index, std::vector<Scalar>> table_;
};

/// Constant multivectors are plain alternating tensors over the basis.
using ConstantMultivector = AltTensor;

/// Coderivation of order s on constant multivectors: on a basis q-vector it
/// contracts every s-subset into its bracket,
///   d(X_K) = sum over splits (I,J) of K, |I| = s:  sign * [X_I] ^ X_J,
/// lowering the degree by s-1.  Nilpotent for even s by the generalized
/// Jacobi identity.
inline AltTensor coderivation(const BracketTable& br, const AltTensor& v) {
  if (br.dim() != v.dim())
    throw CheckFailure("shape", "coderivation: dimension mismatch");
  const int s = br.order();
  if (s < 2 || s % 2 != 0)
    throw CheckFailure("degree-range",
                       "coderivation: bracket order must be even and >= 2",
                       std::to_string(s));
  const int n = v.degree();
  AltTensor out(std::max(n - s + 1, 0), v.dim());
  if (s > n) return out;
  Index merged;
  for (const auto& [K, val] : v.entries()) {
    for_each_split(K, s, [&](const Index& I, const Index& J, int sign) {
      const std::vector<Scalar>* row = br.slice(I);
      if (!row) return;
      for (int rho = 0; rho < v.dim(); ++rho) {
        const Scalar& c = (*row)[static_cast<std::size_t>(rho)];
        if (c.is_zero()) continue;
        int msign = merge_with_parity(Index{rho}, J, merged);
        if (msign == 0) continue;
        Scalar term = val * c;
        if (sign * msign < 0) term = -term;
        out.add(merged, term);
      }
    });
  }
  return out;
}

/// Binary-bracket coderivation of the algebra itself.
inline AltTensor coderivation(const LieAlgebra& g, const AltTensor& v) {
  return coderivation(BracketTable::from_algebra(g), v);
}

/// Derivation dual to the order-s coderivation, raising form degree by s-1:
///   (d a)_K = sum over splits (I,J) of K, |I| = s: sign * [X_I]^rho a_{rho,J}.
/// For the binary bracket this is the negative of the trivial-coefficient
/// coboundary.
inline AltTensor dual_derivation(const BracketTable& br, const AltTensor& alpha) {
  if (br.dim() != alpha.dim())
    throw CheckFailure("shape", "dual_derivation: dimension mismatch");
  const int s = br.order();
  if (s < 2 || s % 2 != 0)
    throw CheckFailure("degree-range",
                       "dual_derivation: bracket order must be even and >= 2",
                       std::to_string(s));
  const int n = alpha.degree();
  if (n < 1)
    throw CheckFailure("degree-range", "dual_derivation: form degree must be >= 1");
  AltTensor out(n + s - 1, alpha.dim());
  if (n + s - 1 > alpha.dim()) return out;
  for_each_combination(alpha.dim(), n + s - 1, [&](const Index& K) {
    Scalar total;
    for_each_split(K, s, [&](const Index& I, const Index& J, int sign) {
      const std::vector<Scalar>* row = br.slice(I);
      if (!row) return;
      Index arg;
      arg.reserve(static_cast<std::size_t>(n));
      for (int rho = 0; rho < alpha.dim(); ++rho) {
        const Scalar& c = (*row)[static_cast<std::size_t>(rho)];
        if (c.is_zero()) continue;
        arg.assign(1, rho);
        arg.insert(arg.end(), J.begin(), J.end());
        Scalar av = alpha.component(arg);
        if (av.is_zero()) continue;
        total += sign > 0 ? c * av : -(c * av);
      }
    });
    if (!total.is_zero()) out.set(K, total);
  });
  return out;
}

inline AltTensor dual_derivation(const LieAlgebra& g, const AltTensor& alpha) {
  return dual_derivation(BracketTable::from_algebra(g), alpha);
}

/// Full contraction of a degree-q form with a degree-q multivector: the form
/// evaluated on the multivector, i.e. q! times the sum of products of
/// canonical components.
inline Scalar evaluate_form(const AltTensor& form, const AltTensor& vec) {
  if (form.degree() != vec.degree() || form.dim() != vec.dim())
    throw CheckFailure("shape", "evaluate_form: shape mismatch");
  Scalar total;
  for (const auto& [K, v] : vec.entries()) {
    Scalar f = form.component(K);
    if (!f.is_zero()) total += f * v;
  }
  return Scalar(factorial(static_cast<unsigned>(form.degree()))) * total;
}

/// Linear multivector whose fundamental brackets are the table's:
/// component at I is [X_I]^sigma x_sigma.
inline Multivector linear_multivector(const BracketTable& br) {
  Multivector out(br.order(), br.dim());
  for (const auto& [I, row] : br.entries()) {
    PolyFunction f(br.dim());
    for (int rho = 0; rho < br.dim(); ++rho)
      f.add_term({rho}, row[static_cast<std::size_t>(rho)]);
    out.set(I, std::move(f));
  }
  return out;
}

/// The canonical linear bivector on the dual space: component (i,j) is
/// C_ij^k x_k.
inline Multivector lie_poisson(const LieAlgebra& g) {
  return linear_multivector(BracketTable::from_algebra(g));
}

/// Evaluates the n-bracket {f_1,...,f_n} generated by a degree-n multivector:
/// the full contraction with the argument differentials, i.e.
/// sum_K L_K det(d f_b / d x_{K[a]}).
inline PolyFunction bracket_eval(const Multivector& L,
                                 const std::vector<PolyFunction>& fs) {
  const int n = L.degree();
  if (static_cast<int>(fs.size()) != n)
    throw CheckFailure("shape", "bracket_eval: argument count does not match degree",
                       std::to_string(fs.size()));
  for (const auto& f : fs)
    if (f.dim() != L.dim())
      throw CheckFailure("shape", "bracket_eval: argument variable space mismatch");
  // gradient table: grad[b][k] = d f_b / d x_k
  std::vector<std::vector<PolyFunction>> grad(fs.size());
  for (std::size_t b = 0; b < fs.size(); ++b) {
    grad[b].reserve(static_cast<std::size_t>(L.dim()));
    for (int k = 0; k < L.dim(); ++k) grad[b].push_back(fs[b].partial(k));
  }
  PolyFunction out(L.dim());
  for (const auto& [K, w] : L.entries()) {
    // det of the n x n gradient minor on rows K, by signed permutation sum
    PolyFunction det(L.dim());
    for_each_permutation(n, [&](const Index& perm, int sign) {
      PolyFunction prod = PolyFunction::constant(L.dim(), Scalar(sign));
      for (int a = 0; a < n; ++a) {
        const PolyFunction& entry =
            grad[static_cast<std::size_t>(perm[a])][static_cast<std::size_t>(K[a])];
        if (entry.is_zero()) {
          prod = PolyFunction(L.dim());
          break;
        }
        prod = prod * entry;
      }
      det += prod;
    });
    out += w * det;
  }
  return out;
}

/// Residual of the fundamental identity on explicit arguments:
///   {f_1..f_{n-1},{g_1..g_n}} - sum_k {g_1..,{f_1..f_{n-1},g_k},..g_n}.
/// Identically zero polynomials certify the identity on that tuple.
inline PolyFunction fi_residual(const Multivector& L,
                                const std::vector<PolyFunction>& fs,
                                const std::vector<PolyFunction>& gs) {
  const int n = L.degree();
  if (static_cast<int>(fs.size()) != n - 1 || static_cast<int>(gs.size()) != n)
    throw CheckFailure("shape", "fi_residual: needs n-1 and n arguments");
  std::vector<PolyFunction> args(fs);
  args.push_back(bracket_eval(L, gs));
  PolyFunction lhs = bracket_eval(L, args);
  for (int k = 0; k < n; ++k) {
    std::vector<PolyFunction> inner(fs);
    inner.push_back(gs[static_cast<std::size_t>(k)]);
    std::vector<PolyFunction> outer(gs);
    outer[static_cast<std::size_t>(k)] = bracket_eval(L, inner);
    lhs -= bracket_eval(L, outer);
  }
  return lhs;
}

/// Result of the closure check for an even multivector.
struct GpsReport {
  bool zero = true;            // self-bracket exactly zero
  Multivector snb_residual;    // [L, L]
  Multivector coord_residual;  // split-sum contraction of the components
  Index witness;               // first nonzero canonical tuple when !zero
};

/// Checks the closure condition [L,L] = 0 for an even-degree multivector,
/// through the Schouten bracket and independently through the coordinate
/// contraction
///   sum over splits (I,J), |I| = 2p-1: sign * L_{I,sigma} d L_J / d x_sigma.
/// Both verdicts must agree; a disagreement would falsify the bracket
/// implementation and throws.
inline GpsReport gps_check(const Multivector& L) {
  const int deg = L.degree();
  if (deg < 2 || deg % 2 != 0)
    throw CheckFailure("degree-range",
                       "gps_check: degree must be even and >= 2 (the self-bracket "
                       "of an odd multivector vanishes identically)",
                       std::to_string(deg));
  GpsReport rep;
  rep.snb_residual = snb(L, L);
  const int p = deg / 2;
  rep.coord_residual = Multivector(4 * p - 1, L.dim());
  // entry-driven split sum: a component L_A contributes as L_{I,sigma} for
  // every sigma in A, with the parity of moving sigma to the last slot
  Index I, merged;
  for (const auto& [A, f] : L.entries()) {
    for (std::size_t pos = 0; pos < A.size(); ++pos) {
      const int sigma = A[pos];
      I.clear();
      for (std::size_t r = 0; r < A.size(); ++r)
        if (r != pos) I.push_back(A[r]);
      const bool even = (A.size() - 1 - pos) % 2 == 0;
      for (const auto& [B, h] : L.entries()) {
        PolyFunction dh = h.partial(sigma);
        if (dh.is_zero()) continue;
        int msign = merge_with_parity(I, B, merged);
        if (msign == 0) continue;
        PolyFunction prod = f * dh;
        rep.coord_residual.add(merged, (even == (msign > 0)) ? prod : -prod);
      }
    }
  }
  const bool snb_zero = rep.snb_residual.is_zero();
  const bool coord_zero = rep.coord_residual.is_zero();
  if (snb_zero != coord_zero)
    throw CheckFailure("verdict-mismatch",
                       "gps_check: Schouten and coordinate residuals disagree");
  rep.zero = snb_zero;
  if (!rep.zero) rep.witness = rep.coord_residual.entries().begin()->first;
  return rep;
}

/// Result of the two defining conditions for an n-ary coordinate bracket.
struct NpReport {
  bool differential_zero = true;
  bool algebraic_zero = true;
  // witnesses are valid when the corresponding flag is false
  Index diff_witness_left, diff_witness_right;  // (n-1)-tuple, n-tuple
  PolyFunction diff_residual;
  Index alg_witness_left, alg_witness_right;    // n-tuple (a,t), n-tuple
  PolyFunction alg_residual;
  Scalar alg_at_sample;                         // alg_residual at the sample point
  std::vector<Scalar> sample;                   // x = (1, 2, ..., dim)
};

namespace detail {

/// The quadratic block tensor of the algebraic condition:
///   sigma(I,J) = e_I e_J - sum_r e_{I',J_r} e_{J with slot r replaced by i_n},
/// where I' is I without its last entry i_n.
inline PolyFunction np_sigma(const Multivector& L, const Index& I, const Index& J) {
  PolyFunction out = L.component(I) * L.component(J);
  Index head(I.begin(), I.end() - 1);
  const int last = I.back();
  for (std::size_t r = 0; r < J.size(); ++r) {
    Index a(head);
    a.push_back(J[r]);
    PolyFunction fa = L.component(a);
    if (fa.is_zero()) continue;
    Index b(J);
    b[r] = last;
    out -= fa * L.component(b);
  }
  return out;
}

} // namespace detail

/// Checks the two conditions carved out of the fundamental identity for the
/// bracket generated by a degree-n multivector: the differential condition
/// (first-derivative terms) and the algebraic condition (second-derivative
/// terms), the latter symmetrized by the swap of the two n-index blocks.
/// Sweeps stop at the first symbolically nonzero component; the algebraic
/// sweep additionally looks for a witness that stays nonzero at the fixed
/// sample point x = (1,...,dim).
inline NpReport np_check(const Multivector& L) {
  const int n = L.degree();
  if (n < 2)
    throw CheckFailure("degree-range", "np_check: degree must be >= 2",
                       std::to_string(n));
  const int dim = L.dim();
  NpReport rep;
  rep.sample.reserve(static_cast<std::size_t>(dim));
  for (int k = 0; k < dim; ++k) rep.sample.push_back(Scalar(k + 1));

  // differential condition:
  //   e_{I,rho} d e_J/dx_rho - sum_k (-1)^k (d e_{I,J_k}/dx_rho) e_{rho, J\J_k}
  bool done = false;
  for_each_combination(dim, n - 1, [&](const Index& I) {
    if (done) return;
    for_each_combination(dim, n, [&](const Index& J) {
      if (done) return;
      PolyFunction res(dim);
      for (int rho = 0; rho < dim; ++rho) {
        Index a(I);
        a.push_back(rho);
        PolyFunction fa = L.component(a);
        if (!fa.is_zero()) {
          PolyFunction d = L.component(J).partial(rho);
          if (!d.is_zero()) res += fa * d;
        }
      }
      for (std::size_t k = 0; k < J.size(); ++k) {
        Index a(I);
        a.push_back(J[k]);
        PolyFunction fa = L.component(a);
        if (fa.is_zero()) continue;
        Index rest;
        rest.reserve(J.size() - 1);
        for (std::size_t r = 0; r < J.size(); ++r)
          if (r != k) rest.push_back(J[r]);
        for (int rho = 0; rho < dim; ++rho) {
          PolyFunction da = fa.partial(rho);
          if (da.is_zero()) continue;
          Index b;
          b.assign(1, rho);
          b.insert(b.end(), rest.begin(), rest.end());
          PolyFunction fb = L.component(b);
          if (fb.is_zero()) continue;
          PolyFunction prod = da * fb;
          if (k % 2 == 0)
            res -= prod;
          else
            res += prod;
        }
      }
      if (!res.is_zero()) {
        rep.differential_zero = false;
        rep.diff_witness_left = I;
        rep.diff_witness_right = J;
        rep.diff_residual = std::move(res);
        done = true;
      }
    });
  });

  // algebraic condition: sigma(I,J) + sigma(J,I) = 0 for I = (head, t) with
  // canonical head and free t, canonical J
  bool have_symbolic = false, have_sampled = false;
  Index sym_left, sym_right;
  PolyFunction sym_res;
  for_each_combination(dim, n - 1, [&](const Index& head) {
    if (have_sampled) return;
    for (int t = 0; t < dim && !have_sampled; ++t) {
      Index I(head);
      I.push_back(t);
      for_each_combination(dim, n, [&](const Index& J) {
        if (have_sampled) return;
        PolyFunction res = detail::np_sigma(L, I, J) + detail::np_sigma(L, J, I);
        if (res.is_zero()) return;
        if (!have_symbolic) {
          have_symbolic = true;
          sym_left = I;
          sym_right = J;
          sym_res = res;
        }
        Scalar at = res.eval(rep.sample);
        if (!at.is_zero()) {
          have_sampled = true;
          rep.alg_witness_left = I;
          rep.alg_witness_right = J;
          rep.alg_residual = std::move(res);
          rep.alg_at_sample = at;
        }
      });
    }
  });
  if (have_symbolic) {
    rep.algebraic_zero = false;
    if (!have_sampled) { // nonzero polynomial that happens to vanish at the sample
      rep.alg_witness_left = sym_left;
      rep.alg_witness_right = sym_right;
      rep.alg_residual = std::move(sym_res);
      rep.alg_at_sample = Scalar();
    }
  }
  return rep;
}

} // namespace liecoh
