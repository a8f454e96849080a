#pragma once

#include "liecoh/alt_tensor.hpp"
#include "liecoh/error.hpp"
#include "liecoh/matrix.hpp"

#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace liecoh {

/// Lie algebra over the exact scalar field, presented by a matrix basis
/// (defining representation) and/or exact structure constants
/// [X_i, X_j] = C_ij^k X_k. Algebras produced by central extension are
/// abstract: structure constants only, no generator matrices.
class LieAlgebra {
public:
  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  bool has_generators() const { return !generators_.empty(); }
  const std::vector<Matrix>& generators() const { return generators_; }
  int matrix_size() const { return generators_.empty() ? 0 : generators_[0].rows(); }

  /// C_ij^k, all indices 0-based.
  const Scalar& c(int i, int j, int k) const {
    return c_flat_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k];
  }

  /// Sparse expansion of [X_i, X_j] as (k, coefficient) pairs.
  const std::vector<std::pair<int, Scalar>>& bracket_coeffs(int i, int j) const {
    return c_pairs_[static_cast<std::size_t>(i) * dim_ + j];
  }

  /// C^k viewed as an alternating 2-tensor in the lower indices.
  const AltTensor& c_tensor(int k) const { return c_upper_[k]; }

  /// ad(X_i) in the chosen basis: (ad_i)^k_j = C_ij^k.
  Matrix ad(int i) const {
    Matrix m(dim_, dim_);
    for (int j = 0; j < dim_; ++j)
      for (const auto& [k, v] : bracket_coeffs(i, j)) m.at(k, j) = v;
    return m;
  }

  /// Trace form B_ij = Tr(X_i X_j) of the defining representation; the zero
  /// matrix for abstract algebras.
  const Matrix& trace_form() const { return trace_form_; }

  /// Killing form k_ij = Tr(ad X_i ad X_j); always available.
  const Matrix& killing_form() const { return killing_form_; }

  /// Inverse Killing metric; CheckFailure if the algebra is not semisimple.
  const Matrix& killing_inverse() const {
    if (!killing_inverse_) {
      try {
        killing_inverse_ = killing_form_.inverse();
      } catch (const std::domain_error&) {
        throw CheckFailure("killing-degenerate",
                           name_ + ": Killing form is singular; index raising undefined");
      }
    }
    return *killing_inverse_;
  }

  /// Matrix commutator of basis elements (requires generators).
  Matrix bracket(int i, int j) const {
    require_generators();
    return commutator(generators_[i], generators_[j]);
  }

  /// Exact closure check: [X_i, X_j] - C_ij^k X_k == 0 for all pairs.
  /// Returns the violating (i, j) if any.
  std::optional<std::pair<int, int>> closure_witness() const {
    if (generators_.empty()) return std::nullopt;
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j) {
        Matrix r = bracket(i, j);
        for (const auto& [k, v] : bracket_coeffs(i, j)) r -= v * generators_[k];
        if (!r.is_zero()) return std::make_pair(i, j);
      }
    return std::nullopt;
  }

  /// Exact Jacobi check on the structure constants:
  /// sum_rho C_ij^rho C_{rho k}^sigma + cyclic == 0. Returns a violating
  /// (i, j, k, sigma) if any.
  std::optional<std::array<int, 4>> jacobi_witness() const {
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j)
        for (int k = j + 1; k < dim_; ++k)
          for (int s = 0; s < dim_; ++s) {
            Scalar acc;
            for (const auto& [r, v] : bracket_coeffs(i, j)) acc += v * c(r, k, s);
            for (const auto& [r, v] : bracket_coeffs(j, k)) acc += v * c(r, i, s);
            for (const auto& [r, v] : bracket_coeffs(k, i)) acc += v * c(r, j, s);
            if (!acc.is_zero()) return std::array<int, 4>{i, j, k, s};
          }
    return std::nullopt;
  }

  /// Throws CheckFailure with a concrete witness if closure or Jacobi fails.
  void verify() const {
    if (auto w = closure_witness()) {
      std::ostringstream os;
      os << "[X_" << w->first << ", X_" << w->second << "] leaves the basis span";
      throw CheckFailure("closure-violation", name_ + ": closure failed", os.str());
    }
    if (auto w = jacobi_witness()) {
      std::ostringstream os;
      os << "Jacobi residual component (i,j,k,sigma)=(" << (*w)[0] << "," << (*w)[1] << ","
         << (*w)[2] << "," << (*w)[3] << ") is nonzero";
      throw CheckFailure("jacobi-violation", name_ + ": Jacobi identity failed", os.str());
    }
  }

  /// Fault injection: adds delta to C_ij^k (and -delta to C_ji^k). The
  /// object is left in a deliberately inconsistent state for the checkers
  /// to detect; nothing is re-verified here.
  void mutate_structure(int i, int j, int k, const Scalar& delta) {
    if (i < 0 || j < 0 || k < 0 || i >= dim_ || j >= dim_ || k >= dim_ || i == j)
      throw CheckFailure("mutate-range", name_ + ": mutation indices out of range");
    c_flat_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k] += delta;
    c_flat_[(static_cast<std::size_t>(j) * dim_ + i) * dim_ + k] -= delta;
    rebuild_views();
    killing_inverse_.reset(); // forms remain those of the unmutated algebra
  }

  /// Builds from a matrix basis. Structure constants are solved through the
  /// trace form when it is invertible (C_ij^k = B^{km} Tr([X_i,X_j] X_m)),
  /// and by exact vectorized expansion in the basis otherwise (nilpotent
  /// bases have degenerate trace forms). Closure and Jacobi are verified.
  static LieAlgebra from_generators(const std::string& name, std::vector<Matrix> gens) {
    if (gens.empty()) throw CheckFailure("empty-basis", name + ": no generators");
    LieAlgebra g;
    g.name_ = name;
    g.dim_ = static_cast<int>(gens.size());
    g.generators_ = std::move(gens);
    const int n = g.dim_;

    g.trace_form_ = Matrix(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Scalar t = (g.generators_[i] * g.generators_[j]).trace();
        g.trace_form_.at(i, j) = t;
        g.trace_form_.at(j, i) = t;
      }

    bool trace_invertible = true;
    Matrix binv;
    try {
      binv = g.trace_form_.inverse();
    } catch (const std::domain_error&) {
      trace_invertible = false;
    }

    g.c_flat_.assign(static_cast<std::size_t>(n) * n * n, Scalar());
    if (trace_invertible) {
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          Matrix br = commutator(g.generators_[i], g.generators_[j]);
          std::vector<Scalar> rhs(n);
          for (int m = 0; m < n; ++m) rhs[m] = (br * g.generators_[m]).trace();
          for (int k = 0; k < n; ++k) {
            Scalar ck;
            for (int m = 0; m < n; ++m) ck += binv.at(k, m) * rhs[m];
            g.c_flat_[(static_cast<std::size_t>(i) * n + j) * n + k] = ck;
            g.c_flat_[(static_cast<std::size_t>(j) * n + i) * n + k] = -ck;
          }
        }
    } else {
      // vectorize the basis and solve [X_i, X_j] = C_ij^k X_k exactly
      const int sz = g.generators_[0].rows();
      Matrix v(sz * sz, n);
      for (int k = 0; k < n; ++k)
        for (int r = 0; r < sz; ++r)
          for (int c = 0; c < sz; ++c) v.at(r * sz + c, k) = g.generators_[k].at(r, c);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          Matrix br = commutator(g.generators_[i], g.generators_[j]);
          std::vector<Scalar> rhs(sz * sz);
          for (int r = 0; r < sz; ++r)
            for (int c = 0; c < sz; ++c) rhs[r * sz + c] = br.at(r, c);
          auto sol = v.solve(rhs);
          if (!sol) {
            std::ostringstream os;
            os << "[X_" << i << ", X_" << j << "] is outside span{X_k}";
            throw CheckFailure("closure-violation", name + ": basis does not close", os.str());
          }
          for (int k = 0; k < n; ++k) {
            g.c_flat_[(static_cast<std::size_t>(i) * n + j) * n + k] = (*sol)[k];
            g.c_flat_[(static_cast<std::size_t>(j) * n + i) * n + k] = -(*sol)[k];
          }
        }
    }

    g.rebuild_views();
    g.compute_killing();
    g.verify();
    return g;
  }

  /// Builds an abstract algebra from explicit structure constants
  /// (entries (i, j, k) -> C_ij^k given for i < j). Jacobi is verified.
  static LieAlgebra from_structure(const std::string& name, int dim,
                                   const std::vector<std::tuple<int, int, int, Scalar>>& entries) {
    LieAlgebra g;
    g.name_ = name;
    g.dim_ = dim;
    g.trace_form_ = Matrix(dim, dim);
    g.c_flat_.assign(static_cast<std::size_t>(dim) * dim * dim, Scalar());
    for (const auto& [i, j, k, v] : entries) {
      if (i >= j) throw CheckFailure("structure-order", name + ": entries must have i < j");
      g.c_flat_[(static_cast<std::size_t>(i) * dim + j) * dim + k] += v;
      g.c_flat_[(static_cast<std::size_t>(j) * dim + i) * dim + k] -= v;
    }
    g.rebuild_views();
    g.compute_killing();
    g.verify();
    return g;
  }

private:
  void require_generators() const {
    if (generators_.empty())
      throw CheckFailure("abstract-algebra", name_ + ": operation requires a matrix basis");
  }

  void rebuild_views() {
    const int n = dim_;
    c_pairs_.assign(static_cast<std::size_t>(n) * n, {});
    c_upper_.assign(n, AltTensor(2, n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const Scalar& v = c(i, j, k);
          if (v.is_zero()) continue;
          c_pairs_[static_cast<std::size_t>(i) * n + j].emplace_back(k, v);
          if (i < j) c_upper_[k].set({i, j}, v);
        }
  }

  void compute_killing() {
    const int n = dim_;
    std::vector<Matrix> ads;
    ads.reserve(n);
    for (int i = 0; i < n; ++i) ads.push_back(ad(i));
    killing_form_ = Matrix(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Scalar t = (ads[i] * ads[j]).trace();
        killing_form_.at(i, j) = t;
        killing_form_.at(j, i) = t;
      }
  }

  std::string name_;
  int dim_ = 0;
  std::vector<Matrix> generators_;
  std::vector<Scalar> c_flat_;
  std::vector<std::vector<std::pair<int, Scalar>>> c_pairs_;
  std::vector<AltTensor> c_upper_;
  Matrix trace_form_, killing_form_;
  mutable std::optional<Matrix> killing_inverse_;
};

// ---------------------------------------------------------------------------
// Constructions of the classical families (exact rational matrix bases).
// ---------------------------------------------------------------------------

namespace detail {

inline Matrix unit_matrix(int n, int r, int c, const Scalar& v) {
  Matrix m(n, n);
  m.at(r, c) = v;
  return m;
}

/// su(n): anti-hermitian traceless, scaled so that n = 2 reproduces the
/// X_a = -(i/2) sigma_a basis exactly. For each pair j < k (lexicographic):
/// -(i/2)(E_jk + E_kj), then -(1/2)(E_jk - E_kj); then the n-1 diagonals
/// -(i/2)(E_jj - E_{j+1,j+1}). All entries lie in Q(i); no radicals.
inline std::vector<Matrix> su_basis(int n) {
  std::vector<Matrix> b;
  const Scalar mih = Scalar(Rational(0), Rational(-1, 2)); // -i/2
  const Scalar mh = Scalar(Rational(-1, 2));
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      Matrix s(n, n);
      s.at(j, k) = mih;
      s.at(k, j) = mih;
      b.push_back(s);
      Matrix a(n, n);
      a.at(j, k) = mh;
      a.at(k, j) = -mh;
      b.push_back(a);
    }
  for (int j = 0; j + 1 < n; ++j) {
    Matrix d(n, n);
    d.at(j, j) = mih;
    d.at(j + 1, j + 1) = -mih;
    b.push_back(d);
  }
  return b;
}

/// so(n): real antisymmetric, M_jk = E_jk - E_kj for j < k.
inline std::vector<Matrix> so_basis(int n) {
  std::vector<Matrix> b;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      Matrix m(n, n);
      m.at(j, k) = Scalar(1);
      m.at(k, j) = Scalar(-1);
      b.push_back(m);
    }
  return b;
}

/// sp(l) as the rational symplectic algebra sp(2l): X = [[A, B], [C, -A^T]]
/// with B, C symmetric. Basis order: A units (row-major), B symmetric units
/// (diagonal then off-diagonal, row-major), then C likewise.
inline std::vector<Matrix> sp_basis(int l) {
  const int n = 2 * l;
  std::vector<Matrix> b;
  for (int r = 0; r < l; ++r)
    for (int c = 0; c < l; ++c) {
      Matrix m(n, n);
      m.at(r, c) = Scalar(1);
      m.at(l + c, l + r) = Scalar(-1);
      b.push_back(m);
    }
  for (int r = 0; r < l; ++r)
    for (int c = r; c < l; ++c) {
      Matrix m(n, n);
      m.at(r, l + c) = Scalar(1);
      m.at(c, l + r) = Scalar(1);
      b.push_back(m);
    }
  for (int r = 0; r < l; ++r)
    for (int c = r; c < l; ++c) {
      Matrix m(n, n);
      m.at(l + r, c) = Scalar(1);
      m.at(l + c, r) = Scalar(1);
      b.push_back(m);
    }
  return b;
}

} // namespace detail

/// Named constructions. Classical labels: "A<l>" (su(l+1), l >= 1),
/// "B<l>" (so(2l+1), l >= 2), "C<l>" (sp(l), l >= 3), "D<l>" (so(2l), l >= 3).
/// Low-rank coincidences are permitted by construction and documented:
/// D3 = A3 (so(6) ~ su(4)); B2 ~ C2 and D2 = A1 + A1 are excluded ranks.
/// Also: "abelian:N" (commuting diagonal basis) and "heisenberg" (nilpotent
/// 3x3 upper triangular). Exceptional labels are catalog-only and rejected.
inline LieAlgebra build_algebra(const std::string& label) {
  auto parse_rank = [&](std::size_t from) -> int {
    int rank = 0;
    if (from >= label.size()) return -1;
    for (std::size_t p = from; p < label.size(); ++p) {
      if (label[p] < '0' || label[p] > '9') return -1;
      rank = rank * 10 + (label[p] - '0');
    }
    return rank;
  };
  if (label.rfind("abelian:", 0) == 0) {
    int n = parse_rank(8);
    if (n < 1) throw CheckFailure("bad-label", "abelian:N requires N >= 1: " + label);
    std::vector<Matrix> gens;
    for (int j = 0; j < n; ++j) gens.push_back(detail::unit_matrix(n, j, j, Scalar(1)));
    return LieAlgebra::from_generators(label, std::move(gens));
  }
  if (label == "heisenberg") {
    std::vector<Matrix> gens;
    gens.push_back(detail::unit_matrix(3, 0, 1, Scalar(1)));
    gens.push_back(detail::unit_matrix(3, 1, 2, Scalar(1)));
    gens.push_back(detail::unit_matrix(3, 0, 2, Scalar(1)));
    return LieAlgebra::from_generators(label, std::move(gens));
  }
  if (label.size() >= 2) {
    const char series = label[0];
    const int l = parse_rank(1);
    if (l >= 1) {
      switch (series) {
        case 'A':
          return LieAlgebra::from_generators(label, detail::su_basis(l + 1));
        case 'B':
          if (l < 2)
            throw CheckFailure("bad-rank", "B requires rank >= 2 (B1 coincides with A1)");
          return LieAlgebra::from_generators(label, detail::so_basis(2 * l + 1));
        case 'C':
          if (l < 3)
            throw CheckFailure("bad-rank", "C requires rank >= 3 (C2 coincides with B2)");
          return LieAlgebra::from_generators(label, detail::sp_basis(l));
        case 'D':
          if (l < 3)
            throw CheckFailure("bad-rank", "D requires rank >= 3 (D2 is not simple)");
          return LieAlgebra::from_generators(label, detail::so_basis(2 * l));
        case 'E':
        case 'F':
        case 'G':
          throw CheckFailure("catalog-only",
                             label + ": exceptional algebras are catalog entries only; "
                                     "no exact matrix construction is provided");
        default:
          break;
      }
    }
  }
  throw CheckFailure("bad-label", "unrecognized algebra label: " + label);
}

// ---------------------------------------------------------------------------
// Representations.
// ---------------------------------------------------------------------------

/// Family of matrices rho(X_i) acting on an auxiliary space V; verified to
/// satisfy rho([X_i,X_j]) = [rho(X_i), rho(X_j)] at construction.
struct Representation {
  int vdim = 1;
  std::vector<Matrix> rho;
  std::string kind = "trivial";

  bool is_trivial() const { return kind == "trivial"; }

  static Representation trivial(const LieAlgebra& g) {
    Representation r;
    r.vdim = 1;
    r.kind = "trivial";
    r.rho.assign(g.dim(), Matrix(1, 1));
    return r;
  }

  static Representation defining(const LieAlgebra& g) {
    Representation r;
    r.vdim = g.matrix_size();
    r.kind = "defining";
    r.rho = g.generators();
    if (r.rho.empty())
      throw CheckFailure("abstract-algebra", g.name() + ": no defining representation");
    r.verify(g);
    return r;
  }

  static Representation adjoint(const LieAlgebra& g) {
    Representation r;
    r.vdim = g.dim();
    r.kind = "adjoint";
    for (int i = 0; i < g.dim(); ++i) r.rho.push_back(g.ad(i));
    r.verify(g);
    return r;
  }

  void verify(const LieAlgebra& g) const {
    for (int i = 0; i < g.dim(); ++i)
      for (int j = i + 1; j < g.dim(); ++j) {
        Matrix lhs = commutator(rho[i], rho[j]);
        for (const auto& [k, v] : g.bracket_coeffs(i, j)) lhs -= v * rho[k];
        if (!lhs.is_zero()) {
          std::ostringstream os;
          os << "rho([X_" << i << ",X_" << j << "]) != [rho X_" << i << ", rho X_" << j << "]";
          throw CheckFailure("rep-violation", g.name() + ": not a representation", os.str());
        }
      }
  }
};

// ---------------------------------------------------------------------------
// Central extension by a 2-cocycle.
// ---------------------------------------------------------------------------

/// g extended by a central Xi with [X_i, X_j]~ = C_ij^k X_k + omega_ij Xi.
/// omega must be a 2-cocycle of g with trivial coefficients (checked; the
/// violated 3-tuple is reported otherwise). The result is abstract.
inline LieAlgebra central_extend(const LieAlgebra& g, const AltTensor& omega) {
  if (omega.degree() != 2 || omega.dim() != g.dim())
    throw CheckFailure("shape", "central_extend: omega must be a 2-form on g");
  const int n = g.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        // (s omega)_{ijk} = -C_ij^r w_rk + C_ik^r w_rj - C_jk^r w_ri
        Scalar acc;
        for (int r = 0; r < n; ++r) {
          acc -= g.c(i, j, r) * omega.component({r, k});
          acc += g.c(i, k, r) * omega.component({r, j});
          acc -= g.c(j, k, r) * omega.component({r, i});
        }
        if (!acc.is_zero()) {
          std::ostringstream os;
          os << "(s omega)_{" << i << "," << j << "," << k << "} = " << acc.str();
          throw CheckFailure("not-a-cocycle",
                             "central_extend: omega fails the 2-cocycle condition", os.str());
        }
      }
  std::vector<std::tuple<int, int, int, Scalar>> entries;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      for (const auto& [k, v] : g.bracket_coeffs(i, j)) entries.emplace_back(i, j, k, v);
      Scalar w = omega.component({i, j});
      if (!w.is_zero()) entries.emplace_back(i, j, n, w);
    }
  return LieAlgebra::from_structure(g.name() + "+center", n + 1, entries);
}

} // namespace liecoh
