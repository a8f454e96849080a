#pragma once

#include "liecoh/multi_index.hpp"
#include "liecoh/scalar.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace liecoh {

/// Dense matrix over the exact scalar field. Sized for the small exact
/// linear algebra this library needs (dim <= a few hundred on the elimination
/// paths); arithmetic never rounds.
class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
  }
  static Matrix zero(int n) { return Matrix(n, n); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Scalar& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Scalar& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  bool is_zero() const {
    for (const auto& v : a_)
      if (!v.is_zero()) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Matrix& operator*=(const Scalar& s) {
    for (auto& v : a_) v *= s;
    return *this;
  }
  friend Matrix operator+(Matrix x, const Matrix& y) { return x += y; }
  friend Matrix operator-(Matrix x, const Matrix& y) { return x -= y; }
  friend Matrix operator*(const Scalar& s, Matrix m) { return m *= s; }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("Matrix: product shape mismatch");
    Matrix z(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int k = 0; k < x.cols_; ++k) {
        const Scalar& xik = x.at(i, k);
        if (xik.is_zero()) continue;
        for (int j = 0; j < y.cols_; ++j) {
          const Scalar& ykj = y.at(k, j);
          if (!ykj.is_zero()) z.at(i, j) += xik * ykj;
        }
      }
    return z;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  Scalar trace() const {
    Scalar t;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
    return t;
  }

  /// Exact rank by Gaussian elimination (first-nonzero pivoting).
  int rank() const {
    Matrix m = *this;
    int rank = 0;
    for (int col = 0; col < cols_ && rank < rows_; ++col) {
      int pivot = -1;
      for (int r = rank; r < rows_; ++r)
        if (!m.at(r, col).is_zero()) {
          pivot = r;
          break;
        }
      if (pivot < 0) continue;
      m.swap_rows(rank, pivot);
      const Scalar inv = Scalar(1) / m.at(rank, col);
      for (int r = rank + 1; r < rows_; ++r) {
        if (m.at(r, col).is_zero()) continue;
        const Scalar f = m.at(r, col) * inv;
        for (int c = col; c < cols_; ++c) m.at(r, c) -= f * m.at(rank, c);
      }
      ++rank;
    }
    return rank;
  }

  /// Exact inverse; throws if singular.
  Matrix inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("Matrix: inverse of non-square");
    Matrix m = *this;
    Matrix inv = identity(rows_);
    for (int col = 0; col < cols_; ++col) {
      int pivot = -1;
      for (int r = col; r < rows_; ++r)
        if (!m.at(r, col).is_zero()) {
          pivot = r;
          break;
        }
      if (pivot < 0) throw std::domain_error("Matrix: singular in inverse()");
      m.swap_rows(col, pivot);
      inv.swap_rows(col, pivot);
      const Scalar d = Scalar(1) / m.at(col, col);
      for (int c = 0; c < cols_; ++c) {
        m.at(col, c) *= d;
        inv.at(col, c) *= d;
      }
      for (int r = 0; r < rows_; ++r) {
        if (r == col || m.at(r, col).is_zero()) continue;
        const Scalar f = m.at(r, col);
        for (int c = 0; c < cols_; ++c) {
          m.at(r, c) -= f * m.at(col, c);
          inv.at(r, c) -= f * inv.at(col, c);
        }
      }
    }
    return inv;
  }

  /// Solves A x = b exactly. Empty optional if inconsistent; if the system is
  /// underdetermined, returns one solution (free variables set to zero).
  std::optional<std::vector<Scalar>> solve(const std::vector<Scalar>& b) const {
    if (static_cast<int>(b.size()) != rows_) throw std::invalid_argument("Matrix: solve shape");
    Matrix m = *this;
    std::vector<Scalar> rhs = b;
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
      int pivot = -1;
      for (int r = row; r < rows_; ++r)
        if (!m.at(r, col).is_zero()) {
          pivot = r;
          break;
        }
      if (pivot < 0) continue;
      m.swap_rows(row, pivot);
      std::swap(rhs[row], rhs[pivot]);
      const Scalar d = Scalar(1) / m.at(row, col);
      for (int c = col; c < cols_; ++c) m.at(row, c) *= d;
      rhs[row] *= d;
      for (int r = 0; r < rows_; ++r) {
        if (r == row || m.at(r, col).is_zero()) continue;
        const Scalar f = m.at(r, col);
        for (int c = col; c < cols_; ++c) m.at(r, c) -= f * m.at(row, c);
        rhs[r] -= f * rhs[row];
      }
      pivot_col.push_back(col);
      ++row;
    }
    for (int r = row; r < rows_; ++r)
      if (!rhs[r].is_zero()) return std::nullopt;
    std::vector<Scalar> x(cols_);
    for (int r = 0; r < row; ++r) x[pivot_col[r]] = rhs[r];
    return x;
  }

  /// Basis of the null space {x : A x = 0}, one column vector per free
  /// variable, exact.
  std::vector<std::vector<Scalar>> nullspace() const {
    Matrix m = *this;
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
      int pivot = -1;
      for (int r = row; r < rows_; ++r)
        if (!m.at(r, col).is_zero()) {
          pivot = r;
          break;
        }
      if (pivot < 0) continue;
      m.swap_rows(row, pivot);
      const Scalar d = Scalar(1) / m.at(row, col);
      for (int c = col; c < cols_; ++c) m.at(row, c) *= d;
      for (int r = 0; r < rows_; ++r) {
        if (r == row || m.at(r, col).is_zero()) continue;
        const Scalar f = m.at(r, col);
        for (int c = col; c < cols_; ++c) m.at(r, c) -= f * m.at(row, c);
      }
      pivot_col.push_back(col);
      ++row;
    }
    std::vector<bool> is_pivot(cols_, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> basis;
    for (int free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<Scalar> v(cols_);
      v[free] = Scalar(1);
      for (int r = 0; r < static_cast<int>(pivot_col.size()); ++r)
        v[pivot_col[r]] = -m.at(r, free);
      basis.push_back(std::move(v));
    }
    return basis;
  }

private:
  void check_same_shape(const Matrix& o) const {
    if (o.rows_ != rows_ || o.cols_ != cols_)
      throw std::invalid_argument("Matrix: shape mismatch");
  }
  void swap_rows(int r1, int r2) {
    if (r1 == r2) return;
    for (int c = 0; c < cols_; ++c) std::swap(at(r1, c), at(r2, c));
  }

  int rows_, cols_;
  std::vector<Scalar> a_;
};

inline Matrix commutator(const Matrix& x, const Matrix& y) { return x * y - y * x; }

/// det of the square minor metric[rows, cols], by signed permutation sum
/// (minors here are tiny: contraction block sizes).
inline Scalar minor_det(const Matrix& m, const Index& rows, const Index& cols) {
  const int s = static_cast<int>(rows.size());
  if (s != static_cast<int>(cols.size())) throw std::invalid_argument("minor_det: shape");
  if (s == 0) return Scalar(1);
  Scalar acc;
  Index perm(s);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Scalar p(1);
    for (int r = 0; r < s; ++r) p *= m.at(rows[r], cols[perm[r]]);
    if (permutation_sign(perm) > 0)
      acc += p;
    else
      acc -= p;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

// ---------------------------------------------------------------------------
// Modular rank (probabilistic fallback for oversized exact eliminations).
// Scalars map to F_p for a random 62-bit prime p = 1 (mod 4); i maps to a
// square root of -1 mod p. The modular rank is a lower bound of the true rank
// and equals it unless the random prime divides a pivot minor.
// ---------------------------------------------------------------------------

namespace modular {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

/// Random 62-bit prime congruent to 1 mod 4.
inline std::uint64_t random_prime(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (;;) {
    std::uint64_t c = (rng() >> 2) | (1ull << 61);
    c -= (c % 4);
    c += 1; // = 1 mod 4
    if (is_prime(c)) return c;
  }
}

/// sqrt(-1) mod p for p = 1 (mod 4): a^((p-1)/4) for a quadratic non-residue a.
inline std::uint64_t imaginary_unit(std::uint64_t p) {
  for (std::uint64_t a = 2;; ++a) {
    if (powmod(a, (p - 1) / 2, p) == p - 1) return powmod(a, (p - 1) / 4, p);
  }
}

/// Residue of a Gaussian rational; throws if a denominator vanishes mod p.
inline std::uint64_t residue(const Scalar& s, std::uint64_t p, std::uint64_t iu) {
  auto rat = [&](const Rational& r) -> std::uint64_t {
    using boost::multiprecision::mpz_int;
    mpz_int num = numerator(r), den = denominator(r);
    mpz_int pn(p);
    mpz_int nm = num % pn;
    if (nm < 0) nm += pn;
    mpz_int dm = den % pn;
    if (dm == 0) throw std::domain_error("modular: denominator divides prime");
    std::uint64_t n64 = static_cast<std::uint64_t>(nm);
    std::uint64_t d64 = static_cast<std::uint64_t>(dm);
    return mulmod(n64, powmod(d64, p - 2, p), p);
  };
  std::uint64_t re = rat(s.re());
  std::uint64_t im = rat(s.im());
  return (re + mulmod(im, iu, p)) % p;
}

/// Rank of a dense residue matrix over F_p, in place.
inline int rank(std::vector<std::vector<std::uint64_t>>& m, std::uint64_t p) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][col] % p != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    std::uint64_t inv = powmod(m[rank][col], p - 2, p);
    for (int r = rank + 1; r < rows; ++r) {
      if (m[r][col] % p == 0) continue;
      std::uint64_t f = mulmod(m[r][col], inv, p);
      for (int c = col; c < cols; ++c) {
        std::uint64_t sub = mulmod(f, m[rank][c], p);
        m[r][c] = (m[r][c] + p - sub) % p;
      }
    }
    ++rank;
  }
  return rank;
}

} // namespace modular

} // namespace liecoh
