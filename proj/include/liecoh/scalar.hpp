#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace liecoh {

using Rational = boost::multiprecision::mpq_rational;

/// Exact element of Q(i): re + im*i with arbitrary-precision rational parts.
/// mpq_rational keeps fractions normalized (coprime, positive denominator),
/// so equality of Scalars is plain component equality.
class Scalar {
public:
  Scalar() : re_(0), im_(0) {}
  Scalar(long v) : re_(v), im_(0) {}
  Scalar(int v) : re_(v), im_(0) {}
  Scalar(const Rational& re) : re_(re), im_(0) {}
  Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}
  Scalar(long num, long den) : re_(Rational(num, den)), im_(0) {
    if (den == 0) throw std::invalid_argument("Scalar: zero denominator");
  }

  static Scalar i() { return Scalar(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  Scalar conj() const { return Scalar(re_, -im_); }

  /// |z|^2 = re^2 + im^2, a non-negative rational; zero iff z == 0.
  Rational norm2() const { return re_ * re_ + im_ * im_; }

  Scalar operator-() const { return Scalar(-re_, -im_); }

  Scalar& operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    Rational n = o.norm2();
    if (n == 0) throw std::domain_error("Scalar: division by zero");
    Rational r = (re_ * o.re_ + im_ * o.im_) / n;
    Rational i = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Total order used only for deterministic reporting (witness selection).
  friend bool operator<(const Scalar& a, const Scalar& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

  std::string str() const {
    std::string s = rational_str(re_);
    if (im_ != 0) {
      s += (im_ > 0 ? " + " : " - ");
      Rational a = im_ > 0 ? im_ : Rational(-im_);
      s += rational_str(a) + "*i";
    }
    return s;
  }

  /// Canonical "num/den" rendering, denominator always explicit and positive.
  static std::string rational_str(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
  }

  /// Parses "num/den" or a bare integer "num".
  static Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(s);
    return Rational(s.substr(0, slash)) / Rational(s.substr(slash + 1));
  }

private:
  Rational re_, im_;
};

inline Scalar pow_scalar(Scalar base, unsigned e) {
  Scalar r(1);
  for (; e; --e) r *= base;
  return r;
}

inline Rational factorial(unsigned n) {
  Rational r(1);
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

inline std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (unsigned j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

} // namespace liecoh
