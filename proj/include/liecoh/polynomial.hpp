#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "liecoh/error.hpp"
#include "liecoh/multi_index.hpp"
#include "liecoh/scalar.hpp"

namespace liecoh {

/// Exact polynomial in `dim` commuting coordinates x_0..x_{dim-1} with Scalar
/// coefficients.  A monomial is stored as its non-decreasing variable
/// multiset, e.g. x_0^2 x_3 <-> (0,0,3); the empty multiset is the constant
/// monomial.  All arithmetic is exact; zero coefficients are pruned.
class PolyFunction {
public:
  PolyFunction() : dim_(0) {}
  explicit PolyFunction(int dim) : dim_(dim) {
    if (dim < 0) throw CheckFailure("shape", "PolyFunction: negative dimension");
  }

  static PolyFunction constant(int dim, const Scalar& c) {
    PolyFunction p(dim);
    p.add_term({}, c);
    return p;
  }

  static PolyFunction coordinate(int dim, int i) {
    PolyFunction p(dim);
    p.add_term({i}, Scalar(1));
    return p;
  }

  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Index, Scalar>& terms() const { return terms_; }

  /// Total degree of the highest monomial (zero polynomial reports 0).
  int degree() const {
    int d = 0;
    for (const auto& [mono, c] : terms_) d = std::max(d, static_cast<int>(mono.size()));
    return d;
  }

  /// Adds c * x^monomial; the multiset is sorted on entry.
  void add_term(Index monomial, const Scalar& c) {
    for (int v : monomial)
      if (v < 0 || v >= dim_)
        throw CheckFailure("shape", "PolyFunction: variable out of range",
                           index_to_string(monomial));
    if (c.is_zero()) return;
    std::sort(monomial.begin(), monomial.end());
    auto it = terms_.find(monomial);
    if (it == terms_.end()) {
      terms_.emplace(std::move(monomial), c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  PolyFunction& operator+=(const PolyFunction& o) {
    require_same(o);
    for (const auto& [mono, c] : o.terms_) add_term(mono, c);
    return *this;
  }

  PolyFunction& operator-=(const PolyFunction& o) {
    require_same(o);
    for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
    return *this;
  }

  friend PolyFunction operator+(PolyFunction a, const PolyFunction& b) {
    a += b;
    return a;
  }

  friend PolyFunction operator-(PolyFunction a, const PolyFunction& b) {
    a -= b;
    return a;
  }

  friend PolyFunction operator*(const PolyFunction& a, const PolyFunction& b) {
    a.require_same(b);
    PolyFunction out(a.dim_);
    Index merged;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        merged.clear();
        std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(),
                   std::back_inserter(merged));
        out.add_term(merged, ca * cb);
      }
    return out;
  }

  friend PolyFunction operator*(const Scalar& c, const PolyFunction& p) {
    PolyFunction out(p.dim_);
    if (c.is_zero()) return out;
    for (const auto& [mono, coef] : p.terms_) out.terms_.emplace(mono, c * coef);
    return out;
  }

  friend PolyFunction operator-(const PolyFunction& p) { return Scalar(-1) * p; }

  /// Exact partial derivative with respect to x_k.
  PolyFunction partial(int k) const {
    if (k < 0 || k >= dim_)
      throw CheckFailure("shape", "PolyFunction: derivative variable out of range");
    PolyFunction out(dim_);
    for (const auto& [mono, c] : terms_) {
      long mult = static_cast<long>(std::count(mono.begin(), mono.end(), k));
      if (mult == 0) continue;
      Index reduced;
      reduced.reserve(mono.size() - 1);
      bool dropped = false;
      for (int v : mono) {
        if (v == k && !dropped) {
          dropped = true;
          continue;
        }
        reduced.push_back(v);
      }
      out.add_term(reduced, Scalar(mult) * c);
    }
    return out;
  }

  /// Evaluates at a point with one Scalar per coordinate.
  Scalar eval(const std::vector<Scalar>& point) const {
    if (static_cast<int>(point.size()) != dim_)
      throw CheckFailure("shape", "PolyFunction: evaluation point has wrong size");
    Scalar total;
    for (const auto& [mono, c] : terms_) {
      Scalar v = c;
      for (int var : mono) v = v * point[static_cast<std::size_t>(var)];
      total += v;
    }
    return total;
  }

  bool operator==(const PolyFunction& o) const {
    return dim_ == o.dim_ && terms_ == o.terms_;
  }
  bool operator!=(const PolyFunction& o) const { return !(*this == o); }

  /// Human-readable rendering, e.g. "(3/2)*x0^2*x3 + (-1/1)*x5".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [mono, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.str() + ")";
      std::size_t i = 0;
      while (i < mono.size()) {
        std::size_t j = i;
        while (j < mono.size() && mono[j] == mono[i]) ++j;
        s += "*x" + std::to_string(mono[i]);
        if (j - i > 1) s += "^" + std::to_string(j - i);
        i = j;
      }
    }
    return s;
  }

private:
  void require_same(const PolyFunction& o) const {
    if (dim_ != o.dim_)
      throw CheckFailure("shape", "PolyFunction: mixed variable spaces");
  }

  int dim_;
  std::map<Index, Scalar> terms_;
};

} // namespace liecoh
