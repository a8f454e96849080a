#pragma once

#include "liecoh/multi_index.hpp"
#include "liecoh/scalar.hpp"

#include <map>
#include <stdexcept>

namespace liecoh {

/// Sparse covariant tensor with no symmetry assumptions; plain map from index
/// tuples to values. Plumbing type for raw contractions and for feeding the
/// antisymmetrizer / symmetrizer.
class GeneralTensor {
public:
  GeneralTensor(int degree, int dim) : degree_(degree), dim_(dim) {
    if (degree < 0 || dim < 0) throw std::invalid_argument("GeneralTensor: bad shape");
  }

  int degree() const { return degree_; }
  int dim() const { return dim_; }
  const std::map<Index, Scalar>& entries() const { return entries_; }

  Scalar component(const Index& idx) const {
    auto it = entries_.find(idx);
    return it == entries_.end() ? Scalar() : it->second;
  }

  void add(const Index& idx, const Scalar& v) {
    if (static_cast<int>(idx.size()) != degree_)
      throw std::invalid_argument("GeneralTensor: index arity mismatch");
    if (v.is_zero()) return;
    auto [it, inserted] = entries_.emplace(idx, v);
    if (!inserted) {
      it->second += v;
      if (it->second.is_zero()) entries_.erase(it);
    }
  }

  bool is_zero() const { return entries_.empty(); }

private:
  int degree_, dim_;
  std::map<Index, Scalar> entries_;
};

/// Fully antisymmetric covariant tensor, stored sparsely on strictly
/// increasing index tuples. component() resolves permutation parity on the
/// fly; tuples with a repeated index read as zero. Degrees above dim are
/// representable (necessarily the zero tensor).
class AltTensor {
public:
  AltTensor() : degree_(0), dim_(0) {}
  AltTensor(int degree, int dim) : degree_(degree), dim_(dim) {
    if (degree < 0 || dim < 0) throw std::invalid_argument("AltTensor: bad shape");
  }

  int degree() const { return degree_; }
  int dim() const { return dim_; }
  const std::map<Index, Scalar>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  std::size_t nnz() const { return entries_.size(); }

  /// Value at an arbitrary index tuple (any order, repeats give zero).
  Scalar component(Index idx) const {
    check_arity(idx);
    int sign = sort_with_parity(idx);
    if (sign == 0) return Scalar();
    auto it = entries_.find(idx);
    if (it == entries_.end()) return Scalar();
    return sign > 0 ? it->second : -it->second;
  }

  /// Sets the canonical (strictly increasing) component.
  void set(const Index& idx, const Scalar& v) {
    check_arity(idx);
    for (std::size_t i = 1; i < idx.size(); ++i)
      if (idx[i] <= idx[i - 1])
        throw std::invalid_argument("AltTensor::set: tuple not strictly increasing");
    if (v.is_zero())
      entries_.erase(idx);
    else
      entries_[idx] = v;
  }

  /// Scatter-accumulates v at an arbitrary tuple, resolving parity.
  void add(Index idx, Scalar v) {
    check_arity(idx);
    if (v.is_zero()) return;
    int sign = sort_with_parity(idx);
    if (sign == 0) return;
    if (sign < 0) v = -v;
    auto it = entries_.find(idx);
    if (it == entries_.end()) {
      entries_.emplace(std::move(idx), std::move(v));
    } else {
      it->second += v;
      if (it->second.is_zero()) entries_.erase(it);
    }
  }

  AltTensor& operator+=(const AltTensor& o) {
    if (o.degree_ != degree_ || o.dim_ != dim_)
      throw std::invalid_argument("AltTensor: shape mismatch in +=");
    for (const auto& [k, v] : o.entries_) add(k, v);
    return *this;
  }
  AltTensor& operator-=(const AltTensor& o) {
    if (o.degree_ != degree_ || o.dim_ != dim_)
      throw std::invalid_argument("AltTensor: shape mismatch in -=");
    for (const auto& [k, v] : o.entries_) add(k, -v);
    return *this;
  }
  AltTensor& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      entries_.clear();
      return *this;
    }
    for (auto& [k, v] : entries_) v *= s;
    return *this;
  }
  friend AltTensor operator+(AltTensor a, const AltTensor& b) { return a += b; }
  friend AltTensor operator-(AltTensor a, const AltTensor& b) { return a -= b; }
  friend AltTensor operator*(const Scalar& s, AltTensor t) { return t *= s; }

  friend bool operator==(const AltTensor& a, const AltTensor& b) {
    return a.degree_ == b.degree_ && a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

private:
  void check_arity(const Index& idx) const {
    if (static_cast<int>(idx.size()) != degree_)
      throw std::invalid_argument("AltTensor: index arity mismatch");
  }

  int degree_, dim_;
  std::map<Index, Scalar> entries_;
};

/// Fully symmetric covariant tensor, stored sparsely on non-decreasing
/// (sorted multiset) index tuples.
class SymTensor {
public:
  SymTensor() : degree_(0), dim_(0) {}
  SymTensor(int degree, int dim) : degree_(degree), dim_(dim) {
    if (degree < 0 || dim < 0) throw std::invalid_argument("SymTensor: bad shape");
  }

  int degree() const { return degree_; }
  int dim() const { return dim_; }
  const std::map<Index, Scalar>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  Scalar component(Index idx) const {
    check_arity(idx);
    std::sort(idx.begin(), idx.end());
    auto it = entries_.find(idx);
    return it == entries_.end() ? Scalar() : it->second;
  }

  void set(Index idx, const Scalar& v) {
    check_arity(idx);
    std::sort(idx.begin(), idx.end());
    if (v.is_zero())
      entries_.erase(idx);
    else
      entries_[std::move(idx)] = v;
  }

  void add(Index idx, const Scalar& v) {
    check_arity(idx);
    if (v.is_zero()) return;
    std::sort(idx.begin(), idx.end());
    auto [it, inserted] = entries_.emplace(std::move(idx), v);
    if (!inserted) {
      it->second += v;
      if (it->second.is_zero()) entries_.erase(it);
    }
  }

  SymTensor& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      entries_.clear();
      return *this;
    }
    for (auto& [k, v] : entries_) v *= s;
    return *this;
  }
  SymTensor& operator-=(const SymTensor& o) {
    if (o.degree_ != degree_ || o.dim_ != dim_)
      throw std::invalid_argument("SymTensor: shape mismatch in -=");
    for (const auto& [k, v] : o.entries_) add(k, -v);
    return *this;
  }
  friend SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }
  friend SymTensor operator*(const Scalar& s, SymTensor t) { return t *= s; }

  friend bool operator==(const SymTensor& a, const SymTensor& b) {
    return a.degree_ == b.degree_ && a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

private:
  void check_arity(const Index& idx) const {
    if (static_cast<int>(idx.size()) != degree_)
      throw std::invalid_argument("SymTensor: index arity mismatch");
  }

  int degree_, dim_;
  std::map<Index, Scalar> entries_;
};

} // namespace liecoh
