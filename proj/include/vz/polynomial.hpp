#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <type_traits>
#include <utility>
#include <vector>

#include "vz/error.hpp"
#include "vz/scalar.hpp"

namespace vz {

/// Dense polynomial, coefficients stored from the constant term upwards.
/// The zero polynomial is the single coefficient {0}.
template <class C>
class Polynomial {
 public:
  Polynomial() : c_{C(0.0)} {}
  explicit Polynomial(std::vector<C> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(C(0.0));
  }
  Polynomial(std::initializer_list<C> coeffs) : Polynomial(std::vector<C>(coeffs)) {}

  static Polynomial constant(const C& a) { return Polynomial(std::vector<C>{a}); }

  /// (z - root)^power
  static Polynomial linear_power(const C& root, int power) {
    Polynomial p = constant(C(1.0));
    for (int k = 0; k < power; ++k) p.mul_linear(root);
    return p;
  }

  static Polynomial from_roots(const std::vector<C>& roots) {
    Polynomial p = constant(C(1.0));
    for (const auto& r : roots) p.mul_linear(r);
    return p;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }
  const std::vector<C>& coeffs() const { return c_; }
  std::vector<C>& coeffs() { return c_; }
  const C& operator[](std::size_t k) const { return c_[k]; }
  C& operator[](std::size_t k) { return c_[k]; }
  const C& leading() const { return c_.back(); }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const C& a) { return a == C(0.0); });
  }

  C operator()(const C& z) const {
    C acc = c_.back();
    for (std::size_t k = c_.size() - 1; k-- > 0;) acc = acc * z + c_[k];
    return acc;
  }

  /// p(z) and p'(z) in one Horner pass.
  std::pair<C, C> eval_with_derivative(const C& z) const {
    C p = c_.back();
    C dp(0.0);
    for (std::size_t k = c_.size() - 1; k-- > 0;) {
      dp = dp * z + p;
      p = p * z + c_[k];
    }
    return {p, dp};
  }

  /// sum |a_k| r^k, the scale against which Horner rounding is measured.
  double abs_bound(double r) const {
    double acc = mag(c_.back());
    for (std::size_t k = c_.size() - 1; k-- > 0;) acc = acc * r + mag(c_[k]);
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<C> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * C(static_cast<double>(k));
    return Polynomial(std::move(d));
  }

  /// In-place multiplication by (z - root).
  void mul_linear(const C& root) {
    c_.push_back(C(0.0));
    for (std::size_t k = c_.size() - 1; k > 0; --k) c_[k] = c_[k - 1] - root * c_[k];
    c_[0] = -(root * c_[0]);
  }

  Polynomial monic() const {
    if (is_zero()) throw Error(ErrorKind::ZeroPolynomial, "cannot normalise the zero polynomial");
    Polynomial out(*this);
    out.trim_exact();
    C lead = out.leading();
    for (auto& a : out.c_) a = a / lead;
    out.c_.back() = C(1.0);
    return out;
  }

  /// Drops exactly-zero leading coefficients.
  void trim_exact() {
    while (c_.size() > 1 && c_.back() == C(0.0)) c_.pop_back();
  }

  /// Coefficients of p(z + a).
  Polynomial taylor_shift(const C& a) const {
    std::vector<C> b = c_;
    const std::size_t n = b.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t k = n - 1; k-- > i;) b[k] = b[k] + a * b[k + 1];
    return Polynomial(std::move(b));
  }

  /// Quotient and remainder of division by a nonzero polynomial.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& den) const {
    Polynomial d(den);
    d.trim_exact();
    if (d.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by zero polynomial");
    std::vector<C> r = c_;
    const int dd_ = d.degree();
    const int nd = degree();
    if (nd < dd_) return {Polynomial(), Polynomial(r)};
    std::vector<C> q(static_cast<std::size_t>(nd - dd_ + 1), C(0.0));
    for (int k = nd - dd_; k >= 0; --k) {
      C f = r[static_cast<std::size_t>(k + dd_)] / d.leading();
      q[static_cast<std::size_t>(k)] = f;
      for (int j = 0; j <= dd_; ++j) r[static_cast<std::size_t>(k + j)] -= f * d[static_cast<std::size_t>(j)];
    }
    r.resize(static_cast<std::size_t>(std::max(dd_, 1)));
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
  }

  template <class D>
  Polynomial<D> cast() const {
    std::vector<D> out;
    out.reserve(c_.size());
    for (const auto& a : c_) {
      if constexpr (std::is_same_v<D, cplx>) {
        out.push_back(to_cd(a));
      } else {
        out.push_back(D(a));
      }
    }
    return Polynomial<D>(std::move(out));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<C> out(std::max(a.size(), b.size()), C(0.0));
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = out[k] + a[k];
    for (std::size_t k = 0; k < b.size(); ++k) out[k] = out[k] + b[k];
    return Polynomial(std::move(out));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<C> out(std::max(a.size(), b.size()), C(0.0));
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = out[k] + a[k];
    for (std::size_t k = 0; k < b.size(); ++k) out[k] = out[k] - b[k];
    return Polynomial(std::move(out));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::vector<C> out(a.size() + b.size() - 1, C(0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
    return Polynomial(std::move(out));
  }

  friend Polynomial operator*(const C& s, const Polynomial& a) {
    Polynomial out(a);
    for (auto& v : out.c_) v = s * v;
    return out;
  }

 private:
  std::vector<C> c_;
};

using DensePolynomial = Polynomial<cplx>;

}  // namespace vz
