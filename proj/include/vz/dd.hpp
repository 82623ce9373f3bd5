#pragma once

/// Double-double arithmetic: an unevaluated sum hi + lo of two IEEE doubles
/// giving about 106 significant bits. Error-free transformations follow
/// Dekker and Knuth; multiplication uses fused multiply-add.
///
/// Must not be compiled with -ffast-math (the error terms would be folded away).

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace vz {

struct dd {
  double hi = 0.0;
  double lo = 0.0;

  constexpr dd() = default;
  constexpr dd(double h) : hi(h), lo(0.0) {}  // NOLINT(google-explicit-constructor)
  constexpr dd(double h, double l) : hi(h), lo(l) {}

  explicit operator double() const { return hi + lo; }
};

namespace dd_detail {

inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline dd quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace dd_detail

inline dd operator-(const dd& a) { return {-a.hi, -a.lo}; }

inline dd operator+(const dd& a, const dd& b) {
  using namespace dd_detail;
  dd s = two_sum(a.hi, b.hi);
  dd t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline dd operator-(const dd& a, const dd& b) { return a + (-b); }

inline dd operator*(const dd& a, const dd& b) {
  using namespace dd_detail;
  dd p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline dd operator*(const dd& a, double b) {
  using namespace dd_detail;
  dd p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline dd operator/(const dd& a, const dd& b) {
  using namespace dd_detail;
  double q1 = a.hi / b.hi;
  dd r = a - b * q1;
  double q2 = r.hi / b.hi;
  r = r - b * q2;
  double q3 = r.hi / b.hi;
  dd q = quick_two_sum(q1, q2);
  return q + dd(q3);
}

inline dd& operator+=(dd& a, const dd& b) { return a = a + b; }
inline dd& operator-=(dd& a, const dd& b) { return a = a - b; }
inline dd& operator*=(dd& a, const dd& b) { return a = a * b; }
inline dd& operator/=(dd& a, const dd& b) { return a = a / b; }

inline bool operator==(const dd& a, const dd& b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(const dd& a, const dd& b) { return !(a == b); }
inline bool operator<(const dd& a, const dd& b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(const dd& a, const dd& b) { return b < a; }
inline bool operator<=(const dd& a, const dd& b) { return !(b < a); }
inline bool operator>=(const dd& a, const dd& b) { return !(a < b); }

inline dd abs(const dd& a) { return a.hi < 0.0 ? -a : a; }

inline dd sqrt(const dd& a) {
  if (a.hi <= 0.0) return dd(0.0);
  double x = std::sqrt(a.hi);
  dd xx = dd_detail::two_prod(x, x);
  dd r = a - xx;
  return dd_detail::quick_two_sum(x, r.hi / (2.0 * x));
}

inline double to_double(const dd& a) { return a.hi + a.lo; }

/// Complex number over double-double components. std::complex<dd> is
/// unspecified by the standard, hence the dedicated type.
struct cdd {
  dd re;
  dd im;

  constexpr cdd() = default;
  constexpr cdd(dd r) : re(r), im(0.0) {}  // NOLINT(google-explicit-constructor)
  constexpr cdd(double r) : re(r), im(0.0) {}  // NOLINT(google-explicit-constructor)
  constexpr cdd(dd r, dd i) : re(r), im(i) {}
  cdd(const std::complex<double>& z) : re(z.real()), im(z.imag()) {}  // NOLINT(google-explicit-constructor)
};

inline cdd operator-(const cdd& a) { return {-a.re, -a.im}; }
inline cdd operator+(const cdd& a, const cdd& b) { return {a.re + b.re, a.im + b.im}; }
inline cdd operator-(const cdd& a, const cdd& b) { return {a.re - b.re, a.im - b.im}; }
inline cdd operator*(const cdd& a, const cdd& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline cdd operator*(const cdd& a, const dd& s) { return {a.re * s, a.im * s}; }
inline cdd operator*(const dd& s, const cdd& a) { return a * s; }
inline dd norm(const cdd& a) { return a.re * a.re + a.im * a.im; }
inline cdd conj(const cdd& a) { return {a.re, -a.im}; }
inline cdd operator/(const cdd& a, const cdd& b) {
  // Power-of-two scaling by the larger component of b keeps |b|^2 in range exactly.
  double m = std::max(std::abs(b.re.hi), std::abs(b.im.hi));
  if (m == 0.0) {
    const double inf = std::numeric_limits<double>::infinity();
    return {dd(inf), dd(inf)};
  }
  int e = std::ilogb(m);
  double down = std::ldexp(1.0, -e);
  cdd bs{b.re * down, b.im * down};
  cdd num = a * conj(bs);
  dd den = norm(bs);
  return {num.re / den * down, num.im / den * down};
}
inline cdd operator/(const cdd& a, const dd& s) { return {a.re / s, a.im / s}; }

inline cdd& operator+=(cdd& a, const cdd& b) { return a = a + b; }
inline cdd& operator-=(cdd& a, const cdd& b) { return a = a - b; }
inline cdd& operator*=(cdd& a, const cdd& b) { return a = a * b; }
inline cdd& operator/=(cdd& a, const cdd& b) { return a = a / b; }

inline bool operator==(const cdd& a, const cdd& b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const cdd& a, const cdd& b) { return !(a == b); }

inline dd abs(const cdd& a) {
  double m = std::max(std::abs(a.re.hi), std::abs(a.im.hi));
  if (m == 0.0 || !std::isfinite(m)) return dd(m);
  int e = std::ilogb(m);
  double down = std::ldexp(1.0, -e);
  cdd as{a.re * down, a.im * down};
  return sqrt(norm(as)) * std::ldexp(1.0, e);
}

}  // namespace vz
