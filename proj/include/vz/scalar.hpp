#pragma once

/// Uniform access to the two complex scalar types used by the polynomial code:
/// std::complex<double> and the double-double cdd.

#include <cmath>
#include <complex>
#include <limits>

#include "vz/dd.hpp"

namespace vz {

using cplx = std::complex<double>;

enum class Precision { Double, Extended };

template <class C>
struct scalar_traits;

template <>
struct scalar_traits<cplx> {
  using real = double;
  static constexpr double unit_roundoff = 0x1p-53;
  static constexpr Precision precision = Precision::Double;
};

template <>
struct scalar_traits<cdd> {
  using real = dd;
  static constexpr double unit_roundoff = 0x1p-104;
  static constexpr Precision precision = Precision::Extended;
};

/// Magnitude rounded to double.
inline double mag(const cplx& z) { return std::abs(z); }
inline double mag(const cdd& z) { return to_double(abs(z)); }

inline cplx to_cd(const cplx& z) { return z; }
inline cplx to_cd(const cdd& z) { return {to_double(z.re), to_double(z.im)}; }

template <class C>
C from_cd(const cplx& z) {
  return C(z);
}

inline bool is_finite(const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
inline bool is_finite(const cdd& z) { return std::isfinite(z.re.hi) && std::isfinite(z.im.hi); }

/// Kahan-compensated complex accumulator (double only; cdd already carries its own error term).
class KahanSum {
 public:
  void add(const cplx& v) {
    cplx y = v - c_;
    cplx t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  cplx value() const { return s_; }

 private:
  cplx s_{0.0, 0.0};
  cplx c_{0.0, 0.0};
};

}  // namespace vz
