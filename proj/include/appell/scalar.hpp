#pragma once

// Scalar types shared by every module: std::complex<double> for the floating
// path and an exact Gaussian-rational scalar for coefficient-level checks.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

namespace appell {

using Cplx = std::complex<double>;
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Complex number with exact rational components. Division is exact; division
// by zero throws.
struct ExactScalar {
  Rational re{0};
  Rational im{0};

  ExactScalar() = default;
  ExactScalar(long v) : re(v) {}
  ExactScalar(Rational r) : re(std::move(r)) {}
  ExactScalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static ExactScalar ratio(long num, long den) {
    return ExactScalar(Rational(num, den));
  }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  ExactScalar& operator+=(const ExactScalar& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ExactScalar& operator-=(const ExactScalar& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  ExactScalar& operator*=(const ExactScalar& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  ExactScalar& operator/=(const ExactScalar& o) {
    Rational den = o.re * o.re + o.im * o.im;
    if (den == 0) throw std::domain_error("ExactScalar: division by zero");
    Rational r = (re * o.re + im * o.im) / den;
    Rational i = (im * o.re - re * o.im) / den;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }
  friend ExactScalar operator-(const ExactScalar& a) { return ExactScalar(-a.re, -a.im); }
  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }
};

inline Cplx to_cplx(const Cplx& z) { return z; }
inline Cplx to_cplx(const ExactScalar& z) {
  return {static_cast<double>(z.re), static_cast<double>(z.im)};
}

inline double mag(const Cplx& z) { return std::abs(z); }
inline double mag(const ExactScalar& z) { return std::abs(to_cplx(z)); }

inline bool exactly_zero(const Cplx& z) { return z == Cplx(0.0); }
inline bool exactly_zero(const ExactScalar& z) { return z.is_zero(); }

template <class F>
F field(long v);
template <>
inline Cplx field<Cplx>(long v) {
  return Cplx(static_cast<double>(v));
}
template <>
inline ExactScalar field<ExactScalar>(long v) {
  return ExactScalar(v);
}

template <class F>
F field_rat(const Rational& q);
template <>
inline Cplx field_rat<Cplx>(const Rational& q) {
  return Cplx(static_cast<double>(q));
}
template <>
inline ExactScalar field_rat<ExactScalar>(const Rational& q) {
  return ExactScalar(q);
}

// Values within 1e-9 of a nonnegative integer count as discrete; this is what
// decides whether a series factor terminates the lattice.
inline bool as_nonneg_int(const Cplx& t, long& out) {
  if (std::abs(t.imag()) > 1e-9) return false;
  double r = std::round(t.real());
  if (std::abs(t.real() - r) > 1e-9 || r < 0.0) return false;
  out = static_cast<long>(r);
  return true;
}
inline bool as_nonneg_int(const ExactScalar& t, long& out) {
  if (!(t.im == 0)) return false;
  if (denominator(t.re) != 1) return false;
  if (t.re < 0) return false;
  out = static_cast<long>(numerator(t.re));
  return true;
}

// Nonpositive integers up to rounding; used for pole checks on lower
// parameters and for upper-parameter termination in the general double series.
inline bool as_nonpos_int(const Cplx& z, long& out, double tol = 1e-9) {
  if (std::abs(z.imag()) > tol) return false;
  double r = std::round(z.real());
  if (std::abs(z.real() - r) > tol || r > 0.0) return false;
  out = static_cast<long>(-r);
  return true;
}
inline bool as_nonpos_int(const ExactScalar& z, long& out) {
  if (!(z.im == 0)) return false;
  if (denominator(z.re) != 1) return false;
  if (z.re > 0) return false;
  out = static_cast<long>(-numerator(z.re));
  return true;
}

inline bool is_nonpos_int(const Cplx& z, double tol = 1e-12) {
  long dummy;
  return as_nonpos_int(z, dummy, tol);
}
inline bool is_nonpos_int(const ExactScalar& z) {
  long dummy;
  return as_nonpos_int(z, dummy);
}

}  // namespace appell
