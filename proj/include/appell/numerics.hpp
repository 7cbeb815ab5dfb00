#pragma once

// Pochhammer symbols, the scaled discrete factor, binomials and the complex
// gamma function.

#include <cmath>
#include <cstdint>
#include <numbers>

#include "appell/types.hpp"

namespace appell {

// (a)_n = a (a+1) ... (a+n-1), computed by iterated multiplication so that
// hits on nonpositive integers give exact zeros.
template <class F>
F rising_factorial(const F& a, long n) {
  F r = field<F>(1);
  for (long i = 0; i < n; ++i) r *= a + field<F>(i);
  return r;
}

// Signed discrete factor (-1)^{mk} (-t)_{mk}, equal to the falling product
// t (t-1) ... (t-mk+1). Terminates exactly: zero once mk > t for integer t.
template <class F>
F pochhammer_scaled(const F& t, int k, long m) {
  F r = field<F>(1);
  const long q = m * static_cast<long>(k);
  for (long i = 0; i < q; ++i) r *= t - field<F>(i);
  return r;
}

// Alternate route through the factorization
//   (-t)_{mk} = k^{mk} prod_{i=0}^{k-1} ((-t+i)/k)_m,
// kept as an independent cross-check of the direct product.
template <class F>
F pochhammer_scaled_factorized(const F& t, int k, long m) {
  if (k == 0 || m == 0) return field<F>(1);
  F r = field<F>(1);
  const F kf = field<F>(k);
  for (int i = 0; i < k; ++i) r *= rising_factorial((field<F>(i) - t) / kf, m);
  const long q = m * static_cast<long>(k);
  for (long i = 0; i < q; ++i) r *= kf;
  // restore the sign convention (-1)^{mk} (-t)_{mk}
  if (q % 2 != 0) r = -r;
  return r;
}

inline long long binomial(int r, int s) {
  if (r < 0 || s < 0) throw ValidityError("binomial: negative argument");
  if (s > r) return 0;
  if (s > r - s) s = r - s;
  long long res = 1;
  for (int i = 1; i <= s; ++i) {
    res = res * (r - s + i) / i;  // exact at every step
  }
  return res;
}

inline long long factorial_ll(int n) {
  long long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline Rational rational_factorial(int n) {
  Rational r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Lanczos approximation (g = 7, 9 coefficients), reflected for Re(z) < 0.5.
// Relative accuracy ~1e-13 over the parameter ranges used here.
inline Cplx complex_gamma(Cplx z) {
  using std::numbers::pi;
  if (std::abs(z.imag()) < 1e-12) {
    double r = std::round(z.real());
    if (r <= 0.0 && std::abs(z.real() - r) < 1e-12)
      throw PoleError("gamma: pole at nonpositive integer");
  }
  static const double p[9] = {0.99999999999980993,  676.5203681218851,
                              -1259.1392167224028,  771.32342877765313,
                              -176.61502916214059,  12.507343278686905,
                              -0.13857109526572012, 9.9843695780195716e-6,
                              1.5056327351493116e-7};
  if (z.real() < 0.5) {
    return pi / (std::sin(pi * z) * complex_gamma(Cplx(1.0) - z));
  }
  z -= 1.0;
  Cplx x = p[0];
  for (int i = 1; i < 9; ++i) x += p[i] / (z + Cplx(static_cast<double>(i), 0.0));
  Cplx t = z + Cplx(7.5);
  return std::sqrt(2.0 * pi) * std::pow(t, z + Cplx(0.5)) * std::exp(-t) * x;
}

}  // namespace appell
