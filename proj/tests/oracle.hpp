#pragma once

// Test-side oracles: plain nested-loop double sums over a fixed grid with
// definitional term ratios. Deliberately independent of the library's
// summation machinery (no anti-diagonals, no caps logic, no tables).

#include <complex>

namespace oracle {

using C = std::complex<double>;

// (-1)^{mk} (-t)_{mk} incremental step from index m to m+1
inline C disc_step(C t, int k, int m) {
  C r = 1.0;
  for (int i = m * k; i < (m + 1) * k; ++i) r *= t - C(double(i));
  return r;
}

inline C f3d1(C a1, C a2, C b1, C b2, C c, C t1, C t2, int k1, int k2, C x, C y, int M, int N) {
  C sum = 0.0;
  C rowhead = 1.0;  // term at (0, n)
  for (int n = 0; n <= N; ++n) {
    C t = rowhead;
    for (int m = 0; m <= M; ++m) {
      sum += t;
      t *= (a1 + C(double(m))) * (b1 + C(double(m))) * disc_step(t1, k1, m) * x /
           ((c + C(double(m + n))) * C(double(m + 1)));
    }
    rowhead *= (a2 + C(double(n))) * (b2 + C(double(n))) * disc_step(t2, k2, n) * y /
               ((c + C(double(n))) * C(double(n + 1)));
  }
  return sum;
}

inline C f3d2(C a1, C a2, C b1, C b2, C c, C tj, int k, C x, C y, int M, int N) {
  C sum = 0.0;
  C rowhead = 1.0;
  for (int n = 0; n <= N; ++n) {
    C t = rowhead;
    for (int m = 0; m <= M; ++m) {
      sum += t;
      t *= (a1 + C(double(m))) * (b1 + C(double(m))) * disc_step(tj, k, m + n) * x /
           ((c + C(double(m + n))) * C(double(m + 1)));
    }
    rowhead *= (a2 + C(double(n))) * (b2 + C(double(n))) * disc_step(tj, k, n) * y /
               ((c + C(double(n))) * C(double(n + 1)));
  }
  return sum;
}

inline C f3_classical(C a1, C a2, C b1, C b2, C c, C x, C y, int M, int N) {
  return f3d1(a1, a2, b1, b2, c, 0.0, 0.0, 0, 0, x, y, M, N);
}

// general double series with joint/x/y upper and lower lists
inline C kdf(const std::vector<C>& uj, const std::vector<C>& ux, const std::vector<C>& uy,
             const std::vector<C>& lj, const std::vector<C>& lx, const std::vector<C>& ly, C x,
             C y, int M, int N) {
  C sum = 0.0;
  C rowhead = 1.0;
  auto mstep = [&](int m, int n) {
    C r = x / C(double(m + 1));
    for (C q : ux) r *= q + C(double(m));
    for (C q : uj) r *= q + C(double(m + n));
    for (C q : lx) r /= q + C(double(m));
    for (C q : lj) r /= q + C(double(m + n));
    return r;
  };
  auto nstep = [&](int n) {
    C r = y / C(double(n + 1));
    for (C q : uy) r *= q + C(double(n));
    for (C q : uj) r *= q + C(double(n));
    for (C q : ly) r /= q + C(double(n));
    for (C q : lj) r /= q + C(double(n));
    return r;
  };
  for (int n = 0; n <= N; ++n) {
    C t = rowhead;
    for (int m = 0; m <= M; ++m) {
      sum += t;
      t *= mstep(m, n);
    }
    rowhead *= nstep(n);
  }
  return sum;
}

inline C xi(int which, C a1, C a2, C b1, C c, C t1, C t2, int k1, int k2, C tj, int kj, C x, C y,
            int M, int N) {
  // which: 11, 21, 12, 22
  C sum = 0.0;
  C rowhead = 1.0;
  const bool v1 = which == 11 || which == 21;
  const bool with_a2 = which == 11 || which == 12;
  for (int n = 0; n <= N; ++n) {
    C t = rowhead;
    for (int m = 0; m <= M; ++m) {
      sum += t;
      C step = (a1 + C(double(m))) * (b1 + C(double(m))) * x /
               ((c + C(double(m + n))) * C(double(m + 1)));
      step *= v1 ? disc_step(t1, k1, m) : disc_step(tj, kj, m + n);
      t *= step;
    }
    C step = y / ((c + C(double(n))) * C(double(n + 1)));
    if (with_a2) step *= a2 + C(double(n));
    step *= v1 ? disc_step(t2, k2, n) : disc_step(tj, kj, n);
    rowhead *= step;
  }
  return sum;
}

}  // namespace oracle
