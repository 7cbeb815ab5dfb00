#pragma once

// Lattice term generation and summation over (m, n) for every series family:
// the two discrete forms of F3, their Humbert degenerations, the classical
// F3, the general double hypergeometric series and the one-variable discrete
// 1F0. Summation runs over anti-diagonals m + n = s, which matches the
// (c)_{m+n} coupling and gives a monotone tail estimate.

#include <algorithm>
#include <cmath>
#include <vector>

#include "appell/numerics.hpp"
#include "appell/types.hpp"

namespace appell {

// Every 2-D family reduces to A_{mn} = u1[m] u2[n] joint[m+n] / (lower[m+n] m! n!).
// A cap of -1 means the axis does not terminate.
template <class F>
struct LatticeSeries {
  std::vector<F> u1, u2, joint, lower;
  std::vector<F> inv_mfact, inv_nfact;
  long cap_m = -1, cap_n = -1, cap_s = -1;
};

// Index bound contributed by the factor (-1)^{mk} (-t)_{mk}.
template <class F>
long discrete_cap(const F& t, int k) {
  if (k <= 0) return -1;
  long ti;
  if (!as_nonneg_int(t, ti)) return -1;
  return ti / k;
}

namespace detail {

template <class F>
void fill_inv_factorials(std::vector<F>& out, long len) {
  out.resize(len + 1);
  out[0] = field<F>(1);
  for (long i = 1; i <= len; ++i) out[i] = out[i - 1] / field<F>(i);
}

template <class F>
long axis_len(long cap, int pol_max) {
  return cap >= 0 ? std::min<long>(cap, pol_max) : pol_max;
}

template <class F>
void require_off_poles(const F& c, const char* what) {
  if (is_nonpos_int(c)) throw PoleError(std::string(what) + ": lower parameter is a nonpositive integer");
}

}  // namespace detail

template <class F>
LatticeSeries<F> table_f3d1(const BasicParams1<F>& p, const TruncationPolicy& pol) {
  detail::require_off_poles(p.c, "f3d1");
  LatticeSeries<F> S;
  S.cap_m = discrete_cap(p.t1, p.k1);
  S.cap_n = discrete_cap(p.t2, p.k2);
  const long M = detail::axis_len<F>(S.cap_m, pol.max_m);
  const long N = detail::axis_len<F>(S.cap_n, pol.max_n);
  S.u1.resize(M + 1);
  S.u1[0] = field<F>(1);
  for (long m = 1; m <= M; ++m) {
    F step = (p.a1 + field<F>(m - 1)) * (p.b1 + field<F>(m - 1));
    for (long i = (m - 1) * p.k1; i < m * p.k1; ++i) step *= p.t1 - field<F>(i);
    S.u1[m] = S.u1[m - 1] * step;
  }
  S.u2.resize(N + 1);
  S.u2[0] = field<F>(1);
  for (long n = 1; n <= N; ++n) {
    F step = (p.a2 + field<F>(n - 1)) * (p.b2 + field<F>(n - 1));
    for (long i = (n - 1) * p.k2; i < n * p.k2; ++i) step *= p.t2 - field<F>(i);
    S.u2[n] = S.u2[n - 1] * step;
  }
  S.lower.resize(M + N + 1);
  S.lower[0] = field<F>(1);
  for (long s = 1; s <= M + N; ++s) S.lower[s] = S.lower[s - 1] * (p.c + field<F>(s - 1));
  detail::fill_inv_factorials(S.inv_mfact, M);
  detail::fill_inv_factorials(S.inv_nfact, N);
  return S;
}

template <class F>
LatticeSeries<F> table_f3d2(const BasicParams2<F>& p, const TruncationPolicy& pol) {
  detail::require_off_poles(p.c, "f3d2");
  LatticeSeries<F> S;
  S.cap_s = discrete_cap(p.t, p.k);
  long M = pol.max_m, N = pol.max_n;
  if (S.cap_s >= 0) {
    M = std::min<long>(M, S.cap_s);
    N = std::min<long>(N, S.cap_s);
  }
  S.u1.resize(M + 1);
  S.u1[0] = field<F>(1);
  for (long m = 1; m <= M; ++m)
    S.u1[m] = S.u1[m - 1] * (p.a1 + field<F>(m - 1)) * (p.b1 + field<F>(m - 1));
  S.u2.resize(N + 1);
  S.u2[0] = field<F>(1);
  for (long n = 1; n <= N; ++n)
    S.u2[n] = S.u2[n - 1] * (p.a2 + field<F>(n - 1)) * (p.b2 + field<F>(n - 1));
  S.joint.resize(M + N + 1);
  S.joint[0] = field<F>(1);
  for (long s = 1; s <= M + N; ++s) {
    F step = field<F>(1);
    for (long i = (s - 1) * p.k; i < s * p.k; ++i) step *= p.t - field<F>(i);
    S.joint[s] = S.joint[s - 1] * step;
  }
  S.lower.resize(M + N + 1);
  S.lower[0] = field<F>(1);
  for (long s = 1; s <= M + N; ++s) S.lower[s] = S.lower[s - 1] * (p.c + field<F>(s - 1));
  detail::fill_inv_factorials(S.inv_mfact, M);
  detail::fill_inv_factorials(S.inv_nfact, N);
  return S;
}

enum class XiVariant { Xi1_1, Xi2_1, Xi1_2, Xi2_2 };

// Humbert-type degenerations: same lattice as the parent F3 form with the
// (a2)/(b2) columns removed.
template <class F>
LatticeSeries<F> table_xi(XiVariant v, const BasicParams1<F>& p, const TruncationPolicy& pol) {
  detail::require_off_poles(p.c, "xi");
  LatticeSeries<F> S;
  S.cap_m = discrete_cap(p.t1, p.k1);
  S.cap_n = discrete_cap(p.t2, p.k2);
  const long M = detail::axis_len<F>(S.cap_m, pol.max_m);
  const long N = detail::axis_len<F>(S.cap_n, pol.max_n);
  S.u1.resize(M + 1);
  S.u1[0] = field<F>(1);
  for (long m = 1; m <= M; ++m) {
    F step = (p.a1 + field<F>(m - 1)) * (p.b1 + field<F>(m - 1));
    for (long i = (m - 1) * p.k1; i < m * p.k1; ++i) step *= p.t1 - field<F>(i);
    S.u1[m] = S.u1[m - 1] * step;
  }
  S.u2.resize(N + 1);
  S.u2[0] = field<F>(1);
  const bool with_a2 = (v == XiVariant::Xi1_1);
  for (long n = 1; n <= N; ++n) {
    F step = with_a2 ? (p.a2 + field<F>(n - 1)) : field<F>(1);
    for (long i = (n - 1) * p.k2; i < n * p.k2; ++i) step *= p.t2 - field<F>(i);
    S.u2[n] = S.u2[n - 1] * step;
  }
  S.lower.resize(M + N + 1);
  S.lower[0] = field<F>(1);
  for (long s = 1; s <= M + N; ++s) S.lower[s] = S.lower[s - 1] * (p.c + field<F>(s - 1));
  detail::fill_inv_factorials(S.inv_mfact, M);
  detail::fill_inv_factorials(S.inv_nfact, N);
  return S;
}

template <class F>
LatticeSeries<F> table_xi(XiVariant v, const BasicParams2<F>& p, const TruncationPolicy& pol) {
  detail::require_off_poles(p.c, "xi");
  LatticeSeries<F> S;
  S.cap_s = discrete_cap(p.t, p.k);
  long M = pol.max_m, N = pol.max_n;
  if (S.cap_s >= 0) {
    M = std::min<long>(M, S.cap_s);
    N = std::min<long>(N, S.cap_s);
  }
  S.u1.resize(M + 1);
  S.u1[0] = field<F>(1);
  for (long m = 1; m <= M; ++m)
    S.u1[m] = S.u1[m - 1] * (p.a1 + field<F>(m - 1)) * (p.b1 + field<F>(m - 1));
  S.u2.resize(N + 1);
  S.u2[0] = field<F>(1);
  const bool with_a2 = (v == XiVariant::Xi1_2);
  for (long n = 1; n <= N; ++n)
    S.u2[n] = S.u2[n - 1] * (with_a2 ? (p.a2 + field<F>(n - 1)) : field<F>(1));
  S.joint.resize(M + N + 1);
  S.joint[0] = field<F>(1);
  for (long s = 1; s <= M + N; ++s) {
    F step = field<F>(1);
    for (long i = (s - 1) * p.k; i < s * p.k; ++i) step *= p.t - field<F>(i);
    S.joint[s] = S.joint[s - 1] * step;
  }
  S.lower.resize(M + N + 1);
  S.lower[0] = field<F>(1);
  for (long s = 1; s <= M + N; ++s) S.lower[s] = S.lower[s - 1] * (p.c + field<F>(s - 1));
  detail::fill_inv_factorials(S.inv_mfact, M);
  detail::fill_inv_factorials(S.inv_nfact, N);
  return S;
}

template <class F>
LatticeSeries<F> table_kdf(const BasicKdfSpec<F>& spec, const TruncationPolicy& pol) {
  for (const auto& d : spec.lower_joint) detail::require_off_poles(d, "kdf");
  for (const auto& e : spec.lower_x) detail::require_off_poles(e, "kdf");
  for (const auto& f : spec.lower_y) detail::require_off_poles(f, "kdf");
  LatticeSeries<F> S;
  long cap;
  auto min_cap = [](long cur, long v) { return cur < 0 ? v : std::min(cur, v); };
  for (const auto& b : spec.upper_x)
    if (as_nonpos_int(b, cap)) S.cap_m = min_cap(S.cap_m, cap);
  for (const auto& c : spec.upper_y)
    if (as_nonpos_int(c, cap)) S.cap_n = min_cap(S.cap_n, cap);
  for (const auto& a : spec.upper_joint)
    if (as_nonpos_int(a, cap)) S.cap_s = min_cap(S.cap_s, cap);
  long M = detail::axis_len<F>(S.cap_m, pol.max_m);
  long N = detail::axis_len<F>(S.cap_n, pol.max_n);
  if (S.cap_s >= 0) {
    M = std::min<long>(M, S.cap_s);
    N = std::min<long>(N, S.cap_s);
  }
  S.u1.assign(M + 1, field<F>(1));
  for (long m = 1; m <= M; ++m) {
    F step = field<F>(1);
    for (const auto& b : spec.upper_x) step *= b + field<F>(m - 1);
    for (const auto& e : spec.lower_x) step /= e + field<F>(m - 1);
    S.u1[m] = S.u1[m - 1] * step;
  }
  S.u2.assign(N + 1, field<F>(1));
  for (long n = 1; n <= N; ++n) {
    F step = field<F>(1);
    for (const auto& c : spec.upper_y) step *= c + field<F>(n - 1);
    for (const auto& f : spec.lower_y) step /= f + field<F>(n - 1);
    S.u2[n] = S.u2[n - 1] * step;
  }
  S.joint.assign(M + N + 1, field<F>(1));
  for (long s = 1; s <= M + N; ++s) {
    F step = field<F>(1);
    for (const auto& a : spec.upper_joint) step *= a + field<F>(s - 1);
    S.joint[s] = S.joint[s - 1] * step;
  }
  S.lower.assign(M + N + 1, field<F>(1));
  for (long s = 1; s <= M + N; ++s) {
    F step = field<F>(1);
    for (const auto& d : spec.lower_joint) step *= d + field<F>(s - 1);
    S.lower[s] = S.lower[s - 1] * step;
  }
  detail::fill_inv_factorials(S.inv_mfact, M);
  detail::fill_inv_factorials(S.inv_nfact, N);
  return S;
}

// Anti-diagonal summation with a per-term weight W(m, n). Detects divergence
// on a run of growing term magnitudes and estimates the tail geometrically.
template <class WFn>
Evaluation sum_lattice(const LatticeSeries<Cplx>& S, const Point& pt,
                       const TruncationPolicy& pol, WFn&& weight) {
  const long Marr = static_cast<long>(S.u1.size()) - 1;
  const long Narr = static_cast<long>(S.u2.size()) - 1;
  const long M = exactly_zero(pt.x) ? 0 : Marr;
  const long N = exactly_zero(pt.y) ? 0 : Narr;
  long s_hi = M + N;
  if (S.cap_s >= 0) s_hi = std::min(s_hi, S.cap_s);

  const bool m_ends = exactly_zero(pt.x) || (S.cap_m >= 0 && S.cap_m <= pol.max_m);
  const bool n_ends = exactly_zero(pt.y) || (S.cap_n >= 0 && S.cap_n <= pol.max_n);
  const bool finite = (m_ends && n_ends) || S.cap_s >= 0;

  std::vector<Cplx> px(M + 1), py(N + 1);
  px[0] = Cplx(1.0);
  for (long m = 1; m <= M; ++m) px[m] = px[m - 1] * pt.x;
  py[0] = Cplx(1.0);
  for (long n = 1; n <= N; ++n) py[n] = py[n - 1] * pt.y;

  Evaluation ev;
  Cplx acc(0.0);
  double prev_diag_mag = -1.0, prev_max_term = -1.0, last_diag_mag = 0.0, rho = 0.0;
  int grow_run = 0;
  bool tail_ok = false;

  for (long s = 0; s <= s_hi; ++s) {
    Cplx diag(0.0);
    double max_term = 0.0;
    const long m_lo = std::max<long>(0, s - N);
    const long m_hi = std::min<long>(s, M);
    for (long m = m_lo; m <= m_hi; ++m) {
      const long n = s - m;
      Cplx term = S.u1[m] * S.u2[n];
      if (!S.joint.empty()) term *= S.joint[s];
      term *= S.inv_mfact[m] * S.inv_nfact[n];
      term /= S.lower[s];
      term *= px[m] * py[n];
      term *= weight(m, n);
      diag += term;
      max_term = std::max(max_term, std::abs(term));
      ++ev.terms_used;
    }
    acc += diag;
    last_diag_mag = std::abs(diag);
    if (!finite) {
      if (prev_max_term >= 0.0 && max_term > prev_max_term)
        ++grow_run;
      else
        grow_run = 0;
      if (grow_run >= pol.divergence_window) {
        ev.value = acc;
        ev.est_error = std::numeric_limits<double>::infinity();
        throw DivergenceDetected("series: growing terms over divergence window", ev);
      }
      prev_max_term = max_term;
      if (prev_diag_mag > 0.0) {
        rho = std::clamp(last_diag_mag / prev_diag_mag, 0.0, 0.9);
      }
      const double est = last_diag_mag / (1.0 - rho);
      if (s >= 2 && est <= pol.tol * std::max(std::abs(acc), 1e-300)) {
        ev.value = acc;
        ev.est_error = est;
        ev.converged = true;
        return ev;
      }
      prev_diag_mag = last_diag_mag;
    }
  }

  ev.value = acc;
  if (finite) {
    ev.terminated = true;
    ev.converged = true;
    ev.est_error = 0.0;
  } else {
    ev.est_error = last_diag_mag / (1.0 - rho);
    tail_ok = ev.est_error <= pol.tol * std::max(std::abs(acc), 1e-300);
    ev.converged = tail_ok;
  }
  return ev;
}

inline Evaluation sum_lattice(const LatticeSeries<Cplx>& S, const Point& pt,
                              const TruncationPolicy& pol) {
  return sum_lattice(S, pt, pol, [](long, long) { return Cplx(1.0); });
}

// Exact-mode summation: only defined when the lattice is finite.
template <class WFn>
ExactScalar sum_lattice_exact(const LatticeSeries<ExactScalar>& S, const ExactPoint& pt,
                              const TruncationPolicy& pol, WFn&& weight) {
  const bool m_ends = exactly_zero(pt.x) || (S.cap_m >= 0 && S.cap_m <= pol.max_m);
  const bool n_ends = exactly_zero(pt.y) || (S.cap_n >= 0 && S.cap_n <= pol.max_n);
  if (!((m_ends && n_ends) || S.cap_s >= 0))
    throw ValidityError("exact mode requires a terminating lattice");
  const long M = exactly_zero(pt.x) ? 0 : static_cast<long>(S.u1.size()) - 1;
  const long N = exactly_zero(pt.y) ? 0 : static_cast<long>(S.u2.size()) - 1;
  long s_hi = M + N;
  if (S.cap_s >= 0) s_hi = std::min(s_hi, S.cap_s);

  std::vector<ExactScalar> px(M + 1), py(N + 1);
  px[0] = ExactScalar(1);
  for (long m = 1; m <= M; ++m) px[m] = px[m - 1] * pt.x;
  py[0] = ExactScalar(1);
  for (long n = 1; n <= N; ++n) py[n] = py[n - 1] * pt.y;

  ExactScalar acc(0);
  for (long s = 0; s <= s_hi; ++s) {
    const long m_lo = std::max<long>(0, s - N);
    const long m_hi = std::min<long>(s, M);
    for (long m = m_lo; m <= m_hi; ++m) {
      const long n = s - m;
      ExactScalar term = S.u1[m] * S.u2[n];
      if (!S.joint.empty()) term *= S.joint[s];
      term *= S.inv_mfact[m] * S.inv_nfact[n];
      term /= S.lower[s];
      term *= px[m] * py[n];
      term *= weight(m, n);
      acc += term;
    }
  }
  return acc;
}

inline ExactScalar sum_lattice_exact(const LatticeSeries<ExactScalar>& S, const ExactPoint& pt,
                                     const TruncationPolicy& pol) {
  return sum_lattice_exact(S, pt, pol, [](long, long) { return ExactScalar(1); });
}

// Lattice coefficient A_{mn} of the first discrete form (without x^m y^n).
template <class F>
F term_f3_disc1(const BasicParams1<F>& p, long m, long n) {
  F lower = rising_factorial(p.c, m + n);
  if (exactly_zero(lower)) throw PoleError("term_f3_disc1: (c)_{m+n} vanishes");
  F num = rising_factorial(p.a1, m) * rising_factorial(p.b1, m) *
          rising_factorial(p.a2, n) * rising_factorial(p.b2, n) *
          pochhammer_scaled(p.t1, p.k1, m) * pochhammer_scaled(p.t2, p.k2, n);
  F mf = field<F>(1), nf = field<F>(1);
  for (long i = 2; i <= m; ++i) mf *= field<F>(i);
  for (long i = 2; i <= n; ++i) nf *= field<F>(i);
  return num / (lower * mf * nf);
}

inline Evaluation eval_f3_disc1(const Params1& p, const Point& pt, const TruncationPolicy& pol) {
  pol.validate();
  return sum_lattice(table_f3d1(p, pol), pt, pol);
}

inline Evaluation eval_f3_disc2(const Params2& p, const Point& pt, const TruncationPolicy& pol) {
  pol.validate();
  return sum_lattice(table_f3d2(p, pol), pt, pol);
}

inline Evaluation eval_kdf(const KdfSpec& spec, const Point& pt, const TruncationPolicy& pol) {
  pol.validate();
  return sum_lattice(table_kdf(spec, pol), pt, pol);
}

inline Evaluation eval_xi(XiVariant v, const Params1& p, const Point& pt,
                          const TruncationPolicy& pol) {
  pol.validate();
  if (v != XiVariant::Xi1_1 && v != XiVariant::Xi2_1)
    throw ValidityError("eval_xi: variant requires the joint-factor parameter record");
  return sum_lattice(table_xi(v, p, pol), pt, pol);
}

inline Evaluation eval_xi(XiVariant v, const Params2& p, const Point& pt,
                          const TruncationPolicy& pol) {
  pol.validate();
  if (v != XiVariant::Xi1_2 && v != XiVariant::Xi2_2)
    throw ValidityError("eval_xi: variant requires the per-axis parameter record");
  return sum_lattice(table_xi(v, p, pol), pt, pol);
}

inline ExactScalar eval_f3_disc1_exact(const ExactParams1& p, const ExactPoint& pt,
                                       const TruncationPolicy& pol) {
  return sum_lattice_exact(table_f3d1(p, pol), pt, pol);
}

inline ExactScalar eval_f3_disc2_exact(const ExactParams2& p, const ExactPoint& pt,
                                       const TruncationPolicy& pol) {
  return sum_lattice_exact(table_f3d2(p, pol), pt, pol);
}

// Classical F3 by an independent route: row-major summation with term-ratio
// recurrences. Serves as the second leg of the k = 0 reduction checks, so it
// must not share the anti-diagonal machinery above.
inline Evaluation eval_f3_classical(Cplx a1, Cplx a2, Cplx b1, Cplx b2, Cplx c,
                                    const Point& pt, const TruncationPolicy& pol) {
  pol.validate();
  if (is_nonpos_int(c)) throw PoleError("f3: c is a nonpositive integer");
  Evaluation ev;
  if (exactly_zero(pt.x) && exactly_zero(pt.y)) {
    ev.value = 1.0;
    ev.terms_used = 1;
    ev.terminated = true;
    ev.converged = true;
    return ev;
  }
  if (std::abs(pt.x) >= 1.0 || std::abs(pt.y) >= 1.0) {
    ev.value = std::numeric_limits<double>::quiet_NaN();
    throw DivergenceDetected("f3: outside the unit bidisc", ev);
  }
  Cplx acc(0.0);
  Cplx head = 1.0;  // A_{0n} y^n
  double prev_row = -1.0, rho = 0.0, last_row = 0.0;
  int tiny_rows = 0;
  long n = 0;
  for (; n <= pol.max_n; ++n) {
    Cplx row(0.0);
    Cplx term = head;
    long m = 0;
    for (; m <= pol.max_m; ++m) {
      row += term;
      ++ev.terms_used;
      if (std::abs(term) <= pol.tol * std::max(std::abs(row), 1e-300) && m >= 2) break;
      term *= (a1 + Cplx(double(m))) * (b1 + Cplx(double(m))) * pt.x /
              ((c + Cplx(double(m + n))) * Cplx(double(m + 1)));
    }
    acc += row;
    last_row = std::abs(row);
    if (prev_row > 0.0) rho = std::clamp(last_row / prev_row, 0.0, 0.9);
    if (last_row <= pol.tol * std::max(std::abs(acc), 1e-300)) {
      if (++tiny_rows >= 2) break;
    } else {
      tiny_rows = 0;
    }
    prev_row = last_row;
    head *= (a2 + Cplx(double(n))) * (b2 + Cplx(double(n))) * pt.y /
            ((c + Cplx(double(n))) * Cplx(double(n + 1)));
  }
  ev.value = acc;
  ev.est_error = last_row / (1.0 - rho);
  ev.converged = ev.est_error <= pol.tol * std::max(std::abs(acc), 1e-300) || tiny_rows >= 2;
  return ev;
}

// One-variable discrete series: sum_m (a)_m (-1)^{mk} (-t)_{mk} z^m / m!.
inline Evaluation eval_1f0_disc(Cplx a, Cplx t, int k, Cplx z, const TruncationPolicy& pol) {
  pol.validate();
  Evaluation ev;
  const long cap = discrete_cap(t, k);
  const long M = exactly_zero(z) ? 0 : (cap >= 0 ? std::min<long>(cap, pol.max_m) : pol.max_m);
  const bool finite = exactly_zero(z) || (cap >= 0 && cap <= pol.max_m);
  Cplx acc(0.0), coef(1.0), zp(1.0);
  double prev = -1.0, rho = 0.0, last = 0.0;
  int grow_run = 0;
  for (long m = 0; m <= M; ++m) {
    Cplx term = coef * zp;
    acc += term;
    ++ev.terms_used;
    last = std::abs(term);
    if (!finite) {
      if (prev >= 0.0 && last > prev)
        ++grow_run;
      else
        grow_run = 0;
      if (grow_run >= pol.divergence_window) {
        ev.value = acc;
        ev.est_error = std::numeric_limits<double>::infinity();
        throw DivergenceDetected("1f0d: growing terms over divergence window", ev);
      }
      if (prev > 0.0) rho = std::clamp(last / prev, 0.0, 0.9);
      if (m >= 2 && last / (1.0 - rho) <= pol.tol * std::max(std::abs(acc), 1e-300)) {
        ev.value = acc;
        ev.est_error = last / (1.0 - rho);
        ev.converged = true;
        return ev;
      }
      prev = last;
    }
    Cplx step = (a + Cplx(double(m))) / Cplx(double(m + 1));
    for (long i = m * k; i < (m + 1) * k; ++i) step *= t - Cplx(double(i));
    coef *= step;
    zp *= z;
  }
  ev.value = acc;
  if (finite) {
    ev.terminated = true;
    ev.converged = true;
  } else {
    ev.est_error = last / (1.0 - rho);
    ev.converged = ev.est_error <= pol.tol * std::max(std::abs(acc), 1e-300);
  }
  return ev;
}

}  // namespace appell
