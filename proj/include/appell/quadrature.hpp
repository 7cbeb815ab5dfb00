#pragma once

// Gauss rules via Golub-Welsch (symmetric tridiagonal eigenproblem) and the
// integral representations of both discrete F3 forms, each compared against
// direct series evaluation.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "appell/numerics.hpp"
#include "appell/operators.hpp"
#include "appell/series.hpp"

namespace appell {

struct QuadratureRule {
  enum Kind { laguerre, legendre };
  std::vector<double> nodes, weights;
  Kind kind = laguerre;
};

namespace quad_detail {

// Implicit-shift QL iteration on a symmetric tridiagonal matrix, tracking
// only the first row of the eigenvector matrix (all Golub-Welsch needs).
inline void tridiag_eigen_firstrow(std::vector<double>& d, std::vector<double>& e,
                                   std::vector<double>& z) {
  const int n = static_cast<int>(d.size());
  e.push_back(0.0);
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-300 || std::abs(e[m]) <= 1e-16 * dd) break;
      }
      if (m != l) {
        if (iter++ == 50) throw std::runtime_error("tridiagonal eigensolve failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i], b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          double zt = z[i + 1];
          z[i + 1] = s * z[i] + c * zt;
          z[i] = c * z[i] - s * zt;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

inline QuadratureRule golub_welsch(std::vector<double> diag, std::vector<double> off, double mu0,
                                   QuadratureRule::Kind kind) {
  const int n = static_cast<int>(diag.size());
  std::vector<double> z(n, 0.0);
  z[0] = 1.0;
  tridiag_eigen_firstrow(diag, off, z);
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return diag[a] < diag[b]; });
  QuadratureRule rule;
  rule.kind = kind;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = diag[idx[i]];
    rule.weights[i] = mu0 * z[idx[i]] * z[idx[i]];
  }
  return rule;
}

}  // namespace quad_detail

// Rule for int_0^inf e^{-u} f(u) du. Jacobi matrix: diag 2i+1, offdiag i.
inline QuadratureRule gauss_laguerre(int n) {
  if (n < 1 || n > 256) throw ValidityError("gauss_laguerre: order out of range");
  std::vector<double> d(n), e(n > 1 ? n - 1 : 0);
  for (int i = 0; i < n; ++i) d[i] = 2.0 * i + 1.0;
  for (int i = 1; i < n; ++i) e[i - 1] = static_cast<double>(i);
  return quad_detail::golub_welsch(std::move(d), std::move(e), 1.0, QuadratureRule::laguerre);
}

// Rule for int_{-1}^{1} f(u) du. Jacobi matrix: diag 0, offdiag i/sqrt(4i^2-1).
inline QuadratureRule gauss_legendre(int n) {
  if (n < 1 || n > 256) throw ValidityError("gauss_legendre: order out of range");
  std::vector<double> d(n, 0.0), e(n > 1 ? n - 1 : 0);
  for (int i = 1; i < n; ++i) e[i - 1] = i / std::sqrt(4.0 * i * i - 1.0);
  return quad_detail::golub_welsch(std::move(d), std::move(e), 2.0, QuadratureRule::legendre);
}

struct IntegralRepSpec {
  std::string rep_id;
  Variant variant = Variant::V1;
  enum Domain { half_line, simplex } domain = half_line;
  // which parameter supplies the u^{p-1} weight on the half line
  enum WeightSel { w_a1, w_a2, w_b1, w_b2, w_neg_t1, w_neg_t2, w_none } wsel = w_a1;
};

inline const std::vector<IntegralRepSpec>& integral_reps() {
  static const std::vector<IntegralRepSpec> reps = {
      {"d1.simplex", Variant::V1, IntegralRepSpec::simplex, IntegralRepSpec::w_none},
      {"d1.lag.a1", Variant::V1, IntegralRepSpec::half_line, IntegralRepSpec::w_a1},
      {"d1.lag.a2", Variant::V1, IntegralRepSpec::half_line, IntegralRepSpec::w_a2},
      {"d1.lag.b1", Variant::V1, IntegralRepSpec::half_line, IntegralRepSpec::w_b1},
      {"d1.lag.b2", Variant::V1, IntegralRepSpec::half_line, IntegralRepSpec::w_b2},
      {"d1.lag.mt1", Variant::V1, IntegralRepSpec::half_line, IntegralRepSpec::w_neg_t1},
      {"d1.lag.mt2", Variant::V1, IntegralRepSpec::half_line, IntegralRepSpec::w_neg_t2},
      {"d2.simplex", Variant::V2, IntegralRepSpec::simplex, IntegralRepSpec::w_none},
      {"d2.lag.a1", Variant::V2, IntegralRepSpec::half_line, IntegralRepSpec::w_a1},
      {"d2.lag.a2", Variant::V2, IntegralRepSpec::half_line, IntegralRepSpec::w_a2},
      {"d2.lag.b1", Variant::V2, IntegralRepSpec::half_line, IntegralRepSpec::w_b1},
      {"d2.lag.b2", Variant::V2, IntegralRepSpec::half_line, IntegralRepSpec::w_b2},
  };
  return reps;
}

inline const IntegralRepSpec& integral_rep(const std::string& rep_id) {
  for (const auto& r : integral_reps())
    if (r.rep_id == rep_id) return r;
  throw ValidityError("unknown integral representation: " + rep_id);
}

namespace quad_detail {

inline std::vector<Cplx> t_part_list(Cplx t, int k) {
  std::vector<Cplx> v;
  for (int i = 0; i < k; ++i) v.push_back((Cplx(double(i)) - t) / Cplx(double(k)));
  return v;
}

inline double neg_k_pow_k(int k) {
  // (-k)^k with the empty-product convention (-0)^0 = 1
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= -static_cast<double>(k);
  return r;
}

inline void require_pos_re(Cplx v, const char* what) {
  if (!(v.real() > 0.0)) throw ValidityError(std::string("integral rep: Re(") + what + ") must be positive");
}

// Inner functions of the half-line representations at integration variable u.
inline Cplx inner_halfline(const IntegralRepSpec& spec, const Params1& p, const Point& pt,
                           double u, const TruncationPolicy& pol) {
  const Cplx cx = Cplx(neg_k_pow_k(p.k1));
  const Cplx cy = Cplx(neg_k_pow_k(p.k2));
  KdfSpec s;
  s.lower_joint = {p.c};
  Point arg;
  switch (spec.wsel) {
    case IntegralRepSpec::w_a1:
      s.upper_x = {p.b1};
      s.upper_y = {p.a2, p.b2};
      arg = {cx * u * pt.x, cy * pt.y};
      break;
    case IntegralRepSpec::w_a2:
      s.upper_x = {p.a1, p.b1};
      s.upper_y = {p.b2};
      arg = {cx * pt.x, cy * u * pt.y};
      break;
    case IntegralRepSpec::w_b1:
      s.upper_x = {p.a1};
      s.upper_y = {p.a2, p.b2};
      arg = {cx * u * pt.x, cy * pt.y};
      break;
    case IntegralRepSpec::w_b2:
      s.upper_x = {p.a1, p.b1};
      s.upper_y = {p.a2};
      arg = {cx * pt.x, cy * u * pt.y};
      break;
    case IntegralRepSpec::w_neg_t1: {
      s.upper_x = {p.a1, p.b1};
      s.upper_y = {p.a2, p.b2};
      Cplx ux = pt.x;
      for (int i = 0; i < p.k1; ++i) ux *= Cplx(-u);
      arg = {ux, cy * pt.y};
      break;
    }
    case IntegralRepSpec::w_neg_t2: {
      s.upper_x = {p.a1, p.b1};
      s.upper_y = {p.a2, p.b2};
      Cplx vy = pt.y;
      for (int i = 0; i < p.k2; ++i) vy *= Cplx(-u);
      arg = {cx * pt.x, vy};
      break;
    }
    default:
      throw ValidityError("half-line rep without a weight parameter");
  }
  // the t-part upper lists stay except on the axis whose factor moved into
  // the u power
  if (spec.wsel != IntegralRepSpec::w_neg_t1)
    for (Cplx q : t_part_list(p.t1, p.k1)) s.upper_x.push_back(q);
  if (spec.wsel != IntegralRepSpec::w_neg_t2)
    for (Cplx q : t_part_list(p.t2, p.k2)) s.upper_y.push_back(q);
  return eval_kdf(s, arg, pol).value;
}

inline Cplx inner_halfline(const IntegralRepSpec& spec, const Params2& p, const Point& pt,
                           double u, const TruncationPolicy& pol) {
  const Cplx ck = Cplx(neg_k_pow_k(p.k));
  KdfSpec s;
  s.upper_joint = t_part_list(p.t, p.k);
  s.lower_joint = {p.c};
  Point arg;
  switch (spec.wsel) {
    case IntegralRepSpec::w_a1:
      s.upper_x = {p.b1};
      s.upper_y = {p.a2, p.b2};
      arg = {ck * u * pt.x, ck * pt.y};
      break;
    case IntegralRepSpec::w_a2:
      s.upper_x = {p.a1, p.b1};
      s.upper_y = {p.b2};
      arg = {ck * pt.x, ck * u * pt.y};
      break;
    case IntegralRepSpec::w_b1:
      s.upper_x = {p.a1};
      s.upper_y = {p.a2, p.b2};
      arg = {ck * u * pt.x, ck * pt.y};
      break;
    case IntegralRepSpec::w_b2:
      s.upper_x = {p.a1, p.b1};
      s.upper_y = {p.a2};
      arg = {ck * pt.x, ck * u * pt.y};
      break;
    default:
      throw ValidityError("unsupported weight for the joint form");
  }
  return eval_kdf(s, arg, pol).value;
}

inline Cplx weight_param(const IntegralRepSpec& spec, const Params1& p) {
  switch (spec.wsel) {
    case IntegralRepSpec::w_a1: return p.a1;
    case IntegralRepSpec::w_a2: return p.a2;
    case IntegralRepSpec::w_b1: return p.b1;
    case IntegralRepSpec::w_b2: return p.b2;
    case IntegralRepSpec::w_neg_t1: return -p.t1;
    case IntegralRepSpec::w_neg_t2: return -p.t2;
    default: return Cplx(0.0);
  }
}

inline Cplx weight_param(const IntegralRepSpec& spec, const Params2& p) {
  switch (spec.wsel) {
    case IntegralRepSpec::w_a1: return p.a1;
    case IntegralRepSpec::w_a2: return p.a2;
    case IntegralRepSpec::w_b1: return p.b1;
    case IntegralRepSpec::w_b2: return p.b2;
    default: return Cplx(0.0);
  }
}

template <class PR, class InnerFn>
Cplx halfline_value(const IntegralRepSpec& spec, const PR& p, int rule_size, InnerFn&& inner) {
  const Cplx a = weight_param(spec, p);
  require_pos_re(a, "weight exponent");
  const QuadratureRule rule = gauss_laguerre(rule_size);
  Cplx acc(0.0);
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = rule.nodes[i];
    // u^{a-1} absorbed into the integrand; plain e^{-u} Laguerre weight
    acc += rule.weights[i] * std::pow(Cplx(u), a - Cplx(1.0)) * inner(u);
  }
  return acc / complex_gamma(a);
}

// Simplex {u, v >= 0, u + v <= 1} via u = s(1-w), v = s w and the endpoint
// substitution s = 1 - q^2, which turns half-integer exponents of (1-u-v)
// into smooth powers of q.
template <class InnerFn>
Cplx simplex_value(Cplx b1, Cplx b2, Cplx c, int n, InnerFn&& inner) {
  require_pos_re(b1, "b1");
  require_pos_re(b2, "b2");
  require_pos_re(c - b1 - b2, "c-b1-b2");
  const QuadratureRule gl = gauss_legendre(n);
  const Cplx gamma_pref =
      complex_gamma(c) / (complex_gamma(b1) * complex_gamma(b2) * complex_gamma(c - b1 - b2));
  Cplx acc(0.0);
  for (size_t iq = 0; iq < gl.nodes.size(); ++iq) {
    const double q = 0.5 * (gl.nodes[iq] + 1.0);
    const double wq = 0.5 * gl.weights[iq];
    const double s = 1.0 - q * q;
    for (size_t iw = 0; iw < gl.nodes.size(); ++iw) {
      const double w = 0.5 * (gl.nodes[iw] + 1.0);
      const double ww = 0.5 * gl.weights[iw];
      const double u = s * (1.0 - w);
      const double v = s * w;
      // (1-u-v)^{c-b1-b2-1} = q^{2(c-b1-b2-1)}; jacobian s * 2q
      Cplx val = std::pow(Cplx(u), b1 - Cplx(1.0)) * std::pow(Cplx(v), b2 - Cplx(1.0)) *
                 std::pow(Cplx(q), 2.0 * (c - b1 - b2 - Cplx(1.0))) * Cplx(2.0 * q * s) *
                 inner(u, v);
      acc += wq * ww * val;
    }
  }
  return gamma_pref * acc;
}

}  // namespace quad_detail

inline Cplx eval_integral_rep(const IntegralRepSpec& spec, const Params1& p, const Point& pt,
                              int rule_size = 64, const TruncationPolicy& pol = {}) {
  if (spec.variant != Variant::V1) throw ValidityError("representation expects the joint form");
  if (spec.domain == IntegralRepSpec::simplex) {
    return quad_detail::simplex_value(p.b1, p.b2, p.c, rule_size, [&](double u, double v) {
      return eval_1f0_disc(p.a1, p.t1, p.k1, u * pt.x, pol).value *
             eval_1f0_disc(p.a2, p.t2, p.k2, v * pt.y, pol).value;
    });
  }
  return quad_detail::halfline_value(spec, p, rule_size, [&](double u) {
    return quad_detail::inner_halfline(spec, p, pt, u, pol);
  });
}

inline Cplx eval_integral_rep(const IntegralRepSpec& spec, const Params2& p, const Point& pt,
                              int rule_size = 64, const TruncationPolicy& pol = {}) {
  if (spec.variant != Variant::V2) throw ValidityError("representation expects the per-axis form");
  if (spec.domain == IntegralRepSpec::simplex) {
    const Cplx ck = Cplx(quad_detail::neg_k_pow_k(p.k));
    return quad_detail::simplex_value(p.b1, p.b2, p.c, rule_size, [&](double u, double v) {
      KdfSpec s;
      s.upper_joint = quad_detail::t_part_list(p.t, p.k);
      s.upper_x = {p.a1};
      s.upper_y = {p.a2};
      return eval_kdf(s, {ck * u * pt.x, ck * v * pt.y}, pol).value;
    });
  }
  return quad_detail::halfline_value(spec, p, rule_size, [&](double u) {
    return quad_detail::inner_halfline(spec, p, pt, u, pol);
  });
}

template <class PR>
Residual integral_vs_series(const IntegralRepSpec& spec, const PR& p, const Point& pt,
                            int rule_size = 64, const TruncationPolicy& pol = {}) {
  Cplx series;
  if constexpr (std::is_same_v<PR, Params1>)
    series = eval_f3_disc1(p, pt, pol).value;
  else
    series = eval_f3_disc2(p, pt, pol).value;
  const Cplx quad = eval_integral_rep(spec, p, pt, rule_size, pol);
  return make_residual(std::abs(quad - series), std::max(std::abs(quad), std::abs(series)));
}

struct QuadCaseResult {
  std::string rep_id;
  std::string label;
  double rel = 0.0;
  bool pass = false;
  bool unverifiable = false;
  std::string msg;
};

struct QuadCase {
  Params1 p1;
  Params2 p2;
  Variant variant = Variant::V1;
  Point pt;
  std::string label;
};

// Verification panel for the representations. The half-line weights use
// integer parameter values so the absorbed u^{p-1} factor stays polynomial;
// the negative-t representations run on their own validity sub-panel
// (Re(-t) > 0), with one deliberately divergent case that must be reported
// as unverifiable rather than checked.
inline std::vector<QuadCase> quadrature_panel() {
  std::vector<QuadCase> v;
  auto add1 = [&](Params1 p, Point pt, std::string label) {
    QuadCase c;
    c.p1 = p;
    c.variant = Variant::V1;
    c.pt = pt;
    c.label = std::move(label);
    v.push_back(c);
  };
  auto add2 = [&](Params2 p, Point pt, std::string label) {
    QuadCase c;
    c.p2 = p;
    c.variant = Variant::V2;
    c.pt = pt;
    c.label = std::move(label);
    v.push_back(c);
  };
  Params1 p1;
  p1.a1 = 1.0;
  p1.a2 = 2.0;
  p1.b1 = 1.0;
  p1.b2 = 1.0;
  p1.c = 3.5;
  p1.t1 = 2.0;
  p1.t2 = 2.0;
  p1.k1 = 1;
  p1.k2 = 1;
  add1(p1, {0.25, 0.25}, "t2k1");
  {
    Params1 q = p1;
    q.a1 = 2.0;
    q.t1 = 4.0;
    q.k1 = 2;
    add1(q, {0.2, -0.25}, "t4k2");
  }
  {
    Params1 q = p1;  // negative-t sub-panel: Re(-t) > 0, series convergent for k = 1
    q.t1 = -2.0;
    q.t2 = -3.0;
    add1(q, {-0.002, -0.002}, "neg-t");
  }
  {
    Params1 q = p1;  // series reference diverges: must be reported unverifiable
    q.t1 = -2.5;
    q.k1 = 2;
    q.t2 = -2.0;
    add1(q, {0.3, -0.002}, "neg-t-divergent");
  }
  Params2 p2;
  p2.a1 = 1.0;
  p2.a2 = 2.0;
  p2.b1 = 1.0;
  p2.b2 = 1.0;
  p2.c = 3.5;
  p2.t = 2.0;
  p2.k = 1;
  add2(p2, {0.25, -0.25}, "t2k1");
  {
    Params2 q = p2;
    q.t = 4.0;
    q.k = 2;
    add2(q, {0.2, 0.25}, "t4k2");
  }
  return v;
}

inline bool rep_applicable(const IntegralRepSpec& spec, const QuadCase& c) {
  if (spec.variant != c.variant) return false;
  const Cplx w = c.variant == Variant::V1 ? quad_detail::weight_param(spec, c.p1)
                                          : quad_detail::weight_param(spec, c.p2);
  if (spec.domain == IntegralRepSpec::half_line && !(w.real() > 0.0)) return false;
  if (spec.domain == IntegralRepSpec::simplex) {
    const Cplx b1 = c.variant == Variant::V1 ? c.p1.b1 : c.p2.b1;
    const Cplx b2 = c.variant == Variant::V1 ? c.p1.b2 : c.p2.b2;
    const Cplx cc = c.variant == Variant::V1 ? c.p1.c : c.p2.c;
    if (!(b1.real() > 0.0 && b2.real() > 0.0 && (cc - b1 - b2).real() > 0.0)) return false;
  }
  return true;
}

inline std::vector<QuadCaseResult> run_integral_suite(int lag_nodes = 64, int simplex_nodes = 48,
                                                      const TruncationPolicy& pol = {}) {
  std::vector<QuadCaseResult> out;
  for (const auto& spec : integral_reps()) {
    for (const auto& c : quadrature_panel()) {
      if (!rep_applicable(spec, c)) continue;
      QuadCaseResult r;
      r.rep_id = spec.rep_id;
      r.label = c.label;
      const int nodes = spec.domain == IntegralRepSpec::simplex ? simplex_nodes : lag_nodes;
      try {
        if (c.variant == Variant::V1)
          r.rel = integral_vs_series(spec, c.p1, c.pt, nodes, pol).rel;
        else
          r.rel = integral_vs_series(spec, c.p2, c.pt, nodes, pol).rel;
        r.pass = r.rel <= 1e-6;
      } catch (const DivergenceDetected&) {
        r.unverifiable = true;
        r.msg = "series reference diverges";
      } catch (const ValidityError& e) {
        r.unverifiable = true;
        r.msg = e.what();
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace appell
