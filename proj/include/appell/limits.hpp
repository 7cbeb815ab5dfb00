#pragma once

// Degeneration checks: the discrete F3 forms collapse to the discrete
// Humbert functions under
//   b2 -> 1/eps,          y -> eps   y   (Xi_1)
//   a2 -> 1/eps, b2 -> 1/eps, y -> eps^2 y   (Xi_2)
// as eps -> 0. The report records |F(eps) - Xi| per eps.

#include <vector>

#include "appell/series.hpp"

namespace appell {

struct LimitReport {
  std::vector<double> eps;
  std::vector<double> errors;
  bool monotone = false;   // errors non-increasing along the eps list
  double reduction = 0.0;  // final error / initial error (0 when both vanish)
};

namespace detail {

inline LimitReport finish_limit_report(std::vector<double> eps, std::vector<double> errs) {
  LimitReport rep;
  rep.eps = std::move(eps);
  rep.errors = std::move(errs);
  rep.monotone = true;
  for (size_t i = 1; i < rep.errors.size(); ++i)
    if (rep.errors[i] > rep.errors[i - 1]) rep.monotone = false;
  if (!rep.errors.empty()) {
    const double head = rep.errors.front(), tail = rep.errors.back();
    rep.reduction = head > 0.0 ? tail / head : 0.0;
  }
  return rep;
}

inline void require_eps_list(const std::vector<double>& eps) {
  if (eps.empty()) throw ValidityError("limit: empty eps list");
  double prev = std::numeric_limits<double>::infinity();
  for (double e : eps) {
    if (!(e > 0.0) || !(e < prev)) throw ValidityError("limit: eps must be strictly decreasing and positive");
    prev = e;
  }
}

}  // namespace detail

inline LimitReport limit_degeneration(XiVariant target, const Params1& base, const Point& pt,
                                      const std::vector<double>& eps,
                                      const TruncationPolicy& pol = {}) {
  detail::require_eps_list(eps);
  if (target != XiVariant::Xi1_1 && target != XiVariant::Xi2_1)
    throw ValidityError("limit: target does not degenerate from this form");
  const Cplx ref = eval_xi(target, base, pt, pol).value;
  std::vector<double> errs;
  for (double e : eps) {
    Params1 p = base;
    Point q = pt;
    if (target == XiVariant::Xi1_1) {
      p.b2 = Cplx(1.0 / e);
      q.y = pt.y * e;
    } else {
      p.a2 = Cplx(1.0 / e);
      p.b2 = Cplx(1.0 / e);
      q.y = pt.y * (e * e);
    }
    errs.push_back(std::abs(eval_f3_disc1(p, q, pol).value - ref));
  }
  return detail::finish_limit_report(eps, std::move(errs));
}

inline LimitReport limit_degeneration(XiVariant target, const Params2& base, const Point& pt,
                                      const std::vector<double>& eps,
                                      const TruncationPolicy& pol = {}) {
  detail::require_eps_list(eps);
  if (target != XiVariant::Xi1_2 && target != XiVariant::Xi2_2)
    throw ValidityError("limit: target does not degenerate from this form");
  const Cplx ref = eval_xi(target, base, pt, pol).value;
  std::vector<double> errs;
  for (double e : eps) {
    Params2 p = base;
    Point q = pt;
    if (target == XiVariant::Xi1_2) {
      p.b2 = Cplx(1.0 / e);
      q.y = pt.y * e;
    } else {
      p.a2 = Cplx(1.0 / e);
      p.b2 = Cplx(1.0 / e);
      q.y = pt.y * (e * e);
    }
    errs.push_back(std::abs(eval_f3_disc2(p, q, pol).value - ref));
  }
  return detail::finish_limit_report(eps, std::move(errs));
}

}  // namespace appell
