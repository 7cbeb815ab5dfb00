#pragma once

// Panel construction, the generic residual evaluator and the suite runner.
// The floating path checks every identity against its group tolerance; on
// terminating rational cases the eligible groups are re-checked in exact
// arithmetic, where the residual must vanish identically.

#include <chrono>
#include <cmath>
#include <string>
#include <vector>

#include "appell/catalog.hpp"
#include "appell/limits.hpp"

namespace appell {

struct PanelCase {
  Variant variant = Variant::V1;
  ExactParams1 p1;
  ExactParams2 p2;
  ExactPoint pt;
  std::string label;
  bool terminating = false;  // every axis ends by exact zeros
};

inline PanelCase make_case1(ExactParams1 p, ExactPoint pt, std::string label) {
  PanelCase c;
  c.variant = Variant::V1;
  c.p1 = std::move(p);
  c.pt = std::move(pt);
  c.label = std::move(label);
  long v;
  c.terminating = c.p1.k1 >= 1 && c.p1.k2 >= 1 && as_nonneg_int(c.p1.t1, v) &&
                  as_nonneg_int(c.p1.t2, v);
  return c;
}

inline PanelCase make_case2(ExactParams2 p, ExactPoint pt, std::string label) {
  PanelCase c;
  c.variant = Variant::V2;
  c.p2 = std::move(p);
  c.pt = std::move(pt);
  c.label = std::move(label);
  long v;
  c.terminating = c.p2.k >= 1 && as_nonneg_int(c.p2.t, v);
  return c;
}

inline bool case_matches(const Identity& id, const PanelCase& c) {
  if (id.variant != c.variant) return false;
  if (!id.case_prefix.empty() && c.label.rfind(id.case_prefix, 0) != 0) return false;
  if (c.variant == Variant::V1) {
    if (id.need_k1 >= 0 && c.p1.k1 != id.need_k1) return false;
    if (id.need_k2 >= 0 && c.p1.k2 != id.need_k2) return false;
    if (id.need_kpos && (c.p1.k1 < 1 || c.p1.k2 < 1)) return false;
  } else {
    if (id.need_k >= 0 && c.p2.k != id.need_k) return false;
    if (id.need_kpos && c.p2.k < 1) return false;
  }
  return true;
}

struct CaseResult {
  std::string label;
  double abs = 0.0, rel = 0.0, scale = 0.0;
  bool pass = false;
  bool skipped = false;
  int exact_zero = -1;     // -1 not run, 0 nonzero, 1 exactly zero
  double printed_rel = -1.0;
  std::string msg;
};

struct IdentityReport {
  std::string id, paper_eq, note;
  Group group = Group::CT1;
  std::vector<CaseResult> cases;
  bool pass = true;
  int checked = 0;
};

struct SuiteReport {
  std::vector<IdentityReport> entries;
  int identities_checked = 0, identities_passed = 0, identities_failed = 0,
      identities_skipped = 0;
  double elapsed_seconds = 0.0;
  bool all_pass = true;
};

namespace detail {

template <class PR>
Cplx sum_side_float(const std::vector<OperatorExpr>& side, const PR& p, const Point& pt,
                    const TruncationPolicy& pol) {
  Cplx v(0.0);
  for (const auto& e : side) v += apply_weight_path<Cplx>(e, p, pt, pol);
  return v;
}

template <class PR>
ExactScalar sum_side_exact(const std::vector<OperatorExpr>& side, const PR& p,
                           const BasicPoint<ExactScalar>& pt, const TruncationPolicy& pol) {
  ExactScalar v(0);
  for (const auto& e : side) v += apply_weight_path<ExactScalar>(e, p, pt, pol);
  return v;
}

inline bool must_nonzero_ok(const Identity& id, const PanelCase& c) {
  for (const auto& lin : id.must_nonzero) {
    Cplx v = c.variant == Variant::V1 ? eval_lin<Cplx>(lin, to_cplx(c.p1))
                                      : eval_lin<Cplx>(lin, to_cplx(c.p2));
    if (std::abs(v) < 1e-9) return false;
  }
  return true;
}

}  // namespace detail

inline CaseResult check_identity_case(const Identity& id, const PanelCase& pc,
                                      const TruncationPolicy& pol = {}, bool with_exact = true) {
  CaseResult res;
  res.label = pc.label;
  if (!case_matches(id, pc)) {
    res.skipped = true;
    res.msg = "case does not satisfy validity constraints";
    return res;
  }
  if (!detail::must_nonzero_ok(id, pc)) {
    res.skipped = true;
    res.msg = "validity: divisor vanishes";
    return res;
  }

  if (id.is_limit) {
    const std::vector<double> eps = {1e-1, 1e-2, 1e-3};
    LimitReport rep;
    if (pc.variant == Variant::V1)
      rep = limit_degeneration(id.limit_target, to_cplx(pc.p1), to_cplx(pc.pt), eps, pol);
    else
      rep = limit_degeneration(id.limit_target, to_cplx(pc.p2), to_cplx(pc.pt), eps, pol);
    res.abs = rep.errors.back();
    res.rel = rep.reduction;
    res.scale = rep.errors.front();
    res.pass = rep.monotone && (rep.errors.front() == 0.0 || rep.reduction <= group_tolerance(id.group));
    if (!rep.monotone) res.msg = "errors not monotone in eps";
    return res;
  }

  try {
    Cplx lv, rv;
    if (pc.variant == Variant::V1) {
      const Params1 p = to_cplx(pc.p1);
      const Point pt = to_cplx(pc.pt);
      lv = detail::sum_side_float(id.lhs, p, pt, pol);
      rv = detail::sum_side_float(id.rhs, p, pt, pol);
    } else {
      const Params2 p = to_cplx(pc.p2);
      const Point pt = to_cplx(pc.pt);
      lv = detail::sum_side_float(id.lhs, p, pt, pol);
      rv = detail::sum_side_float(id.rhs, p, pt, pol);
    }
    Residual r = make_residual(std::abs(lv - rv), std::max(std::abs(lv), std::abs(rv)));
    res.abs = r.abs;
    res.rel = r.rel;
    res.scale = r.scale;
    res.pass = r.rel <= group_tolerance(id.group);
  } catch (const ShiftPoleError& e) {
    res.skipped = true;
    res.msg = e.what();
    return res;
  } catch (const ValidityError& e) {
    res.skipped = true;
    res.msg = e.what();
    return res;
  } catch (const DivergenceDetected& e) {
    res.pass = false;
    res.msg = e.what();
    return res;
  }

  if (id.has_printed) {
    try {
      Cplx lv, rv;
      if (pc.variant == Variant::V1) {
        lv = detail::sum_side_float(id.printed_lhs, to_cplx(pc.p1), to_cplx(pc.pt), pol);
        rv = detail::sum_side_float(id.printed_rhs, to_cplx(pc.p1), to_cplx(pc.pt), pol);
      } else {
        lv = detail::sum_side_float(id.printed_lhs, to_cplx(pc.p2), to_cplx(pc.pt), pol);
        rv = detail::sum_side_float(id.printed_rhs, to_cplx(pc.p2), to_cplx(pc.pt), pol);
      }
      res.printed_rel = make_residual(std::abs(lv - rv), std::max(std::abs(lv), std::abs(rv))).rel;
    } catch (const std::exception&) {
      res.printed_rel = -1.0;
    }
  }

  if (with_exact && id.exact_eligible && pc.terminating) {
    try {
      ExactScalar le, re_;
      if (pc.variant == Variant::V1) {
        le = detail::sum_side_exact(id.lhs, pc.p1, pc.pt, pol);
        re_ = detail::sum_side_exact(id.rhs, pc.p1, pc.pt, pol);
      } else {
        le = detail::sum_side_exact(id.lhs, pc.p2, pc.pt, pol);
        re_ = detail::sum_side_exact(id.rhs, pc.p2, pc.pt, pol);
      }
      res.exact_zero = (le == re_) ? 1 : 0;
      if (res.exact_zero == 0) {
        res.pass = false;
        res.msg = "exact residual nonzero";
      }
    } catch (const ValidityError&) {
      // shifted instance left the terminating regime; exact check not possible
      res.exact_zero = -1;
    }
  }
  return res;
}

// Single-check entry point: residual of one identity on one case.
inline Residual check_identity(const Identity& id, const PanelCase& pc,
                               const TruncationPolicy& pol = {}) {
  CaseResult cr = check_identity_case(id, pc, pol, false);
  if (cr.skipped) throw ValidityError("check_identity: " + cr.msg);
  Residual r;
  r.abs = cr.abs;
  r.rel = cr.rel;
  r.scale = cr.scale;
  return r;
}

inline SuiteReport run_suite(const std::vector<Identity>& cat,
                             const std::vector<PanelCase>& panel,
                             std::optional<Group> filter = {}, const TruncationPolicy& pol = {},
                             bool with_exact = true) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep;
  for (const Identity& id : cat) {
    if (filter && id.group != *filter) continue;
    IdentityReport ir;
    ir.id = id.id;
    ir.paper_eq = id.paper_eq;
    ir.note = id.note;
    ir.group = id.group;
    for (const PanelCase& pc : panel) {
      if (!case_matches(id, pc)) continue;
      CaseResult cr = check_identity_case(id, pc, pol, with_exact);
      if (!cr.skipped) {
        ++ir.checked;
        if (!cr.pass) ir.pass = false;
      }
      ir.cases.push_back(std::move(cr));
    }
    if (ir.checked == 0) {
      ++rep.identities_skipped;
    } else {
      ++rep.identities_checked;
      if (ir.pass)
        ++rep.identities_passed;
      else {
        ++rep.identities_failed;
        rep.all_pass = false;
      }
    }
    rep.entries.push_back(std::move(ir));
  }
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// Default verification panel: terminating cases with rational parameters off
// the validity poles, k = 0 sub-cases for the reductions and a positive-value
// case for the degeneration checks.
inline std::vector<PanelCase> default_panel() {
  using ES = ExactScalar;
  auto R = [](long n, long d) { return Rational(n, d); };
  std::vector<PanelCase> v;

  ExactParams1 base1;
  base1.a1 = R(5, 4);
  base1.a2 = R(3, 2);
  base1.b1 = R(7, 4);
  base1.b2 = R(5, 4);
  base1.c = R(7, 2);

  auto term1 = [&](long t1, int k1, long t2, int k2, ExactPoint pt, ES c,
                   const std::string& label) {
    ExactParams1 p = base1;
    p.c = c;
    p.t1 = ES(t1);
    p.t2 = ES(t2);
    p.k1 = k1;
    p.k2 = k2;
    return make_case1(p, pt, label);
  };
  const ExactPoint ptA{R(3, 10), R(-3, 10)};
  const ExactPoint ptB{R(1, 2), R(3, 10)};
  const ExactPoint ptC{ES(R(1, 5), R(1, 10)), R(-3, 10)};
  const ExactPoint ptD{R(-3, 10), R(1, 2)};
  v.push_back(term1(2, 1, 3, 1, ptA, R(7, 2), "v1-t2k1"));
  v.push_back(term1(4, 2, 2, 1, ptB, R(7, 2), "v1-t4k2"));
  v.push_back(term1(6, 3, 6, 3, ptC, R(7, 2), "v1-t6k3"));
  v.push_back(term1(5, 2, 2, 1, ptD, R(9, 4), "v1-t5k2"));

  ExactParams2 base2;
  base2.a1 = R(5, 4);
  base2.a2 = R(3, 2);
  base2.b1 = R(7, 4);
  base2.b2 = R(5, 4);
  base2.c = R(7, 2);
  auto term2 = [&](long t, int k, ExactPoint pt, ES c, const std::string& label) {
    ExactParams2 p = base2;
    p.c = c;
    p.t = ES(t);
    p.k = k;
    return make_case2(p, pt, label);
  };
  v.push_back(term2(3, 1, ptA, R(7, 2), "v2-t3k1"));
  v.push_back(term2(4, 2, {R(1, 2), ES(R(1, 5), R(1, 10))}, R(7, 2), "v2-t4k2"));
  v.push_back(term2(6, 3, {R(-3, 10), R(3, 10)}, R(9, 4), "v2-t6k3"));

  // reduction sub-panel, |x|, |y| <= 1/2
  auto red1 = [&](int k1, int k2, long t1, long t2, ExactPoint pt, const std::string& label) {
    ExactParams1 p = base1;
    p.t1 = ES(t1);
    p.t2 = ES(t2);
    p.k1 = k1;
    p.k2 = k2;
    return make_case1(p, pt, label);
  };
  v.push_back(red1(0, 0, 2, 2, {R(3, 10), R(1, 5)}, "red-k00-a"));
  v.push_back(red1(0, 0, 2, 2, {R(-2, 5), R(1, 4)}, "red-k00-b"));
  v.push_back(red1(0, 0, 2, 2, {R(1, 2), R(-1, 2)}, "red-k00-c"));
  v.push_back(red1(1, 0, 2, 2, {R(3, 10), R(1, 5)}, "red-k10-a"));
  v.push_back(red1(1, 0, 3, 2, {R(-3, 10), R(2, 5)}, "red-k10-b"));
  v.push_back(red1(0, 1, 2, 2, {R(3, 10), R(1, 5)}, "red-k01-a"));
  v.push_back(red1(0, 1, 2, 3, {R(2, 5), R(-3, 10)}, "red-k01-b"));

  auto red2 = [&](int k, long t, ExactPoint pt, const std::string& label) {
    ExactParams2 p = base2;
    p.t = ES(t);
    p.k = k;
    return make_case2(p, pt, label);
  };
  v.push_back(red2(0, 2, {R(3, 10), R(1, 5)}, "red2-k0-a"));
  v.push_back(red2(0, 2, {R(-2, 5), R(1, 4)}, "red2-k0-b"));
  v.push_back(red2(1, 2, {R(3, 10), R(1, 5)}, "red2-k1-a"));
  v.push_back(red2(1, 3, {R(-3, 10), R(2, 5)}, "red2-k1-b"));

  // degeneration sub-panel: positive parameters and arguments; t = 3 keeps
  // the eps^2 correction nonzero so the error reduction is strictly linear
  {
    ExactParams1 p = base1;
    p.t1 = ES(3);
    p.t2 = ES(3);
    p.k1 = 1;
    p.k2 = 1;
    v.push_back(make_case1(p, {R(1, 4), R(1, 4)}, "lim-v1"));
    ExactParams2 q = base2;
    q.t = ES(3);
    q.k = 1;
    v.push_back(make_case2(q, {R(1, 4), R(1, 4)}, "lim-v2"));
  }
  return v;
}

}  // namespace appell
