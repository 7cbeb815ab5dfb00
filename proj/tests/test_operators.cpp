#include <catch2/catch_amalgamated.hpp>

#include "appell/catalog.hpp"
#include "appell/suite.hpp"

using namespace appell;
using Catch::Approx;

namespace {
const TruncationPolicy kPol;

Params1 panel_params1(Cplx t1 = 2.0, Cplx t2 = 3.0, int k1 = 1, int k2 = 1) {
  Params1 p;
  p.a1 = 1.25;
  p.a2 = 1.5;
  p.b1 = 1.75;
  p.b2 = 1.25;
  p.c = 3.5;
  p.t1 = t1;
  p.t2 = t2;
  p.k1 = k1;
  p.k2 = k2;
  return p;
}
}  // namespace

TEST_CASE("weight application at the origin picks out the constant term") {
  // (a1 + theta) F at x = y = 0 equals a1
  OperatorExpr e;
  WeightFactor w;
  w.am = 1;
  w.beta = ParamLin::slot(Slot::A1);
  w.how = Realize::ArgScaleOp;
  e.ops.push_back(w);
  Params1 p = panel_params1();
  CHECK(apply_operator_expr(e, p, {0.0, 0.0}, kPol) == Cplx(1.25));
}

TEST_CASE("difference operator eigenvalue on a single lattice factor") {
  // Theta_t on (-1)^{mk}(-t)_{mk} multiplies it by mk: t1 = 4, k1 = 2, m = 1
  const Cplx t1 = 4.0;
  const int k1 = 2;
  const Cplx h_t = pochhammer_scaled(t1, k1, 1);
  const Cplx h_tm1 = pochhammer_scaled(t1 - Cplx(1.0), k1, 1);
  CHECK(h_t == Cplx(12.0));
  CHECK((t1 * (h_t - h_tm1)).real() == Approx(24.0));  // = 2 * 12
}

TEST_CASE("difference operator eigenvalue is exact in rational arithmetic") {
  for (long t : {2, 3, 4, 6})
    for (int k : {1, 2, 3})
      for (long m = 0; m * k <= t; ++m) {
        const ExactScalar ht = pochhammer_scaled(ExactScalar(t), k, m);
        const ExactScalar htm1 = pochhammer_scaled(ExactScalar(t - 1), k, m);
        const ExactScalar lhs = ExactScalar(t) * (ht - htm1);
        const ExactScalar rhs = ExactScalar(m * k) * ht;
        CHECK(lhs == rhs);
      }
}

TEST_CASE("numeric shift route reproduces the first difference formula") {
  // Delta_{t1} F = (a1 b1 x / c) F(a1+1, b1+1; c+1) for k1 = 1
  Params1 p = panel_params1(2.0, 2.0, 1, 1);
  const Point pt{0.3, 0.2};
  const Cplx lhs = numeric_shift_apply(TOp::Delta, TSel::T1, p, pt, kPol);
  Params1 q = p;
  q.a1 += 1.0;
  q.b1 += 1.0;
  q.c += 1.0;
  const Cplx rhs = p.a1 * p.b1 * pt.x / p.c * eval_f3_disc1(q, pt, kPol).value;
  CHECK(std::abs(lhs - rhs) <= 1e-13 * std::abs(rhs));
}

TEST_CASE("Theta via re-evaluation equals the weight route") {
  Params1 p = panel_params1();
  const Point pt{0.3, -0.3};
  const Cplx shift = numeric_shift_apply(TOp::Theta, TSel::T1, p, pt, kPol);
  OperatorExpr e;  // Theta_{t1} = k1 * m as a weight
  e.lead.times_k(TSel::T1);
  WeightFactor w;
  w.am = 1;
  w.beta = ParamLin::constant(0);
  w.how = Realize::TShiftOp;
  e.ops.push_back(w);
  const Cplx weight = apply_operator_expr(e, p, pt, kPol);
  CHECK(std::abs(shift - weight) <= 1e-12 * std::max(std::abs(shift), 1.0));
}

TEST_CASE("difference of a t-constant function vanishes") {
  // at x = y = 0 the series is identically 1 in t
  Params1 p = panel_params1();
  const Cplx d = numeric_shift_apply(TOp::Delta, TSel::T1, p, {0.0, 0.0}, kPol);
  CHECK(std::abs(d) == 0.0);
}

TEST_CASE("identity operator cross-checks to zero") {
  OperatorExpr e;  // no factors, no shift
  Params1 p = panel_params1();
  const Residual r = operator_cross_check(e, p, {0.3, -0.3}, kPol);
  CHECK(r.abs == 0.0);
}

TEST_CASE("weight degree bound is enforced") {
  OperatorExpr e;
  WeightFactor w;
  w.am = 1;
  w.beta = ParamLin::constant(0);
  for (int i = 0; i < 5; ++i) e.ops.push_back(w);
  Params1 p = panel_params1();
  CHECK_THROWS_AS(apply_operator_expr(e, p, {0.1, 0.1}, kPol), ValidityError);
}

TEST_CASE("pure shift factor: parameter-offset path vs evaluation offset") {
  OperatorExpr e;
  RhoFactor r;
  r.which = TSel::T1;
  r.kmul = 1;
  e.ops.push_back(r);
  Params1 p = panel_params1(4.0, 2.0, 2, 1);
  const Point pt{0.4, 0.2};
  const Residual res = operator_cross_check(e, p, pt, kPol);
  CHECK(res.rel <= 1e-12);
}

TEST_CASE("composed difference expression agrees across both routes") {
  // Theta_{t1} (Theta_{t1}/k1 + Theta_{t2}/k2 + c - 1)
  OperatorExpr e;
  e.lead.times_k(TSel::T1);
  WeightFactor w1;
  w1.am = 1;
  w1.beta = ParamLin::constant(0);
  w1.how = Realize::TShiftOp;
  WeightFactor w2;
  w2.am = 1;
  w2.an = 1;
  w2.beta = ParamLin::slot(Slot::C, -1);
  w2.how = Realize::TShiftOp;
  e.ops.push_back(w1);
  e.ops.push_back(w2);
  Params1 p = panel_params1(4.0, 6.0, 2, 3);
  const Residual res = operator_cross_check(e, p, {0.3, 0.25}, kPol);
  CHECK(res.rel <= 1e-11);
}

TEST_CASE("argument-scaling realization of theta agrees with the weight route") {
  OperatorExpr e;  // (b1 + theta)
  WeightFactor w;
  w.am = 1;
  w.beta = ParamLin::slot(Slot::B1);
  w.how = Realize::ArgScaleOp;
  e.ops.push_back(w);
  Params1 p = panel_params1();
  const Residual res = operator_cross_check(e, p, {Cplx(0.2, 0.1), -0.3}, kPol);
  CHECK(res.rel <= 1e-12);
}

TEST_CASE("theta and phi weight application commutes exactly") {
  Params1 p = panel_params1();
  const Point pt{0.3, 0.25};
  OperatorExpr tf, ft;
  WeightFactor th;
  th.am = 1;
  th.beta = ParamLin::slot(Slot::A1);
  WeightFactor ph;
  ph.an = 1;
  ph.beta = ParamLin::slot(Slot::B2, -1);
  tf.ops = {th, ph};
  ft.ops = {ph, th};
  CHECK(apply_operator_expr(tf, p, pt, kPol) == apply_operator_expr(ft, p, pt, kPol));
}

TEST_CASE("first difference equation has zero residual through the weight route") {
  const auto& cat = catalog();
  const Identity* de = find_identity(cat, "de1.1");
  REQUIRE(de != nullptr);
  auto panel = default_panel();
  int ran = 0;
  for (const auto& pc : panel) {
    if (!case_matches(*de, pc)) continue;
    const Residual r = check_identity(*de, pc, kPol);
    CHECK(r.rel <= 1e-12);
    ++ran;
  }
  CHECK(ran >= 3);
}

TEST_CASE("shifting c onto a pole is rejected") {
  OperatorExpr e;
  e.shift.dc = -4;
  Params1 p = panel_params1();
  p.c = 4.0;  // c - 4 = 0
  CHECK_THROWS_AS(apply_operator_expr(e, p, {0.1, 0.1}, kPol), ShiftPoleError);
}

TEST_CASE("weight path in exact arithmetic") {
  // (b1 + theta) F at rational parameters, terminating lattice
  OperatorExpr e;
  WeightFactor w;
  w.am = 1;
  w.beta = ParamLin::slot(Slot::B1);
  e.ops.push_back(w);
  ExactParams1 p;
  p.a1 = Rational(5, 4);
  p.a2 = Rational(3, 2);
  p.b1 = Rational(7, 4);
  p.b2 = Rational(5, 4);
  p.c = Rational(7, 2);
  p.t1 = ExactScalar(2);
  p.t2 = ExactScalar(2);
  p.k1 = p.k2 = 1;
  ExactPoint pt{Rational(1, 4), Rational(1, 4)};
  const ExactScalar ex = apply_weight_path<ExactScalar>(e, p, pt, kPol);
  const Cplx fl = apply_operator_expr(e, to_cplx(p), to_cplx(pt), kPol);
  CHECK(std::abs(to_cplx(ex) - fl) <= 1e-14 * std::abs(fl));
}
