#pragma once

// Operator expressions over the series families. Two application routes:
//
//  * weight path: an operator product acts on the lattice termwise as a
//    polynomial in (m, n) together with a parameter shift, using the
//    eigen-relation Theta_t [(-1)^{mk} (-t)_{mk}] = mk (-1)^{mk} (-t)_{mk}
//    and theta x^m = m x^m;
//
//  * shift path: the same expression is applied by literal re-evaluation,
//    Theta_t f = t (f(t) - f(t-1)) and rho_t^k f = f(t-k) by re-summing at
//    shifted t, and theta / phi by exact polynomial differentiation through
//    argument scaling at roots of unity.
//
// The two routes share nothing past the base evaluator, so their agreement
// checks the operator calculus itself.

#include <cassert>
#include <functional>
#include <numbers>
#include <variant>
#include <vector>

#include "appell/series.hpp"

namespace appell {

enum class Slot { A1, A2, B1, B2, C };
enum class TSel { T1, T2, TJ };
enum class Realize { TShiftOp, ArgScaleOp };
enum class FuncKind { Same, Classical, Kdf };
enum class PtXform { None, NegX, NegY, NegXY, MulYbyX, MulXbyY, XOver1mZ };

// Affine form  cst + sum_i coef_i * slot_i  over the non-discrete parameters.
struct ParamLin {
  Rational cst{0};
  std::vector<std::pair<Slot, Rational>> terms;

  static ParamLin constant(Rational c) {
    ParamLin l;
    l.cst = std::move(c);
    return l;
  }
  static ParamLin slot(Slot s, Rational offset = 0, Rational coef = 1) {
    ParamLin l;
    l.cst = std::move(offset);
    l.terms.emplace_back(s, std::move(coef));
    return l;
  }
};

template <class F>
F get_slot(const BasicParams1<F>& p, Slot s) {
  switch (s) {
    case Slot::A1: return p.a1;
    case Slot::A2: return p.a2;
    case Slot::B1: return p.b1;
    case Slot::B2: return p.b2;
    case Slot::C: return p.c;
  }
  return F{};
}

template <class F>
F get_slot(const BasicParams2<F>& p, Slot s) {
  switch (s) {
    case Slot::A1: return p.a1;
    case Slot::A2: return p.a2;
    case Slot::B1: return p.b1;
    case Slot::B2: return p.b2;
    case Slot::C: return p.c;
  }
  return F{};
}

template <class F>
F get_t(const BasicParams1<F>& p, TSel w) {
  if (w == TSel::T1) return p.t1;
  if (w == TSel::T2) return p.t2;
  throw ValidityError("joint t selector on a per-axis parameter record");
}
template <class F>
F get_t(const BasicParams2<F>& p, TSel w) {
  if (w == TSel::TJ) return p.t;
  throw ValidityError("per-axis t selector on a joint parameter record");
}
template <class F>
int get_k(const BasicParams1<F>& p, TSel w) {
  if (w == TSel::T1) return p.k1;
  if (w == TSel::T2) return p.k2;
  throw ValidityError("joint k selector on a per-axis parameter record");
}
template <class F>
int get_k(const BasicParams2<F>& p, TSel w) {
  if (w == TSel::TJ) return p.k;
  throw ValidityError("per-axis k selector on a joint parameter record");
}

template <class F, class PR>
F eval_lin(const ParamLin& lin, const PR& p) {
  F v = field_rat<F>(lin.cst);
  for (const auto& [s, q] : lin.terms) v += field_rat<F>(q) * get_slot(p, s);
  return v;
}

// One affine operator factor  am*m + an*n + beta.  `how` records which
// realization the shift path uses for the index weights.
struct WeightFactor {
  int am = 0, an = 0;
  ParamLin beta;
  Realize how = Realize::ArgScaleOp;
};

// rho_t^{kmul*k + abs}: shifts the selected t downward.
struct RhoFactor {
  TSel which = TSel::T1;
  int kmul = 0;
  int abs_off = 0;
};

using OpFactor = std::variant<WeightFactor, RhoFactor>;

struct TOff {
  int abs = 0;
  int kmul = 0;
};

// Static shifts applied to the evaluated instance. For the joint-parameter
// record the dt1 field addresses the single t.
struct ParamShift {
  int da1 = 0, da2 = 0, db1 = 0, db2 = 0, dc = 0;
  TOff dt1, dt2;
};

enum class CKind {
  ParamAffine,        // (sign*slot + offset)
  Rising,             // (sign*slot + offset)_count
  PochMK,             // (-1)^{mult*k} (-t)_{mult*k} on the selected t
  KFactor,            // the selected k as a scalar
  ArgX,               // x
  ArgY,               // y
  ArgZ,               // auxiliary scalar z
  OneMinusZPowNegParam  // (1 - z)^{-slot}; floating path only
};

struct CoeffFactor {
  CKind kind = CKind::ParamAffine;
  int expo = 1;  // negative exponents divide
  Slot slot = Slot::A1;
  int sign = 1;
  int offset = 0;
  int count = 0;
  TSel tsel = TSel::T1;
  int mult = 1;
};

struct Coeff {
  Rational num{1};
  std::vector<CoeffFactor> facs;

  Coeff& times_num(Rational q) {
    num *= std::move(q);
    return *this;
  }
  Coeff& times_param(Slot s, int offset = 0, int expo = 1, int sign = 1) {
    CoeffFactor f;
    f.kind = CKind::ParamAffine;
    f.slot = s;
    f.offset = offset;
    f.expo = expo;
    f.sign = sign;
    facs.push_back(f);
    return *this;
  }
  Coeff& times_rising(Slot s, int count, int offset = 0, int sign = 1, int expo = 1) {
    CoeffFactor f;
    f.kind = CKind::Rising;
    f.slot = s;
    f.count = count;
    f.offset = offset;
    f.sign = sign;
    f.expo = expo;
    facs.push_back(f);
    return *this;
  }
  Coeff& times_pochmk(TSel t, int mult) {
    CoeffFactor f;
    f.kind = CKind::PochMK;
    f.tsel = t;
    f.mult = mult;
    facs.push_back(f);
    return *this;
  }
  Coeff& times_k(TSel t) {
    CoeffFactor f;
    f.kind = CKind::KFactor;
    f.tsel = t;
    facs.push_back(f);
    return *this;
  }
  Coeff& times_x(int expo = 1) {
    CoeffFactor f;
    f.kind = CKind::ArgX;
    f.expo = expo;
    facs.push_back(f);
    return *this;
  }
  Coeff& times_y(int expo = 1) {
    CoeffFactor f;
    f.kind = CKind::ArgY;
    f.expo = expo;
    facs.push_back(f);
    return *this;
  }
  Coeff& times_z(int expo = 1) {
    CoeffFactor f;
    f.kind = CKind::ArgZ;
    f.expo = expo;
    facs.push_back(f);
    return *this;
  }
  Coeff& times_pow1mz_negparam(Slot s) {
    CoeffFactor f;
    f.kind = CKind::OneMinusZPowNegParam;
    f.slot = s;
    facs.push_back(f);
    return *this;
  }
};

// A whole addend: leading scalar coefficient, static shifts, ordered operator
// factors (leftmost applied last) and the function instance they act on.
struct OperatorExpr {
  Coeff lead;
  ParamShift shift;
  std::vector<OpFactor> ops;
  FuncKind func = FuncKind::Same;
  int kdf_form = 0;
  PtXform ptx = PtXform::None;
  Rational aux_z{0};
};

template <class F, class PR>
F eval_coeff_factor(const CoeffFactor& f, const PR& p, const BasicPoint<F>& pt,
                    const Rational& zaux) {
  switch (f.kind) {
    case CKind::ParamAffine:
      return field<F>(f.sign) * get_slot(p, f.slot) + field<F>(f.offset);
    case CKind::Rising:
      return rising_factorial(field<F>(f.sign) * get_slot(p, f.slot) + field<F>(f.offset),
                              f.count);
    case CKind::PochMK:
      return pochhammer_scaled(get_t(p, f.tsel), get_k(p, f.tsel), f.mult);
    case CKind::KFactor:
      return field<F>(get_k(p, f.tsel));
    case CKind::ArgX:
      return pt.x;
    case CKind::ArgY:
      return pt.y;
    case CKind::ArgZ:
      return field_rat<F>(zaux);
    case CKind::OneMinusZPowNegParam:
      if constexpr (std::is_same_v<F, Cplx>) {
        return std::pow(Cplx(1.0) - field_rat<Cplx>(zaux), -get_slot(p, f.slot));
      } else {
        throw ValidityError("coefficient has no exact form");
      }
  }
  return field<F>(0);
}

template <class F, class PR>
F eval_coeff(const Coeff& cf, const PR& p, const BasicPoint<F>& pt, const Rational& zaux) {
  F v = field_rat<F>(cf.num);
  for (const auto& f : cf.facs) {
    F g = eval_coeff_factor<F>(f, p, pt, zaux);
    if (f.expo >= 0)
      for (int i = 0; i < f.expo; ++i) v *= g;
    else
      for (int i = 0; i < -f.expo; ++i) v /= g;
  }
  return v;
}

template <class F>
BasicPoint<F> apply_ptx(PtXform t, BasicPoint<F> pt, const Rational& z) {
  switch (t) {
    case PtXform::None: break;
    case PtXform::NegX: pt.x = -pt.x; break;
    case PtXform::NegY: pt.y = -pt.y; break;
    case PtXform::NegXY: pt.x = -pt.x; pt.y = -pt.y; break;
    case PtXform::MulYbyX: pt.y = pt.x * pt.y; break;
    case PtXform::MulXbyY: pt.x = pt.x * pt.y; break;
    case PtXform::XOver1mZ: pt.x = pt.x / (field<F>(1) - field_rat<F>(z)); break;
  }
  return pt;
}

template <class F>
BasicParams1<F> shifted(const BasicParams1<F>& p, const ParamShift& sh) {
  BasicParams1<F> q = p;
  q.a1 += field<F>(sh.da1);
  q.a2 += field<F>(sh.da2);
  q.b1 += field<F>(sh.db1);
  q.b2 += field<F>(sh.db2);
  q.c += field<F>(sh.dc);
  q.t1 += field<F>(sh.dt1.abs + sh.dt1.kmul * p.k1);
  q.t2 += field<F>(sh.dt2.abs + sh.dt2.kmul * p.k2);
  return q;
}

template <class F>
BasicParams2<F> shifted(const BasicParams2<F>& p, const ParamShift& sh) {
  BasicParams2<F> q = p;
  q.a1 += field<F>(sh.da1);
  q.a2 += field<F>(sh.da2);
  q.b1 += field<F>(sh.db1);
  q.b2 += field<F>(sh.db2);
  q.c += field<F>(sh.dc);
  q.t += field<F>(sh.dt1.abs + sh.dt1.kmul * p.k);
  return q;
}

template <class F, class PR>
int rho_amount(const RhoFactor& r, const PR& p) {
  return r.kmul * get_k<F>(p, r.which) + r.abs_off;
}

namespace detail {

template <class F>
void add_t_offset(BasicParams1<F>& q, TSel which, long amount) {
  if (which == TSel::T1)
    q.t1 += field<F>(amount);
  else if (which == TSel::T2)
    q.t2 += field<F>(amount);
  else
    throw ValidityError("joint t offset on per-axis record");
}
template <class F>
void add_t_offset(BasicParams2<F>& q, TSel which, long amount) {
  if (which != TSel::TJ) throw ValidityError("per-axis t offset on joint record");
  q.t += field<F>(amount);
}

template <class F>
LatticeSeries<F> table_same(const BasicParams1<F>& p, const TruncationPolicy& pol) {
  return table_f3d1(p, pol);
}
template <class F>
LatticeSeries<F> table_same(const BasicParams2<F>& p, const TruncationPolicy& pol) {
  return table_f3d2(p, pol);
}

inline Evaluation eval_same(const Params1& p, const Point& pt, const TruncationPolicy& pol) {
  return eval_f3_disc1(p, pt, pol);
}
inline Evaluation eval_same(const Params2& p, const Point& pt, const TruncationPolicy& pol) {
  return eval_f3_disc2(p, pt, pol);
}

template <class F>
BasicKdfSpec<F> build_kdf_form(const BasicParams1<F>& p, int form) {
  BasicKdfSpec<F> s;
  s.lower_joint = {p.c};
  switch (form) {
    case 110:  // k1 = 1, k2 = 0
      s.upper_x = {p.a1, p.b1, -p.t1};
      s.upper_y = {p.a2, p.b2};
      break;
    case 101:  // k1 = 0, k2 = 1
      s.upper_x = {p.a1, p.b1};
      s.upper_y = {p.a2, p.b2, -p.t2};
      break;
    case 111:  // k1 = k2 = 1
      s.upper_x = {p.a1, p.b1, -p.t1};
      s.upper_y = {p.a2, p.b2, -p.t2};
      break;
    default:
      throw ValidityError("unknown reduction form");
  }
  return s;
}

template <class F>
BasicKdfSpec<F> build_kdf_form(const BasicParams2<F>& p, int form) {
  if (form != 21) throw ValidityError("unknown reduction form");
  BasicKdfSpec<F> s;
  s.upper_joint = {-p.t};
  s.upper_x = {p.a1, p.b1};
  s.upper_y = {p.a2, p.b2};
  s.lower_joint = {p.c};
  return s;
}

// theta f as a linear combination of argument-scaled evaluations: exact for
// polynomials of degree <= D in the scaled argument.
inline std::vector<Cplx> theta_scale_coeffs(long D) {
  using std::numbers::pi;
  const long P = D + 1;
  std::vector<Cplx> c(P, Cplx(0.0));
  for (long j = 0; j < P; ++j) {
    Cplx s(0.0);
    for (long m = 0; m < P; ++m) {
      double ang = -2.0 * pi * double(j) * double(m) / double(P);
      s += Cplx(double(m)) * Cplx(std::cos(ang), std::sin(ang));
    }
    c[j] = s / Cplx(double(P));
  }
  return c;
}

}  // namespace detail

// Coefficient-level application: weight polynomial times the shifted series.
template <class F, class PR>
F apply_weight_path(const OperatorExpr& e, const PR& p, const BasicPoint<F>& pt,
                    const TruncationPolicy& pol) {
  int degree = 0;
  for (const auto& of : e.ops)
    if (std::holds_alternative<WeightFactor>(of)) ++degree;
  if (degree > 4) throw ValidityError("operator weight degree exceeds 4");
  PR q = shifted(p, e.shift);
  for (const auto& of : e.ops)
    if (const RhoFactor* rf = std::get_if<RhoFactor>(&of))
      detail::add_t_offset(q, rf->which, -static_cast<long>(rho_amount<F>(*rf, p)));
  if (is_nonpos_int(q.c))
    throw ShiftPoleError("shift landed c on a nonpositive integer");
  BasicPoint<F> pt2 = apply_ptx(e.ptx, pt, e.aux_z);

  auto weight = [&](long m, long n) -> F {
    F w = field<F>(1);
    for (const auto& of : e.ops)
      if (const WeightFactor* wf = std::get_if<WeightFactor>(&of))
        w *= field<F>(wf->am * m + wf->an * n) + eval_lin<F>(wf->beta, p);
    return w;
  };

  F series;
  if (e.func == FuncKind::Same) {
    if constexpr (std::is_same_v<F, Cplx>)
      series = sum_lattice(detail::table_same(q, pol), pt2, pol, weight).value;
    else
      series = sum_lattice_exact(detail::table_same(q, pol), pt2, pol, weight);
  } else if (e.func == FuncKind::Kdf) {
    assert(e.ops.empty());
    if constexpr (std::is_same_v<F, Cplx>)
      series = sum_lattice(table_kdf(detail::build_kdf_form(q, e.kdf_form), pol), pt2, pol).value;
    else
      series = sum_lattice_exact(table_kdf(detail::build_kdf_form(q, e.kdf_form), pol), pt2, pol);
  } else {  // Classical
    assert(e.ops.empty());
    if constexpr (std::is_same_v<F, Cplx>)
      series = eval_f3_classical(q.a1, q.a2, q.b1, q.b2, q.c, pt2, pol).value;
    else
      throw ValidityError("classical route has no exact mode");
  }
  return eval_coeff<F>(e.lead, p, pt, e.aux_z) * series;
}

template <class PR>
Cplx apply_operator_expr(const OperatorExpr& e, const PR& p, const Point& pt,
                         const TruncationPolicy& pol) {
  return apply_weight_path<Cplx>(e, p, pt, pol);
}

struct ShiftCtx {
  int d1 = 0, d2 = 0;
  Cplx xm{1.0}, ym{1.0};
};

// Re-evaluation route: difference operators act through literal t shifts,
// differential operators through argument scaling.
template <class PR>
Cplx apply_shift_path(const OperatorExpr& e, const PR& p, const Point& pt,
                      const TruncationPolicy& pol) {
  if (e.func != FuncKind::Same)
    throw ValidityError("shift path applies to the discrete families only");
  PR q = shifted(p, e.shift);
  if (is_nonpos_int(q.c))
    throw ShiftPoleError("shift landed c on a nonpositive integer");
  const Point pt2 = apply_ptx(e.ptx, pt, e.aux_z);
  constexpr bool joint = std::is_same_v<PR, Params2>;

  // Degree bounds for the scaling realization; t only decreases along the
  // operator composition, so the caps of the statically shifted instance
  // bound every inner evaluation.
  auto T0 = detail::table_same(q, pol);
  long Dx = exactly_zero(pt2.x) ? 0 : static_cast<long>(T0.u1.size()) - 1;
  long Dy = exactly_zero(pt2.y) ? 0 : static_cast<long>(T0.u2.size()) - 1;

  using Fn = std::function<Cplx(ShiftCtx)>;
  Fn cur = [&q, &pt2, &pol](ShiftCtx c) -> Cplx {
    PR r = q;
    if constexpr (joint) {
      detail::add_t_offset(r, TSel::TJ, c.d1);
    } else {
      detail::add_t_offset(r, TSel::T1, c.d1);
      detail::add_t_offset(r, TSel::T2, c.d2);
    }
    return detail::eval_same(r, Point{pt2.x * c.xm, pt2.y * c.ym}, pol).value;
  };

  auto theta_t = [&](const Fn& g, TSel which, ShiftCtx c) -> Cplx {
    // Theta_t g = t (g(t) - g(t-1)) at the current offset. At t = 0 the
    // prefactor annihilates the difference, so the (possibly divergent)
    // evaluation below the lattice edge is never made.
    if constexpr (joint) {
      Cplx tat = to_cplx(q.t) + Cplx(double(c.d1));
      if (tat == Cplx(0.0)) return Cplx(0.0);
      ShiftCtx cm = c;
      cm.d1 -= 1;
      return tat * (g(c) - g(cm));
    } else {
      if (which == TSel::T1) {
        Cplx tat = to_cplx(q.t1) + Cplx(double(c.d1));
        if (tat == Cplx(0.0)) return Cplx(0.0);
        ShiftCtx cm = c;
        cm.d1 -= 1;
        return tat * (g(c) - g(cm));
      }
      Cplx tat = to_cplx(q.t2) + Cplx(double(c.d2));
      if (tat == Cplx(0.0)) return Cplx(0.0);
      ShiftCtx cm = c;
      cm.d2 -= 1;
      return tat * (g(c) - g(cm));
    }
  };

  const auto csx = detail::theta_scale_coeffs(Dx);
  const auto csy = detail::theta_scale_coeffs(Dy);
  using std::numbers::pi;
  const Cplx wx = std::exp(Cplx(0.0, 2.0 * pi / double(Dx + 1)));
  const Cplx wy = std::exp(Cplx(0.0, 2.0 * pi / double(Dy + 1)));

  for (auto it = e.ops.rbegin(); it != e.ops.rend(); ++it) {
    if (const RhoFactor* rf = std::get_if<RhoFactor>(&*it)) {
      const int amt = rho_amount<Cplx>(*rf, p);
      const TSel which = rf->which;
      Fn prev = cur;
      cur = [prev, amt, which](ShiftCtx c) -> Cplx {
        if (which == TSel::T2)
          c.d2 -= amt;
        else
          c.d1 -= amt;
        return prev(c);
      };
      continue;
    }
    const WeightFactor wf = std::get<WeightFactor>(*it);
    const Cplx beta = eval_lin<Cplx>(wf.beta, p);
    Fn prev = cur;
    if (wf.how == Realize::TShiftOp) {
      if constexpr (joint) {
        if (wf.am != wf.an)
          throw ValidityError("joint record: only m+n weights have a t realization");
        const int k = p.k;
        if (wf.am != 0 && k < 1) throw ValidityError("t realization needs k >= 1");
        const int am = wf.am;
        cur = [prev, am, k, beta, theta_t](ShiftCtx c) -> Cplx {
          Cplx v = beta * prev(c);
          if (am != 0) v += Cplx(double(am)) / Cplx(double(k)) * theta_t(prev, TSel::TJ, c);
          return v;
        };
      } else {
        const int k1 = p.k1, k2 = p.k2;
        if ((wf.am != 0 && k1 < 1) || (wf.an != 0 && k2 < 1))
          throw ValidityError("t realization needs k >= 1");
        const int am = wf.am, an = wf.an;
        cur = [prev, am, an, k1, k2, beta, theta_t](ShiftCtx c) -> Cplx {
          Cplx v = beta * prev(c);
          if (am != 0) v += Cplx(double(am)) / Cplx(double(k1)) * theta_t(prev, TSel::T1, c);
          if (an != 0) v += Cplx(double(an)) / Cplx(double(k2)) * theta_t(prev, TSel::T2, c);
          return v;
        };
      }
    } else {
      const int am = wf.am, an = wf.an;
      cur = [prev, am, an, beta, &csx, &csy, wx, wy](ShiftCtx c) -> Cplx {
        Cplx v = beta * prev(c);
        if (am != 0) {
          Cplx acc(0.0);
          Cplx scale(1.0);
          for (size_t j = 0; j < csx.size(); ++j) {
            ShiftCtx cj = c;
            cj.xm *= scale;
            acc += csx[j] * prev(cj);
            scale *= wx;
          }
          v += Cplx(double(am)) * acc;
        }
        if (an != 0) {
          Cplx acc(0.0);
          Cplx scale(1.0);
          for (size_t j = 0; j < csy.size(); ++j) {
            ShiftCtx cj = c;
            cj.ym *= scale;
            acc += csy[j] * prev(cj);
            scale *= wy;
          }
          v += Cplx(double(an)) * acc;
        }
        return v;
      };
    }
  }
  return eval_coeff<Cplx>(e.lead, p, pt, e.aux_z) * cur(ShiftCtx{});
}

enum class TOp { Delta, Rho, Theta };

// Direct realization of the t-operators by re-evaluating the series.
template <class PR>
Cplx numeric_shift_apply(TOp op, TSel which, const PR& p, const Point& pt,
                         const TruncationPolicy& pol) {
  auto at = [&](long off) {
    PR q = p;
    detail::add_t_offset(q, which, off);
    return detail::eval_same(q, pt, pol).value;
  };
  switch (op) {
    case TOp::Delta: return at(1) - at(0);
    case TOp::Rho: return at(-1);
    case TOp::Theta: return to_cplx(get_t(p, which)) * (at(0) - at(-1));
  }
  return Cplx(0.0);
}

template <class PR>
Residual operator_cross_check(const OperatorExpr& e, const PR& p, const Point& pt,
                              const TruncationPolicy& pol) {
  const Cplx wv = apply_weight_path<Cplx>(e, p, pt, pol);
  const Cplx sv = apply_shift_path(e, p, pt, pol);
  return make_residual(std::abs(wv - sv), std::max(std::abs(wv), std::abs(sv)));
}

}  // namespace appell
