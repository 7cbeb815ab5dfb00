#pragma once

// Parameter records, evaluation results, truncation policy and the error
// types raised by evaluators.

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "appell/scalar.hpp"

namespace appell {

struct PoleError : std::domain_error {
  explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

struct ValidityError : std::domain_error {
  explicit ValidityError(const std::string& what) : std::domain_error(what) {}
};

// A parameter shift landed a lower parameter on a nonpositive integer.
struct ShiftPoleError : std::domain_error {
  explicit ShiftPoleError(const std::string& what) : std::domain_error(what) {}
};

struct Evaluation {
  Cplx value{0.0};
  long terms_used = 0;
  bool terminated = false;  // series ended by exact zeros (or zero arguments)
  bool converged = false;
  double est_error = 0.0;
};

struct DivergenceDetected : std::runtime_error {
  Evaluation partial;
  DivergenceDetected(const std::string& what, Evaluation p)
      : std::runtime_error(what), partial(p) {}
};

struct TruncationPolicy {
  int max_m = 256;
  int max_n = 256;
  double tol = 1e-14;
  int divergence_window = 5;

  void validate() const {
    if (max_m < 1 || max_n < 1) throw ValidityError("policy: caps must be >= 1");
    if (!(tol > 0.0)) throw ValidityError("policy: tol must be positive");
    if (divergence_window < 3) throw ValidityError("policy: divergence_window must be >= 3");
  }
};

// Which discrete form a record parameterizes: per-axis (t1, t2, k1, k2) or
// joint (t, k).
enum class Variant { V1, V2 };

template <class F>
struct BasicPoint {
  F x{};
  F y{};
};

template <class F>
struct BasicParams1 {
  F a1{}, a2{}, b1{}, b2{}, c{};
  F t1{}, t2{};
  int k1 = 0, k2 = 0;
};

template <class F>
struct BasicParams2 {
  F a1{}, a2{}, b1{}, b2{}, c{};
  F t{};
  int k = 0;
};

// General double hypergeometric series: joint / x-only / y-only parameter
// lists on top and bottom.
template <class F>
struct BasicKdfSpec {
  std::vector<F> upper_joint, upper_x, upper_y;
  std::vector<F> lower_joint, lower_x, lower_y;
};

using Point = BasicPoint<Cplx>;
using Params1 = BasicParams1<Cplx>;
using Params2 = BasicParams2<Cplx>;
using KdfSpec = BasicKdfSpec<Cplx>;

using ExactPoint = BasicPoint<ExactScalar>;
using ExactParams1 = BasicParams1<ExactScalar>;
using ExactParams2 = BasicParams2<ExactScalar>;
using ExactKdfSpec = BasicKdfSpec<ExactScalar>;

template <class F>
BasicPoint<Cplx> to_cplx(const BasicPoint<F>& p) {
  return {to_cplx(p.x), to_cplx(p.y)};
}

inline Params1 to_cplx(const ExactParams1& p) {
  return {to_cplx(p.a1), to_cplx(p.a2), to_cplx(p.b1), to_cplx(p.b2),
          to_cplx(p.c),  to_cplx(p.t1), to_cplx(p.t2), p.k1, p.k2};
}

inline Params2 to_cplx(const ExactParams2& p) {
  return {to_cplx(p.a1), to_cplx(p.a2), to_cplx(p.b1), to_cplx(p.b2),
          to_cplx(p.c),  to_cplx(p.t),  p.k};
}

struct Residual {
  double abs = 0.0;
  double rel = 0.0;
  double scale = 0.0;
};

inline Residual make_residual(double abs, double scale) {
  Residual r;
  r.abs = abs;
  r.scale = scale;
  if (scale > 0.0)
    r.rel = abs / scale;
  else
    r.rel = (abs > 0.0) ? std::numeric_limits<double>::infinity() : 0.0;
  return r;
}

}  // namespace appell
