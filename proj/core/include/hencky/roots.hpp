#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "hencky/error.hpp"

namespace hencky {

struct RootResult {
  double x = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Safeguarded Newton on a sign-changing bracket [lo, hi]. `fn(x)` returns
/// {f(x), f'(x)}. Newton steps leaving the bracket (or stalling) fall back to
/// bisection. End values may be infinite but not NaN. Stops when |f| <= ftol or the bracket collapses to rounding.
template <class Fn>
RootResult newton_bisect(Fn&& fn, double lo, double hi, double ftol, int max_iter = 100) {
  auto [flo, dlo] = fn(lo);
  auto [fhi, dhi] = fn(hi);
  (void)dlo;
  (void)dhi;
  if (flo == 0.0) return {lo, 0.0, 0};
  if (fhi == 0.0) return {hi, 0.0, 0};
  // An overflowing end value still has a usable sign.
  if (std::isnan(flo) || std::isnan(fhi) || (flo > 0.0) == (fhi > 0.0))
    throw ConvergenceError("newton_bisect: interval [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "] does not bracket a root");
  if (flo > 0.0) std::swap(lo, hi);  // now f(lo) < 0 < f(hi)

  double x = 0.5 * (lo + hi);
  double dx_old = std::abs(hi - lo);
  for (int it = 1; it <= max_iter; ++it) {
    auto [f, df] = fn(x);
    if (std::abs(f) <= ftol) return {x, f, it};
    if (f < 0.0)
      lo = x;
    else
      hi = x;
    double next = (df != 0.0 && std::isfinite(df)) ? x - f / df : 0.5 * (lo + hi);
    const double a = std::min(lo, hi), b = std::max(lo, hi);
    // Bisect when Newton leaves the bracket or does not at least halve the
    // previous step (creeping along a steep exponential branch).
    if (!(next > a && next < b) || !std::isfinite(next) || std::abs(next - x) > 0.5 * dx_old)
      next = 0.5 * (lo + hi);
    dx_old = std::abs(next - x);
    if (std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
      auto [fn_, d_] = fn(next);
      (void)d_;
      return {next, fn_, it};
    }
    x = next;
  }
  auto [f, df] = fn(x);
  (void)df;
  throw ConvergenceError("newton_bisect: no convergence after " + std::to_string(max_iter) +
                         " iterations, residual " + std::to_string(f));
}

/// Brent's method on a sign-changing bracket; derivative-free.
template <class Fn>
RootResult brent(Fn&& fn, double a, double b, double ftol, double xtol = 1e-15, int max_iter = 200) {
  double fa = fn(a);
  double fb = fn(b);
  if (fa == 0.0) return {a, 0.0, 0};
  if (fb == 0.0) return {b, 0.0, 0};
  if (!(std::isfinite(fa) && std::isfinite(fb)) || (fa > 0.0) == (fb > 0.0))
    throw ConvergenceError("brent: interval [" + std::to_string(a) + ", " + std::to_string(b) +
                           "] does not bracket a root");
  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 1; it <= max_iter; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
    const double m = 0.5 * (c - b);
    if (std::abs(fb) <= ftol || std::abs(m) <= tol) return {b, fb, it};
    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0)
        q = -q;
      else
        p = -p;
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = d;
      }
    } else {
      d = m;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
    fb = fn(b);
  }
  throw ConvergenceError("brent: no convergence after " + std::to_string(max_iter) +
                         " iterations, residual " + std::to_string(fb));
}

}  // namespace hencky
