#pragma once

#include <cmath>
#include <complex>

#include "feyncoh/errors.hpp"

namespace feyncoh {

struct QuadratureOptions {
  double rel_tol = 1e-9;
  int max_depth = 30;
};

namespace detail {

template <typename F, typename V>
V adaptive_simpson_rec(const F& f, double a, double b, V fa, V fm, V fb, V whole,
                       double tol, int depth, const QuadratureOptions& opt) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const V flm = f(lm);
  const V frm = f(rm);
  const V left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const V right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const V sum = left + right;
  const double err = std::abs(sum - whole);
  if (err <= 15.0 * tol || err == 0.0) return sum + (sum - whole) / 15.0;
  if (depth >= opt.max_depth)
    throw NumericError("quadrature: adaptive Simpson did not converge (depth " +
                       std::to_string(opt.max_depth) + ", residual " + std::to_string(err) + ")");
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, opt) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, opt);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b]. V may be double or
/// std::complex<double>. The tolerance is relative to a running magnitude
/// estimate of the whole integral, with a small absolute floor.
template <typename F>
auto adaptive_simpson(const F& f, double a, double b, QuadratureOptions opt = {}) {
  using V = decltype(f(a));
  const V fa = f(a);
  const V fb = f(b);
  const V fm = f(0.5 * (a + b));
  const V whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double scale = std::abs(whole);
  if (scale < 1e-300) scale = 1.0;
  return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, opt.rel_tol * scale, 0, opt);
}

}  // namespace feyncoh
