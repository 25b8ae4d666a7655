// Copyright 2026 The quantum-grueneisen Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QG_QUADRATURE_HPP
#define QG_QUADRATURE_HPP

#include <cmath>
#include <limits>
#include <string>

#include "qg/error.hpp"

namespace qg::quadrature {

inline constexpr int kDefaultDepthLimit = 60;

namespace detail {

template <class F>
double simpson_step(const F& f, double a, double b, double fa, double fm,
                    double fb, double whole, double tol, int depth,
                    int depth_limit) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  // Local tolerance never drops below what the panel sum can resolve.
  const double floor =
      64.0 * std::numeric_limits<double>::epsilon() * std::abs(left + right);
  if (std::abs(delta) <= 15.0 * tol || std::abs(delta) <= floor) {
    return left + right + delta / 15.0;
  }
  if (depth >= depth_limit) {
    throw convergence_error("adaptive Simpson: depth limit " +
                            std::to_string(depth_limit) +
                            " exceeded near x=" + std::to_string(m));
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1,
                      depth_limit) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1,
                      depth_limit);
}

}  // namespace detail

/// Adaptive Simpson integration of f over [a, b] with absolute error
/// target `tol`. Throws convergence_error past `depth_limit` bisections.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol,
                        int depth_limit = kDefaultDepthLimit) {
  if (!(tol > 0.0)) throw domain_error("adaptive_simpson: tol must be > 0");
  if (a == b) return 0.0;
  // Start from four panels so that integrands symmetric about the midpoint
  // cannot fake early convergence.
  const double q = 0.25 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double lo = a + i * q;
    const double hi = (i == 3) ? b : a + (i + 1) * q;
    const double flo = f(lo);
    const double fhi = f(hi);
    const double fmid = f(0.5 * (lo + hi));
    const double s = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    sum += detail::simpson_step(f, lo, hi, flo, fmid, fhi, s, 0.25 * tol, 2,
                                depth_limit);
  }
  return sum;
}

}  // namespace qg::quadrature

#endif  // QG_QUADRATURE_HPP
