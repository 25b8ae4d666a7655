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

#ifndef QG_STENCIL_HPP
#define QG_STENCIL_HPP

// Central finite-difference stencils with Richardson extrapolation over
// successive step halvings. Every symmetric stencil here has an error
// expansion in even powers of the step, so the extrapolation table uses
// factors 2^p, 2^(p+2), ... where p is the leading order.

#include <cmath>
#include <limits>
#include <vector>

#include "qg/error.hpp"

namespace qg::stencil {

/// Result of a Richardson-extrapolated derivative.
struct Estimate {
  double value = 0.0;   // extrapolated value
  double err = 0.0;     // |T[n][n] - T[n][n-1]|
  double coarse = 0.0;  // raw stencil at the initial step
  double fine = 0.0;    // raw stencil at the smallest step
};

enum class Order { first, second };

/// Step heuristic: 2e-3 max(1, |x|) for second derivatives, 1e-3 max(1, |x|)
/// for first derivatives.
inline double default_step(double x, Order order) {
  const double scale = std::max(1.0, std::abs(x));
  return (order == Order::first ? 1e-3 : 2e-3) * scale;
}

/// Smaller second-derivative step, eps^(1/6)/10 max(1, |x|), for stencils
/// that must stay clear of a nearby singularity.
inline double local_step(double x) {
  static const double base =
      0.1 * std::pow(std::numeric_limits<double>::epsilon(), 1.0 / 6.0);
  return base * std::max(1.0, std::abs(x));
}

/// Richardson table over raw[0..n] computed at steps h, h/2, ..., h/2^n for
/// a stencil whose leading error term is O(h^order).
inline Estimate richardson(const std::vector<double>& raw, int order) {
  const std::size_t n = raw.size();
  std::vector<double> prev = raw;
  std::vector<double> cur;
  double last_diag = raw.front();
  double second_last = raw.front();
  Estimate out;
  out.coarse = raw.front();
  out.fine = raw.back();
  if (n == 1) {
    out.value = raw.front();
    return out;
  }
  // Column j holds extrapolants that have eliminated the first j error terms.
  for (std::size_t j = 1; j < n; ++j) {
    const double r = std::ldexp(1.0, order + 2 * static_cast<int>(j - 1));
    cur.assign(prev.size() - 1, 0.0);
    for (std::size_t i = 0; i + 1 < prev.size(); ++i) {
      cur[i] = (r * prev[i + 1] - prev[i]) / (r - 1.0);
    }
    second_last = prev.back();
    last_diag = cur.back();
    prev.swap(cur);
  }
  out.value = last_diag;
  out.err = std::abs(last_diag - second_last);
  return out;
}

/// f'(x) from the 3-point central stencil with `halvings` Richardson steps.
template <class F>
Estimate first_derivative(const F& f, double x, double h, int halvings = 1) {
  if (!(h > 0.0)) throw domain_error("first_derivative: step must be > 0");
  std::vector<double> raw;
  for (int k = 0; k <= halvings; ++k) {
    const double s = std::ldexp(h, -k);
    raw.push_back((f(x + s) - f(x - s)) / (2.0 * s));
  }
  return richardson(raw, 2);
}

/// f''(x) from the 5-point central stencil
/// [-f(x+2h) + 16 f(x+h) - 30 f(x) + 16 f(x-h) - f(x-2h)] / (12 h^2).
template <class F>
Estimate second_derivative(const F& f, double x, double h, int halvings = 1) {
  if (!(h > 0.0)) throw domain_error("second_derivative: step must be > 0");
  const double f0 = f(x);
  std::vector<double> raw;
  for (int k = 0; k <= halvings; ++k) {
    const double s = std::ldexp(h, -k);
    const double num = -f(x + 2.0 * s) + 16.0 * f(x + s) - 30.0 * f0 +
                       16.0 * f(x - s) - f(x - 2.0 * s);
    raw.push_back(num / (12.0 * s * s));
  }
  return richardson(raw, 4);
}

/// d^2 f / dx dy from the 4-point cross stencil
/// [f(x+a,y+b) - f(x+a,y-b) - f(x-a,y+b) + f(x-a,y-b)] / (4ab).
template <class F>
Estimate mixed_derivative(const F& f, double x, double y, double hx,
                          double hy, int halvings = 1) {
  if (!(hx > 0.0) || !(hy > 0.0)) {
    throw domain_error("mixed_derivative: steps must be > 0");
  }
  std::vector<double> raw;
  for (int k = 0; k <= halvings; ++k) {
    const double a = std::ldexp(hx, -k);
    const double b = std::ldexp(hy, -k);
    const double num =
        f(x + a, y + b) - f(x + a, y - b) - f(x - a, y + b) + f(x - a, y - b);
    raw.push_back(num / (4.0 * a * b));
  }
  return richardson(raw, 2);
}

}  // namespace qg::stencil

#endif  // QG_STENCIL_HPP
