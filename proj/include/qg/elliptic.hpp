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

#ifndef QG_ELLIPTIC_HPP
#define QG_ELLIPTIC_HPP

// Complete elliptic integral of the second kind in the parameter
// convention E(m) = \int_0^{pi/2} sqrt(1 - m sin^2 t) dt, valid for every
// m <= 1. Large negative m appears in the TFIM ground-state energy close to
// the critical point, which is why the Carlson symmetric forms are used:
// they need no imaginary-modulus transformation.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qg/error.hpp"
#include "qg/quadrature.hpp"

namespace qg::elliptic {

namespace detail {

inline double tolerance() {
  return std::numeric_limits<double>::epsilon() * 0.01;
}

inline void check_parameter(double m, const char* who) {
  if (!(m <= 1.0)) {
    throw domain_error(std::string(who) + ": parameter m = " +
                       std::to_string(m) + " exceeds 1");
  }
}

}  // namespace detail

/// Carlson's R_F(x, y, z), duplication algorithm. At most one argument
/// may be zero.
inline double carlson_rf(double x, double y, double z) {
  static const double tol_rf = std::pow(3.0 * detail::tolerance(), 1.0 / 6.0);
  const double a0 = (x + y + z) / 3.0;
  double an = a0;
  const double q =
      std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)}) /
      tol_rf;
  double x0 = x, y0 = y, z0 = z, mul = 1.0;
  while (q >= mul * std::abs(an)) {
    const double ln = std::sqrt(x0) * std::sqrt(y0) +
                      std::sqrt(y0) * std::sqrt(z0) +
                      std::sqrt(z0) * std::sqrt(x0);
    an = 0.25 * (an + ln);
    x0 = 0.25 * (x0 + ln);
    y0 = 0.25 * (y0 + ln);
    z0 = 0.25 * (z0 + ln);
    mul *= 4.0;
  }
  const double xx = (a0 - x) / (mul * an);
  const double yy = (a0 - y) / (mul * an);
  const double zz = -xx - yy;
  const double e2 = xx * yy - zz * zz;
  const double e3 = xx * yy * zz;
  return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 -
          3.0 * e2 * e3 / 44.0) /
         std::sqrt(an);
}

/// Carlson's R_D(x, y, z); z must be positive.
inline double carlson_rd(double x, double y, double z) {
  static const double tol_rd =
      std::pow(0.25 * detail::tolerance(), 1.0 / 6.0);
  const double a0 = (x + y + 3.0 * z) / 5.0;
  double an = a0;
  const double q =
      std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)}) /
      tol_rd;
  double x0 = x, y0 = y, z0 = z, mul = 1.0, s = 0.0;
  while (q >= mul * std::abs(an)) {
    const double ln = std::sqrt(x0) * std::sqrt(y0) +
                      std::sqrt(y0) * std::sqrt(z0) +
                      std::sqrt(z0) * std::sqrt(x0);
    s += 1.0 / (mul * std::sqrt(z0) * (z0 + ln));
    an = 0.25 * (an + ln);
    x0 = 0.25 * (x0 + ln);
    y0 = 0.25 * (y0 + ln);
    z0 = 0.25 * (z0 + ln);
    mul *= 4.0;
  }
  const double xx = (a0 - x) / (mul * an);
  const double yy = (a0 - y) / (mul * an);
  const double zz = -(xx + yy) / 3.0;
  const double e2 = xx * yy - 6.0 * zz * zz;
  const double e3 = (3.0 * xx * yy - 8.0 * zz * zz) * zz;
  const double e4 = 3.0 * (xx * yy - zz * zz) * zz * zz;
  const double e5 = xx * yy * zz * zz * zz;
  return (1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 -
          3.0 * e4 / 22.0 - 9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0) /
             (mul * an * std::sqrt(an)) +
         3.0 * s;
}

/// E(m) for m <= 1, via E = R_F(0, 1-m, 1) - (m/3) R_D(0, 1-m, 1).
inline double ell_e(double m) {
  detail::check_parameter(m, "ell_e");
  if (m == 1.0) return 1.0;
  if (m == 0.0) return 0.5 * std::numbers::pi;
  const double mc = 1.0 - m;
  return carlson_rf(0.0, mc, 1.0) - m / 3.0 * carlson_rd(0.0, mc, 1.0);
}

inline constexpr double kDefaultQuadratureTol = 1e-12;

/// E(m) by adaptive Simpson quadrature of the defining integral. Kept as an
/// independent check on ell_e; slow, use only for verification.
inline double ell_e_quadrature(double m, double tol = kDefaultQuadratureTol) {
  detail::check_parameter(m, "ell_e_quadrature");
  if (!(tol > 0.0)) throw domain_error("ell_e_quadrature: tol must be > 0");
  auto integrand = [m](double t) {
    const double s = std::sin(t);
    return std::sqrt(std::max(0.0, 1.0 - m * s * s));
  };
  return quadrature::adaptive_simpson(integrand, 0.0, 0.5 * std::numbers::pi,
                                      tol);
}

}  // namespace qg::elliptic

#endif  // QG_ELLIPTIC_HPP
