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

#ifndef QG_TFIM_HPP
#define QG_TFIM_HPP

// One-dimensional Ising chain in a transverse field,
//   H = -B sum_i sx_i - J sum_i sz_i sz_{i+1}     (Pauli matrices),
// analytic thermodynamic-limit quantities and the exact free-fermion
// solution of finite open chains.
//
// Normalization: e0_per_site() follows the Bogoliubov sum convention
// E0 = -(B/pi) \int_0^pi Lambda_k dk, which gives -2B at J = 0. The Pauli
// Hamiltonian above has -B per site at J = 0. The two differ by exactly a
// factor 2; finite-chain energies are never rescaled to hide it.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qg/elliptic.hpp"
#include "qg/error.hpp"
#include "qg/quadrature.hpp"
#include "qg/stencil.hpp"

namespace qg::tfim {

struct TfimParams {
  double B = 1.0;  // transverse field
  double J = 0.0;  // exchange

  [[nodiscard]] double lambda() const { return J / B; }
};

/// Analytic routines need B > 0 and J >= 0.
inline void validate_analytic(const TfimParams& p, const char* who) {
  if (!(p.B > 0.0) || !(p.J >= 0.0) || !std::isfinite(p.B) ||
      !std::isfinite(p.J)) {
    throw domain_error(std::string(who) + ": need B > 0 and J >= 0 (got B=" +
                       std::to_string(p.B) + ", J=" + std::to_string(p.J) +
                       ")");
  }
}

/// Finite chains also accept the classical limit B = 0.
inline void validate_finite(const TfimParams& p, const char* who) {
  if (!(p.B >= 0.0) || !(p.J >= 0.0) || !std::isfinite(p.B) ||
      !std::isfinite(p.J)) {
    throw domain_error(std::string(who) + ": need B >= 0 and J >= 0");
  }
}

/// Quasi-particle dispersion Lambda_k = 2 sqrt(1 + lambda^2 - 2 lambda cos k).
inline double dispersion(double k, double lambda) {
  if (!(k >= 0.0 && k <= std::numbers::pi)) {
    throw domain_error("dispersion: k must lie in [0, pi]");
  }
  if (!(lambda >= 0.0)) throw domain_error("dispersion: lambda must be >= 0");
  // (1 - lambda)^2 + 4 lambda sin^2(k/2) avoids cancellation near the gap.
  const double s = std::sin(0.5 * k);
  const double d = 1.0 - lambda;
  return 2.0 * std::sqrt(d * d + 4.0 * lambda * s * s);
}

inline constexpr double kCriticalWindow = 1e-10;

namespace detail {

/// f(lambda) = e0_per_site(B = 1, J = lambda). f is even in lambda
/// (k -> pi - k), which lets stencils straddle lambda = 0.
inline double reduced_energy(double lambda) {
  const double l = std::abs(lambda);
  const double d = std::abs(l - 1.0);
  if (d < kCriticalWindow) return -8.0 / std::numbers::pi;
  const double m = -4.0 * l / (d * d);
  return -4.0 / std::numbers::pi * d * elliptic::ell_e(m);
}

}  // namespace detail

/// Ground-state energy per site in the thermodynamic limit,
/// -(4B/pi) |lambda - 1| E(-4 lambda / (lambda - 1)^2), with the removable
/// singularity at lambda = 1 filled by -8B/pi.
inline double e0_per_site(const TfimParams& p) {
  validate_analytic(p, "e0_per_site");
  return p.B * detail::reduced_energy(p.lambda());
}

/// Same quantity by adaptive quadrature of -(B/pi) \int_0^pi Lambda_k dk.
inline double e0_quadrature(const TfimParams& p,
                            double tol = elliptic::kDefaultQuadratureTol) {
  validate_analytic(p, "e0_quadrature");
  if (!(tol > 0.0)) throw domain_error("e0_quadrature: tol must be > 0");
  const double lambda = p.lambda();
  // Integrate the B = 1 form so the absolute tolerance scales with B.
  const double integral = quadrature::adaptive_simpson(
      [lambda](double k) { return dispersion(k, lambda); }, 0.0,
      std::numbers::pi, tol * std::numbers::pi / p.B);
  return -p.B / std::numbers::pi * integral;
}

inline constexpr double kDerivativeExclusion = 1e-6;

/// f''(lambda) for the reduced energy, by the 5-point stencil with two
/// Richardson halvings from the step 1e-2 max(1, lambda). Closer to the
/// critical point than 2.5e-2 the step is capped at 0.4 |lambda - 1|, so no
/// stencil point crosses lambda = 1, and only one halving is taken: there
/// the error is dominated by round-off in f, which halving amplifies.
inline stencil::Estimate reduced_energy_second(double lambda) {
  if (!(lambda >= 0.0)) {
    throw domain_error("reduced_energy_second: lambda must be >= 0");
  }
  const double d = std::abs(lambda - 1.0);
  if (d < 10.0 * kCriticalWindow) {
    throw singularity_error("reduced_energy_second: lambda = 1 is singular");
  }
  const double h0 = 1e-2 * std::max(1.0, lambda);
  const double cap = 0.4 * d;
  if (h0 <= cap) {
    return stencil::second_derivative(detail::reduced_energy, lambda, h0, 2);
  }
  return stencil::second_derivative(detail::reduced_energy, lambda, cap, 1);
}

enum class Scheme { analytic, finite_difference };

struct Derivatives {
  double cross = 0.0;   // d^2 E0 / dJ dB
  double second = 0.0;  // d^2 E0 / dB^2
  double err_cross = 0.0;
  double err_second = 0.0;
};

/// Cross and second derivatives of e0_per_site. Throws singularity_error
/// within 1e-6 of lambda = 1, where both diverge.
inline Derivatives derivatives(const TfimParams& p,
                               Scheme scheme = Scheme::analytic) {
  validate_analytic(p, "derivatives");
  const double lambda = p.lambda();
  const double d = std::abs(lambda - 1.0);
  if (d < kDerivativeExclusion) {
    throw singularity_error("tfim::derivatives: |lambda - 1| = " +
                            std::to_string(d) + " < 1e-6");
  }
  Derivatives out;
  if (scheme == Scheme::analytic) {
    // E0(B, J) = B f(J/B)  =>  cross = -(lambda/B) f'', second = (lambda^2/B) f''.
    const auto f2 = reduced_energy_second(lambda);
    out.cross = -lambda / p.B * f2.value;
    out.second = lambda * lambda / p.B * f2.value;
    out.err_cross = lambda / p.B * f2.err;
    out.err_second = lambda * lambda / p.B * f2.err;
    return out;
  }
  // Direct stencils on E0(B, J). A step of B |lambda - 1| / 8 keeps every
  // stencil point on one side of the critical line J = B.
  auto energy = [](double B, double J) {
    return B * detail::reduced_energy(J / B);
  };
  // Steps start at 1e-2 max(1, |x|) with two halvings: the derivatives can
  // be small next to E0 itself, so round-off rather than truncation limits
  // smaller steps.
  const double cap = 0.125 * p.B * d / (1.0 + lambda);
  const double hB = std::min(1e-2 * std::max(1.0, p.B), cap);
  const double hJ = std::min(1e-2 * std::max(1.0, p.J), cap);
  const auto cross = stencil::mixed_derivative(energy, p.B, p.J, hB, hJ, 2);
  const auto second = stencil::second_derivative(
      [&](double B) { return energy(B, p.J); }, p.B, hB, 2);
  out.cross = cross.value;
  out.second = second.value;
  out.err_cross = cross.err;
  out.err_second = second.err;
  return out;
}

struct FiniteChainSolution {
  int n_sites = 0;
  std::vector<double> single_particle_energies;  // ascending, all >= 0
  double e0_total = 0.0;                         // -(1/2) sum of the above
};

inline constexpr int kMaxFreeFermionSites = 24;

/// Exact ground energy of the open Pauli chain of `n_sites` spins.
///
/// After a Jordan-Wigner transformation the open chain is a quadratic
/// fermion problem whose Bogoliubov energies are the singular values of the
/// upper-bidiagonal matrix with 2B on the diagonal and 2J above it. The
/// ground state contains no quasi-particles.
inline FiniteChainSolution finite_chain_e0(int n_sites, const TfimParams& p) {
  if (n_sites < 2 || n_sites > kMaxFreeFermionSites) {
    throw size_error("finite_chain_e0: n_sites must lie in [2, 24]");
  }
  validate_finite(p, "finite_chain_e0");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_sites, n_sites);
  for (int i = 0; i < n_sites; ++i) {
    m(i, i) = 2.0 * p.B;
    if (i + 1 < n_sites) m(i, i + 1) = 2.0 * p.J;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd sv = svd.singularValues();
  FiniteChainSolution out;
  out.n_sites = n_sites;
  out.single_particle_energies.assign(sv.data(), sv.data() + sv.size());
  std::sort(out.single_particle_energies.begin(),
            out.single_particle_energies.end());
  double sum = 0.0;
  for (double e : out.single_particle_energies) sum += e;
  out.e0_total = -0.5 * sum;
  return out;
}

}  // namespace qg::tfim

#endif  // QG_TFIM_HPP
