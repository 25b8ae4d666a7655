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

#ifndef QG_KANE_HPP
#define QG_KANE_HPP

// Nuclear-spin exchange splitting in the two-donor Kane architecture.
// Units: mu_B = 1, so the field enters only as the Zeeman energy muBB.

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "qg/ed.hpp"
#include "qg/error.hpp"

namespace qg::kane {

struct KaneParams {
  double A = 0.0;     // hyperfine coupling, A1 = A2 = A
  double Jp = 0.0;    // electron exchange J'
  double muBB = 1.0;  // electron Zeeman energy
};

/// Relative distance below which muBB = 2 Jp counts as the singular locus.
inline constexpr double kLocusTol = 1e-12;

inline void validate(const KaneParams& p, const char* who) {
  if (!std::isfinite(p.A) || !(p.A >= 0.0) || !(p.Jp >= 0.0) ||
      !std::isfinite(p.Jp) || !(p.muBB > 0.0) || !std::isfinite(p.muBB)) {
    throw domain_error(std::string(who) +
                       ": need A >= 0, Jp >= 0 and muBB > 0");
  }
  if (std::abs(p.muBB - 2.0 * p.Jp) <= kLocusTol * p.muBB) {
    throw singularity_error(std::string(who) + ": muBB = 2 Jp is singular");
  }
}

/// Ratio 2 Jp / muBB; the locus sits at 1.
inline double locus_ratio(const KaneParams& p) { return 2.0 * p.Jp / p.muBB; }

/// E = 2 A^2 (1/(muBB - 2 Jp) - 1/muBB).
inline double splitting(const KaneParams& p) {
  validate(p, "kane::splitting");
  const double a2 = p.A * p.A;
  return 2.0 * a2 * (1.0 / (p.muBB - 2.0 * p.Jp) - 1.0 / p.muBB);
}

struct Derivatives {
  double cross = 0.0;        // d^2 E / dJp dB  = -8 A^2 (muBB - 2 Jp)^-3
  double second = 0.0;       // d^2 E / dJp^2   = 16 A^2 (muBB - 2 Jp)^-3
  double second_term = 0.0;  // -Jp d^2 E / dJp^2
};

inline Derivatives derivatives(const KaneParams& p) {
  validate(p, "kane::derivatives");
  const double d = p.muBB - 2.0 * p.Jp;
  const double inv3 = 1.0 / (d * d * d);
  const double a2 = p.A * p.A;
  Derivatives out;
  out.cross = -8.0 * a2 * inv3;
  out.second = 16.0 * a2 * inv3;
  out.second_term = -p.Jp * out.second;
  return out;
}

/// Zero-temperature Grueneisen ratio with h = Jp and g = muBB,
/// -cross / (Jp * second); the closed forms reduce it to 1/(2 Jp).
inline double gamma0k_kane(const KaneParams& p) {
  if (!(p.Jp > 0.0)) throw singularity_error("gamma0k_kane: Jp = 0 is singular");
  KaneParams unit = p;
  unit.A = 1.0;  // the ratio does not depend on A; A = 0 would give 0/0
  const auto d = derivatives(unit);
  return -d.cross / (p.Jp * d.second);
}

inline constexpr double kIdentificationOverlap = 0.9;

struct EdSplitting {
  double splitting = 0.0;  // E(plus) - E(minus)
  double overlap_plus = 0.0;
  double overlap_minus = 0.0;
};

/// Exchange splitting from the full 16-level spectrum. The two nuclear
/// states (|ud> +- |du>)/sqrt(2) with both electrons down are located by
/// their weight on each (numerically) degenerate eigenspace; weights below
/// 0.9 raise identification_error.
inline EdSplitting ed_splitting_detail(const KaneParams& p) {
  validate(p, "kane::ed_splitting");
  if (!(2.0 * p.Jp < p.muBB)) {
    throw domain_error("kane::ed_splitting: needs 2 Jp < muBB");
  }
  ed::KaneCouplings c;
  c.A1 = c.A2 = p.A;
  c.Jp = p.Jp;
  c.muBB = p.muBB;
  const ed::SpinHamiltonian H = ed::build_kane(c);
  const ed::Spectrum s = ed::ground_state_full(H);

  using namespace ed::kane_sites;
  const auto idx = [](bool n1_down, bool n2_down) {
    return static_cast<Eigen::Index>((n1_down ? 1 << n1 : 0) |
                                     (n2_down ? 1 << n2 : 0) | (1 << e1) |
                                     (1 << e2));
  };
  ed::Vector plus = ed::Vector::Zero(16);
  ed::Vector minus = ed::Vector::Zero(16);
  plus[idx(false, true)] = minus[idx(false, true)] = 1.0 / std::sqrt(2.0);
  plus[idx(true, false)] = 1.0 / std::sqrt(2.0);
  minus[idx(true, false)] = -1.0 / std::sqrt(2.0);

  const double tol = 1e-12 * std::max(1.0, H.norm_max_row());
  struct Pick {
    double energy;
    double weight;
  };
  auto locate = [&](const ed::Vector& target) {
    Pick best{0.0, -1.0};
    Eigen::Index i = 0;
    while (i < s.values.size()) {
      Eigen::Index j = i;
      double w = 0.0;
      while (j < s.values.size() && s.values[j] - s.values[i] <= tol) {
        w += std::norm(s.vectors.col(j).dot(target));
        ++j;
      }
      if (w > best.weight) best = {s.values[i], w};
      i = j;
    }
    return best;
  };
  const Pick pp = locate(plus);
  const Pick pm = locate(minus);
  if (pp.weight < kIdentificationOverlap || pm.weight < kIdentificationOverlap) {
    throw identification_error(
        "kane::ed_splitting: overlap " +
        std::to_string(std::min(pp.weight, pm.weight)) + " < 0.9 at 2Jp/muBB = " +
        std::to_string(locus_ratio(p)));
  }
  return {pp.energy - pm.energy, pp.weight, pm.weight};
}

inline double ed_splitting(const KaneParams& p) {
  return ed_splitting_detail(p).splitting;
}

}  // namespace qg::kane

#endif  // QG_KANE_HPP
