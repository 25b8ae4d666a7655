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

#ifndef QG_ACCEPTANCE_HPP
#define QG_ACCEPTANCE_HPP

// Numbered acceptance criteria. Each returns a Result carrying a one-line
// detail string; `selftest` runs 1-9 and the acceptance binary runs all.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qg/ed.hpp"
#include "qg/entanglement.hpp"
#include "qg/gamma.hpp"
#include "qg/kane.hpp"
#include "qg/tfim.hpp"

namespace qg::acceptance {

struct Result {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double budget = 0.0;  // wall-clock limit in seconds, 0 = none
};

inline std::string format(const Result& r) {
  char head[96];
  std::snprintf(head, sizeof head, "[%s] %2d %-32s %8.3fs", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds);
  return std::string(head) + "  " + r.detail;
}

namespace detail {

inline std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

/// Times `body`, which fills detail and returns pass. Exceptions fail the
/// criterion with the message as detail.
inline Result timed(int id, std::string name, double budget,
                    const std::function<bool(std::string&)>& body) {
  Result r;
  r.id = id;
  r.name = std::move(name);
  r.budget = budget;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r.pass = body(r.detail);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget > 0.0 && r.seconds > budget) {
    r.pass = false;
    r.detail += fmt(" (over budget %.0fs)", budget);
  }
  return r;
}

}  // namespace detail

inline Result tfim_anchors() {
  return detail::timed(1, "tfim analytic anchors", 1.0, [](std::string& d) {
    const double a = std::abs(tfim::e0_per_site({1.0, 0.0}) + 2.0);
    const double b = std::abs(tfim::e0_per_site({1.0, 1.0}) + 8.0 / std::numbers::pi);
    d = detail::fmt("|e0(J=0)+2|=%.3g", a) + detail::fmt(" |e0(J=1)+8/pi|=%.3g", b);
    return a <= 1e-12 && b <= 1e-10;
  });
}

inline Result elliptic_vs_quadrature() {
  return detail::timed(2, "elliptic vs quadrature", 5.0, [](std::string& d) {
    double worst = 0.0;
    for (int i = 1; i <= 60; ++i) {
      const double lambda = 0.05 * i;
      if (lambda > 0.99 && lambda < 1.01) continue;
      const tfim::TfimParams p{1.0, lambda};
      const double closed = tfim::e0_per_site(p);
      worst = std::max(worst, std::abs(closed - tfim::e0_quadrature(p)) / std::abs(closed));
    }
    d = detail::fmt("max relative discrepancy %.3g", worst);
    return worst <= 1e-9;
  });
}

inline Result qcp_signature() {
  return detail::timed(3, "log divergence of cross term", 10.0, [](std::string& d) {
    bool ok = true;
    for (double side : {1.0, -1.0}) {
      std::vector<double> v;
      for (int k = 2; k <= 5; ++k) {
        v.push_back(std::abs(tfim::derivatives({1.0, 1.0 + side * std::pow(10.0, -k)}).cross));
      }
      std::vector<double> inc;
      for (std::size_t i = 1; i < v.size(); ++i) inc.push_back(v[i] - v[i - 1]);
      for (double x : inc) ok = ok && x > 0.0;
      for (std::size_t i = 1; i < inc.size(); ++i) {
        const double q = inc[i] / inc[i - 1];
        ok = ok && q >= 0.8 && q <= 1.2;
      }
      d += std::string(side > 0 ? "above:" : " below:");
      for (double x : inc) d += detail::fmt(" %.4f", x);
    }
    d = "increments per decade " + d;
    return ok;
  });
}

inline Result free_fermion_vs_ed() {
  return detail::timed(4, "free fermions vs ED", 60.0, [](std::string& d) {
    std::mt19937_64 rng(20260401);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    double worst = 0.0;
    for (int n : {2, 4, 8, 12}) {
      for (int t = 0; t < 10; ++t) {
        const tfim::TfimParams p{u(rng), u(rng)};
        const double ff = tfim::finite_chain_e0(n, p).e0_total;
        const double ed_e = ed::ground_state(ed::build_tfim(n, p)).energy;
        worst = std::max(worst, std::abs(ff - ed_e));
      }
    }
    d = detail::fmt("max |E_ff - E_ed| = %.3g", worst);
    return worst <= 1e-9;
  });
}

inline Result hellmann_feynman() {
  return detail::timed(5, "Hellmann-Feynman N=10", 30.0, [](std::string& d) {
    double worst = 0.0;
    for (double lambda : {0.3, 0.5, 2.0}) {
      worst = std::max(worst, ed::hellmann_feynman_check(10, {1.0, lambda}).discrepancy);
    }
    d = detail::fmt("max |dE/dJ - <dH/dJ>| = %.3g", worst);
    return worst <= 1e-6;
  });
}

inline Result entanglement_anchors() {
  return detail::timed(6, "entanglement anchors", 0.0, [](std::string& d) {
    using namespace entanglement;
    double worst = 0.0;
    auto track = [&](double got, double want) { worst = std::max(worst, std::abs(got - want)); };
    track(von_neumann_entropy(partial_trace(plus_product_state(6), 6, {0, 1, 2})).bits, 0.0);
    track(von_neumann_entropy(DensityMatrix(Matrix::Identity(2, 2) * 0.5)).bits, 1.0);
    for (int n : {1, 10}) {
      const Eigen::Index dim = Eigen::Index{1} << n;
      const Matrix rho = Matrix::Identity(dim, dim) / static_cast<double>(dim);
      track(von_neumann_entropy(DensityMatrix(rho)).bits, n);
    }
    for (int n : {1, 10, 30}) track(maximally_mixed_entropy(n).bits, n);
    for (int n = 3; n <= 8; ++n) {
      const Vector g = ghz_state(n);
      track(concurrence(partial_trace(g, n, {0, 1})), 0.0);
      track(concurrence(partial_trace(g, n, {n - 2, n - 1})), 0.0);
      track(von_neumann_entropy(partial_trace(g, n, {0})).bits, 1.0);
    }
    d = detail::fmt("max deviation %.3g", worst);
    return worst <= 1e-10;
  });
}

inline Result fig1_entropy() {
  return detail::timed(7, "half-chain entropy N=10", 120.0, [](std::string& d) {
    std::vector<double> lam, s;
    for (int i = 0; i <= 36; ++i) {
      lam.push_back(0.2 + 0.05 * i);
      s.push_back(entanglement::tfim_entanglement_profile(10, {1.0, lam.back()}).entropy.bits);
    }
    bool monotone = true;
    double best = -1.0, at = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i) {
      monotone = monotone && s[i] > s[i - 1];
      const double slope = (s[i] - s[i - 1]) / (lam[i] - lam[i - 1]);
      if (slope > best) {
        best = slope;
        at = 0.5 * (lam[i] + lam[i - 1]);
      }
    }
    const double s20 = entanglement::tfim_entanglement_profile(10, {1.0, 20.0}).entropy.bits;
    d = std::string(monotone ? "monotone" : "NOT monotone") +
        detail::fmt(", max slope at lambda=%.3f", at) + detail::fmt(", S(20)=%.6f bits", s20);
    return monotone && at >= 0.8 && at <= 1.2 && std::abs(s20 - 1.0) <= 0.15;
  });
}

inline Result kane_anchors() {
  return detail::timed(8, "kane anchors", 30.0, [](std::string& d) {
    const double e = kane::splitting({1e-3, 0.25, 1.0});
    const bool exact = std::abs(e - 2e-6) <= 4.0 * std::numeric_limits<double>::epsilon() * 2e-6;
    const auto lo = kane::derivatives({1e-3, 0.5 - 5e-4, 1.0});
    const auto hi = kane::derivatives({1e-3, 0.5 + 5e-4, 1.0});
    const bool flips = lo.cross * hi.cross < 0.0 && lo.second * hi.second < 0.0;
    auto rel = [](double A) {
      const kane::KaneParams p{A, 0.25, 1.0};
      return std::abs(kane::ed_splitting(p) - kane::splitting(p)) / kane::splitting(p);
    };
    const double r3 = rel(1e-3), r2 = rel(1e-2);
    const double shrink = r2 / r3;
    d = detail::fmt("E=%.17g", e) + (flips ? ", both components flip" : ", NO flip") +
        detail::fmt(", ED rel err %.3g", r3) + detail::fmt(" (shrink x%.1f)", shrink);
    return exact && flips && r3 <= 0.01 && shrink >= 50.0 && shrink <= 200.0;
  });
}

inline Result gamma_ratios() {
  return detail::timed(9, "closed Gamma ratios", 0.0, [](std::string& d) {
    double wt = 0.0, wk = 0.0, wc = 0.0;
    const auto tf = gamma::tfim_energy_model();
    for (double J : {0.25, 0.5, 2.0}) {
      const auto g = gamma::gamma0k(tf, 1.0, J);
      wt = std::max(wt, g.status == gamma::Status::ok ? std::abs(g.gamma - 1.0 / J) : HUGE_VAL);
    }
    const auto km = gamma::kane_model(1e-3);
    for (double Jp : {0.1, 0.25, 1.0}) {
      const auto g = gamma::gamma0k(km, Jp, 1.0);
      wk = std::max(wk, g.status == gamma::Status::ok ? std::abs(g.gamma - 0.5 / Jp) : HUGE_VAL);
    }
    const auto tm = gamma::tilted_field_model();
    for (double gg : {0.5, 1.0, 2.0}) {
      const auto g = gamma::gamma0k(tm, 1.0, gg);
      wc = std::max(wc, g.status == gamma::Status::ok ? std::abs(g.gamma - 1.0 / gg) : HUGE_VAL);
    }
    d = detail::fmt("tfim %.3g", wt) + detail::fmt(", kane %.3g", wk) +
        detail::fmt(", tilted %.3g", wc);
    return wt <= 1e-3 && wk <= 1e-4 && wc <= 1e-6;
  });
}

inline Result scanner_discrimination() {
  return detail::timed(10, "scanner discrimination", 120.0, [](std::string& d) {
    struct Case {
      gamma::TwoParamModel model;
      double fixed, lo, hi;
      gamma::Axis axis;
      std::vector<double> expected;
    };
    const std::vector<Case> cases{
        {gamma::tfim_energy_model(), 1.0, 0.2, 2.0, gamma::Axis::g, {1.0}},
        {gamma::kane_model(1e-3), 1.0, 0.05, 1.0, gamma::Axis::h, {0.5}},
        {gamma::tilted_field_model(), 1.0, 0.1, 2.0, gamma::Axis::g, {}},
    };
    bool ok = true;
    for (const auto& c : cases) {
      for (int count : {37, 40, 96}) {
        const auto rep = gamma::scan(c.model, c.fixed, gamma::linspace(c.lo, c.hi, count), c.axis);
        std::size_t hits = 0;
        for (const auto& cand : rep.divergence_candidates) {
          bool matched = false;
          for (double x : c.expected) matched = matched || (cand.lo <= x && x <= cand.hi);
          hits += matched;
        }
        const bool good = hits == c.expected.size() &&
                          rep.divergence_candidates.size() == c.expected.size();
        ok = ok && good;
        if (!good) {
          d += " " + c.model.name + "/" + std::to_string(count) + ": " +
               std::to_string(rep.divergence_candidates.size()) + " candidates;";
        }
      }
    }
    if (ok) d = "tfim {1}, kane {0.5}, tilted {} on 37/40/96-point grids";
    return ok;
  });
}

inline Result entropy_vs_energy_gamma() {
  return detail::timed(11, "entropy vs energy Gamma", 0.0, [](std::string& d) {
    const auto em = gamma::tfim_energy_model();
    const auto sm = gamma::tfim_entropy_model(10);
    double worst = 0.0;
    for (int i = 0; i <= 5; ++i) {
      const double J = 0.3 + 0.1 * i;
      const auto ge = gamma::gamma0k(em, 1.0, J);
      const auto gs = gamma::gamma0k_entropy(sm, 1.0, J);
      if (ge.status != gamma::Status::ok || gs.status != gamma::Status::ok) {
        d = detail::fmt("non-ok status at lambda=%.1f", J);
        return false;
      }
      worst = std::max(worst, std::abs(gs.gamma / ge.gamma - 1.0));
    }
    d = detail::fmt("max relative difference %.3g", worst);
    return worst <= 0.15;
  });
}

/// Criteria 1-9.
inline std::vector<Result> run_core() {
  return {tfim_anchors(),       elliptic_vs_quadrature(), qcp_signature(),
          free_fermion_vs_ed(), hellmann_feynman(),       entanglement_anchors(),
          fig1_entropy(),       kane_anchors(),           gamma_ratios()};
}

/// Criteria 1-11 (everything that does not need the CLI binary).
inline std::vector<Result> run_library() {
  auto out = run_core();
  out.push_back(scanner_discrimination());
  out.push_back(entropy_vs_energy_gamma());
  return out;
}

}  // namespace qg::acceptance

#endif  // QG_ACCEPTANCE_HPP
