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

#ifndef QG_GAMMA_HPP
#define QG_GAMMA_HPP

// Zero-temperature Grueneisen parameter of a generic two-parameter model,
//   Gamma = -(d^2 E0 / dh dg) / (h d^2 E0 / dh^2),
// its entropy form -(dS/dg) / (h dS/dh), and a parameter scanner that looks
// for divergences and sign changes of the two derivative components.
//
// Divergence is a classification, never a value: estimates carry a status
// and the scanner reports candidate intervals.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qg/entanglement.hpp"
#include "qg/error.hpp"
#include "qg/kane.hpp"
#include "qg/parallel.hpp"
#include "qg/stencil.hpp"
#include "qg/tfim.hpp"

namespace qg::gamma {

struct Rectangle {
  double h_min = -std::numeric_limits<double>::infinity();
  double h_max = std::numeric_limits<double>::infinity();
  double g_min = -std::numeric_limits<double>::infinity();
  double g_max = std::numeric_limits<double>::infinity();

  [[nodiscard]] bool contains(double h, double g) const {
    return h >= h_min && h <= h_max && g >= g_min && g <= g_max;
  }
};

/// Scalar function of two tuning parameters (ground-state energy or
/// entropy). `eval` must be deterministic and safe to call concurrently.
struct TwoParamModel {
  std::string name;
  std::function<double(double h, double g)> eval;
  std::string h_name = "h";
  std::string g_name = "g";
  Rectangle domain;
  /// True on (a neighbourhood of) a known singular locus.
  std::function<bool(double h, double g)> excluded;

  /// Checked evaluation: domain_error outside the rectangle,
  /// singularity_error on an excluded locus.
  [[nodiscard]] double operator()(double h, double g) const {
    if (!domain.contains(h, g)) {
      throw domain_error(name + ": (" + std::to_string(h) + ", " +
                         std::to_string(g) + ") outside the valid domain");
    }
    if (excluded && excluded(h, g)) {
      throw singularity_error(name + ": (" + std::to_string(h) + ", " +
                              std::to_string(g) + ") on a singular locus");
    }
    return eval(h, g);
  }

  [[nodiscard]] bool is_excluded(double h, double g) const {
    return excluded && excluded(h, g);
  }
};

/// Optional step overrides; non-positive means "use the default heuristic".
struct Steps {
  double h = 0.0;
  double g = 0.0;
};

namespace detail {

inline double pick(double requested, double x, stencil::Order order) {
  return requested > 0.0 ? requested : stencil::default_step(x, order);
}

}  // namespace detail

/// d^2 f / dh dg by the 4-point cross stencil with two Richardson halvings
/// (exact on polynomials of degree 4 in each variable).
inline stencil::Estimate mixed_partial(const TwoParamModel& f, double h,
                                       double g, Steps steps = {}) {
  const double sh = detail::pick(steps.h, h, stencil::Order::second);
  const double sg = detail::pick(steps.g, g, stencil::Order::second);
  return stencil::mixed_derivative(f, h, g, sh, sg, 2);
}

/// d^2 f / dh^2 by the 5-point stencil with one Richardson halving.
inline stencil::Estimate second_partial(const TwoParamModel& f, double h,
                                        double g, Steps steps = {}) {
  const double sh = detail::pick(steps.h, h, stencil::Order::second);
  return stencil::second_derivative([&](double x) { return f(x, g); }, h, sh);
}

enum class Status { ok, component_divergence_suspected, denominator_near_zero };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::ok:
      return "ok";
    case Status::component_divergence_suspected:
      return "component_divergence_suspected";
    case Status::denominator_near_zero:
      return "denominator_near_zero";
  }
  return "?";
}

/// Gamma together with its two components. For the energy form the
/// numerator is d^2 E0/dh dg and the denominator derivative d^2 E0/dh^2; for
/// the entropy form they are dS/dg and dS/dh. gamma is NaN unless status is
/// ok; it carries units of 1/g.
struct GammaEstimate {
  double numerator = 0.0;
  double denominator = 0.0;
  double gamma = std::numeric_limits<double>::quiet_NaN();
  double step_h = 0.0;
  double step_g = 0.0;
  double err_numerator = 0.0;
  double err_denominator = 0.0;
  Status status = Status::ok;
};

namespace detail {

inline bool grows_under_halving(const stencil::Estimate& e) {
  return std::abs(e.fine) > 4.0 * std::abs(e.coarse);
}

inline GammaEstimate assemble(double h, const stencil::Estimate& num,
                              const stencil::Estimate& den, double sh,
                              double sg, double flat_tol) {
  GammaEstimate out;
  out.numerator = num.value;
  out.denominator = den.value;
  out.err_numerator = num.err;
  out.err_denominator = den.err;
  out.step_h = sh;
  out.step_g = sg;
  const double scaled = std::abs(h * den.value);
  if (grows_under_halving(num) || grows_under_halving(den)) {
    out.status = Status::component_divergence_suspected;
  } else if (scaled <= 10.0 * den.err || scaled <= flat_tol) {
    out.status = Status::denominator_near_zero;
  } else {
    out.gamma = -num.value / (h * den.value);
  }
  return out;
}

/// Energy form without the h != 0 precondition; h = 0 yields
/// denominator_near_zero with both components filled.
inline GammaEstimate energy_form(const TwoParamModel& f, double h, double g,
                                 Steps steps) {
  const double sh = pick(steps.h, h, stencil::Order::second);
  const double sg = pick(steps.g, g, stencil::Order::second);
  const auto num = mixed_partial(f, h, g, {sh, sg});
  const auto den = second_partial(f, h, g, {sh, sg});
  return assemble(h, num, den, sh, sg, 0.0);
}

}  // namespace detail

/// Energy form of the zero-temperature Grueneisen parameter.
inline GammaEstimate gamma0k(const TwoParamModel& f, double h, double g,
                             Steps steps = {}) {
  if (h == 0.0) throw domain_error("gamma0k: h must be non-zero");
  return detail::energy_form(f, h, g, steps);
}

/// |h dS/dh| below this many bits counts as a flat entropy.
inline constexpr double kEntropyFlatTol = 1e-4;

/// Entropy form, -(dS/dg) / (h dS/dh), with first-derivative stencils.
inline GammaEstimate gamma0k_entropy(const TwoParamModel& s, double h, double g,
                                     Steps steps = {},
                                     double flat_tol = kEntropyFlatTol) {
  if (h == 0.0) throw domain_error("gamma0k_entropy: h must be non-zero");
  const double sh = detail::pick(steps.h, h, stencil::Order::first);
  const double sg = detail::pick(steps.g, g, stencil::Order::first);
  const auto num = stencil::first_derivative([&](double x) { return s(h, x); }, g, sg);
  const auto den = stencil::first_derivative([&](double x) { return s(x, g); }, h, sh);
  return detail::assemble(h, num, den, sh, sg, flat_tol);
}

// ---------------------------------------------------------------------------
// Built-in models

/// TFIM ground-state energy per site, h = B and g = J. The reduced energy
/// is even in J, so stencils may cross J = 0.
inline TwoParamModel tfim_energy_model() {
  TwoParamModel m;
  m.name = "tfim";
  m.h_name = "B";
  m.g_name = "J";
  m.eval = [](double B, double J) {
    return B * tfim::detail::reduced_energy(J / B);
  };
  m.domain.h_min = std::numeric_limits<double>::min();
  m.excluded = [](double B, double J) {
    return std::abs(std::abs(J / B) - 1.0) < tfim::kDerivativeExclusion;
  };
  return m;
}

/// Half-chain (or other cut) entanglement entropy in bits of the open
/// TFIM chain, h = B and g = J.
inline TwoParamModel tfim_entropy_model(int n_sites,
                                        entanglement::Cut cut = entanglement::Cut::half_chain) {
  TwoParamModel m;
  m.name = "tfim-entropy";
  m.h_name = "B";
  m.g_name = "J";
  m.eval = [n_sites, cut](double B, double J) {
    return entanglement::tfim_entanglement_profile(n_sites, {B, J}, cut).entropy.bits;
  };
  m.domain.h_min = std::numeric_limits<double>::min();
  m.domain.g_min = 0.0;
  return m;
}

/// Kane exchange splitting, h = J' and g = muBB, fixed hyperfine A.
inline TwoParamModel kane_model(double A) {
  TwoParamModel m;
  m.name = "kane";
  m.h_name = "Jp";
  m.g_name = "muBB";
  m.eval = [A](double Jp, double muBB) {
    return kane::splitting({A, Jp, muBB});
  };
  m.domain.h_min = 0.0;
  m.domain.g_min = std::numeric_limits<double>::min();
  m.excluded = [](double Jp, double muBB) {
    return std::abs(muBB - 2.0 * Jp) <= 1e-9 * std::max(1.0, std::abs(muBB));
  };
  return m;
}

/// Single spin in a tilted field, E0(h, g) = -sqrt(h^2 + g^2). Smooth away
/// from the origin: the negative control for the scanner. Closed forms:
/// d^2E/dhdg = hg r^-3, d^2E/dh^2 = -g^2 r^-3, Gamma = 1/g.
inline TwoParamModel tilted_field_model() {
  TwoParamModel m;
  m.name = "tilted";
  m.h_name = "h";
  m.g_name = "g";
  m.eval = [](double h, double g) { return -std::hypot(h, g); };
  m.excluded = [](double h, double g) { return std::hypot(h, g) < 1e-12; };
  return m;
}

// ---------------------------------------------------------------------------
// Scanner

enum class Axis { h, g };  // which parameter the grid sweeps
enum class Component { numerator, denominator };

inline const char* to_string(Axis a) { return a == Axis::h ? "h" : "g"; }
inline const char* to_string(Component c) {
  return c == Component::numerator ? "mixed" : "second";
}

struct ScanPoint {
  double x = 0.0;
  bool evaluated = false;  // false on an excluded locus or a failed stencil
  GammaEstimate estimate;
};

struct DivergenceCandidate {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<Component> components;
  bool locus = false;  // contains an unevaluated (excluded) grid node
};

enum class SignKind { zero, pole };

inline const char* to_string(SignKind k) { return k == SignKind::zero ? "zero" : "pole"; }

struct SignChange {
  Component component = Component::numerator;
  double lo = 0.0;
  double hi = 0.0;
  SignKind kind = SignKind::zero;
};

struct ScanReport {
  std::string model;
  Axis axis = Axis::g;
  double fixed = 0.0;
  std::vector<double> grid;
  std::vector<ScanPoint> points;
  std::vector<DivergenceCandidate> divergence_candidates;
  std::vector<SignChange> sign_changes;
};

struct ScanOptions {
  int zoom_rounds = 8;
  Steps steps;
  unsigned threads = parallel::thread_count();
};

namespace detail {

struct Evaluator {
  const TwoParamModel& f;
  Axis axis;
  double fixed;
  Steps steps;

  [[nodiscard]] std::pair<double, double> hg(double x) const {
    return axis == Axis::g ? std::pair{fixed, x} : std::pair{x, fixed};
  }

  /// Unset steps fall back to the local rule so that stencils near a locus
  /// do not reach across it.
  [[nodiscard]] Steps at(double h, double g) const {
    return {steps.h > 0.0 ? steps.h : stencil::local_step(h),
            steps.g > 0.0 ? steps.g : stencil::local_step(g)};
  }

  [[nodiscard]] std::optional<GammaEstimate> point(double x) const {
    const auto [h, g] = hg(x);
    if (f.is_excluded(h, g)) return std::nullopt;
    try {
      return energy_form(f, h, g, at(h, g));
    } catch (const singularity_error&) {
      return std::nullopt;
    }
  }

  /// One component at x; nullopt when the stencil touches a singular locus.
  [[nodiscard]] std::optional<double> component(double x, Component c) const {
    const auto [h, g] = hg(x);
    if (f.is_excluded(h, g)) return std::nullopt;
    try {
      return c == Component::numerator ? mixed_partial(f, h, g, at(h, g)).value
                                       : second_partial(f, h, g, at(h, g)).value;
    } catch (const singularity_error&) {
      return std::nullopt;
    }
  }
};

inline double value_of(const GammaEstimate& e, Component c) {
  return c == Component::numerator ? e.numerator : e.denominator;
}

/// Zoom test for a grid-local maximum of |v| at node i.
///
/// Each round samples the midpoints on both sides of the current peak and
/// moves the peak to the largest |v|, halving the bracket. For a smooth
/// extremum the total gain in |v| is bounded by a quarter of the drop from
/// the peak to its lower grid neighbour; a divergence keeps gaining. The
/// peak is classified divergent as soon as the gain exceeds half that drop,
/// or when a sample lands on a singular locus.
inline bool zoom_diverges(const Evaluator& ev, Component c,
                          const std::vector<double>& x,
                          const std::vector<double>& mag, std::size_t i,
                          int rounds) {
  double l = x[i - 1], p = x[i], r = x[i + 1];
  double vl = mag[i - 1], vp = mag[i], vr = mag[i + 1];
  const double v0 = vp;
  const double drop = v0 - std::min(vl, vr);
  auto diverged = [&] {
    const double gain = vp - v0;
    return gain > 0.5 * drop && gain > 1e-9 * std::max(v0, 1e-300);
  };
  for (int k = 0; k < rounds && !diverged(); ++k) {
    const double m1 = 0.5 * (l + p);
    const double m2 = 0.5 * (p + r);
    const auto a = ev.component(m1, c);
    const auto b = ev.component(m2, c);
    if (!a || !b) return true;
    const double va = std::abs(*a), vb = std::abs(*b);
    if (va > vp && va >= vb) {
      r = p, vr = vp;
      p = m1, vp = va;
    } else if (vb > vp) {
      l = p, vl = vp;
      p = m2, vp = vb;
    } else {
      l = m1, vl = va;
      r = m2, vr = vb;
    }
  }
  return diverged();
}

inline bool overlaps(double a_lo, double a_hi, double b_lo, double b_hi) {
  return a_lo <= b_hi && b_lo <= a_hi;
}

}  // namespace detail

/// Evaluates Gamma and both components along `grid` (the `axis` parameter,
/// the other held at `fixed`), then classifies divergence candidates and
/// sign-change brackets of each component.
inline ScanReport scan(const TwoParamModel& f, double fixed,
                       const std::vector<double>& grid, Axis axis = Axis::g,
                       const ScanOptions& opt = {}) {
  if (grid.size() < 8) throw domain_error("scan: grid needs at least 8 points");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw domain_error("scan: grid must be strictly increasing");
  }
  const detail::Evaluator ev{f, axis, fixed, opt.steps};
  ScanReport rep;
  rep.model = f.name;
  rep.axis = axis;
  rep.fixed = fixed;
  rep.grid = grid;
  const auto results = parallel::ordered_map(
      grid, [&](double x) { return ev.point(x); }, opt.threads);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ScanPoint pt;
    pt.x = grid[i];
    pt.evaluated = results[i].has_value();
    if (pt.evaluated) pt.estimate = *results[i];
    rep.points.push_back(pt);
  }

  std::vector<DivergenceCandidate> raw;
  const std::size_t n = grid.size();
  // Runs of unevaluated nodes: singular loci, reported without evaluation.
  for (std::size_t i = 0; i < n;) {
    if (rep.points[i].evaluated) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && !rep.points[j].evaluated) ++j;
    raw.push_back({grid[i == 0 ? 0 : i - 1], grid[j == n ? n - 1 : j],
                   {Component::numerator, Component::denominator}, true});
    i = j;
  }
  for (Component c : {Component::numerator, Component::denominator}) {
    std::vector<double> mag(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (rep.points[i].evaluated) mag[i] = std::abs(detail::value_of(rep.points[i].estimate, c));
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (!rep.points[i - 1].evaluated || !rep.points[i].evaluated ||
          !rep.points[i + 1].evaluated) {
        continue;
      }
      if (!(mag[i] > mag[i - 1] && mag[i] >= mag[i + 1])) continue;
      if (detail::zoom_diverges(ev, c, grid, mag, i, opt.zoom_rounds)) {
        raw.push_back({grid[i - 1], grid[i + 1], {c}, false});
      }
    }
  }
  // Merge overlapping intervals, joining their component tags.
  std::sort(raw.begin(), raw.end(),
            [](const auto& a, const auto& b) { return a.lo < b.lo; });
  for (auto& cand : raw) {
    if (!rep.divergence_candidates.empty() &&
        detail::overlaps(rep.divergence_candidates.back().lo,
                         rep.divergence_candidates.back().hi, cand.lo, cand.hi)) {
      auto& last = rep.divergence_candidates.back();
      last.hi = std::max(last.hi, cand.hi);
      last.locus = last.locus || cand.locus;
      for (Component c : cand.components) {
        if (std::find(last.components.begin(), last.components.end(), c) ==
            last.components.end()) {
          last.components.push_back(c);
        }
      }
    } else {
      rep.divergence_candidates.push_back(cand);
    }
  }
  for (auto& cand : rep.divergence_candidates) {
    std::sort(cand.components.begin(), cand.components.end());
  }

  // Sign changes between consecutive evaluated nodes. A node that is exactly
  // zero closes the bracket on its left.
  for (Component c : {Component::numerator, Component::denominator}) {
    std::optional<std::size_t> prev;
    for (std::size_t i = 0; i < n; ++i) {
      if (!rep.points[i].evaluated) continue;
      const double v = detail::value_of(rep.points[i].estimate, c);
      if (prev) {
        const double u = detail::value_of(rep.points[*prev].estimate, c);
        bool record = false;
        if (u != 0.0 && v != 0.0) {
          record = (u < 0.0) != (v < 0.0);
        } else if (v == 0.0 && u != 0.0) {
          // Zero node: count only a genuine crossing, judged by the next
          // evaluated node.
          for (std::size_t k = i + 1; k < n; ++k) {
            if (!rep.points[k].evaluated) continue;
            const double w = detail::value_of(rep.points[k].estimate, c);
            record = w != 0.0 && ((u < 0.0) != (w < 0.0));
            break;
          }
        }
        if (record) {
          SignChange sc{c, grid[*prev], grid[i], SignKind::zero};
          for (const auto& cand : rep.divergence_candidates) {
            if (detail::overlaps(sc.lo, sc.hi, cand.lo, cand.hi) &&
                std::find(cand.components.begin(), cand.components.end(), c) !=
                    cand.components.end()) {
              sc.kind = SignKind::pole;
            }
          }
          rep.sign_changes.push_back(sc);
        }
      }
      prev = i;
    }
  }
  std::stable_sort(rep.sign_changes.begin(), rep.sign_changes.end(),
                   [](const auto& a, const auto& b) { return a.lo < b.lo; });
  return rep;
}

/// start, start + step, ..., stop with `count` points.
inline std::vector<double> linspace(double start, double stop, int count) {
  if (count < 2) throw domain_error("linspace: count must be >= 2");
  std::vector<double> out(static_cast<std::size_t>(count));
  const double step = (stop - start) / (count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = start + i * step;
  out.back() = stop;
  return out;
}

}  // namespace qg::gamma

#endif  // QG_GAMMA_HPP
