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

#ifndef QG_ED_HPP
#define QG_ED_HPP

// Exact diagonalization of small spin-1/2 systems in the computational
// basis. Spin i is bit i of the basis index; bit value 0 is |up>
// (sigma^z = +1). The Kane system uses qubit order (n1, n2, e1, e2).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "qg/error.hpp"
#include "qg/stencil.hpp"
#include "qg/tfim.hpp"

namespace qg::ed {

using cplx = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;
using Vector = Eigen::VectorXcd;

enum class Pauli : std::uint8_t { I, X, Y, Z };

struct PauliFactor {
  int site;
  Pauli op;
};

/// Sum of weighted Pauli strings, materialized as a sparse matrix.
class PauliSum {
 public:
  explicit PauliSum(int n_spins) : n_spins_(n_spins) {}

  PauliSum& add(cplx coefficient, std::vector<PauliFactor> factors) {
    for (const auto& f : factors) {
      if (f.site < 0 || f.site >= n_spins_) {
        throw domain_error("PauliSum::add: site index out of range");
      }
    }
    terms_.push_back({coefficient, std::move(factors)});
    return *this;
  }

  /// Adds c (sx.sx + sy.sy + sz.sz) between sites a and b.
  PauliSum& add_heisenberg(double c, int a, int b) {
    add(c, {{a, Pauli::X}, {b, Pauli::X}});
    add(c, {{a, Pauli::Y}, {b, Pauli::Y}});
    add(c, {{a, Pauli::Z}, {b, Pauli::Z}});
    return *this;
  }

  [[nodiscard]] int n_spins() const { return n_spins_; }

  [[nodiscard]] SparseMatrix to_matrix() const {
    const std::size_t dim = std::size_t{1} << n_spins_;
    std::vector<Eigen::Triplet<cplx>> triplets;
    triplets.reserve(dim * terms_.size());
    for (std::size_t col = 0; col < dim; ++col) {
      for (const auto& term : terms_) {
        std::size_t row = col;
        cplx amp = term.coefficient;
        for (const auto& f : term.factors) {
          const bool down = (row >> f.site) & 1U;
          switch (f.op) {
            case Pauli::I:
              break;
            case Pauli::X:
              row ^= std::size_t{1} << f.site;
              break;
            case Pauli::Y:
              // Y|up> = i|down>, Y|down> = -i|up>
              amp *= down ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
              row ^= std::size_t{1} << f.site;
              break;
            case Pauli::Z:
              if (down) amp = -amp;
              break;
          }
        }
        if (amp != cplx(0.0, 0.0)) {
          triplets.emplace_back(static_cast<int>(row), static_cast<int>(col),
                                amp);
        }
      }
    }
    SparseMatrix m(static_cast<Eigen::Index>(dim),
                   static_cast<Eigen::Index>(dim));
    m.setFromTriplets(triplets.begin(), triplets.end());
    m.prune(cplx(0.0, 0.0));
    return m;
  }

 private:
  struct Term {
    cplx coefficient;
    std::vector<PauliFactor> factors;
  };
  int n_spins_;
  std::vector<Term> terms_;
};

struct SpinHamiltonian {
  int n_spins = 0;
  std::string label;
  SparseMatrix matrix;

  [[nodiscard]] Eigen::Index dim() const { return matrix.rows(); }

  [[nodiscard]] Eigen::MatrixXcd dense() const {
    return Eigen::MatrixXcd(matrix);
  }

  /// Maximum absolute row sum.
  [[nodiscard]] double norm_max_row() const {
    double best = 0.0;
    for (Eigen::Index r = 0; r < matrix.outerSize(); ++r) {
      double s = 0.0;
      for (SparseMatrix::InnerIterator it(matrix, r); it; ++it) {
        s += std::abs(it.value());
      }
      best = std::max(best, s);
    }
    return best;
  }
};

inline constexpr int kMaxEdSites = 14;

namespace detail {

inline SpinHamiltonian tfim_unchecked(int n_sites, double B, double J) {
  PauliSum sum(n_sites);
  for (int i = 0; i < n_sites; ++i) sum.add(-B, {{i, Pauli::X}});
  for (int i = 0; i + 1 < n_sites; ++i) {
    sum.add(-J, {{i, Pauli::Z}, {i + 1, Pauli::Z}});
  }
  return {n_sites, "tfim-open-" + std::to_string(n_sites), sum.to_matrix()};
}

}  // namespace detail

/// Open Pauli chain H = -B sum sx_i - J sum sz_i sz_{i+1}.
inline SpinHamiltonian build_tfim(int n_sites, const tfim::TfimParams& p) {
  if (n_sites < 2 || n_sites > kMaxEdSites) {
    throw size_error("build_tfim: n_sites must lie in [2, 14]");
  }
  tfim::validate_finite(p, "build_tfim");
  return detail::tfim_unchecked(n_sites, p.B, p.J);
}

enum class KaneLayout {
  standard,         // A1: n1.e1, A2: n2.e2
  shared_electron,  // A1: n1.e2, A2: n2.e2
};

struct KaneCouplings {
  double A1 = 0.0;
  double A2 = 0.0;
  double Jp = 0.0;
  double muBB = 1.0;
  double nuclear_zeeman = 0.0;
  KaneLayout layout = KaneLayout::standard;
};

namespace kane_sites {
inline constexpr int n1 = 0;
inline constexpr int n2 = 1;
inline constexpr int e1 = 2;
inline constexpr int e2 = 3;
}  // namespace kane_sites

/// Two donor nuclei and their electrons:
///   H = muBB (sz_e1 + sz_e2) - nz (sz_n1 + sz_n2)
///     + A1 s_n1.s_e1 + A2 s_n2.s_e2 + Jp s_e1.s_e2.
inline SpinHamiltonian build_kane(const KaneCouplings& c) {
  for (double v : {c.A1, c.A2, c.Jp, c.muBB, c.nuclear_zeeman}) {
    if (!std::isfinite(v)) throw domain_error("build_kane: non-finite coupling");
  }
  if (c.muBB < 0.0) throw domain_error("build_kane: muBB must be >= 0");
  using namespace kane_sites;
  PauliSum sum(4);
  sum.add(c.muBB, {{e1, Pauli::Z}});
  sum.add(c.muBB, {{e2, Pauli::Z}});
  sum.add(-c.nuclear_zeeman, {{n1, Pauli::Z}});
  sum.add(-c.nuclear_zeeman, {{n2, Pauli::Z}});
  const int partner_of_n1 = c.layout == KaneLayout::standard ? e1 : e2;
  sum.add_heisenberg(c.A1, n1, partner_of_n1);
  sum.add_heisenberg(c.A2, n2, e2);
  sum.add_heisenberg(c.Jp, e1, e2);
  return {4,
          c.layout == KaneLayout::standard ? "kane" : "kane-shared-electron",
          sum.to_matrix()};
}

/// Single spin in a tilted field, H = -h sx - g sz; E0 = -sqrt(h^2 + g^2).
inline SpinHamiltonian build_tilted(double h, double g) {
  PauliSum sum(1);
  sum.add(-h, {{0, Pauli::X}});
  sum.add(-g, {{0, Pauli::Z}});
  return {1, "tilted-field", sum.to_matrix()};
}

struct GroundState {
  double energy = 0.0;
  Vector vector;
  double gap = 0.0;  // 0 when the ground level is degenerate
};

struct Spectrum {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXcd vectors;  // columns
};

inline constexpr Eigen::Index kMaxDenseDim = 256;

/// Full spectrum by dense Hermitian diagonalization (dim <= 256).
inline Spectrum ground_state_full(const SpinHamiltonian& H) {
  if (H.dim() > kMaxDenseDim) {
    throw size_error("ground_state_full: dim " + std::to_string(H.dim()) +
                     " exceeds 256");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H.dense());
  if (solver.info() != Eigen::Success) {
    throw convergence_error("ground_state_full: dense eigensolver failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Rotates v so that its largest-magnitude amplitude is real and positive.
/// Near-ties (within 1e-10 relative) go to the lowest basis index.
inline void fix_phase(Vector& v) {
  const double vmax = v.cwiseAbs().maxCoeff();
  Eigen::Index pick = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) >= vmax * (1.0 - 1e-10)) {
      pick = i;
      break;
    }
  }
  if (std::abs(v[pick]) > 0.0) v *= std::conj(v[pick]) / std::abs(v[pick]);
}

/// In-place projection onto a symmetry sector; must commute with H.
using Projector = std::function<void(Vector&)>;

struct SolverOptions {
  double tol = 1e-12;       // Ritz residual target, relative to norm_max_row
  int max_iter = 400;       // Krylov dimension cap
  double degeneracy_tol = 1e-10;
  Projector projector;      // optional sector restriction
  std::uint64_t seed = 0x5eed5eedULL;
};

namespace detail {

struct LanczosResult {
  double value = 0.0;
  Vector vector;
  bool empty = false;  // start vector vanished after projection/deflation
};

inline void orthogonalize(Vector& w, std::span<const Vector> against) {
  for (const auto& u : against) w -= u * u.dot(w);
}

/// Lowest eigenpair by Lanczos with full reorthogonalization, restricted to
/// the orthogonal complement of `deflate` (and to the projector's sector).
inline LanczosResult lanczos_lowest(const SpinHamiltonian& H,
                                    const SolverOptions& opt,
                                    std::span<const Vector> deflate) {
  const Eigen::Index dim = H.dim();
  const double scale = std::max(H.norm_max_row(), 1e-300);
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss;
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = cplx(gauss(rng), gauss(rng));
  auto restrict = [&](Vector& w) {
    if (opt.projector) opt.projector(w);
    orthogonalize(w, deflate);
  };
  restrict(v);
  if (v.norm() < 1e-8 * std::sqrt(static_cast<double>(dim))) {
    return {0.0, Vector(), true};
  }
  v.normalize();

  const int max_iter =
      static_cast<int>(std::min<Eigen::Index>(opt.max_iter, dim));
  std::vector<Vector> basis;
  basis.reserve(static_cast<std::size_t>(max_iter));
  std::vector<double> alpha, beta;
  basis.push_back(v);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
  Vector w(dim);
  for (int j = 0; j < max_iter; ++j) {
    w = H.matrix * basis.back();
    alpha.push_back(basis.back().dot(w).real());
    restrict(w);
    // Two passes of classical Gram-Schmidt against the whole basis.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : basis) w -= u * u.dot(w);
    }
    const double b = w.norm();

    const auto k = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), k);
    Eigen::VectorXd off(std::max<Eigen::Index>(k - 1, 0));
    for (Eigen::Index i = 0; i + 1 < k; ++i) off[i] = beta[static_cast<std::size_t>(i)];
    tri.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
    const double ritz_residual = b * std::abs(tri.eigenvectors()(k - 1, 0));
    const bool breakdown = b < 1e-13 * scale;
    if (ritz_residual < opt.tol * scale || breakdown || j + 1 == max_iter) {
      Vector x = Vector::Zero(dim);
      for (Eigen::Index i = 0; i < k; ++i) {
        x += basis[static_cast<std::size_t>(i)] * tri.eigenvectors()(i, 0);
      }
      restrict(x);
      x.normalize();
      const double value = tri.eigenvalues()[0];
      const double residual = (H.matrix * x - value * x).norm();
      if (residual > 1e-9 * scale) {
        throw convergence_error(
            "lanczos: residual " + std::to_string(residual) + " after " +
            std::to_string(j + 1) + " iterations (dim " + std::to_string(dim) +
            ", target " + std::to_string(1e-9 * scale) + ")");
      }
      return {value, std::move(x), false};
    }
    beta.push_back(b);
    basis.push_back(w / b);
  }
  throw convergence_error("lanczos: unreachable");
}

}  // namespace detail

/// Lowest eigenpair and gap. Dimensions up to 256 without a projector use
/// the dense solver; otherwise Lanczos, with the gap obtained from a second
/// Lanczos run deflated against the ground vector.
inline GroundState ground_state(const SpinHamiltonian& H,
                                const SolverOptions& opt = {}) {
  const double scale = std::max(1.0, H.norm_max_row());
  GroundState out;
  if (!opt.projector && H.dim() <= kMaxDenseDim) {
    const Spectrum s = ground_state_full(H);
    out.energy = s.values[0];
    out.vector = s.vectors.col(0);
    out.gap = s.values.size() > 1 ? s.values[1] - s.values[0]
                                  : std::numeric_limits<double>::infinity();
  } else {
    auto first = detail::lanczos_lowest(H, opt, {});
    if (first.empty) {
      throw domain_error("ground_state: projector annihilates the space");
    }
    out.energy = first.value;
    out.vector = std::move(first.vector);
    const Vector deflate[] = {out.vector};
    SolverOptions second_opt = opt;
    second_opt.seed = opt.seed + 1;
    const auto second = detail::lanczos_lowest(H, second_opt, deflate);
    out.gap = second.empty ? std::numeric_limits<double>::infinity()
                           : second.value - out.energy;
  }
  if (out.gap < opt.degeneracy_tol * scale) out.gap = 0.0;
  fix_phase(out.vector);
  return out;
}

/// Projector onto the even sector of the global spin flip prod_i sx_i.
inline Projector spin_flip_even(int n_spins) {
  const std::size_t mask = (std::size_t{1} << n_spins) - 1;
  return [mask](Vector& v) {
    Vector flipped(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      flipped[static_cast<Eigen::Index>(static_cast<std::size_t>(i) ^ mask)] = v[i];
    }
    v = 0.5 * (v + flipped);
  };
}

/// TFIM ground state restricted to the spin-flip-even sector, where the
/// unique ground state lives for B > 0. The sector restriction keeps the
/// cat-like state at large J/B instead of an arbitrary mixture of the two
/// quasi-degenerate levels. `gap` is measured inside the sector.
inline GroundState tfim_ground_state(int n_sites, const tfim::TfimParams& p) {
  SolverOptions opt;
  opt.projector = spin_flip_even(n_sites);
  return ground_state(build_tfim(n_sites, p), opt);
}

/// <v| op |v> for a Hermitian operator.
inline double expectation(const SparseMatrix& op, const Vector& v) {
  return v.dot(op * v).real();
}

struct HellmannFeynman {
  double lhs = 0.0;  // dE0/dJ by central differences
  double rhs = 0.0;  // <psi0| dH/dJ |psi0> = -sum_i <sz_i sz_{i+1}>
  double discrepancy = 0.0;
  double gap = 0.0;
};

/// Compares dE0/dJ with the ground-state expectation of dH/dJ for the open
/// TFIM chain. Throws degeneracy_error when the gap is below 1e-8.
inline HellmannFeynman hellmann_feynman_check(int n_sites,
                                              const tfim::TfimParams& p) {
  const SpinHamiltonian H = build_tfim(n_sites, p);
  const GroundState gs = ground_state(H);
  if (!(gs.gap > 1e-8)) {
    throw degeneracy_error("hellmann_feynman_check: gap " +
                           std::to_string(gs.gap) + " <= 1e-8");
  }
  HellmannFeynman out;
  out.gap = gs.gap;
  // E0 is even in J (staggered spin flip), so the stencil may cross J = 0.
  auto energy = [&](double J) {
    return ground_state(detail::tfim_unchecked(n_sites, p.B, J)).energy;
  };
  out.lhs = stencil::first_derivative(
                energy, p.J, stencil::default_step(p.J, stencil::Order::first))
                .value;
  double zz = 0.0;
  for (Eigen::Index b = 0; b < gs.vector.size(); ++b) {
    const double w = std::norm(gs.vector[b]);
    if (w == 0.0) continue;
    int bond_sum = 0;
    for (int i = 0; i + 1 < n_sites; ++i) {
      const bool a = (b >> i) & 1;
      const bool c = (b >> (i + 1)) & 1;
      bond_sum += (a == c) ? 1 : -1;
    }
    zz += w * bond_sum;
  }
  out.rhs = -zz;
  out.discrepancy = std::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace qg::ed

#endif  // QG_ED_HPP
