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

#ifndef QG_ENTANGLEMENT_HPP
#define QG_ENTANGLEMENT_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qg/ed.hpp"
#include "qg/error.hpp"
#include "qg/tfim.hpp"

namespace qg::entanglement {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kNegativeEigenTol = 1e-10;

/// Hermitian, unit-trace, positive semidefinite matrix (checked on
/// construction).
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix elements) : rho_(std::move(elements)) {
    if (rho_.rows() == 0 || rho_.rows() != rho_.cols()) {
      throw domain_error("DensityMatrix: need a non-empty square matrix");
    }
    const double asym = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kHermiticityTol) {
      throw invariant_error("DensityMatrix: not Hermitian (max |rho - rho^+| = " +
                            std::to_string(asym) + ")");
    }
    // Exact Hermitian part; the residual asymmetry is round-off.
    rho_ = 0.5 * (rho_ + rho_.adjoint()).eval();
    const cplx tr = rho_.trace();
    if (std::abs(tr - cplx(1.0, 0.0)) > kTraceTol) {
      throw invariant_error("DensityMatrix: trace " + std::to_string(tr.real()) +
                            " != 1");
    }
    eigenvalues_ = Eigen::SelfAdjointEigenSolver<Matrix>(rho_, Eigen::EigenvaluesOnly)
                       .eigenvalues();
    if (eigenvalues_.minCoeff() < -kNegativeEigenTol) {
      throw invariant_error("DensityMatrix: eigenvalue " +
                            std::to_string(eigenvalues_.minCoeff()) +
                            " below -1e-10");
    }
  }

  /// |psi><psi| for a normalized state.
  static DensityMatrix pure(const Vector& psi) {
    return DensityMatrix(psi * psi.adjoint());
  }

  [[nodiscard]] Eigen::Index dim() const { return rho_.rows(); }
  [[nodiscard]] const Matrix& elements() const { return rho_; }
  /// Ascending, clamped to [0, 1].
  [[nodiscard]] Eigen::VectorXd clamped_eigenvalues() const {
    return eigenvalues_.cwiseMax(0.0).cwiseMin(1.0);
  }

 private:
  Matrix rho_;
  Eigen::VectorXd eigenvalues_;
};

struct EntropyValue {
  double bits = 0.0;
  double nats = 0.0;
};

namespace detail {

inline int qubit_count(Eigen::Index dim, const char* who) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim) {
    throw size_error(std::string(who) + ": dimension is not a power of two");
  }
  return n;
}

inline void check_keep(int n_qubits, const std::vector<int>& keep) {
  if (keep.empty() || static_cast<int>(keep.size()) >= n_qubits) {
    throw size_error("partial_trace: keep must be a non-empty proper subset");
  }
  std::vector<int> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
      sorted.front() < 0 || sorted.back() >= n_qubits) {
    throw size_error("partial_trace: invalid qubit index in keep");
  }
}

/// Splits basis index b into (kept index, traced index); bit j of the kept
/// index is qubit keep[j], traced qubits keep ascending order.
struct Splitter {
  std::vector<int> keep;
  std::vector<int> rest;

  Splitter(int n, std::vector<int> k) : keep(std::move(k)) {
    for (int q = 0; q < n; ++q) {
      if (std::find(keep.begin(), keep.end(), q) == keep.end()) rest.push_back(q);
    }
  }

  static std::size_t gather(std::size_t b, const std::vector<int>& qubits) {
    std::size_t out = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j) {
      out |= ((b >> qubits[j]) & 1U) << j;
    }
    return out;
  }
};

}  // namespace detail

/// Reduced density matrix of a pure state on the qubits in `keep`.
inline DensityMatrix partial_trace(const Vector& psi, int n_qubits,
                                   const std::vector<int>& keep) {
  if (psi.size() != (Eigen::Index{1} << n_qubits)) {
    throw size_error("partial_trace: state length is not 2^n_qubits");
  }
  detail::check_keep(n_qubits, keep);
  const detail::Splitter split(n_qubits, keep);
  const Eigen::Index dk = Eigen::Index{1} << keep.size();
  const Eigen::Index dr = Eigen::Index{1} << split.rest.size();
  Matrix psi_mat = Matrix::Zero(dk, dr);
  for (Eigen::Index b = 0; b < psi.size(); ++b) {
    const auto ub = static_cast<std::size_t>(b);
    psi_mat(static_cast<Eigen::Index>(detail::Splitter::gather(ub, split.keep)),
            static_cast<Eigen::Index>(detail::Splitter::gather(ub, split.rest))) =
        psi[b];
  }
  return DensityMatrix(psi_mat * psi_mat.adjoint());
}

/// Reduced density matrix of a mixed state on the qubits in `keep`.
inline DensityMatrix partial_trace(const DensityMatrix& rho, int n_qubits,
                                   const std::vector<int>& keep) {
  if (rho.dim() != (Eigen::Index{1} << n_qubits)) {
    throw size_error("partial_trace: matrix dimension is not 2^n_qubits");
  }
  detail::check_keep(n_qubits, keep);
  const detail::Splitter split(n_qubits, keep);
  const Eigen::Index dk = Eigen::Index{1} << keep.size();
  Matrix out = Matrix::Zero(dk, dk);
  const Matrix& m = rho.elements();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const auto ur = static_cast<std::size_t>(r);
    const auto rk = detail::Splitter::gather(ur, split.keep);
    const auto rr = detail::Splitter::gather(ur, split.rest);
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const auto uc = static_cast<std::size_t>(c);
      if (detail::Splitter::gather(uc, split.rest) != rr) continue;
      out(static_cast<Eigen::Index>(rk),
          static_cast<Eigen::Index>(detail::Splitter::gather(uc, split.keep))) +=
          m(r, c);
    }
  }
  return DensityMatrix(out);
}

/// -Tr(rho log rho) from the clamped spectrum, with 0 log 0 = 0.
inline EntropyValue von_neumann_entropy(const DensityMatrix& rho) {
  double nats = 0.0;
  for (double p : rho.clamped_eigenvalues()) {
    if (p > 0.0) nats -= p * std::log(p);
  }
  nats = std::max(nats, 0.0);
  return {nats / std::numbers::ln2, nats};
}

/// Entropy of I_n / 2^n: exactly n bits, computed without the matrix.
inline EntropyValue maximally_mixed_entropy(int n) {
  if (n < 1) throw domain_error("maximally_mixed_entropy: n must be >= 1");
  return {static_cast<double>(n), n * std::numbers::ln2};
}

/// Wootters concurrence of a two-qubit state. The eigenvalues of
/// rho (sy x sy) rho* (sy x sy) are taken from the Hermitian similar matrix
/// sqrt(rho) rho~ sqrt(rho). Eigenvalues below 16 eps are round-off and are
/// zeroed before square roots are taken.
inline double concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw size_error("concurrence: need a 4x4 density matrix");
  Matrix yy = Matrix::Zero(4, 4);
  // sy x sy in the computational basis: anti-diagonal (-1, 1, 1, -1).
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Matrix& r = rho.elements();
  const Matrix flipped = yy * r.conjugate() * yy;
  Eigen::SelfAdjointEigenSolver<Matrix> es(r);
  const double floor = 16.0 * std::numeric_limits<double>::epsilon();
  auto root = [floor](double x) { return x > floor ? std::sqrt(x) : 0.0; };
  const Eigen::VectorXd ev = es.eigenvalues().unaryExpr(root);
  const Matrix sqrt_rho = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  Matrix m = sqrt_rho * flipped * sqrt_rho;
  m = 0.5 * (m + m.adjoint()).eval();
  Eigen::VectorXd mu =
      Eigen::SelfAdjointEigenSolver<Matrix>(m, Eigen::EigenvaluesOnly).eigenvalues();
  std::vector<double> s(4);
  for (int i = 0; i < 4; ++i) s[static_cast<std::size_t>(i)] = root(mu[i]);
  std::sort(s.begin(), s.end(), std::greater<>());
  return std::clamp(s[0] - s[1] - s[2] - s[3], 0.0, 1.0);
}

inline constexpr int kMaxStateQubits = 14;

/// (|0...0> + |1...1>) / sqrt(2).
inline Vector ghz_state(int n) {
  if (n < 2 || n > kMaxStateQubits) throw size_error("ghz_state: n must lie in [2, 14]");
  Vector v = Vector::Zero(Eigen::Index{1} << n);
  v[0] = v[v.size() - 1] = 1.0 / std::numbers::sqrt2;
  return v;
}

/// |+>^n, the J = 0 TFIM ground state.
inline Vector plus_product_state(int n) {
  if (n < 1 || n > kMaxStateQubits) throw size_error("plus_product_state: n must lie in [1, 14]");
  const Eigen::Index dim = Eigen::Index{1} << n;
  return Vector::Constant(dim, cplx(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
}

enum class Cut { half_chain, single_site, bond_pair };

/// Qubits kept by a cut of an open chain: sites 0..n/2-1 for the half
/// chain, site n/2-1 for a single site, sites (n/2-1, n/2) for the central
/// bond pair.
inline std::vector<int> cut_sites(int n_sites, Cut cut) {
  const int c = n_sites / 2;
  switch (cut) {
    case Cut::half_chain: {
      std::vector<int> keep(static_cast<std::size_t>(c));
      for (int i = 0; i < c; ++i) keep[static_cast<std::size_t>(i)] = i;
      return keep;
    }
    case Cut::single_site:
      return {c - 1};
    case Cut::bond_pair:
      return {c - 1, c};
  }
  return {};
}

struct Profile {
  EntropyValue entropy;
  double nn_concurrence = 0.0;  // central nearest-neighbour pair
};

/// Entanglement of the finite open-chain TFIM ground state.
inline Profile tfim_entanglement_profile(int n_sites, const tfim::TfimParams& p,
                                         Cut cut = Cut::half_chain) {
  if (n_sites < 2 || n_sites > ed::kMaxEdSites) {
    throw size_error("tfim_entanglement_profile: n_sites must lie in [2, 14]");
  }
  const ed::GroundState gs = ed::tfim_ground_state(n_sites, p);
  Profile out;
  const auto keep = cut_sites(n_sites, cut);
  out.entropy = static_cast<int>(keep.size()) == n_sites
                    ? von_neumann_entropy(DensityMatrix::pure(gs.vector))
                    : von_neumann_entropy(partial_trace(gs.vector, n_sites, keep));
  if (n_sites > 2) {
    out.nn_concurrence = concurrence(
        partial_trace(gs.vector, n_sites, cut_sites(n_sites, Cut::bond_pair)));
  } else {
    out.nn_concurrence = concurrence(DensityMatrix::pure(gs.vector));
  }
  return out;
}

}  // namespace qg::entanglement

#endif  // QG_ENTANGLEMENT_HPP
