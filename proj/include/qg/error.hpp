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

#ifndef QG_ERROR_HPP
#define QG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qg {

/// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// System size outside the supported range.
class size_error : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Evaluation requested on (or too close to) a singular locus.
/// Callers that scan parameter space treat this as a flagged point.
class singularity_error : public domain_error {
 public:
  using domain_error::domain_error;
};

/// Iterative method failed to meet its tolerance.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ground state is degenerate where the operation needs it unique.
class degeneracy_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Perturbative state labelling failed (overlap below threshold).
class identification_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A physical invariant (Hermiticity, unit trace, PSD) does not hold.
class invariant_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qg

#endif  // QG_ERROR_HPP
