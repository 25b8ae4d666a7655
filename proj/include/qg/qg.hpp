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

#ifndef QG_QG_HPP
#define QG_QG_HPP

#include "qg/elliptic.hpp"
#include "qg/entanglement.hpp"
#include "qg/ed.hpp"
#include "qg/error.hpp"
#include "qg/gamma.hpp"
#include "qg/kane.hpp"
#include "qg/tfim.hpp"
#include "qg/version.hpp"

#endif  // QG_QG_HPP
