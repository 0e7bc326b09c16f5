// Copyright 2026 The chiralsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <vector>

#include "chiralsim/operators.hpp"
#include "chiralsim/qstate.hpp"

namespace chiralsim {

/// Ring Hamiltonian parameters:
///   H = -J sum_n S_n . S_{n+1} + D z . sum_n (S_n x S_{n+1})
///       + Bprime Sx_0 + B sum_i Sz_i
/// with periodic boundary (site N == site 0). Site 0 here is "site 1" in
/// 1-based CLI language.
struct HamiltonianParams {
    int n_sites = 10;
    double j = 1.0;       // isotropic exchange
    double d = 0.0;       // DM magnitude along z
    double b = 0.0;       // uniform z field
    double bprime = 0.0;  // local x field on site 0

    void validate() const;
};

struct SpectrumResult {
    std::vector<double> eigenvalues;  // ascending
    QRegister ground_state;
    double gap = 0.0;
    bool near_degenerate = false;  // gap < 1e-10; lowest index chosen
};

/// Dense 2^N x 2^N Hamiltonian (N <= 14). Hermitian by construction and
/// verified by the DenseOperator flags.
DenseOperator build_hamiltonian(const HamiltonianParams& p);

/// Full spectrum plus the ground eigenvector, phase-gauged so the
/// largest-magnitude amplitude is real positive. The eigenpair residual
/// ||H psi - E0 psi|| is verified below 1e-9.
SpectrumResult ground_state(const HamiltonianParams& p);

/// Per-site (Sx, Sy, Sz) expectations from single-site reduced density
/// matrices; each vector has length at most 1/2.
std::vector<std::array<double, 3>> local_spin_texture(const QRegister& reg);

}  // namespace chiralsim
