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

#include "chiralsim/qstate.hpp"
#include "chiralsim/states.hpp"

namespace chiralsim {

/// Three disjoint blocks covering every site of a pure global state.
struct TripartitionSpec {
    std::array<std::vector<int>, 3> blocks;

    void validate(int n_sites) const;

    /// {first trio site}, {second trio site}, {all remaining sites} — the
    /// default used alongside the spin-wave sweep; callers may substitute
    /// any partition.
    static TripartitionSpec around_trio(const SiteTrio& trio, int n_sites);
};

/// 2 (1 - tr rho_block^2) of a pure global state; the squared concurrence of
/// the block against the rest.
double one_tangle(const QRegister& reg, const std::vector<int>& block);

/// Heron-type area formula over the three one-tangles:
/// F = [(16/3) Q (Q - C1^2)(Q - C2^2)(Q - C3^2)]^{1/4}, Q = (C1^2+C2^2+C3^2)/2.
/// Radicands within -1e-12 of zero clamp to 0; anything more negative is an
/// error.
double concurrence_fill(const QRegister& reg, const TripartitionSpec& partition);

/// True iff |chi_estimate| exceeds 1/sqrt3 strictly (the genuine tripartite
/// entanglement witness threshold).
bool witness_check(double chi_estimate);

}  // namespace chiralsim
