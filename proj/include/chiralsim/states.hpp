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

/// One-magnon state parameters: N sites, mode m, wavenumber q = 2 pi m / N.
struct SpinWaveSpec {
    int n_sites = 3;
    int mode = 0;

    void validate() const {
        require(n_sites >= 3, "SpinWaveSpec: need at least 3 sites");
        require(mode >= 0 && mode < n_sites, "SpinWaveSpec: mode must lie in [0, N)");
    }
    double wavenumber() const { return 2.0 * kPi * mode / n_sites; }

    static constexpr double kPi = 3.141592653589793238462643383279;
};

/// Three distinct site indices (0-based internally; the CLI speaks 1-based).
struct SiteTrio {
    int n1 = 0;
    int n2 = 1;
    int n3 = 2;

    std::array<int, 3> sites() const { return {n1, n2, n3}; }
    std::vector<int> site_vector() const { return {n1, n2, n3}; }

    void validate(int n_sites) const {
        for (int s : sites()) {
            require(s >= 0 && s < n_sites, "SiteTrio: site index out of range");
        }
        require(n1 != n2 && n2 != n3 && n1 != n3, "SiteTrio: sites must be distinct");
    }
};

enum class EigenstateVariant {
    w_like,             // (|udd> + w |dud> + w^2 |ddu>) / sqrt3
    flipped,            // global spin flip of w_like
    polarized,          // |uuu>   (lambda = 0 only)
    polarized_flipped,  // |ddd>   (lambda = 0 only)
};

/// Chirality eigenstates. lambda in {-1, 0, +1}; the polarized variants
/// require lambda = 0. Together the variants cover all eight eigenstates.
QRegister chirality_eigenstate(int lambda, EigenstateVariant variant);

/// Tensor product of single-site Bloch states.
QRegister product_state(const std::vector<BlochVector>& bloch);

/// (1/sqrtN) sum_n e^{iqn} S-_n |up...up>: amplitude e^{iqn}/sqrtN on the
/// basis state whose only down spin sits at site n.
QRegister spin_wave(const SpinWaveSpec& spec);

/// Closed-form chirality of a spin wave at a trio:
/// 2 [sin(q d21) + sin(q d32) + sin(q d13)] / (N sqrt3), d_ij = n_i - n_j.
/// Site differences are plain integers; the sine handles the ring.
double spin_wave_chirality(const SpinWaveSpec& spec, const SiteTrio& trio);

struct MaxChirality {
    double value = 0.0;
    SpinWaveSpec spec;
    SiteTrio trio;
};

/// Exhaustive maximum of spin_wave_chirality over all modes and ordered
/// trios; ties resolved to the smallest (m, n1, n2, n3) lexicographically.
MaxChirality max_spin_wave_chirality(int n_sites);

}  // namespace chiralsim
