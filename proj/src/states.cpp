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

#include "chiralsim/states.hpp"

#include <cmath>

namespace chiralsim {

QRegister chirality_eigenstate(int lambda, EigenstateVariant variant) {
    require(lambda == -1 || lambda == 0 || lambda == 1,
            "chirality_eigenstate: lambda must be -1, 0, or +1");
    const SiteDims dims = SiteDims::qubits(3);
    std::vector<cplx> amps(8, cplx(0.0, 0.0));

    if (variant == EigenstateVariant::polarized || variant == EigenstateVariant::polarized_flipped) {
        require(lambda == 0, "chirality_eigenstate: polarized variants exist only for lambda = 0");
        amps[variant == EigenstateVariant::polarized ? 0 : 7] = 1.0;
        return QRegister::from_normalized(dims, std::move(amps));
    }

    const cplx omega = std::exp(cplx(0.0, 2.0 * SpinWaveSpec::kPi * lambda / 3.0));
    const double inv = 1.0 / std::sqrt(3.0);
    if (variant == EigenstateVariant::w_like) {
        amps[6] = inv;          // |udd>
        amps[5] = omega * inv;  // |dud>
        amps[3] = omega * omega * inv;  // |ddu>
    } else {
        amps[1] = inv;          // |duu>
        amps[2] = omega * inv;  // |udu>
        amps[4] = omega * omega * inv;  // |uud>
    }
    return QRegister::from_normalized(dims, std::move(amps));
}

QRegister product_state(const std::vector<BlochVector>& bloch) {
    require(!bloch.empty(), "product_state: need at least one site");
    const int n = static_cast<int>(bloch.size());
    std::vector<std::array<cplx, 2>> spinors;
    spinors.reserve(bloch.size());
    for (const auto& b : bloch) {
        spinors.push_back(bloch_spinor(b));
    }
    const SiteDims dims = SiteDims::qubits(n);
    std::vector<cplx> amps(dims.total_dim());
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        cplx v = 1.0;
        for (int s = 0; s < n; ++s) {
            v *= spinors[static_cast<std::size_t>(s)][(idx >> s) & 1u];
        }
        amps[idx] = v;
    }
    return QRegister::from_normalized(dims, std::move(amps));
}

QRegister spin_wave(const SpinWaveSpec& spec) {
    spec.validate();
    const double q = spec.wavenumber();
    const double inv = 1.0 / std::sqrt(static_cast<double>(spec.n_sites));
    const SiteDims dims = SiteDims::qubits(spec.n_sites);
    std::vector<cplx> amps(dims.total_dim(), cplx(0.0, 0.0));
    for (int n = 0; n < spec.n_sites; ++n) {
        amps[std::size_t{1} << n] = inv * std::exp(cplx(0.0, q * n));
    }
    return QRegister::from_normalized(dims, std::move(amps));
}

double spin_wave_chirality(const SpinWaveSpec& spec, const SiteTrio& trio) {
    spec.validate();
    trio.validate(spec.n_sites);
    const double q = spec.wavenumber();
    const double d21 = trio.n2 - trio.n1;
    const double d32 = trio.n3 - trio.n2;
    const double d13 = trio.n1 - trio.n3;
    return 2.0 * (std::sin(q * d21) + std::sin(q * d32) + std::sin(q * d13)) /
           (spec.n_sites * std::sqrt(3.0));
}

MaxChirality max_spin_wave_chirality(int n_sites) {
    require(n_sites >= 3 && n_sites <= 16, "max_spin_wave_chirality: N must lie in [3, 16]");
    MaxChirality best;
    best.value = -1.0;
    for (int m = 0; m < n_sites; ++m) {
        const SpinWaveSpec spec{n_sites, m};
        for (int a = 0; a < n_sites; ++a) {
            for (int b = 0; b < n_sites; ++b) {
                for (int c = 0; c < n_sites; ++c) {
                    if (a == b || b == c || a == c) {
                        continue;
                    }
                    const SiteTrio trio{a, b, c};
                    const double v = spin_wave_chirality(spec, trio);
                    if (v > best.value) {
                        best = MaxChirality{v, spec, trio};
                    }
                }
            }
        }
    }
    return best;
}

}  // namespace chiralsim
