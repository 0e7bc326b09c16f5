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

#include "chiralsim/operators.hpp"

#include <algorithm>
#include <cmath>

#include "chiralsim/rng.hpp"

namespace chiralsim {

namespace {

constexpr double kFlagTol = 1e-10;
constexpr cplx kI{0.0, 1.0};

CMatrix make_pauli(PauliLetter p) {
    CMatrix m(2, 2);
    switch (p) {
        case PauliLetter::I:
            m(0, 0) = 1.0;
            m(1, 1) = 1.0;
            break;
        case PauliLetter::X:
            m(0, 1) = 1.0;
            m(1, 0) = 1.0;
            break;
        case PauliLetter::Y:
            m(0, 1) = -kI;
            m(1, 0) = kI;
            break;
        case PauliLetter::Z:
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
    }
    return m;
}

}  // namespace

const CMatrix& pauli_matrix(PauliLetter p) {
    static const CMatrix tables[4] = {make_pauli(PauliLetter::I), make_pauli(PauliLetter::X),
                                      make_pauli(PauliLetter::Y), make_pauli(PauliLetter::Z)};
    return tables[static_cast<int>(p)];
}

CMatrix PauliString::to_matrix(int n_slots) const {
    require(letters.size() == sites.size(), "PauliString: letters/sites length mismatch");
    require(std::isfinite(coefficient), "PauliString: non-finite coefficient");
    std::vector<PauliLetter> per_slot(static_cast<std::size_t>(n_slots), PauliLetter::I);
    for (std::size_t j = 0; j < sites.size(); ++j) {
        require(sites[j] >= 0 && sites[j] < n_slots, "PauliString: slot out of range");
        per_slot[static_cast<std::size_t>(sites[j])] = letters[j];
    }
    const std::size_t dim = std::size_t{1} << n_slots;
    CMatrix out(dim, dim);
    // Slot 0 is the fastest-varying index.
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            cplx v = coefficient;
            for (int s = 0; s < n_slots && v != cplx(0.0, 0.0); ++s) {
                const std::size_t rb = (r >> s) & 1u;
                const std::size_t cb = (c >> s) & 1u;
                v *= pauli_matrix(per_slot[static_cast<std::size_t>(s)])(rb, cb);
            }
            out(r, c) = v;
        }
    }
    return out;
}

namespace {

// Unitarity certificate. Exact U U+ = 1 below the cube cost threshold; above
// it, an isometry probe on a fixed pseudorandom frame (M must preserve the
// Gram matrix of the probe vectors). The probe is one-sided in principle but
// the only large operators in this codebase are Hamiltonians, which fail it
// outright.
bool is_unitary(const CMatrix& m) {
    const std::size_t n = m.rows();
    if (n <= 64) {
        return (m * m.adjoint()).max_abs_diff(CMatrix::identity(n)) <= kFlagTol;
    }
    constexpr int kProbes = 8;
    RandomStream rng(0x756e6974ull);  // fixed: flags must be deterministic
    std::vector<std::vector<cplx>> v(kProbes, std::vector<cplx>(n));
    std::vector<std::vector<cplx>> w(kProbes, std::vector<cplx>(n));
    for (auto& vec : v) {
        double norm2 = 0.0;
        for (auto& x : vec) {
            x = cplx(rng.normal(), rng.normal());
            norm2 += std::norm(x);
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& x : vec) {
            x *= inv;
        }
    }
    for (int i = 0; i < kProbes; ++i) {
        for (std::size_t r = 0; r < n; ++r) {
            cplx acc = 0.0;
            const cplx* row = m.row(r);
            for (std::size_t c = 0; c < n; ++c) {
                acc += row[c] * v[static_cast<std::size_t>(i)][c];
            }
            w[static_cast<std::size_t>(i)][r] = acc;
        }
    }
    auto dot = [n](const std::vector<cplx>& a, const std::vector<cplx>& b) {
        cplx acc = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
            acc += std::conj(a[c]) * b[c];
        }
        return acc;
    };
    for (int i = 0; i < kProbes; ++i) {
        for (int j = i; j < kProbes; ++j) {
            const auto& vi = v[static_cast<std::size_t>(i)];
            const auto& vj = v[static_cast<std::size_t>(j)];
            const auto& wi = w[static_cast<std::size_t>(i)];
            const auto& wj = w[static_cast<std::size_t>(j)];
            if (std::abs(dot(wi, wj) - dot(vi, vj)) > kFlagTol) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

DenseOperator::DenseOperator(CMatrix m, int arity) : m_(std::move(m)), arity_(arity) {
    require(m_.rows() == m_.cols() && m_.rows() > 0, "DenseOperator: matrix not square");
    require(arity_ > 0, "DenseOperator: arity must be positive");
    hermitian_ = m_.max_abs_diff(m_.adjoint()) <= kFlagTol;
    unitary_ = is_unitary(m_);
}

void BlochVector::validate() const {
    const double r = std::sqrt(nx * nx + ny * ny + nz * nz);
    require(std::abs(r - 1.0) <= 1e-12, "BlochVector: direction is not a unit vector");
    require(std::isfinite(spin), "BlochVector: non-finite spin");
}

std::array<cplx, 2> bloch_spinor(const BlochVector& n) {
    n.validate();
    const double theta = std::acos(std::clamp(n.nz, -1.0, 1.0));
    const double phi = std::atan2(n.ny, n.nx);
    return {cplx(std::cos(theta / 2.0), 0.0),
            std::exp(kI * phi) * std::sin(theta / 2.0)};
}

std::vector<PauliString> chirality_pauli_expansion() {
    const double w = 1.0 / (2.0 * std::sqrt(3.0));
    using P = PauliLetter;
    return {
        PauliString{+w, {P::X, P::Y, P::Z}, {0, 1, 2}},
        PauliString{+w, {P::Y, P::Z, P::X}, {0, 1, 2}},
        PauliString{+w, {P::Z, P::X, P::Y}, {0, 1, 2}},
        PauliString{-w, {P::X, P::Z, P::Y}, {0, 1, 2}},
        PauliString{-w, {P::Y, P::X, P::Z}, {0, 1, 2}},
        PauliString{-w, {P::Z, P::Y, P::X}, {0, 1, 2}},
    };
}

DenseOperator chirality_matrix() {
    CMatrix sum(8, 8);
    for (const auto& s : chirality_pauli_expansion()) {
        sum += s.to_matrix(3);
    }
    return DenseOperator(std::move(sum), 3);
}

DenseOperator exp_chirality(double tau) {
    require(std::isfinite(tau), "exp_chirality: tau must be finite");
    const CMatrix chi = chirality_matrix().matrix();
    const CMatrix chi2 = chi * chi;
    CMatrix u = CMatrix::identity(8);
    u += (std::cos(tau) - 1.0) * chi2;
    u += (-kI * std::sin(tau)) * chi;
    return DenseOperator(std::move(u), 3);
}

DenseOperator cyclic_permutation() {
    // Slot contents move forward: new slot 0 holds old slot 2's bit, etc.
    CMatrix m(8, 8);
    for (std::size_t old_idx = 0; old_idx < 8; ++old_idx) {
        const std::size_t b0 = old_idx & 1u;
        const std::size_t b1 = (old_idx >> 1) & 1u;
        const std::size_t b2 = (old_idx >> 2) & 1u;
        const std::size_t new_idx = b2 | (b0 << 1) | (b1 << 2);
        m(new_idx, old_idx) = 1.0;
    }
    return DenseOperator(std::move(m), 3);
}

double classical_chirality(const BlochVector& a, const BlochVector& b, const BlochVector& c) {
    a.validate();
    b.validate();
    c.validate();
    const double triple = a.nx * (b.ny * c.nz - b.nz * c.ny) -
                          a.ny * (b.nx * c.nz - b.nz * c.nx) +
                          a.nz * (b.nx * c.ny - b.ny * c.nx);
    return a.spin * b.spin * c.spin * triple;
}

double bargmann_chirality(const BlochVector& a, const BlochVector& b, const BlochVector& c) {
    const auto sa = bloch_spinor(a);
    const auto sb = bloch_spinor(b);
    const auto sc = bloch_spinor(c);
    auto overlap = [](const std::array<cplx, 2>& u, const std::array<cplx, 2>& v) {
        return std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1];
    };
    const cplx prod = overlap(sa, sb) * overlap(sb, sc) * overlap(sc, sa);
    return 2.0 / std::sqrt(3.0) * prod.imag();
}

}  // namespace chiralsim
