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
#include <complex>
#include <vector>

#include "chiralsim/matrix.hpp"

namespace chiralsim {

/// Pauli-matrix convention: standard (X, Y, Z) with Y = [[0, -i], [i, 0]].
/// All signs in the chirality Pauli expansion follow from this choice.
enum class PauliLetter { I, X, Y, Z };

const CMatrix& pauli_matrix(PauliLetter p);

/// Weighted tensor product of single-site Pauli letters; the currency of the
/// direct-measurement estimator.
struct PauliString {
    double coefficient = 0.0;
    std::vector<PauliLetter> letters;  // letters[j] acts on slot sites[j]
    std::vector<int> sites;            // slot indices, first slot = fastest index

    /// Dense matrix over the slots' joint space (slot 0 fastest-varying).
    CMatrix to_matrix(int n_slots) const;
};

/// Dense complex square operator over `arity` sites. Hermitian/unitary flags
/// are measured on construction (tolerance 1e-10) and queried by the state
/// engine's preconditions.
class DenseOperator {
  public:
    DenseOperator() = default;
    DenseOperator(CMatrix m, int arity);

    const CMatrix& matrix() const { return m_; }
    std::size_t dim() const { return m_.rows(); }
    int arity() const { return arity_; }
    bool hermitian() const { return hermitian_; }
    bool unitary() const { return unitary_; }

    DenseOperator adjoint() const { return DenseOperator(m_.adjoint(), arity_); }

    friend DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
        require(a.arity_ == b.arity_, "operator product: arity mismatch");
        return DenseOperator(a.m_ * b.m_, a.arity_);
    }

  private:
    CMatrix m_;
    int arity_ = 0;
    bool hermitian_ = false;
    bool unitary_ = false;
};

/// Classical unit spin direction plus spin magnitude S (default 1/2).
struct BlochVector {
    double nx = 0.0;
    double ny = 0.0;
    double nz = 1.0;
    double spin = 0.5;

    /// Must be a unit vector within 1e-12.
    void validate() const;
};

/// Spinor for a Bloch direction, gauge |n> = (cos t/2, e^{i p} sin t/2) with
/// (t, p) the spherical angles of n. The gauge only matters for building
/// product states; the Bargmann invariant below is gauge-independent.
std::array<cplx, 2> bloch_spinor(const BlochVector& n);

/// The 8x8 scalar spin chirality (4/sqrt3) S1.(S2 x S3), assembled from Pauli
/// matrices. Hermitian, traceless, eigenvalues {0, +-1}.
DenseOperator chirality_matrix();

/// The six weight +-1/(2 sqrt3) strings {XYZ, YZX, ZXY} - {XZY, YXZ, ZYX};
/// summing them reproduces chirality_matrix().
std::vector<PauliString> chirality_pauli_expansion();

/// exp(-i tau chi) in closed form 1 + (cos tau - 1) chi^2 - i sin tau chi.
DenseOperator exp_chirality(double tau);

/// The 3-site cyclic permutation |s0 s1 s2> -> |s2 s0 s1> (each slot's
/// content moves forward one slot). This direction makes
/// exp_chirality(2*pi/3) equal to it exactly, with no global phase.
DenseOperator cyclic_permutation();

/// S^3 n_a . (n_b x n_c)
double classical_chirality(const BlochVector& a, const BlochVector& b, const BlochVector& c);

/// (2/sqrt3) Im{ <a|b><b|c><c|a> } over the spin-1/2 Bloch spinors; agrees
/// with the chirality expectation on the corresponding product state.
double bargmann_chirality(const BlochVector& a, const BlochVector& b, const BlochVector& c);

}  // namespace chiralsim
