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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chiralsim/matrix.hpp"
#include "chiralsim/operators.hpp"
#include "chiralsim/rng.hpp"

namespace chiralsim {

// Register layout, fixed once and used everywhere:
//   * spin encoding: up <-> 0, down <-> 1;
//   * site 0 is the fastest-varying (least significant) index of the
//     amplitude array, so index(labels) = sum_t labels[t] * stride(t) with
//     stride(t) = prod_{u<t} dim(u);
//   * at most one site is three-level (the ancilla qutrit), and when a
//     protocol appends one it goes last, keeping qubit-only code unchanged.

/// Ordered per-site dimensions (2 or 3, at most one 3).
class SiteDims {
  public:
    explicit SiteDims(std::vector<int> dims);
    static SiteDims qubits(int n);

    int n_sites() const { return static_cast<int>(dims_.size()); }
    int dim(int site) const;
    std::size_t total_dim() const { return total_; }
    std::size_t stride(int site) const;
    const std::vector<int>& dims() const { return dims_; }
    std::optional<int> qutrit_site() const;

    /// Same register with an ancilla (dim 2 or 3) appended as the last site.
    SiteDims with_ancilla(int dim) const;

    bool operator==(const SiteDims& o) const { return dims_ == o.dims_; }

  private:
    std::vector<int> dims_;
    std::vector<std::size_t> strides_;
    std::size_t total_ = 0;
};

/// Mixed-radix pure state. Immutable from the caller's perspective: every
/// operation returns a new register. Constructed states are normalized; the
/// validating constructor accepts |norm - 1| <= 1e-8 and renormalizes.
class QRegister {
  public:
    QRegister(SiteDims dims, std::vector<cplx> amps);

    /// Trusted path for internally-produced, already normalized amplitudes.
    static QRegister from_normalized(SiteDims dims, std::vector<cplx> amps);

    const SiteDims& dims() const { return dims_; }
    int n_sites() const { return dims_.n_sites(); }
    std::span<const cplx> amps() const { return amps_; }
    double norm() const;

    std::vector<cplx> take_amps() && { return std::move(amps_); }

  private:
    QRegister(SiteDims dims, std::vector<cplx> amps, bool trusted);

    SiteDims dims_;
    std::vector<cplx> amps_;
};

/// Reduced density matrix over the kept sites (in the order they were kept).
/// Hermitian within 1e-12 and unit trace within 1e-12 by construction.
class DensityMatrix {
  public:
    DensityMatrix(SiteDims dims, CMatrix m);

    const SiteDims& dims() const { return dims_; }
    const CMatrix& matrix() const { return m_; }

    /// Re tr(rho^2)
    double purity() const;

  private:
    SiteDims dims_;
    CMatrix m_;
};

// ---------------------------------------------------------------------------
// Public register operations.

/// Computational basis state with the given per-site labels.
QRegister init_basis(const SiteDims& dims, const std::vector<int>& labels);

/// Embedded unitary on the listed target sites (first listed target is the
/// fastest-varying index of the operator matrix). Requires op.unitary().
QRegister apply_gate(const QRegister& reg, const DenseOperator& op,
                     const std::vector<int>& targets);

/// Controlled application O(|i> (x) |psi>) = |i> (x) op^{p_i} |psi> where
/// p_i = level_powers[i] (missing levels act as the identity). The control
/// site may be two- or three-level and must not be a target.
QRegister apply_controlled(const QRegister& reg, const DenseOperator& op, int control,
                           const std::map<int, int>& level_powers,
                           const std::vector<int>& targets);

/// <a|b>; dims must match.
cplx inner(const QRegister& a, const QRegister& b);

/// <psi| O |psi> for Hermitian op embedded at the targets. The imaginary
/// residue must be below 1e-10 and is discarded.
double expectation(const QRegister& reg, const DenseOperator& op, const std::vector<int>& targets);

/// Born-rule sample of one site. Outcomes with probability below 1e-14 are
/// excluded from the CDF. Deterministic given the stream state; consumes
/// exactly one uniform draw.
std::pair<int, QRegister> measure_site(const QRegister& reg, int site, RandomStream& rng);

/// Exact Born probabilities of one site (the infinite-shot readout).
std::vector<double> site_probabilities(const QRegister& reg, int site);

/// Reduced density matrix of the kept sites (distinct, nonempty).
DensityMatrix partial_trace(const QRegister& reg, const std::vector<int>& keep);

// ---------------------------------------------------------------------------
// JSON state files: {"dims":[...], "amps":[[re,im],...]}, site 0 fastest.
// The loader validates normalization within 1e-8 and renormalizes.

QRegister load_state_json(const std::string& path);
void save_state_json(const QRegister& reg, const std::string& path);

// ---------------------------------------------------------------------------
// In-place engine used by the protocol shot loops. These skip the flag
// checks of the public operations (callers have validated once, outside the
// loop) but share the exact same index arithmetic.

namespace engine {

/// Precomputed embedding of a block_dim x block_dim matrix at fixed target
/// sites, optionally restricted to a fixed level of other sites (the control).
class EmbedPlan {
  public:
    EmbedPlan(const SiteDims& dims, const std::vector<int>& targets,
              const std::vector<std::pair<int, int>>& fixed_levels = {});

    std::size_t block_dim() const { return offsets_.size(); }

    /// amps <- embedded(m) * amps
    void apply(std::vector<cplx>& amps, const CMatrix& m) const;

    /// <amps| embedded(m) |amps> (real part plus imaginary residue).
    cplx expectation(std::span<const cplx> amps, const CMatrix& m) const;

    /// Joint Born probabilities of the target sites, written to
    /// probs[0..block_dim).
    void joint_probabilities(std::span<const cplx> amps, double* probs) const;

  private:
    std::vector<std::size_t> offsets_;
    std::vector<std::size_t> bases_;
};

/// Single-site gate via the paired/tripled run kernels.
void apply_single_site(std::vector<cplx>& amps, const SiteDims& dims, int site, const CMatrix& m);

/// Born probabilities of one site, written to probs[0..dim).
void site_probabilities(std::span<const cplx> amps, const SiteDims& dims, int site, double* probs);

/// Project onto `level` of `site` and renormalize by the supplied
/// probability.
void collapse_site(std::vector<cplx>& amps, const SiteDims& dims, int site, int level,
                   double probability);

/// Inverse-CDF draw over probs[0..n) with the 1e-14 floor (weights below it
/// are never sampled). Consumes exactly one uniform.
int sample_outcome(const double* probs, int n, RandomStream& rng);

}  // namespace engine

}  // namespace chiralsim
