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

#include "chiralsim/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "chiralsim/kernels.hpp"
#include "json.hpp"

namespace chiralsim {

namespace {

constexpr double kNormLoadTol = 1e-8;
constexpr double kCdfFloor = 1e-14;

CMatrix matrix_power(const CMatrix& m, int p) {
    CMatrix out = CMatrix::identity(m.rows());
    for (int i = 0; i < p; ++i) {
        out = out * m;
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// SiteDims

SiteDims::SiteDims(std::vector<int> dims) : dims_(std::move(dims)) {
    require(!dims_.empty() && dims_.size() <= 24, "SiteDims: need 1..24 sites");
    int qutrits = 0;
    for (int d : dims_) {
        require(d == 2 || d == 3, "SiteDims: site dimensions must be 2 or 3");
        qutrits += (d == 3);
    }
    require(qutrits <= 1, "SiteDims: at most one qutrit site");
    strides_.resize(dims_.size());
    std::size_t s = 1;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        strides_[i] = s;
        s *= static_cast<std::size_t>(dims_[i]);
    }
    total_ = s;
}

SiteDims SiteDims::qubits(int n) { return SiteDims(std::vector<int>(static_cast<std::size_t>(n), 2)); }

int SiteDims::dim(int site) const {
    require(site >= 0 && site < n_sites(), "SiteDims: site index out of range");
    return dims_[static_cast<std::size_t>(site)];
}

std::size_t SiteDims::stride(int site) const {
    require(site >= 0 && site < n_sites(), "SiteDims: site index out of range");
    return strides_[static_cast<std::size_t>(site)];
}

std::optional<int> SiteDims::qutrit_site() const {
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (dims_[i] == 3) {
            return static_cast<int>(i);
        }
    }
    return std::nullopt;
}

SiteDims SiteDims::with_ancilla(int dim) const {
    std::vector<int> d = dims_;
    d.push_back(dim);
    return SiteDims(std::move(d));
}

// ---------------------------------------------------------------------------
// QRegister

QRegister::QRegister(SiteDims dims, std::vector<cplx> amps, bool trusted)
    : dims_(std::move(dims)), amps_(std::move(amps)) {
    require(amps_.size() == dims_.total_dim(), "QRegister: amplitude length mismatch");
    if (trusted) {
        return;
    }
    const double n = std::sqrt(kernels::ops().norm_squared(amps_.data(), amps_.size()));
    require(std::abs(n - 1.0) <= kNormLoadTol, "QRegister: state is not normalized");
    if (std::abs(n - 1.0) > 1e-15) {
        kernels::ops().scale(amps_.data(), amps_.size(), cplx(1.0 / n, 0.0));
    }
}

QRegister::QRegister(SiteDims dims, std::vector<cplx> amps)
    : QRegister(std::move(dims), std::move(amps), false) {}

QRegister QRegister::from_normalized(SiteDims dims, std::vector<cplx> amps) {
    return QRegister(std::move(dims), std::move(amps), true);
}

double QRegister::norm() const {
    return std::sqrt(kernels::ops().norm_squared(amps_.data(), amps_.size()));
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(SiteDims dims, CMatrix m) : dims_(std::move(dims)), m_(std::move(m)) {
    require(m_.rows() == m_.cols() && m_.rows() == dims_.total_dim(),
            "DensityMatrix: matrix shape does not match kept dims");
    require(m_.max_abs_diff(m_.adjoint()) <= 1e-12, "DensityMatrix: not Hermitian");
    require(std::abs(m_.trace() - cplx(1.0, 0.0)) <= 1e-12, "DensityMatrix: trace is not 1");
}

double DensityMatrix::purity() const {
    // tr(rho^2) = sum |rho_rc|^2 for Hermitian rho.
    return kernels::ops().norm_squared(m_.data(), m_.rows() * m_.cols());
}

// ---------------------------------------------------------------------------
// Engine

namespace engine {

EmbedPlan::EmbedPlan(const SiteDims& dims, const std::vector<int>& targets,
                     const std::vector<std::pair<int, int>>& fixed_levels) {
    require(!targets.empty(), "EmbedPlan: no target sites");
    std::vector<bool> used(static_cast<std::size_t>(dims.n_sites()), false);
    auto claim = [&](int site) {
        require(site >= 0 && site < dims.n_sites(), "EmbedPlan: site out of range");
        require(!used[static_cast<std::size_t>(site)], "EmbedPlan: repeated site");
        used[static_cast<std::size_t>(site)] = true;
    };
    for (int t : targets) {
        claim(t);
    }
    std::size_t fixed_offset = 0;
    for (const auto& [site, level] : fixed_levels) {
        claim(site);
        require(level >= 0 && level < dims.dim(site), "EmbedPlan: fixed level out of range");
        fixed_offset += static_cast<std::size_t>(level) * dims.stride(site);
    }

    std::size_t block = 1;
    for (int t : targets) {
        block *= static_cast<std::size_t>(dims.dim(t));
    }
    require(block <= 4096, "EmbedPlan: embedded operator too large");

    // Local index: first listed target is the fastest-varying digit.
    offsets_.resize(block);
    for (std::size_t l = 0; l < block; ++l) {
        std::size_t rem = l;
        std::size_t off = 0;
        for (int t : targets) {
            const auto d = static_cast<std::size_t>(dims.dim(t));
            off += (rem % d) * dims.stride(t);
            rem /= d;
        }
        offsets_[l] = off;
    }

    std::vector<int> free_sites;
    for (int s = 0; s < dims.n_sites(); ++s) {
        if (!used[static_cast<std::size_t>(s)]) {
            free_sites.push_back(s);
        }
    }
    std::size_t n_blocks = 1;
    for (int s : free_sites) {
        n_blocks *= static_cast<std::size_t>(dims.dim(s));
    }
    bases_.resize(n_blocks);
    std::vector<std::size_t> digit(free_sites.size(), 0);
    std::size_t base = fixed_offset;
    for (std::size_t b = 0; b < n_blocks; ++b) {
        bases_[b] = base;
        for (std::size_t j = 0; j < free_sites.size(); ++j) {
            const int s = free_sites[j];
            base += dims.stride(s);
            if (++digit[j] < static_cast<std::size_t>(dims.dim(s))) {
                break;
            }
            digit[j] = 0;
            base -= dims.stride(s) * static_cast<std::size_t>(dims.dim(s));
        }
    }
}

void EmbedPlan::apply(std::vector<cplx>& amps, const CMatrix& m) const {
    const std::size_t d = block_dim();
    require(m.rows() == d && m.cols() == d, "EmbedPlan::apply: operator shape mismatch");
    std::vector<cplx> in(d);
    std::vector<cplx> out(d);
    for (const std::size_t base : bases_) {
        for (std::size_t l = 0; l < d; ++l) {
            in[l] = amps[base + offsets_[l]];
        }
        kernels::matvec(m.data(), in.data(), out.data(), d);
        for (std::size_t l = 0; l < d; ++l) {
            amps[base + offsets_[l]] = out[l];
        }
    }
}

cplx EmbedPlan::expectation(std::span<const cplx> amps, const CMatrix& m) const {
    const std::size_t d = block_dim();
    require(m.rows() == d && m.cols() == d, "EmbedPlan::expectation: operator shape mismatch");
    std::vector<cplx> in(d);
    std::vector<cplx> out(d);
    cplx acc = 0.0;
    for (const std::size_t base : bases_) {
        for (std::size_t l = 0; l < d; ++l) {
            in[l] = amps[base + offsets_[l]];
        }
        kernels::matvec(m.data(), in.data(), out.data(), d);
        acc += kernels::ops().dot_conj(in.data(), out.data(), d);
    }
    return acc;
}

void EmbedPlan::joint_probabilities(std::span<const cplx> amps, double* probs) const {
    const std::size_t d = block_dim();
    std::fill(probs, probs + d, 0.0);
    for (const std::size_t base : bases_) {
        for (std::size_t l = 0; l < d; ++l) {
            probs[l] += std::norm(amps[base + offsets_[l]]);
        }
    }
}

void apply_single_site(std::vector<cplx>& amps, const SiteDims& dims, int site, const CMatrix& m) {
    const auto d = static_cast<std::size_t>(dims.dim(site));
    require(m.rows() == d && m.cols() == d, "apply_single_site: operator shape mismatch");
    const std::size_t s = dims.stride(site);
    const std::size_t period = s * d;
    const auto& k = kernels::ops();
    if (d == 2) {
        for (std::size_t base = 0; base < amps.size(); base += period) {
            k.apply_u2(amps.data() + base, amps.data() + base + s, s, m.data());
        }
    } else {
        for (std::size_t base = 0; base < amps.size(); base += period) {
            k.apply_u3(amps.data() + base, amps.data() + base + s, amps.data() + base + 2 * s, s,
                       m.data());
        }
    }
}

void site_probabilities(std::span<const cplx> amps, const SiteDims& dims, int site,
                        double* probs) {
    const auto d = static_cast<std::size_t>(dims.dim(site));
    const std::size_t s = dims.stride(site);
    const std::size_t period = s * d;
    std::fill(probs, probs + d, 0.0);
    const auto& k = kernels::ops();
    for (std::size_t base = 0; base < amps.size(); base += period) {
        for (std::size_t level = 0; level < d; ++level) {
            probs[level] += k.norm_squared(amps.data() + base + level * s, s);
        }
    }
}

int sample_outcome(const double* probs, int n, RandomStream& rng) {
    const double u = rng.uniform();
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
        total += (probs[k] >= kCdfFloor) ? probs[k] : 0.0;
    }
    require(total > 0.0, "sample_outcome: no outcome has weight above the CDF floor");
    int outcome = -1;
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
        if (probs[k] < kCdfFloor) {
            continue;
        }
        acc += probs[k];
        outcome = k;
        if (u * total < acc) {
            break;
        }
    }
    return outcome;
}

void collapse_site(std::vector<cplx>& amps, const SiteDims& dims, int site, int level,
                   double probability) {
    require(probability > 0.0, "collapse_site: zero-probability branch");
    const auto d = static_cast<std::size_t>(dims.dim(site));
    const std::size_t s = dims.stride(site);
    const std::size_t period = s * d;
    const cplx rescale(1.0 / std::sqrt(probability), 0.0);
    const auto& k = kernels::ops();
    for (std::size_t base = 0; base < amps.size(); base += period) {
        for (std::size_t l = 0; l < d; ++l) {
            cplx* run = amps.data() + base + l * s;
            if (static_cast<int>(l) == level) {
                k.scale(run, s, rescale);
            } else {
                std::fill_n(run, s, cplx(0.0, 0.0));
            }
        }
    }
}

}  // namespace engine

// ---------------------------------------------------------------------------
// Public operations

QRegister init_basis(const SiteDims& dims, const std::vector<int>& labels) {
    require(labels.size() == static_cast<std::size_t>(dims.n_sites()),
            "init_basis: one label per site required");
    std::size_t index = 0;
    for (int s = 0; s < dims.n_sites(); ++s) {
        const int l = labels[static_cast<std::size_t>(s)];
        require(l >= 0 && l < dims.dim(s), "init_basis: label out of range for site dimension");
        index += static_cast<std::size_t>(l) * dims.stride(s);
    }
    std::vector<cplx> amps(dims.total_dim(), cplx(0.0, 0.0));
    amps[index] = 1.0;
    return QRegister::from_normalized(dims, std::move(amps));
}

QRegister apply_gate(const QRegister& reg, const DenseOperator& op,
                     const std::vector<int>& targets) {
    require(op.unitary(), "apply_gate: operator is not unitary within 1e-10");
    std::size_t d = 1;
    for (int t : targets) {
        d *= static_cast<std::size_t>(reg.dims().dim(t));
    }
    require(d == op.dim(), "apply_gate: operator dimension does not match target sites");
    std::vector<cplx> amps(reg.amps().begin(), reg.amps().end());
    if (targets.size() == 1) {
        engine::apply_single_site(amps, reg.dims(), targets[0], op.matrix());
    } else {
        engine::EmbedPlan plan(reg.dims(), targets);
        plan.apply(amps, op.matrix());
    }
    return QRegister::from_normalized(reg.dims(), std::move(amps));
}

QRegister apply_controlled(const QRegister& reg, const DenseOperator& op, int control,
                           const std::map<int, int>& level_powers,
                           const std::vector<int>& targets) {
    require(op.unitary(), "apply_controlled: operator is not unitary within 1e-10");
    require(control >= 0 && control < reg.n_sites(), "apply_controlled: control site out of range");
    for (int t : targets) {
        require(t != control, "apply_controlled: control listed among targets");
    }
    std::size_t d = 1;
    for (int t : targets) {
        d *= static_cast<std::size_t>(reg.dims().dim(t));
    }
    require(d == op.dim(), "apply_controlled: operator dimension does not match target sites");

    std::vector<cplx> amps(reg.amps().begin(), reg.amps().end());
    for (const auto& [level, power] : level_powers) {
        require(level >= 0 && level < reg.dims().dim(control),
                "apply_controlled: control level out of range");
        require(power >= 0, "apply_controlled: exponent must be nonnegative");
        if (power == 0) {
            continue;
        }
        engine::EmbedPlan plan(reg.dims(), targets, {{control, level}});
        plan.apply(amps, matrix_power(op.matrix(), power));
    }
    return QRegister::from_normalized(reg.dims(), std::move(amps));
}

cplx inner(const QRegister& a, const QRegister& b) {
    require(a.dims() == b.dims(), "inner: register dims mismatch");
    return kernels::ops().dot_conj(a.amps().data(), b.amps().data(), a.amps().size());
}

double expectation(const QRegister& reg, const DenseOperator& op,
                   const std::vector<int>& targets) {
    require(op.hermitian(), "expectation: operator is not Hermitian within 1e-10");
    engine::EmbedPlan plan(reg.dims(), targets);
    const cplx v = plan.expectation(reg.amps(), op.matrix());
    require(std::abs(v.imag()) < 1e-10, "expectation: imaginary residue exceeds 1e-10");
    return v.real();
}

std::vector<double> site_probabilities(const QRegister& reg, int site) {
    require(site >= 0 && site < reg.n_sites(), "site_probabilities: site out of range");
    std::vector<double> probs(static_cast<std::size_t>(reg.dims().dim(site)));
    engine::site_probabilities(reg.amps(), reg.dims(), site, probs.data());
    return probs;
}

std::pair<int, QRegister> measure_site(const QRegister& reg, int site, RandomStream& rng) {
    require(site >= 0 && site < reg.n_sites(), "measure_site: site out of range");
    const auto d = static_cast<std::size_t>(reg.dims().dim(site));
    std::vector<double> probs(d);
    engine::site_probabilities(reg.amps(), reg.dims(), site, probs.data());
    const int outcome = engine::sample_outcome(probs.data(), static_cast<int>(d), rng);
    std::vector<cplx> amps(reg.amps().begin(), reg.amps().end());
    engine::collapse_site(amps, reg.dims(), site, outcome, probs[static_cast<std::size_t>(outcome)]);
    return {outcome, QRegister::from_normalized(reg.dims(), std::move(amps))};
}

DensityMatrix partial_trace(const QRegister& reg, const std::vector<int>& keep) {
    require(!keep.empty(), "partial_trace: keep list is empty");
    std::vector<bool> seen(static_cast<std::size_t>(reg.n_sites()), false);
    std::vector<int> kept_dims;
    for (int s : keep) {
        require(s >= 0 && s < reg.n_sites(), "partial_trace: site out of range");
        require(!seen[static_cast<std::size_t>(s)], "partial_trace: duplicate site indices");
        seen[static_cast<std::size_t>(s)] = true;
        kept_dims.push_back(reg.dims().dim(s));
    }
    SiteDims out_dims{kept_dims};
    const std::size_t dk = out_dims.total_dim();

    // Offsets of the kept digits (keep[0] fastest) and of the traced-out rest.
    std::vector<std::size_t> koff(dk);
    for (std::size_t l = 0; l < dk; ++l) {
        std::size_t rem = l;
        std::size_t off = 0;
        for (int s : keep) {
            const auto d = static_cast<std::size_t>(reg.dims().dim(s));
            off += (rem % d) * reg.dims().stride(s);
            rem /= d;
        }
        koff[l] = off;
    }
    std::vector<int> env_sites;
    for (int s = 0; s < reg.n_sites(); ++s) {
        if (!seen[static_cast<std::size_t>(s)]) {
            env_sites.push_back(s);
        }
    }
    std::size_t n_env = 1;
    for (int s : env_sites) {
        n_env *= static_cast<std::size_t>(reg.dims().dim(s));
    }

    const std::span<const cplx> a = reg.amps();
    CMatrix rho(dk, dk);
    std::vector<std::size_t> digit(env_sites.size(), 0);
    std::size_t base = 0;
    for (std::size_t e = 0; e < n_env; ++e) {
        for (std::size_t r = 0; r < dk; ++r) {
            const cplx ar = a[base + koff[r]];
            rho(r, r) += ar * std::conj(ar);
            for (std::size_t c = r + 1; c < dk; ++c) {
                rho(r, c) += ar * std::conj(a[base + koff[c]]);
            }
        }
        for (std::size_t j = 0; j < env_sites.size(); ++j) {
            const int s = env_sites[j];
            base += reg.dims().stride(s);
            if (++digit[j] < static_cast<std::size_t>(reg.dims().dim(s))) {
                break;
            }
            digit[j] = 0;
            base -= reg.dims().stride(s) * static_cast<std::size_t>(reg.dims().dim(s));
        }
    }
    for (std::size_t r = 0; r < dk; ++r) {
        rho(r, r) = cplx(rho(r, r).real(), 0.0);
        for (std::size_t c = r + 1; c < dk; ++c) {
            rho(c, r) = std::conj(rho(r, c));
        }
    }
    return DensityMatrix(std::move(out_dims), std::move(rho));
}

// ---------------------------------------------------------------------------
// JSON state files

QRegister load_state_json(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "state file not readable: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail("state file is not valid JSON: " + path + " (" + e.what() + ")");
    }
    require(j.is_object() && j.contains("dims") && j.contains("amps"),
            "state file must carry \"dims\" and \"amps\": " + path);
    std::vector<int> dims;
    for (const auto& d : j.at("dims")) {
        require(d.is_number_integer(), "state file dims must be integers");
        dims.push_back(d.get<int>());
    }
    SiteDims sd{dims};
    const auto& amps_json = j.at("amps");
    require(amps_json.is_array() && amps_json.size() == sd.total_dim(),
            "state file amps length must equal the product of dims");
    std::vector<cplx> amps;
    amps.reserve(amps_json.size());
    for (const auto& pair : amps_json) {
        require(pair.is_array() && pair.size() == 2, "state file amps must be [re, im] pairs");
        amps.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return QRegister(std::move(sd), std::move(amps));
}

void save_state_json(const QRegister& reg, const std::string& path) {
    nlohmann::json j;
    j["dims"] = reg.dims().dims();
    nlohmann::json amps = nlohmann::json::array();
    for (const cplx& a : reg.amps()) {
        amps.push_back({a.real(), a.imag()});
    }
    j["amps"] = std::move(amps);
    std::ofstream out(path);
    require(out.good(), "cannot write state file: " + path);
    out << j.dump() << "\n";
}

}  // namespace chiralsim
