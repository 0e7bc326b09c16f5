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

#include "chiralsim/hamiltonian.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace chiralsim {

namespace {

// S = sigma / 2 in the up<->0 encoding.
CMatrix spin_half(PauliLetter p) {
    CMatrix m = pauli_matrix(p);
    m *= cplx(0.5, 0.0);
    return m;
}

/// H += embedded two-site term at (a, b), slot a fastest in `term`.
void add_two_site(CMatrix& h, const SiteDims& dims, int a, int b, const CMatrix& term) {
    const std::size_t sa = dims.stride(a);
    const std::size_t sb = dims.stride(b);
    const std::size_t offs[4] = {0, sa, sb, sa + sb};
    std::vector<int> free_sites;
    for (int s = 0; s < dims.n_sites(); ++s) {
        if (s != a && s != b) {
            free_sites.push_back(s);
        }
    }
    const std::size_t n_blocks = dims.total_dim() / 4;
    std::vector<std::size_t> digit(free_sites.size(), 0);
    std::size_t base = 0;
    for (std::size_t blk = 0; blk < n_blocks; ++blk) {
        for (std::size_t r = 0; r < 4; ++r) {
            for (std::size_t c = 0; c < 4; ++c) {
                h(base + offs[r], base + offs[c]) += term(r, c);
            }
        }
        for (std::size_t j = 0; j < free_sites.size(); ++j) {
            const int s = free_sites[j];
            base += dims.stride(s);
            if (++digit[j] < 2) {
                break;
            }
            digit[j] = 0;
            base -= 2 * dims.stride(s);
        }
    }
}

void add_one_site(CMatrix& h, const SiteDims& dims, int site, const CMatrix& term) {
    const std::size_t s = dims.stride(site);
    const std::size_t offs[2] = {0, s};
    const std::size_t n_blocks = dims.total_dim() / 2;
    for (std::size_t blk = 0; blk < n_blocks; ++blk) {
        // Reinsert a zero digit at `site`.
        const std::size_t low = blk % s;
        const std::size_t high = blk / s;
        const std::size_t base = low + high * 2 * s;
        for (std::size_t r = 0; r < 2; ++r) {
            for (std::size_t c = 0; c < 2; ++c) {
                h(base + offs[r], base + offs[c]) += term(r, c);
            }
        }
    }
}

}  // namespace

void HamiltonianParams::validate() const {
    require(n_sites >= 3, "HamiltonianParams: need at least 3 sites");
    require(n_sites <= 14, "HamiltonianParams: dense limit is 14 sites");
    require(std::isfinite(j) && std::isfinite(d) && std::isfinite(b) && std::isfinite(bprime),
            "HamiltonianParams: couplings must be finite");
}

DenseOperator build_hamiltonian(const HamiltonianParams& p) {
    p.validate();
    const SiteDims dims = SiteDims::qubits(p.n_sites);
    const CMatrix sx = spin_half(PauliLetter::X);
    const CMatrix sy = spin_half(PauliLetter::Y);
    const CMatrix sz = spin_half(PauliLetter::Z);

    auto two_site = [](const CMatrix& first, const CMatrix& second) {
        // slot 0 (first factor) fastest-varying
        CMatrix m(4, 4);
        for (std::size_t r = 0; r < 4; ++r) {
            for (std::size_t c = 0; c < 4; ++c) {
                m(r, c) = first(r & 1u, c & 1u) * second(r >> 1, c >> 1);
            }
        }
        return m;
    };

    // Bond term: -J S.S + D (Sx Sy' - Sy Sx'), identical for every bond
    // (n, n+1 mod N) with n the first factor.
    CMatrix bond(4, 4);
    bond += cplx(-p.j, 0.0) * two_site(sx, sx);
    bond += cplx(-p.j, 0.0) * two_site(sy, sy);
    bond += cplx(-p.j, 0.0) * two_site(sz, sz);
    bond += cplx(p.d, 0.0) * two_site(sx, sy);
    bond += cplx(-p.d, 0.0) * two_site(sy, sx);

    CMatrix h(dims.total_dim(), dims.total_dim());
    for (int n = 0; n < p.n_sites; ++n) {
        add_two_site(h, dims, n, (n + 1) % p.n_sites, bond);
    }
    CMatrix local_x = sx;
    local_x *= cplx(p.bprime, 0.0);
    add_one_site(h, dims, 0, local_x);
    CMatrix zeeman = sz;
    zeeman *= cplx(p.b, 0.0);
    for (int n = 0; n < p.n_sites; ++n) {
        add_one_site(h, dims, n, zeeman);
    }
    return DenseOperator(std::move(h), p.n_sites);
}

SpectrumResult ground_state(const HamiltonianParams& p) {
    const DenseOperator h = build_hamiltonian(p);
    const std::size_t dim = h.dim();

    Eigen::MatrixXcd a(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = h.matrix()(r, c);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
    require(solver.info() == Eigen::Success, "ground_state: eigensolver failed to converge");

    std::vector<double> evals(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        evals[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    }

    std::vector<cplx> gs(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        gs[i] = solver.eigenvectors()(static_cast<Eigen::Index>(i), 0);
    }
    // Gauge: largest-magnitude amplitude (first among ties) made real positive.
    std::size_t pivot = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const double m = std::abs(gs[i]);
        if (m > best) {
            best = m;
            pivot = i;
        }
    }
    if (best > 0.0) {
        const cplx phase = gs[pivot] / best;
        for (auto& v : gs) {
            v *= std::conj(phase);
        }
        gs[pivot] = cplx(gs[pivot].real(), 0.0);
    }

    // Eigenpair defect check.
    double defect2 = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
        cplx acc = 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
            acc += h.matrix()(r, c) * gs[c];
        }
        acc -= evals[0] * gs[r];
        defect2 += std::norm(acc);
    }
    require(std::sqrt(defect2) < 1e-9, "ground_state: eigenpair residual above 1e-9");

    const double gap = dim > 1 ? evals[1] - evals[0] : 0.0;
    SpectrumResult out{std::move(evals),
                       QRegister::from_normalized(SiteDims::qubits(p.n_sites), std::move(gs)), gap,
                       gap < 1e-10};
    return out;
}

std::vector<std::array<double, 3>> local_spin_texture(const QRegister& reg) {
    std::vector<std::array<double, 3>> out;
    out.reserve(static_cast<std::size_t>(reg.n_sites()));
    const CMatrix sx = spin_half(PauliLetter::X);
    const CMatrix sy = spin_half(PauliLetter::Y);
    const CMatrix sz = spin_half(PauliLetter::Z);
    for (int site = 0; site < reg.n_sites(); ++site) {
        require(reg.dims().dim(site) == 2, "local_spin_texture: qubit sites only");
        const CMatrix rho = partial_trace(reg, {site}).matrix();
        auto component = [&rho](const CMatrix& s) {
            cplx t = 0.0;
            for (std::size_t r = 0; r < 2; ++r) {
                for (std::size_t c = 0; c < 2; ++c) {
                    t += rho(r, c) * s(c, r);
                }
            }
            return t.real();
        };
        out.push_back({component(sx), component(sy), component(sz)});
    }
    return out;
}

}  // namespace chiralsim
