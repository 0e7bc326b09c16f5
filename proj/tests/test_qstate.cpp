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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "chiralsim/operators.hpp"
#include "chiralsim/qstate.hpp"
#include "chiralsim/states.hpp"
#include "oracle_helpers.hpp"

using namespace chiralsim;
namespace oracle = chiralsim::testing;

namespace {

double state_distance(const QRegister& a, const QRegister& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.amps().size(); ++i) {
        m = std::max(m, std::abs(a.amps()[i] - b.amps()[i]));
    }
    return m;
}

const DenseOperator& pauli_x_op() {
    static const DenseOperator x(pauli_matrix(PauliLetter::X), 1);
    return x;
}

}  // namespace

TEST_CASE("init_basis places a single amplitude") {
    const auto up3 = init_basis(SiteDims::qubits(3), {0, 0, 0});
    CHECK(std::abs(up3.amps()[0] - cplx(1.0, 0.0)) < 1e-15);
    CHECK(up3.norm() == doctest::Approx(1.0).epsilon(1e-14));

    const auto with_qutrit = init_basis(SiteDims({2, 2, 2, 3}), {0, 0, 0, 0});
    CHECK(with_qutrit.amps().size() == 24);
    CHECK(std::abs(with_qutrit.amps()[0] - cplx(1.0, 0.0)) < 1e-15);
    CHECK(with_qutrit.norm() == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(init_basis(SiteDims({2}), {2}), Error);
}

TEST_CASE("SiteDims rejects malformed layouts") {
    CHECK_THROWS_AS(SiteDims({}), Error);
    CHECK_THROWS_AS(SiteDims({2, 4}), Error);
    CHECK_THROWS_AS(SiteDims({3, 2, 3}), Error);
    CHECK(SiteDims({2, 3, 2}).qutrit_site().value() == 1);
    CHECK(SiteDims::qubits(3).stride(2) == 4);
}

TEST_CASE("apply_gate basics") {
    const auto reg = init_basis(SiteDims::qubits(2), {0, 1});

    const DenseOperator eye(CMatrix::identity(2), 1);
    CHECK(state_distance(apply_gate(reg, eye, {0}), reg) < 1e-15);

    const auto flipped = apply_gate(init_basis(SiteDims::qubits(1), {0}), pauli_x_op(), {0});
    CHECK(std::abs(flipped.amps()[1] - cplx(1.0, 0.0)) < 1e-15);

    // Cycle then inverse cycle restores the register.
    RandomStream rng(5);
    const auto psi = oracle::random_state(SiteDims::qubits(3), rng);
    const auto cycle = cyclic_permutation();
    const auto back = apply_gate(apply_gate(psi, cycle, {0, 1, 2}), cycle.adjoint(), {0, 1, 2});
    CHECK(state_distance(back, psi) < 1e-12);

    CHECK_THROWS_AS(apply_gate(reg, pauli_x_op(), {0, 1}), Error);  // dim mismatch
    CMatrix not_unitary(2, 2);
    not_unitary(0, 0) = 2.0;
    not_unitary(1, 1) = 1.0;
    CHECK_THROWS_AS(apply_gate(reg, DenseOperator(not_unitary, 1), {0}), Error);
}

TEST_CASE("gate embedding agrees with the Kronecker oracle") {
    RandomStream rng(98);
    const std::vector<std::vector<int>> layouts = {{2, 2}, {2, 2, 2}, {2, 3, 2}, {2, 2, 2, 3}};
    for (const auto& layout : layouts) {
        const SiteDims dims(layout);
        for (int rep = 0; rep < 50; ++rep) {
            // Random distinct targets, random order, 1..3 sites.
            std::vector<int> perm(static_cast<std::size_t>(dims.n_sites()));
            for (std::size_t i = 0; i < perm.size(); ++i) {
                perm[i] = static_cast<int>(i);
            }
            for (std::size_t i = perm.size(); i > 1; --i) {
                std::swap(perm[i - 1], perm[rng.next_u64() % i]);
            }
            const int n_targets = 1 + static_cast<int>(rng.next_u64() % 3u) % dims.n_sites();
            std::vector<int> targets(perm.begin(), perm.begin() + n_targets);
            std::size_t d = 1;
            for (int t : targets) {
                d *= static_cast<std::size_t>(dims.dim(t));
            }
            const CMatrix u = oracle::random_unitary(d, rng);
            const auto psi = oracle::random_state(dims, rng);

            const auto via_engine = apply_gate(psi, DenseOperator(u, n_targets), targets);
            const auto full = oracle::kron_embed(u, targets, dims);
            const auto via_oracle = oracle::matrix_vector(full, psi.amps());
            for (std::size_t i = 0; i < via_oracle.size(); ++i) {
                CHECK(std::abs(via_engine.amps()[i] - via_oracle[i]) < 1e-12);
            }
        }
    }
}

TEST_CASE("norm is preserved along random gate sequences") {
    RandomStream rng(31);
    const SiteDims dims({2, 2, 3, 2});
    auto psi = oracle::random_state(dims, rng);
    for (int step = 0; step < 40; ++step) {
        const int site = static_cast<int>(rng.next_u64() % 4u);
        const auto d = static_cast<std::size_t>(dims.dim(site));
        psi = apply_gate(psi, DenseOperator(oracle::random_unitary(d, rng), 1), {site});
        CHECK(std::abs(psi.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("apply_controlled realizes level powers") {
    RandomStream rng(77);

    SUBCASE("control at |0> leaves targets unchanged") {
        auto reg = init_basis(SiteDims::qubits(2), {0, 1});
        const auto out = apply_controlled(reg, pauli_x_op(), 0, {{0, 0}, {1, 1}}, {1});
        CHECK(state_distance(out, reg) < 1e-15);
    }

    SUBCASE("qutrit control at |2> applies U^2") {
        // dims: qubit target, qutrit control in |2>.
        const SiteDims dims({2, 3});
        const CMatrix u = oracle::random_unitary(2, rng);
        const DenseOperator op(u, 1);
        std::vector<cplx> amps(6, cplx(0.0, 0.0));
        amps[static_cast<std::size_t>(1 * 0 + 2 * 2)] = 1.0;  // site0=0, site1=2
        const auto reg = QRegister::from_normalized(dims, std::move(amps));
        const auto out = apply_controlled(reg, op, 1, {{0, 0}, {1, 1}, {2, 2}}, {0});
        const DenseOperator u_sq(u * u, 1);
        const auto expect = apply_gate(reg, u_sq, {0});
        CHECK(state_distance(out, expect) < 1e-12);
    }

    SUBCASE("entangling phase against a brute-force matrix") {
        // |+>|1>|0>, control site 0, Z on site 1.
        const SiteDims dims = SiteDims::qubits(3);
        std::vector<cplx> amps(8, cplx(0.0, 0.0));
        const double r = 1.0 / std::sqrt(2.0);
        amps[2] = r;  // |0,1,0>
        amps[3] = r;  // |1,1,0>
        auto reg = QRegister::from_normalized(dims, std::move(amps));
        const DenseOperator z(pauli_matrix(PauliLetter::Z), 1);
        const auto out = apply_controlled(reg, z, 0, {{0, 0}, {1, 1}}, {1});

        // Oracle: explicit 8x8 controlled-Z(0 -> 1).
        CMatrix cz = CMatrix::identity(8);
        for (std::size_t i = 0; i < 8; ++i) {
            if ((i & 1u) != 0 && (i & 2u) != 0) {
                cz(i, i) = -1.0;
            }
        }
        const auto expect = oracle::matrix_vector(cz, reg.amps());
        for (std::size_t i = 0; i < 8; ++i) {
            CHECK(std::abs(out.amps()[i] - expect[i]) < 1e-12);
        }
    }

    SUBCASE("control among targets is rejected") {
        auto reg = init_basis(SiteDims::qubits(2), {0, 0});
        CHECK_THROWS_AS(apply_controlled(reg, pauli_x_op(), 0, {{1, 1}}, {0}), Error);
    }
}

TEST_CASE("inner products") {
    const auto up = init_basis(SiteDims::qubits(1), {0});
    const auto down = init_basis(SiteDims::qubits(1), {1});
    CHECK(std::abs(inner(up, up) - cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(inner(up, down)) < 1e-15);

    const auto plus_z = product_state({BlochVector{0.0, 0.0, 1.0, 0.5}});
    const auto plus_x = product_state({BlochVector{1.0, 0.0, 0.0, 0.5}});
    CHECK(std::abs(inner(plus_z, plus_x) - cplx(1.0 / std::sqrt(2.0), 0.0)) < 1e-12);

    CHECK_THROWS_AS(inner(up, init_basis(SiteDims::qubits(2), {0, 0})), Error);
}

TEST_CASE("expectation values of the chirality operator") {
    const auto chi = chirality_matrix();
    CHECK(expectation(init_basis(SiteDims::qubits(3), {0, 0, 0}), chi, {0, 1, 2}) ==
          doctest::Approx(0.0).epsilon(1e-13));

    const auto lam1 = chirality_eigenstate(+1, EigenstateVariant::w_like);
    CHECK(expectation(lam1, chi, {0, 1, 2}) == doctest::Approx(1.0).epsilon(1e-13));

    const auto xyz = product_state({BlochVector{1, 0, 0, 0.5}, BlochVector{0, 1, 0, 0.5},
                                    BlochVector{0, 0, 1, 0.5}});
    const double expected = 1.0 / (2.0 * std::sqrt(3.0));
    CHECK(expectation(xyz, chi, {0, 1, 2}) == doctest::Approx(expected).epsilon(1e-12));

    // Dense oracle route for the same number.
    const auto full = oracle::kron_embed(chi.matrix(), {0, 1, 2}, xyz.dims());
    const auto hx = oracle::matrix_vector(full, xyz.amps());
    CHECK(oracle::vector_dot(xyz.amps(), hx).real() == doctest::Approx(expected).epsilon(1e-12));

    CMatrix nonherm(2, 2);
    nonherm(0, 1) = 1.0;
    CHECK_THROWS_AS(expectation(xyz, DenseOperator(nonherm, 1), {0}), Error);
}

TEST_CASE("measure_site: basis states, symmetry, qutrit Fourier state") {
    RandomStream rng(2024);

    auto basis = init_basis(SiteDims::qubits(2), {1, 0});
    auto [outcome, collapsed] = measure_site(basis, 0, rng);
    CHECK(outcome == 1);
    CHECK(state_distance(collapsed, basis) < 1e-15);

    // (|0> + |1>)/sqrt2: empirical P(0) within 0.01 of 1/2 over 1e5 draws.
    std::vector<cplx> amps = {cplx(1.0 / std::sqrt(2.0), 0.0), cplx(1.0 / std::sqrt(2.0), 0.0)};
    const auto plus = QRegister::from_normalized(SiteDims::qubits(1), std::move(amps));
    int zeros = 0;
    const int shots = 100000;
    for (int i = 0; i < shots; ++i) {
        RandomStream sub = rng.substream(static_cast<std::uint64_t>(i));
        zeros += (measure_site(plus, 0, sub).first == 0);
    }
    CHECK(std::abs(zeros / static_cast<double>(shots) - 0.5) < 0.01);

    // Qutrit in QFT3|0>: each outcome close to 1/3.
    const cplx w = std::exp(cplx(0.0, 2.0 * SpinWaveSpec::kPi / 3.0));
    CMatrix qft3(3, 3);
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) {
            qft3(r, c) = std::pow(w, static_cast<double>(r * c % 3)) / std::sqrt(3.0);
        }
    }
    auto qutrit = apply_gate(init_basis(SiteDims({3}), {0}), DenseOperator(qft3, 1), {0});
    std::array<int, 3> counts{0, 0, 0};
    for (int i = 0; i < shots; ++i) {
        RandomStream sub = rng.substream(1000000u + static_cast<std::uint64_t>(i));
        counts[static_cast<std::size_t>(measure_site(qutrit, 0, sub).first)]++;
    }
    const double bound = 5.0 / std::sqrt(static_cast<double>(shots));
    for (int k = 0; k < 3; ++k) {
        CHECK(std::abs(counts[static_cast<std::size_t>(k)] / static_cast<double>(shots) -
                       1.0 / 3.0) < bound);
    }
}

TEST_CASE("outcomes below the CDF floor are never sampled") {
    // P(1) = 1e-16 sits under the 1e-14 floor: outcome 0 must always win and
    // the collapse rescale stays finite.
    const double tiny = 1e-8;
    std::vector<cplx> amps = {cplx(std::sqrt(1.0 - tiny * tiny), 0.0), cplx(tiny, 0.0)};
    const auto psi = QRegister::from_normalized(SiteDims::qubits(1), std::move(amps));
    RandomStream rng(13);
    for (int i = 0; i < 2000; ++i) {
        auto [outcome, collapsed] = measure_site(psi, 0, rng);
        CHECK(outcome == 0);
        CHECK(std::abs(collapsed.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("sampling matches Born probabilities on random states") {
    RandomStream rng(555);
    const int shots = 20000;
    const double bound = 5.0 / std::sqrt(static_cast<double>(shots));
    for (int rep = 0; rep < 3; ++rep) {
        const SiteDims dims({2, 3, 2});
        const auto psi = oracle::random_state(dims, rng);
        const int site = static_cast<int>(rng.next_u64() % 3u);
        const auto probs = site_probabilities(psi, site);
        std::vector<int> counts(probs.size(), 0);
        for (int i = 0; i < shots; ++i) {
            RandomStream sub = rng.substream(static_cast<std::uint64_t>(rep * shots + i));
            counts[static_cast<std::size_t>(measure_site(psi, site, sub).first)]++;
        }
        for (std::size_t k = 0; k < probs.size(); ++k) {
            CHECK(std::abs(counts[k] / static_cast<double>(shots) - probs[k]) < bound);
        }
    }
}

TEST_CASE("partial trace: known values and the naive oracle") {
    // Product state reduces to a rank-1 projector.
    const auto prod = product_state({BlochVector{1, 0, 0, 0.5}, BlochVector{0, 0, 1, 0.5}});
    CHECK(partial_trace(prod, {0}).purity() == doctest::Approx(1.0).epsilon(1e-12));

    // W state, keep middle site: diag(2/3, 1/3).
    std::vector<cplx> w_amps(8, cplx(0.0, 0.0));
    const double r = 1.0 / std::sqrt(3.0);
    w_amps[1] = r;
    w_amps[2] = r;
    w_amps[4] = r;
    const auto w = QRegister::from_normalized(SiteDims::qubits(3), std::move(w_amps));
    const auto rho = partial_trace(w, {1});
    CHECK(rho.matrix()(0, 0).real() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(rho.matrix()(1, 1).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(std::abs(rho.matrix()(0, 1)) < 1e-12);

    RandomStream rng(808);
    for (int rep = 0; rep < 30; ++rep) {
        const SiteDims dims({2, 2, 3, 2});
        const auto psi = oracle::random_state(dims, rng);
        std::vector<int> keep;
        for (int s = 0; s < 4; ++s) {
            if (rng.uniform() < 0.5) {
                keep.push_back(s);
            }
        }
        if (keep.empty()) {
            keep.push_back(static_cast<int>(rng.next_u64() % 4u));
        }
        if (rng.uniform() < 0.5 && keep.size() > 1) {
            std::swap(keep.front(), keep.back());
        }
        const auto got = partial_trace(psi, keep).matrix();
        const auto want = oracle::naive_partial_trace(psi, keep);
        CHECK(got.max_abs_diff(want) < 1e-12);
    }

    CHECK_THROWS_AS(partial_trace(w, {1, 1}), Error);
    CHECK_THROWS_AS(partial_trace(w, {}), Error);
}

TEST_CASE("partial trace is trace-preserving and positive semidefinite") {
    RandomStream rng(112);
    const SiteDims dims = SiteDims::qubits(4);
    for (int rep = 0; rep < 10000; ++rep) {
        const auto psi = oracle::random_state(dims, rng);
        const int keep_count = 1 + static_cast<int>(rng.next_u64() % 2u);
        std::vector<int> keep;
        while (static_cast<int>(keep.size()) < keep_count) {
            const int s = static_cast<int>(rng.next_u64() % 4u);
            if (std::find(keep.begin(), keep.end(), s) == keep.end()) {
                keep.push_back(s);
            }
        }
        const auto rho = partial_trace(psi, keep);
        CHECK(std::abs(rho.matrix().trace() - cplx(1.0, 0.0)) < 1e-12);
        const auto evals = oracle::hermitian_eigenvalues(rho.matrix());
        CHECK(evals.front() >= -1e-10);
    }
}

TEST_CASE("state files round-trip and validate") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "chiralsim_qstate_test";
    fs::create_directories(dir);
    const std::string path = (dir / "state.json").string();

    RandomStream rng(6);
    const auto psi = oracle::random_state(SiteDims({2, 3, 2}), rng);
    save_state_json(psi, path);
    const auto back = load_state_json(path);
    CHECK(back.dims() == psi.dims());
    CHECK(state_distance(back, psi) < 1e-12);

    // Slightly denormalized input is renormalized.
    {
        std::vector<cplx> amps = {cplx(1.0 + 5e-9, 0.0), cplx(0.0, 0.0)};
        nlohmann::json j;
        j["dims"] = {2};
        j["amps"] = {{amps[0].real(), 0.0}, {0.0, 0.0}};
        std::ofstream out(path);
        out << j.dump();
    }
    CHECK(load_state_json(path).norm() == doctest::Approx(1.0).epsilon(1e-14));

    // Badly denormalized input is rejected.
    {
        nlohmann::json j;
        j["dims"] = {2};
        j["amps"] = {{0.5, 0.0}, {0.0, 0.0}};
        std::ofstream out(path);
        out << j.dump();
    }
    CHECK_THROWS_AS(load_state_json(path), Error);

    // Wrong amplitude count.
    {
        nlohmann::json j;
        j["dims"] = {2, 2};
        j["amps"] = {{1.0, 0.0}, {0.0, 0.0}};
        std::ofstream out(path);
        out << j.dump();
    }
    CHECK_THROWS_AS(load_state_json(path), Error);

    CHECK_THROWS_AS(load_state_json((dir / "missing.json").string()), Error);
    fs::remove_all(dir);
}
