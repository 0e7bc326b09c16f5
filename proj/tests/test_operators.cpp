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

#include "chiralsim/operators.hpp"
#include "chiralsim/qstate.hpp"
#include "chiralsim/states.hpp"
#include "oracle_helpers.hpp"

using namespace chiralsim;
namespace oracle = chiralsim::testing;

namespace {

constexpr double kPi = 3.141592653589793238462643383279;

/// Independent route to the chirality matrix: (4/sqrt3) sum_abc eps_abc
/// S^a (x) S^b (x) S^c assembled from explicit spin matrices.
CMatrix chirality_oracle() {
    const SiteDims dims = SiteDims::qubits(3);
    auto spin = [](PauliLetter p) {
        CMatrix m = pauli_matrix(p);
        m *= cplx(0.5, 0.0);
        return m;
    };
    const CMatrix s[3] = {spin(PauliLetter::X), spin(PauliLetter::Y), spin(PauliLetter::Z)};
    CMatrix acc(8, 8);
    const int eps[6][4] = {{0, 1, 2, +1}, {1, 2, 0, +1}, {2, 0, 1, +1},
                           {0, 2, 1, -1}, {2, 1, 0, -1}, {1, 0, 2, -1}};
    for (const auto& e : eps) {
        const CMatrix term = oracle::kron_embed(s[e[0]], {0}, dims) *
                             oracle::kron_embed(s[e[1]], {1}, dims) *
                             oracle::kron_embed(s[e[2]], {2}, dims);
        CMatrix signed_term = term;
        signed_term *= cplx(static_cast<double>(e[3]), 0.0);
        acc += signed_term;
    }
    acc *= cplx(4.0 / std::sqrt(3.0), 0.0);
    return acc;
}

}  // namespace

TEST_CASE("chirality matrix: construction, spectrum, algebra") {
    const DenseOperator chi = chirality_matrix();
    CHECK(chi.hermitian());
    CHECK_FALSE(chi.unitary());
    CHECK(std::abs(chi.matrix().trace()) < 1e-14);

    CHECK(chi.matrix().max_abs_diff(chirality_oracle()) < 1e-12);

    const auto evals = oracle::hermitian_eigenvalues(chi.matrix());
    const double expected[8] = {-1, -1, 0, 0, 0, 0, 1, 1};
    for (int i = 0; i < 8; ++i) {
        CHECK(std::abs(evals[static_cast<std::size_t>(i)] - expected[i]) < 1e-10);
    }

    const CMatrix chi3 = chi.matrix() * chi.matrix() * chi.matrix();
    CHECK(chi3.max_abs_diff(chi.matrix()) < 1e-12);
}

TEST_CASE("pauli expansion reproduces the operator") {
    const auto strings = chirality_pauli_expansion();
    CHECK(strings.size() == 6);
    const double w = 1.0 / (2.0 * std::sqrt(3.0));
    int positive = 0;
    CMatrix sum(8, 8);
    for (const auto& s : strings) {
        CHECK(std::abs(std::abs(s.coefficient) - w) < 1e-15);
        positive += (s.coefficient > 0);
        sum += s.to_matrix(3);
        // Each string squares to coefficient^2 * identity.
        PauliString unit = s;
        unit.coefficient = 1.0;
        const CMatrix m = unit.to_matrix(3);
        CHECK((m * m).max_abs_diff(CMatrix::identity(8)) < 1e-14);
    }
    CHECK(positive == 3);
    CHECK(sum.max_abs_diff(chirality_matrix().matrix()) < 1e-12);
}

TEST_CASE("exp_chirality: closed form vs generic matrix exponential") {
    CHECK(exp_chirality(0.0).matrix().max_abs_diff(CMatrix::identity(8)) < 1e-14);

    RandomStream rng(314);
    const CMatrix chi = chirality_matrix().matrix();
    for (int rep = 0; rep < 100; ++rep) {
        const double tau = 20.0 * (rng.uniform() - 0.5);
        CMatrix gen = chi;
        gen *= cplx(0.0, -tau);
        const CMatrix want = oracle::matrix_exponential(gen);
        CHECK(exp_chirality(tau).matrix().max_abs_diff(want) < 1e-10);
    }
}

TEST_CASE("exp_chirality(2pi/3) equals the cyclic permutation") {
    const auto u = exp_chirality(2.0 * kPi / 3.0);
    const auto cycle = cyclic_permutation();
    CHECK(u.matrix().max_abs_diff(cycle.matrix()) < 1e-12);
    CHECK(u.unitary());

    // Eigenphase on the lambda = +1 eigenstate is exp(-i 2 pi / 3).
    const auto psi = chirality_eigenstate(+1, EigenstateVariant::w_like);
    const auto rotated = apply_gate(psi, u, {0, 1, 2});
    const cplx phase = inner(psi, rotated);
    CHECK(std::abs(phase - std::exp(cplx(0.0, -2.0 * kPi / 3.0))) < 1e-12);
}

TEST_CASE("cyclic permutation action") {
    const auto cycle = cyclic_permutation();
    CHECK(cycle.unitary());

    // Contents move forward one slot: |udd> -> |dud>.
    const auto udd = init_basis(SiteDims::qubits(3), {0, 1, 1});
    const auto moved = apply_gate(udd, cycle, {0, 1, 2});
    const auto dud = init_basis(SiteDims::qubits(3), {1, 0, 1});
    CHECK(std::abs(inner(dud, moved) - cplx(1.0, 0.0)) < 1e-14);

    const CMatrix c = cycle.matrix();
    CHECK((c * c * c).max_abs_diff(CMatrix::identity(8)) < 1e-14);

    const auto symmetric = init_basis(SiteDims::qubits(3), {1, 1, 1});
    CHECK(std::abs(inner(symmetric, apply_gate(symmetric, cycle, {0, 1, 2})) - cplx(1.0, 0.0)) <
          1e-14);
}

TEST_CASE("classical chirality") {
    const BlochVector x{1, 0, 0, 0.5};
    const BlochVector y{0, 1, 0, 0.5};
    const BlochVector z{0, 0, 1, 0.5};
    CHECK(classical_chirality(x, x, y) == doctest::Approx(0.0));
    CHECK(classical_chirality(x, y, z) == doctest::Approx(1.0 / 8.0).epsilon(1e-14));

    RandomStream rng(21);
    for (int rep = 0; rep < 200; ++rep) {
        const auto a = oracle::random_bloch(rng);
        const auto b = oracle::random_bloch(rng);
        const auto c = oracle::random_bloch(rng);
        const double v = classical_chirality(a, b, c);
        CHECK(classical_chirality(b, c, a) == doctest::Approx(v).epsilon(1e-12));
        CHECK(classical_chirality(b, a, c) == doctest::Approx(-v).epsilon(1e-12));
    }
}

TEST_CASE("bargmann invariant ties the three chirality routes together") {
    const BlochVector x{1, 0, 0, 0.5};
    const BlochVector y{0, 1, 0, 0.5};
    const BlochVector z{0, 0, 1, 0.5};
    CHECK(bargmann_chirality(x, y, z) ==
          doctest::Approx(1.0 / (2.0 * std::sqrt(3.0))).epsilon(1e-12));
    CHECK(bargmann_chirality(x, x, z) == doctest::Approx(0.0));

    const DenseOperator chi = chirality_matrix();
    RandomStream rng(1111);
    for (int rep = 0; rep < 1000; ++rep) {
        const auto a = oracle::random_bloch(rng);
        const auto b = oracle::random_bloch(rng);
        const auto c = oracle::random_bloch(rng);
        const auto state = product_state({a, b, c});
        const double quantum = expectation(state, chi, {0, 1, 2});
        CHECK(std::abs(quantum - bargmann_chirality(a, b, c)) < 1e-12);
        CHECK(std::abs(quantum - 4.0 / std::sqrt(3.0) * classical_chirality(a, b, c)) < 1e-12);
    }
}

TEST_CASE("exp_chirality group properties") {
    RandomStream rng(9);
    for (int rep = 0; rep < 100; ++rep) {
        const double tau = 30.0 * (rng.uniform() - 0.5);
        const CMatrix prod = exp_chirality(tau).matrix() * exp_chirality(-tau).matrix();
        CHECK(prod.max_abs_diff(CMatrix::identity(8)) < 1e-12);
    }
    for (int rep = 0; rep < 50; ++rep) {
        const double t1 = 10.0 * (rng.uniform() - 0.5);
        const double t2 = 10.0 * (rng.uniform() - 0.5);
        const CMatrix prod = exp_chirality(t1).matrix() * exp_chirality(t2).matrix();
        CHECK(prod.max_abs_diff(exp_chirality(t1 + t2).matrix()) < 1e-11);
    }
}

TEST_CASE("chirality symmetries under conjugation") {
    const SiteDims dims = SiteDims::qubits(3);
    const CMatrix chi = chirality_matrix().matrix();

    // Global spin flip leaves the operator invariant.
    CMatrix xxx = oracle::kron_embed(pauli_matrix(PauliLetter::X), {0}, dims) *
                  oracle::kron_embed(pauli_matrix(PauliLetter::X), {1}, dims) *
                  oracle::kron_embed(pauli_matrix(PauliLetter::X), {2}, dims);
    CHECK((xxx * chi * xxx).max_abs_diff(chi) < 1e-12);

    // Transposing any two sites negates the operator.
    auto swap_matrix = [](int a, int b) {
        CMatrix m(8, 8);
        for (std::size_t i = 0; i < 8; ++i) {
            std::size_t bits[3] = {i & 1u, (i >> 1) & 1u, (i >> 2) & 1u};
            std::swap(bits[a], bits[b]);
            m(bits[0] | (bits[1] << 1) | (bits[2] << 2), i) = 1.0;
        }
        return m;
    };
    for (const auto& [a, b] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
        const CMatrix p = swap_matrix(a, b);
        CMatrix negated = p * chi * p;
        negated += chi;
        CHECK(negated.max_abs() < 1e-12);
    }
}

TEST_CASE("bloch spinor gauge") {
    const auto up = bloch_spinor(BlochVector{0, 0, 1, 0.5});
    CHECK(std::abs(up[0] - cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(up[1]) < 1e-15);

    const auto px = bloch_spinor(BlochVector{1, 0, 0, 0.5});
    CHECK(std::abs(px[0] - cplx(1.0 / std::sqrt(2.0), 0.0)) < 1e-14);
    CHECK(std::abs(px[1] - cplx(1.0 / std::sqrt(2.0), 0.0)) < 1e-14);

    CHECK_THROWS_AS(bloch_spinor(BlochVector{0.5, 0, 0, 0.5}), Error);
}

TEST_CASE("DenseOperator flags") {
    CHECK(DenseOperator(pauli_matrix(PauliLetter::X), 1).hermitian());
    CHECK(DenseOperator(pauli_matrix(PauliLetter::X), 1).unitary());
    CMatrix j(2, 2);
    j(0, 1) = 1.0;
    const DenseOperator lower(j, 1);
    CHECK_FALSE(lower.hermitian());
    CHECK_FALSE(lower.unitary());
}
