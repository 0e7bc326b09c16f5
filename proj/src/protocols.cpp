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

#include "chiralsim/protocols.hpp"

#include <cmath>

#include "chiralsim/kernels.hpp"
#include "chiralsim/operators.hpp"

namespace chiralsim {

namespace {

constexpr double kTwoPiThirds = 2.0 * SpinWaveSpec::kPi / 3.0;
constexpr cplx kI{0.0, 1.0};

const CMatrix& hadamard_gate() {
    static const CMatrix h = [] {
        const double r = 1.0 / std::sqrt(2.0);
        CMatrix m(2, 2);
        m(0, 0) = r;
        m(0, 1) = r;
        m(1, 0) = r;
        m(1, 1) = -r;
        return m;
    }();
    return h;
}

// H.Sdag: rotates the Y eigenbasis onto the computational one.
const CMatrix& y_rotation_gate() {
    static const CMatrix v = [] {
        CMatrix sdag(2, 2);
        sdag(0, 0) = 1.0;
        sdag(1, 1) = -kI;
        return hadamard_gate() * sdag;
    }();
    return v;
}

// 3x3 quantum Fourier transform with w = exp(i 2 pi / 3).
const CMatrix& qft3_gate() {
    static const CMatrix q = [] {
        const cplx w = std::exp(kI * kTwoPiThirds);
        const double r = 1.0 / std::sqrt(3.0);
        CMatrix m(3, 3);
        for (std::size_t row = 0; row < 3; ++row) {
            for (std::size_t col = 0; col < 3; ++col) {
                m(row, col) = r * std::pow(w, static_cast<double>((row * col) % 3));
            }
        }
        return m;
    }();
    return q;
}

const CMatrix& chirality_unitary() {
    static const CMatrix u = exp_chirality(kTwoPiThirds).matrix();
    return u;
}

const CMatrix& chirality_unitary_squared() {
    static const CMatrix u2 = chirality_unitary() * chirality_unitary();
    return u2;
}

void check_qubit_register(const QRegister& reg, const SiteTrio& trio) {
    require(reg.n_sites() >= 3, "protocol input must have at least 3 sites");
    require(!reg.dims().qutrit_site().has_value(), "protocol input must be all-qubit");
    trio.validate(reg.n_sites());
}

double sample_mean(const std::vector<int>& xs) {
    double s = 0.0;
    for (int x : xs) {
        s += x;
    }
    return s / static_cast<double>(xs.size());
}

double sample_std(const std::vector<int>& xs, double mean) {
    if (xs.size() < 2) {
        return 0.0;
    }
    double s = 0.0;
    for (int x : xs) {
        const double d = x - mean;
        s += d * d;
    }
    return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

/// Hadamard-test circuit on |psi> (x) |0>_ancilla; the ancilla is the last
/// site. prepare() rebuilds the pre-measurement state from the input
/// amplitudes; the shot loop calls it once per shot.
class HadamardEngine {
  public:
    HadamardEngine(const QRegister& reg, const SiteTrio& trio)
        : joint_(reg.dims().with_ancilla(2)),
          ancilla_(reg.n_sites()),
          main_dim_(reg.dims().total_dim()),
          psi_(reg.amps().begin(), reg.amps().end()),
          ctrl_plan_(joint_, trio.site_vector(), {{ancilla_, 1}}),
          scratch_(joint_.total_dim()) {}

    void prepare() {
        std::copy(psi_.begin(), psi_.end(), scratch_.begin());
        std::fill(scratch_.begin() + static_cast<std::ptrdiff_t>(main_dim_), scratch_.end(),
                  cplx(0.0, 0.0));
        engine::apply_single_site(scratch_, joint_, ancilla_, hadamard_gate());
        ctrl_plan_.apply(scratch_, chirality_unitary());
    }

    int run_shot(MeasureBasis basis, RandomStream& rng) {
        prepare();
        engine::apply_single_site(scratch_, joint_, ancilla_,
                                  basis == MeasureBasis::x ? hadamard_gate() : y_rotation_gate());
        double probs[2];
        engine::site_probabilities(scratch_, joint_, ancilla_, probs);
        const int bit = engine::sample_outcome(probs, 2, rng);
        return 1 - 2 * bit;
    }

    double exact(MeasureBasis basis) {
        prepare();
        const engine::EmbedPlan plan(joint_, {ancilla_});
        const cplx v = plan.expectation(
            scratch_, pauli_matrix(basis == MeasureBasis::x ? PauliLetter::X : PauliLetter::Y));
        require(std::abs(v.imag()) < 1e-10, "hadamard_exact: imaginary residue exceeds 1e-10");
        return v.real();
    }

  private:
    SiteDims joint_;
    int ancilla_;
    std::size_t main_dim_;
    std::vector<cplx> psi_;
    engine::EmbedPlan ctrl_plan_;
    std::vector<cplx> scratch_;
};

/// Single-qutrit QPE circuit; the ancilla qutrit is the last site.
class QpeEngine {
  public:
    QpeEngine(const QRegister& reg, const SiteTrio& trio)
        : joint_(reg.dims().with_ancilla(3)),
          ancilla_(reg.n_sites()),
          main_dim_(reg.dims().total_dim()),
          psi_(reg.amps().begin(), reg.amps().end()),
          plan_level1_(joint_, trio.site_vector(), {{ancilla_, 1}}),
          plan_level2_(joint_, trio.site_vector(), {{ancilla_, 2}}),
          qft3_dag_(qft3_gate().adjoint()),
          scratch_(joint_.total_dim()) {}

    void prepare() {
        std::copy(psi_.begin(), psi_.end(), scratch_.begin());
        std::fill(scratch_.begin() + static_cast<std::ptrdiff_t>(main_dim_), scratch_.end(),
                  cplx(0.0, 0.0));
        engine::apply_single_site(scratch_, joint_, ancilla_, qft3_gate());
        plan_level1_.apply(scratch_, chirality_unitary());
        plan_level2_.apply(scratch_, chirality_unitary_squared());
        engine::apply_single_site(scratch_, joint_, ancilla_, qft3_dag_);
    }

    std::array<double, 3> probabilities() {
        prepare();
        std::array<double, 3> p{};
        engine::site_probabilities(scratch_, joint_, ancilla_, p.data());
        return p;
    }

    int run_shot(RandomStream& rng) {
        prepare();
        double probs[3];
        engine::site_probabilities(scratch_, joint_, ancilla_, probs);
        return engine::sample_outcome(probs, 3, rng);
    }

    /// One shot keeping the state: collapse the ancilla and peel it off.
    std::pair<int, std::vector<cplx>> project(RandomStream& rng) {
        prepare();
        double probs[3];
        engine::site_probabilities(scratch_, joint_, ancilla_, probs);
        const int j = engine::sample_outcome(probs, 3, rng);
        engine::collapse_site(scratch_, joint_, ancilla_, j, probs[j]);
        // Ancilla is the slowest index, so the surviving block is contiguous.
        const auto begin = scratch_.begin() + static_cast<std::ptrdiff_t>(j * main_dim_);
        return {j, std::vector<cplx>(begin, begin + static_cast<std::ptrdiff_t>(main_dim_))};
    }

  private:
    SiteDims joint_;
    int ancilla_;
    std::size_t main_dim_;
    std::vector<cplx> psi_;
    engine::EmbedPlan plan_level1_;
    engine::EmbedPlan plan_level2_;
    CMatrix qft3_dag_;
    std::vector<cplx> scratch_;
};

int qpe_outcome_to_lambda(int outcome) {
    // Readout list: |0> <-> lambda 0, |1> <-> lambda -1, |2> <-> lambda +1.
    return outcome == 0 ? 0 : (outcome == 1 ? -1 : +1);
}

}  // namespace

void to_json(nlohmann::json& j, const EstimateReport& r) {
    const char* method = "exact";
    switch (r.method) {
        case EstimatorMethod::hadamard:
            method = "hadamard";
            break;
        case EstimatorMethod::direct:
            method = "direct";
            break;
        case EstimatorMethod::qpe:
            method = "qpe";
            break;
        case EstimatorMethod::exact:
            break;
    }
    j = nlohmann::json{{"method", method},
                       {"observable", r.observable == EstimatedObservable::chi ? "chi" : "chi2"},
                       {"estimate", r.estimate},
                       {"std_error", r.std_error},
                       {"shots", r.shots},
                       {"flags", r.flags}};
}

void to_json(nlohmann::json& j, const CostModel& c) {
    j = nlohmann::json{{"epsilon", c.epsilon},
                       {"direct_preps", c.direct_preps},
                       {"hadamard_preps", c.hadamard_preps},
                       {"direct_measurements", c.direct_measurements},
                       {"hadamard_measurements", c.hadamard_measurements},
                       {"ratio_preps", c.prep_ratio},
                       {"ratio_meas", c.measurement_ratio}};
}

ShotRecord hadamard_test(const QRegister& reg, const SiteTrio& trio, MeasureBasis basis,
                         long shots, RandomStream& rng) {
    check_qubit_register(reg, trio);
    require(basis == MeasureBasis::x || basis == MeasureBasis::y,
            "hadamard_test: basis must be x or y");
    require(shots > 0, "hadamard_test: need at least one shot");

    HadamardEngine circuit(reg, trio);
    // Key the shot substreams off one draw so repeated calls on the same
    // handle see fresh randomness.
    const RandomStream base = rng.substream(rng.next_u64());
    ShotRecord record;
    record.basis = basis;
    record.seed = base.seed();
    record.stream = base.stream_id();
    record.outcomes.resize(static_cast<std::size_t>(shots));
    for (long s = 0; s < shots; ++s) {
        RandomStream shot_rng = base.substream(static_cast<std::uint64_t>(s));
        record.outcomes[static_cast<std::size_t>(s)] = circuit.run_shot(basis, shot_rng);
    }
    return record;
}

double hadamard_exact(const QRegister& reg, const SiteTrio& trio, MeasureBasis basis) {
    check_qubit_register(reg, trio);
    require(basis == MeasureBasis::x || basis == MeasureBasis::y,
            "hadamard_exact: basis must be x or y");
    HadamardEngine circuit(reg, trio);
    return circuit.exact(basis);
}

EstimateReport chirality_from_hadamard(const ShotRecord& record) {
    require(!record.outcomes.empty(), "chirality_from_hadamard: empty record");
    require(record.basis == MeasureBasis::x || record.basis == MeasureBasis::y,
            "chirality_from_hadamard: record must be X- or Y-basis");
    const double mean = sample_mean(record.outcomes);
    const double sd = sample_std(record.outcomes, mean);
    const double root_shots = std::sqrt(static_cast<double>(record.outcomes.size()));

    EstimateReport out;
    out.shots = static_cast<long>(record.outcomes.size());
    out.method = EstimatorMethod::hadamard;
    if (record.basis == MeasureBasis::y) {
        const double c = 2.0 / std::sqrt(3.0);
        out.observable = EstimatedObservable::chi;
        out.estimate = -c * mean;
        out.std_error = c * sd / root_shots;
        if (std::abs(out.estimate) > 1.0) {
            out.flags.push_back("out_of_range");
        }
    } else {
        out.observable = EstimatedObservable::chi_squared;
        out.estimate = (2.0 / 3.0) * (1.0 - mean);
        out.std_error = (2.0 / 3.0) * sd / root_shots;
        if (out.estimate < 0.0 || out.estimate > 1.0) {
            out.flags.push_back("out_of_range");
        }
    }
    return out;
}

EstimateReport direct_estimator(const QRegister& reg, const SiteTrio& trio, long shots_total,
                                RandomStream& rng) {
    check_qubit_register(reg, trio);
    require(shots_total > 0, "direct_estimator: need at least one shot");
    const long per_string = (shots_total + 5) / 6;  // pad up to a multiple of 6

    const auto strings = chirality_pauli_expansion();
    const std::vector<cplx> psi(reg.amps().begin(), reg.amps().end());
    const engine::EmbedPlan trio_plan(reg.dims(), trio.site_vector());
    const RandomStream base = rng.substream(rng.next_u64());

    std::vector<cplx> scratch(psi.size());
    std::vector<double> probs(trio_plan.block_dim());
    double estimate = 0.0;
    double variance = 0.0;
    std::uint64_t shot_key = 0;
    for (const auto& str : strings) {
        std::vector<int> products(static_cast<std::size_t>(per_string));
        for (long s = 0; s < per_string; ++s) {
            RandomStream shot_rng = base.substream(shot_key++);
            std::copy(psi.begin(), psi.end(), scratch.begin());
            for (std::size_t slot = 0; slot < 3; ++slot) {
                const int site = trio.sites()[slot];
                switch (str.letters[slot]) {
                    case PauliLetter::X:
                        engine::apply_single_site(scratch, reg.dims(), site, hadamard_gate());
                        break;
                    case PauliLetter::Y:
                        engine::apply_single_site(scratch, reg.dims(), site, y_rotation_gate());
                        break;
                    default:
                        break;
                }
            }
            // One draw from the joint trio distribution; identical in law
            // to measuring the three qubits one after another.
            trio_plan.joint_probabilities(scratch, probs.data());
            const int joint = engine::sample_outcome(probs.data(), 8, shot_rng);
            const int parity = __builtin_popcount(static_cast<unsigned>(joint)) & 1;
            products[static_cast<std::size_t>(s)] = 1 - 2 * parity;
        }
        const double mean = sample_mean(products);
        const double sd = sample_std(products, mean);
        estimate += str.coefficient * mean;
        variance += str.coefficient * str.coefficient * sd * sd / static_cast<double>(per_string);
    }

    EstimateReport out;
    out.estimate = estimate;
    out.std_error = std::sqrt(variance);
    out.shots = 6 * per_string;
    out.method = EstimatorMethod::direct;
    out.observable = EstimatedObservable::chi;
    if (std::abs(out.estimate) > 1.0) {
        out.flags.push_back("out_of_range");
    }
    return out;
}

QpeReport qutrit_qpe(const QRegister& reg, const SiteTrio& trio, long shots, RandomStream& rng) {
    check_qubit_register(reg, trio);
    require(shots > 0, "qutrit_qpe: need at least one shot");

    QpeEngine circuit(reg, trio);
    const RandomStream base = rng.substream(rng.next_u64());
    QpeReport report;
    report.record.basis = MeasureBasis::computational;
    report.record.seed = base.seed();
    report.record.stream = base.stream_id();
    report.record.outcomes.resize(static_cast<std::size_t>(shots));
    for (long s = 0; s < shots; ++s) {
        RandomStream shot_rng = base.substream(static_cast<std::uint64_t>(s));
        const int outcome = circuit.run_shot(shot_rng);
        report.record.outcomes[static_cast<std::size_t>(s)] = outcome;
        ++report.histogram[static_cast<std::size_t>(outcome)];
    }
    report.exact_probabilities = circuit.probabilities();
    report.p2_minus_p1 = static_cast<double>(report.histogram[2] - report.histogram[1]) /
                         static_cast<double>(shots);
    return report;
}

std::array<double, 3> qpe_exact_probabilities(const QRegister& reg, const SiteTrio& trio) {
    check_qubit_register(reg, trio);
    QpeEngine circuit(reg, trio);
    return circuit.probabilities();
}

QpeProjection qpe_project(const QRegister& reg, const SiteTrio& trio, RandomStream& rng) {
    check_qubit_register(reg, trio);
    QpeEngine circuit(reg, trio);
    auto [outcome, amps] = circuit.project(rng);
    return QpeProjection{qpe_outcome_to_lambda(outcome),
                         QRegister::from_normalized(reg.dims(), std::move(amps))};
}

double exact_chirality(const QRegister& reg, const SiteTrio& trio) {
    check_qubit_register(reg, trio);
    static const DenseOperator chi = chirality_matrix();
    return expectation(reg, chi, trio.site_vector());
}

CostModel cost_model(double epsilon) {
    require(epsilon > 0.0 && epsilon < 1.0, "cost_model: epsilon must lie in (0, 1)");
    CostModel c;
    c.epsilon = epsilon;
    const double eps2 = epsilon * epsilon;
    c.direct_preps = static_cast<long>(std::ceil(3.0 / eps2));
    c.hadamard_preps = static_cast<long>(std::ceil(4.0 / (3.0 * eps2)));
    c.direct_measurements = 3 * c.direct_preps;
    c.hadamard_measurements = c.hadamard_preps;
    c.prep_ratio = 9.0 / 4.0;
    c.measurement_ratio = 27.0 / 4.0;
    return c;
}

}  // namespace chiralsim
