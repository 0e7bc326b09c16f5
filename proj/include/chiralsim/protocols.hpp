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
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "chiralsim/qstate.hpp"
#include "chiralsim/rng.hpp"
#include "chiralsim/states.hpp"

namespace chiralsim {

// Measurement conventions, fixed here for every protocol:
//   * X-basis readout: apply H to the ancilla/site, then measure
//     computationally (HZH = X);
//   * Y-basis readout: apply H.Sdag, then measure (HSdag Y (HSdag)+ = Z);
//   * computational outcome b maps to the eigenvalue +1 (b=0) or -1 (b=1).
// The same table drives the direct estimator's per-letter rotations
// (X -> H, Y -> H.Sdag, Z -> none).
//
// With U = exp_chirality(2*pi/3) in the Hadamard test these give
//   <chi>   = -(2/sqrt3) <Y>_ancilla,
//   <chi^2> = (2/3) (1 - <X>_ancilla).
//
// Every sampled shot re-prepares the working register from the input state;
// no amplitudes survive from one shot to the next. Each shot draws from its
// own RNG substream, so results are independent of any loop schedule.

enum class MeasureBasis { x, y, computational };
enum class EstimatorMethod { hadamard, direct, qpe, exact };
enum class EstimatedObservable { chi, chi_squared };

/// Raw ancilla outcomes of one sampling run.
struct ShotRecord {
    MeasureBasis basis = MeasureBasis::computational;
    std::vector<int> outcomes;  // +-1 for x/y, 0/1/2 for computational
    std::uint64_t seed = 0;     // stream identity the run was keyed with
    std::uint64_t stream = 0;
};

/// Post-processed estimate. Out-of-range values (an estimate beyond the
/// observable's spectrum) are reported as-is and flagged, never clipped.
struct EstimateReport {
    double estimate = 0.0;
    double std_error = 0.0;
    long shots = 0;
    EstimatorMethod method = EstimatorMethod::exact;
    EstimatedObservable observable = EstimatedObservable::chi;
    std::vector<std::string> flags;
};

void to_json(nlohmann::json& j, const EstimateReport& r);

/// Worst-case trial counts for target precision epsilon, plus the
/// comparison ratios (9/4 preparations, 27/4 single-qubit measurements).
struct CostModel {
    double epsilon = 0.0;
    long direct_preps = 0;
    long hadamard_preps = 0;
    long direct_measurements = 0;
    long hadamard_measurements = 0;
    double prep_ratio = 2.25;
    double measurement_ratio = 6.75;
};

void to_json(nlohmann::json& j, const CostModel& c);

// ---------------------------------------------------------------------------
// Hadamard test (ancilla qubit controlling exp_chirality(2*pi/3))

/// Sample `shots` ancilla outcomes in the requested basis (x or y). The input
/// register must be all-qubit with at least 3 sites.
ShotRecord hadamard_test(const QRegister& reg, const SiteTrio& trio, MeasureBasis basis,
                         long shots, RandomStream& rng);

/// Infinite-shot ancilla expectation <X> or <Y>, computed from amplitudes.
double hadamard_exact(const QRegister& reg, const SiteTrio& trio, MeasureBasis basis);

/// Invert the readout map: a Y record estimates <chi>, an X record <chi^2>.
EstimateReport chirality_from_hadamard(const ShotRecord& record);

// ---------------------------------------------------------------------------
// Direct Pauli-basis estimator

/// Split shots_total evenly over the six expansion strings (padded up to a
/// multiple of 6), rotate the trio into each string's eigenbasis, measure,
/// and recombine with the +-1/(2 sqrt3) weights.
EstimateReport direct_estimator(const QRegister& reg, const SiteTrio& trio, long shots_total,
                                RandomStream& rng);

// ---------------------------------------------------------------------------
// Single-qutrit quantum phase estimation

/// Ancilla outcome j reports eigenvalue lambda: 0 -> 0, 1 -> -1, 2 -> +1,
/// and <chi> = P2 - P1.
struct QpeReport {
    ShotRecord record;  // computational outcomes in {0,1,2}
    std::array<long, 3> histogram{0, 0, 0};
    std::array<double, 3> exact_probabilities{0.0, 0.0, 0.0};
    double p2_minus_p1 = 0.0;  // sampled
};

QpeReport qutrit_qpe(const QRegister& reg, const SiteTrio& trio, long shots, RandomStream& rng);

std::array<double, 3> qpe_exact_probabilities(const QRegister& reg, const SiteTrio& trio);

/// One projective QPE shot: the main register collapses onto the chirality
/// eigenspace selected by the ancilla outcome (an exact eigenstate of the
/// trio's chirality up to numerical noise).
struct QpeProjection {
    int lambda = 0;
    QRegister state;
};

QpeProjection qpe_project(const QRegister& reg, const SiteTrio& trio, RandomStream& rng);

// ---------------------------------------------------------------------------

/// Exact <chi> at a trio (the dense-expectation oracle path).
double exact_chirality(const QRegister& reg, const SiteTrio& trio);

/// Worst-case trial counts: direct 3/eps^2 preparations (3 measurements
/// each), Hadamard 4/(3 eps^2) preparations (1 measurement each).
CostModel cost_model(double epsilon);

}  // namespace chiralsim
