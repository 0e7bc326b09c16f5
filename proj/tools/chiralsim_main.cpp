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

// Experiment harness. Every command writes a single CSV or JSON file that
// embeds the tool version, the full configuration, and the seed, so a rerun
// with the same arguments is byte-identical.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "chiralsim/entanglement.hpp"
#include "chiralsim/error.hpp"
#include "chiralsim/hamiltonian.hpp"
#include "chiralsim/protocols.hpp"
#include "chiralsim/qstate.hpp"
#include "chiralsim/states.hpp"
#include "chiralsim/version.hpp"

namespace {

using namespace chiralsim;
using nlohmann::json;

std::string g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// 1-based partition blocks, e.g. "1;2;3,4,5" (sites comma-separated,
/// blocks semicolon-separated). Must cover every site exactly once.
TripartitionSpec parse_partition(const std::string& text, int n_sites) {
    std::vector<std::vector<int>> blocks;
    std::stringstream ss(text);
    std::string block_text;
    while (std::getline(ss, block_text, ';')) {
        std::vector<int> block;
        std::stringstream bs(block_text);
        std::string item;
        while (std::getline(bs, item, ',')) {
            try {
                block.push_back(std::stoi(item) - 1);
            } catch (const std::exception&) {
                fail("--fill-partition expects 1-based integers, got: " + text);
            }
        }
        blocks.push_back(std::move(block));
    }
    require(blocks.size() == 3, "--fill-partition expects three ';'-separated blocks");
    TripartitionSpec p;
    p.blocks = {blocks[0], blocks[1], blocks[2]};
    p.validate(n_sites);
    return p;
}

/// 1-based "a,b,c" site list from the command line.
SiteTrio parse_sites(const std::string& text) {
    std::vector<int> sites;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            sites.push_back(std::stoi(item));
        } catch (const std::exception&) {
            fail("--sites expects three comma-separated integers, got: " + text);
        }
    }
    require(sites.size() == 3, "--sites expects exactly three sites, got: " + text);
    for (int s : sites) {
        require(s >= 1, "--sites are 1-based; site indices must be positive");
    }
    return SiteTrio{sites[0] - 1, sites[1] - 1, sites[2] - 1};
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), "cannot open output file: " + path);
    out << body;
    require(out.good(), "failed writing output file: " + path);
}

std::string csv_preamble(const std::string& command, const json& config, std::uint64_t seed) {
    std::string s;
    s += std::string("# chiralsim ") + kVersion + "\n";
    s += "# command: " + command + "\n";
    s += "# config: " + config.dump() + "\n";
    s += "# seed: " + std::to_string(seed) + "\n";
    return s;
}

json json_meta(const std::string& command, const json& config, std::uint64_t seed) {
    return json{{"tool", "chiralsim"},
                {"version", kVersion},
                {"command", command},
                {"config", config},
                {"seed", seed}};
}

// ---------------------------------------------------------------------------

struct Figure2Options {
    int n_min = 3;
    int n_max = 10;
    long shots = 10000;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
    std::string fill_partition;  // empty: {trio1}, {trio2}, {rest}
};

void run_figure2(const Figure2Options& o) {
    require(o.n_min >= 3 && o.n_min <= o.n_max && o.n_max <= 12,
            "figure2: need 3 <= n-min <= n-max <= 12");
    require(o.format == "csv" || o.format == "json", "figure2: format must be csv or json");

    const json config{{"n_min", o.n_min},   {"n_max", o.n_max}, {"shots", o.shots},
                      {"seed", o.seed},     {"format", o.format}, {"out", o.out},
                      {"fill_partition", o.fill_partition}};

    struct Row {
        int n;
        MaxChirality best;
        double exact;
        EstimateReport report;
        double fill;
        bool witness;
    };
    std::vector<Row> rows;
    for (int n = o.n_min; n <= o.n_max; ++n) {
        const MaxChirality best = max_spin_wave_chirality(n);
        const QRegister psi = spin_wave(best.spec);
        const double exact = exact_chirality(psi, best.trio);
        // One stream per row, keyed by N, so a row is reproducible
        // independently of the sweep range.
        RandomStream stream(o.seed, static_cast<std::uint64_t>(n));
        const auto record = hadamard_test(psi, best.trio, MeasureBasis::y, o.shots, stream);
        const auto report = chirality_from_hadamard(record);
        const TripartitionSpec partition =
            o.fill_partition.empty() ? TripartitionSpec::around_trio(best.trio, n)
                                     : parse_partition(o.fill_partition, n);
        const double fill = concurrence_fill(psi, partition);
        // The witness column grades the analytic value; sampled estimates
        // would flicker at the 1/sqrt3 boundary (N = 4 sits exactly on it).
        rows.push_back(Row{n, best, exact, report, fill, witness_check(best.value)});
    }

    if (o.format == "csv") {
        std::string body = csv_preamble("figure2", config, o.seed);
        body +=
            "n,mode,site1,site2,site3,analytic_max_chi,exact_chi,hadamard_estimate,"
            "hadamard_std_error,concurrence_fill,witness\n";
        for (const auto& r : rows) {
            body += std::to_string(r.n) + "," + std::to_string(r.best.spec.mode) + "," +
                    std::to_string(r.best.trio.n1 + 1) + "," + std::to_string(r.best.trio.n2 + 1) +
                    "," + std::to_string(r.best.trio.n3 + 1) + "," + g12(r.best.value) + "," +
                    g12(r.exact) + "," + g12(r.report.estimate) + "," + g12(r.report.std_error) +
                    "," + g12(r.fill) + "," + (r.witness ? "1" : "0") + "\n";
        }
        write_text_file(o.out, body);
        return;
    }

    json jrows = json::array();
    for (const auto& r : rows) {
        jrows.push_back(json{{"n", r.n},
                             {"mode", r.best.spec.mode},
                             {"sites", {r.best.trio.n1 + 1, r.best.trio.n2 + 1, r.best.trio.n3 + 1}},
                             {"analytic_max_chi", r.best.value},
                             {"exact_chi", r.exact},
                             {"hadamard_estimate", r.report.estimate},
                             {"hadamard_std_error", r.report.std_error},
                             {"concurrence_fill", r.fill},
                             {"witness", r.witness}});
    }
    json doc = json_meta("figure2", config, o.seed);
    doc["rows"] = std::move(jrows);
    write_text_file(o.out, doc.dump(2) + "\n");
}

// ---------------------------------------------------------------------------

struct Figure3Options {
    int n = 10;
    double j = 1.0;
    double bprime = -0.1;
    double b_start = 0.0;
    double b_end = 1.0;
    int b_steps = 21;
    std::string sites = "1,4,9";
    long shots = 10000;
    std::uint64_t seed = 1;
    std::string out;
};

void run_figure3(const Figure3Options& o) {
    require(o.b_steps >= 1, "figure3: need at least one B grid point");
    const SiteTrio trio = parse_sites(o.sites);
    trio.validate(o.n);

    const json config{{"n", o.n},       {"j", o.j},     {"bprime", o.bprime},
                      {"b_start", o.b_start}, {"b_end", o.b_end}, {"b_steps", o.b_steps},
                      {"sites", o.sites},     {"shots", o.shots}, {"seed", o.seed},
                      {"out", o.out}};

    // DM coupling from the spiral-pitch relation tan(theta) = D/J with one
    // full turn around the ring.
    const double d = o.j * std::tan(2.0 * SpinWaveSpec::kPi / o.n);

    std::string body = csv_preamble("figure3", config, o.seed);
    body += "b,exact_chi,hadamard_estimate,hadamard_std_error";
    for (int s = 1; s <= o.n; ++s) {
        body += ",sx_" + std::to_string(s) + ",sy_" + std::to_string(s) + ",sz_" +
                std::to_string(s);
    }
    body += "\n";

    for (int i = 0; i < o.b_steps; ++i) {
        const double b = o.b_steps == 1
                             ? o.b_start
                             : o.b_start + (o.b_end - o.b_start) * i / (o.b_steps - 1);
        HamiltonianParams params;
        params.n_sites = o.n;
        params.j = o.j;
        params.d = d;
        params.b = b;
        params.bprime = o.bprime;
        const SpectrumResult solved = ground_state(params);

        const double exact = exact_chirality(solved.ground_state, trio);
        RandomStream stream(o.seed, static_cast<std::uint64_t>(i));
        const auto report = chirality_from_hadamard(
            hadamard_test(solved.ground_state, trio, MeasureBasis::y, o.shots, stream));
        const auto texture = local_spin_texture(solved.ground_state);

        body += g12(b) + "," + g12(exact) + "," + g12(report.estimate) + "," +
                g12(report.std_error);
        for (const auto& s : texture) {
            body += "," + g12(s[0]) + "," + g12(s[1]) + "," + g12(s[2]);
        }
        body += "\n";
    }
    write_text_file(o.out, body);
}

// ---------------------------------------------------------------------------

struct QpeOptions {
    std::string state_file;
    std::string sites = "1,2,3";
    long shots = 10000;
    std::uint64_t seed = 1;
    std::string out;
    bool project = false;
    std::string project_out;
};

void run_qpe(const QpeOptions& o) {
    const QRegister reg = load_state_json(o.state_file);
    const SiteTrio trio = parse_sites(o.sites);
    trio.validate(reg.n_sites());

    const json config{{"state_file", o.state_file}, {"sites", o.sites}, {"shots", o.shots},
                      {"seed", o.seed},             {"out", o.out},     {"project", o.project}};

    RandomStream stream(o.seed, 0);
    const QpeReport report = qutrit_qpe(reg, trio, o.shots, stream);

    json doc = json_meta("qpe", config, o.seed);
    doc["shots"] = o.shots;
    doc["histogram"] = json{{"0", report.histogram[0]},
                            {"1", report.histogram[1]},
                            {"2", report.histogram[2]}};
    doc["p2_minus_p1"] = report.p2_minus_p1;
    doc["exact_probabilities"] = report.exact_probabilities;
    doc["exact_chi"] = exact_chirality(reg, trio);

    if (o.project) {
        const std::string state_path =
            o.project_out.empty() ? o.out + ".projected-state.json" : o.project_out;
        const QpeProjection proj = qpe_project(reg, trio, stream);
        save_state_json(proj.state, state_path);
        doc["projection"] = json{{"lambda", proj.lambda}, {"state_file", state_path}};
    }
    write_text_file(o.out, doc.dump(2) + "\n");
}

// ---------------------------------------------------------------------------

struct HadamardOptions {
    std::string state_file;
    std::string sites = "1,2,3";
    std::string basis = "y";
    long shots = 10000;
    std::uint64_t seed = 1;
    std::string out;
};

void run_hadamard(const HadamardOptions& o) {
    const QRegister reg = load_state_json(o.state_file);
    const SiteTrio trio = parse_sites(o.sites);
    trio.validate(reg.n_sites());
    require(o.basis == "x" || o.basis == "y", "hadamard: basis must be x or y");
    const MeasureBasis basis = o.basis == "x" ? MeasureBasis::x : MeasureBasis::y;

    const json config{{"state_file", o.state_file}, {"sites", o.sites}, {"basis", o.basis},
                      {"shots", o.shots},           {"seed", o.seed},   {"out", o.out}};

    RandomStream stream(o.seed, 0);
    const ShotRecord record = hadamard_test(reg, trio, basis, o.shots, stream);
    const EstimateReport report = chirality_from_hadamard(record);

    double raw_mean = 0.0;
    for (int v : record.outcomes) {
        raw_mean += v;
    }
    raw_mean /= static_cast<double>(record.outcomes.size());

    json doc = json_meta("hadamard", config, o.seed);
    doc["report"] = report;
    doc["raw_mean"] = raw_mean;
    doc["exact_basis_mean"] = hadamard_exact(reg, trio, basis);
    doc["exact_chi"] = exact_chirality(reg, trio);
    write_text_file(o.out, doc.dump(2) + "\n");
}

// ---------------------------------------------------------------------------

struct CostOptions {
    double epsilon = 0.1;
    std::string out;
};

void run_cost(const CostOptions& o) {
    const json config{{"epsilon", o.epsilon}, {"out", o.out}};
    const CostModel model = cost_model(o.epsilon);
    json doc = json_meta("cost", config, 0);
    doc["cost"] = model;
    write_text_file(o.out, doc.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chiralsim: scalar spin chirality measurement schemes on a state-vector simulator"};
    app.require_subcommand(1);

    Figure2Options f2;
    auto* figure2 = app.add_subcommand(
        "figure2", "Spin-wave chirality sweep over ring sizes (analytic, exact, sampled)");
    figure2->add_option("--n-min", f2.n_min, "smallest ring size")->capture_default_str();
    figure2->add_option("--n-max", f2.n_max, "largest ring size")->capture_default_str();
    figure2->add_option("--shots", f2.shots, "Hadamard-test shots per ring size")
        ->capture_default_str();
    figure2->add_option("--seed", f2.seed, "RNG seed")->capture_default_str();
    figure2->add_option("--out", f2.out, "output file")->required();
    figure2->add_option("--format", f2.format, "csv or json")->capture_default_str();
    figure2->add_option("--fill-partition", f2.fill_partition,
                        "tripartition for the concurrence fill, 1-based blocks like 1;2;3,4,5 "
                        "(default: first two trio sites vs the rest)");
    figure2->callback([&f2] { run_figure2(f2); });

    Figure3Options f3;
    auto* figure3 = app.add_subcommand(
        "figure3", "Chirality of the DM-ring ground state across a magnetic-field sweep");
    figure3->add_option("--n", f3.n, "ring size")->capture_default_str();
    figure3->add_option("--j", f3.j, "exchange coupling J")->capture_default_str();
    figure3->add_option("--bprime", f3.bprime, "local x field on site 1")->capture_default_str();
    figure3->add_option("--b-start", f3.b_start, "first B value")->capture_default_str();
    figure3->add_option("--b-end", f3.b_end, "last B value")->capture_default_str();
    figure3->add_option("--b-steps", f3.b_steps, "number of B grid points")->capture_default_str();
    figure3->add_option("--sites", f3.sites, "1-based trio, e.g. 1,4,9")->capture_default_str();
    figure3->add_option("--shots", f3.shots, "Hadamard-test shots per grid point")
        ->capture_default_str();
    figure3->add_option("--seed", f3.seed, "RNG seed")->capture_default_str();
    figure3->add_option("--out", f3.out, "output CSV file")->required();
    figure3->callback([&f3] { run_figure3(f3); });

    QpeOptions qp;
    auto* qpe = app.add_subcommand("qpe",
                                   "Single-qutrit phase estimation of the chirality eigenvalue");
    qpe->add_option("--state-file", qp.state_file, "input state JSON")->required();
    qpe->add_option("--sites", qp.sites, "1-based trio")->capture_default_str();
    qpe->add_option("--shots", qp.shots, "QPE shots")->capture_default_str();
    qpe->add_option("--seed", qp.seed, "RNG seed")->capture_default_str();
    qpe->add_option("--out", qp.out, "output JSON file")->required();
    qpe->add_flag("--project", qp.project, "also run one projective shot and save the state");
    qpe->add_option("--project-out", qp.project_out,
                    "path for the projected state (default: <out>.projected-state.json)");
    qpe->callback([&qp] { run_qpe(qp); });

    HadamardOptions hd;
    auto* hadamard = app.add_subcommand("hadamard", "Hadamard-test estimate on a stored state");
    hadamard->add_option("--state-file", hd.state_file, "input state JSON")->required();
    hadamard->add_option("--sites", hd.sites, "1-based trio")->capture_default_str();
    hadamard->add_option("--basis", hd.basis, "ancilla basis: y estimates chi, x estimates chi^2")
        ->capture_default_str();
    hadamard->add_option("--shots", hd.shots, "shots")->capture_default_str();
    hadamard->add_option("--seed", hd.seed, "RNG seed")->capture_default_str();
    hadamard->add_option("--out", hd.out, "output JSON file")->required();
    hadamard->callback([&hd] { run_hadamard(hd); });

    CostOptions co;
    auto* cost = app.add_subcommand("cost", "Worst-case trial counts for a target precision");
    cost->add_option("--epsilon", co.epsilon, "target precision in (0,1)")->required();
    cost->add_option("--out", co.out, "output JSON file")->required();
    cost->callback([&co] { run_cost(co); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const chiralsim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
