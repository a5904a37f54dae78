// Copyright 2026 icmc contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// End-to-end acceptance suite. Each case prints one pass/fail line with its
// runtime so the whole contract is auditable from the test log.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "icm/database.hpp"
#include "icm/geometry.hpp"
#include "icm/simulator.hpp"
#include "icm/transform.hpp"
#include "oracles.hpp"

using namespace icm;

namespace {

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int criterion, const char* what, bool ok, double seconds) {
    std::printf("[criterion %d] %-52s %s  (%.2fs)\n", criterion, what, ok ? "PASS" : "FAIL",
                seconds);
    CHECK_MESSAGE(ok, what);
}

Unitary from_oracle(const oracle::Mat& m) {
    Unitary u;
    u.dim = static_cast<int>(m.size());
    u.m.resize(m.size() * m.size());
    for (int i = 0; i < u.dim; ++i) {
        for (int j = 0; j < u.dim; ++j) {
            u.at(i, j) = m[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
    }
    return u;
}

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
        double x = std::log(xs[i]), y = std::log(ys[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

const std::vector<std::pair<std::string, int>> kHighLevelGates = {
    {"toffoli", 3}, {"cv", 2}, {"HGATE", 1}, {"PGATE", 1}, {"TGATE", 1}, {"CNOT", 2}};

}  // namespace

TEST_CASE("criterion 1: single-T .circ format fidelity") {
    Stopwatch sw;
    Database db = seed_database();
    Circuit c = parse_gate_list("tgate 1\n", db);
    IcmCircuit icm = convert_to_icm(c, db, {});
    icm = inline_distillation(icm, db, {});
    bool ok = to_circ(icm.circuit) == "init 2 A\ncnot 2 1\nmeasure 1 Z\n";
    double t = sw.seconds();
    report(1, "single T emits the exact three-line .circ", ok && t < 1.0, t);
}

TEST_CASE("criterion 2: primal-primal CNOT geometry golden") {
    Stopwatch sw;
    Database db = seed_database();
    Circuit c = parse_gate_list("cnot 1 2\n", db);
    IcmCircuit icm = convert_to_icm(c, db, {});
    GeometryDesc g = generate_geometry(icm);

    const std::vector<std::array<int, 4>> golden = {
        {1, 0, 0, 0},   {2, 0, 0, 2},   {3, 0, 0, 1},   {4, 0, 6, 0},   {5, 0, 6, 2},
        {6, 0, 8, 0},   {7, 0, 8, 2},   {8, 0, 12, 0},  {9, 0, 12, 2},  {10, 0, 12, 1},
        {11, 2, 0, 0},  {12, 2, 0, 2},  {13, 2, 0, 1},  {14, 2, 12, 0}, {15, 2, 12, 2},
        {16, 2, 12, 1}, {17, -1, 9, 1}, {18, -1, 5, 1}, {19, 1, 5, 1},  {20, 1, 5, -1},
        {21, 3, 5, -1}, {22, 3, 5, 1},  {23, 3, 9, 1},
    };
    bool ok = g.config_count() == 4 && g.points.size() == 23 && g.segments.size() == 23;
    std::map<int, char> io;
    for (const ConfigPoint& cp : g.config_points) {
        io[cp.point_id] = cp.io == IoType::Input ? 'i' : 'o';
    }
    ok = ok && io == std::map<int, char>{{3, 'i'}, {10, 'i'}, {13, 'o'}, {16, 'o'}};
    if (ok) {
        int dx = g.points[0].x - golden[0][1];
        int dy = g.points[0].y - golden[0][2];
        int dz = g.points[0].z - golden[0][3];
        ok = dx % 2 == 0 && dy % 2 == 0 && dz % 2 == 0;
        for (size_t i = 0; i < golden.size() && ok; ++i) {
            ok = g.points[i].id == golden[i][0] && g.points[i].x == golden[i][1] + dx &&
                 g.points[i].y == golden[i][2] + dy && g.points[i].z == golden[i][3] + dz;
        }
    }
    double t = sw.seconds();
    report(2, "CNOT .geom counts, io list and coordinates", ok && t < 1.0, t);
}

TEST_CASE("criterion 3: decomposition correctness against the oracle") {
    Stopwatch sw;
    Database db = seed_database();
    bool ok = true;

    {  // Toffoli entry
        Circuit c;
        c.qubit_count = 3;
        c.gates.push_back(GateOp{"toffoli", {1, 2, 3}});
        Circuit prim = expand_nicm(c, db);
        Unitary got = circuit_unitary(prim, {}, {1, 2, 3}, {1, 2, 3});
        ok &= phase_fidelity(from_oracle(oracle::analytic_toffoli()), got) >= 1.0 - 1e-9;
    }
    {  // controlled-V entry
        Circuit c;
        c.qubit_count = 2;
        c.gates.push_back(GateOp{"cv", {1, 2}});
        Circuit prim = expand_nicm(c, db);
        Unitary got = circuit_unitary(prim, {}, {1, 2}, {1, 2});
        ok &= phase_fidelity(from_oracle(oracle::analytic_cv()), got) >= 1.0 - 1e-9;
    }
    {  // ICM Hadamard: three teleportations, trivial outcomes, frame on
        Circuit c;
        c.qubit_count = 1;
        c.gates.push_back(GateOp{"HGATE", {1}});
        IcmCircuit icm = convert_to_icm(c, db, {});
        OutcomeAssignment zeros;
        for (const auto& [q, m] : icm.circuit.measurements) zeros.fixed[q] = 0;
        Unitary got = circuit_unitary(icm, zeros, true);
        const double s = std::numbers::sqrt2 / 2;
        Unitary want = Unitary::identity(2);
        want.at(0, 0) = s;
        want.at(0, 1) = s;
        want.at(1, 0) = s;
        want.at(1, 1) = -s;
        ok &= phase_fidelity(want, got) >= 1.0 - 1e-9;
    }
    {  // simple and deterministic T blocks at their appropriate outcomes
        Unitary want = Unitary::identity(2);
        want.at(1, 1) = std::polar(1.0, std::numbers::pi / 4);
        Circuit c;
        c.qubit_count = 1;
        c.gates.push_back(GateOp{"TGATE", {1}});
        for (TeleportMode mode : {TeleportMode::Simple, TeleportMode::Deterministic}) {
            ConversionOptions opts;
            opts.teleport_mode = mode;
            IcmCircuit icm = convert_to_icm(c, db, opts);
            Unitary got = circuit_unitary(icm, appropriate_outcomes(icm), true);
            ok &= phase_fidelity(want, got) >= 1.0 - 1e-9;
        }
    }
    double t = sw.seconds();
    report(3, "Toffoli, CV, ICM-H and T blocks match the oracle", ok && t < 10.0, t);
}

TEST_CASE("criterion 4: linear resource scaling over random circuits") {
    Stopwatch sw;
    Database db = seed_database();
    std::mt19937_64 rng(404);
    bool ok = true;
    for (int i = 0; i < 100; ++i) {
        Circuit high = oracle::random_circuit(rng, 5, 20, kHighLevelGates);
        Circuit prim = expand_nicm(high, db);
        int t = 0, h = 0, p = 0;
        for (const GateOp& g : prim.gates) {
            t += g.name == "TGATE" || g.name == "TDAG";
            h += g.name == "HGATE";
            p += g.name == "PGATE" || g.name == "PDAG";
        }
        ConversionOptions opts;
        opts.teleport_mode = i % 2 ? TeleportMode::Deterministic : TeleportMode::Simple;
        IcmCircuit icm = convert_to_icm(prim, db, opts);
        ok &= icm.circuit.qubit_count <= prim.qubit_count + 5 * t + 3 * h + p + 1;
        ok &= icm.circuit.gates.size() <= 6 * prim.gates.size();
    }
    double t = sw.seconds();
    report(4, "qubits <= q+5T+3H+P+1 and gates <= 6n on 100 circuits", ok && t < 30.0, t);
}

TEST_CASE("criterion 5: T-depth is preserved for controlled-V") {
    Stopwatch sw;
    Database db = seed_database();
    Circuit c;
    c.qubit_count = 2;
    c.gates.push_back(GateOp{"cv", {1, 2}});
    Circuit prim = expand_nicm(c, db);
    CircuitStats in = compute_stats(prim);
    IcmCircuit icm = convert_to_icm(prim, db, {});
    CircuitStats out = compute_stats(icm);
    bool ok = in.t_count == 3 && in.t_depth == 2 && out.t_depth == 2;
    double t = sw.seconds();
    report(5, "controlled-V: t_count 3, t_depth 2, ICM depth 2", ok && t < 1.0, t);
}

TEST_CASE("criterion 6: distillation error suppression O(p) -> O(p^3)") {
    Stopwatch sw;
    Database db = seed_database();
    const std::vector<double> ps = {0.002, 0.005, 0.01};
    bool ok = true;
    for (MagicKind kind : {MagicKind::Y, MagicKind::A}) {
        DistillationResult zero = distillation_infidelity(kind, db, 0.0, 1000, 600);
        ok &= zero.acceptance_rate == 1.0;
        std::vector<double> infid;
        for (size_t i = 0; i < ps.size(); ++i) {
            DistillationResult r =
                distillation_infidelity(kind, db, ps[i], 10000, 600 + i);
            infid.push_back(r.mean_infidelity);
        }
        double slope = loglog_slope(ps, infid);
        std::printf("  %s distiller: infidelities %.3g %.3g %.3g, slope %.3f\n",
                    kind == MagicKind::Y ? "|Y>" : "|A>", infid[0], infid[1], infid[2], slope);
        ok &= std::abs(slope - 3.0) <= 0.3;
    }
    double t = sw.seconds();
    report(6, "Y and A distiller slopes 3.0 +/- 0.3; accept(0)=1", ok && t < 300.0, t);
}

TEST_CASE("criterion 7: duplicate distillers fail with O(p^2)") {
    Stopwatch sw;
    Database db = seed_database();
    const std::vector<double> ps = {0.002, 0.005, 0.01};
    std::vector<double> fail;
    for (size_t i = 0; i < ps.size(); ++i) {
        fail.push_back(
            duplicate_failure_probability(MagicKind::Y, db, ps[i], 2, 100000, 700 + i));
    }
    double slope = loglog_slope(ps, fail);
    std::printf("  k=2 |Y> distillers: failure %.3g %.3g %.3g, slope %.3f\n", fail[0], fail[1],
                fail[2], slope);
    bool ok = std::abs(slope - 2.0) <= 0.3;
    double t = sw.seconds();
    report(7, "k=2 failure-to-produce slope 2.0 +/- 0.3", ok && t < 300.0, t);
}

TEST_CASE("criterion 8: property suites") {
    Stopwatch sw;
    Database db = seed_database();
    bool ok = true;

    // ICM-validity fuzzing over the criterion-4 corpus, both modes
    {
        std::mt19937_64 rng(808);
        for (int i = 0; i < 100; ++i) {
            Circuit high = oracle::random_circuit(rng, 5, 20, kHighLevelGates);
            Circuit prim = expand_nicm(high, db);
            ConversionOptions opts;
            opts.teleport_mode = i % 2 ? TeleportMode::Deterministic : TeleportMode::Simple;
            IcmCircuit icm = convert_to_icm(prim, db, opts);
            ok &= validate_icm(icm.circuit).ok;
            if (i % 10 == 0) {
                ConversionOptions dist = opts;
                dist.distillation_rounds = 1;
                IcmCircuit deep = inline_distillation(icm, db, dist);
                ok &= validate_icm(deep.circuit).ok;
            }
        }
    }
    // database and geometry round-trips are fixed points
    {
        std::string text = serialize_database(db);
        Database again = parse_database(text);
        ok &= again == db && serialize_database(again) == text;

        Circuit c = parse_gate_list("tgate 1\ncnot 1 2\nhgate 2\n", db);
        IcmCircuit icm = convert_to_icm(c, db, {});
        GeometryDesc g = generate_geometry(icm);
        std::string gt = serialize_geometry(g);
        GeometryDesc gg = parse_geometry(gt);
        ok &= gg == g && serialize_geometry(gg) == gt;
    }
    // measurement ordering is a linear extension of the dependencies
    {
        std::mt19937_64 rng(809);
        for (int i = 0; i < 30; ++i) {
            Circuit high = oracle::random_circuit(rng, 4, 10, kHighLevelGates);
            ConversionOptions opts;
            opts.teleport_mode = TeleportMode::Deterministic;
            IcmCircuit icm = convert_to_icm(expand_nicm(high, db), db, opts);
            auto order = order_measurements(icm.circuit);
            std::map<QubitId, size_t> pos;
            for (size_t k = 0; k < order.size(); ++k) pos[order[k].first] = k;
            for (const auto& [a, b] : icm.circuit.schedule) ok &= pos.at(a) < pos.at(b);
        }
    }
    // simulator norm and branch-sum invariants
    {
        std::mt19937_64 rng(810);
        const std::vector<std::pair<std::string, int>> small = {
            {"TGATE", 1}, {"HGATE", 1}, {"PGATE", 1}, {"CNOT", 2}};
        for (int i = 0; i < 10; ++i) {
            Circuit c = oracle::random_circuit(rng, 3, 3, small);
            IcmCircuit icm = convert_to_icm(c, db, {});
            if (icm.circuit.qubit_count > kMaxSimQubits) continue;
            SimOptions so;
            so.seed = static_cast<std::uint64_t>(900 + i);
            SimResult r = simulate(icm.circuit, make_input(icm.circuit), {}, so);
            ok &= std::abs(r.state.norm() - 1.0) < 1e-12;
        }
        // exhaustive branch enumeration on the 6-qubit deterministic T block
        Circuit c;
        c.qubit_count = 1;
        c.gates.push_back(GateOp{"TGATE", {1}});
        ConversionOptions det;
        det.teleport_mode = TeleportMode::Deterministic;
        IcmCircuit icm = convert_to_icm(c, db, det);
        std::vector<QubitId> measured;
        for (const auto& [q, m] : icm.circuit.measurements) measured.push_back(q);
        double total = 0;
        for (int mask = 0; mask < 32; ++mask) {
            OutcomeAssignment fix;
            for (int b = 0; b < 5; ++b) {
                fix.fixed[measured[static_cast<size_t>(b)]] = (mask >> b) & 1;
            }
            try {
                total += simulate(icm.circuit, make_input(icm.circuit, {{1, {0.6, Amp(0, 0.8)}}}),
                                  fix)
                             .acceptance;
            } catch (const Error&) {
            }
        }
        ok &= std::abs(total - 1.0) < 1e-10;
    }
    double t = sw.seconds();
    report(8, "fuzzed ICM validity, round-trips, ordering, sim invariants", ok && t < 120.0, t);
}
