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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "icm/circuit.hpp"
#include "oracles.hpp"

using namespace icm;

namespace {

Circuit t_gate_icm() {
    // the teleported-T circuit: init 2 A / cnot 2 1 / measure 1 Z
    Circuit c;
    c.qubit_count = 2;
    c.inits[2] = InitBasis::A;
    c.gates.push_back(GateOp::make_cnot(2, 1));
    c.measurements[1] = Measurement{MeasKind::Z, {}};
    return c;
}

}  // namespace

TEST_CASE("validate_icm accepts the teleported-T circuit") {
    ValidationReport rep = validate_icm(t_gate_icm());
    CHECK(rep.ok);
    CHECK(rep.violations.empty());
}

TEST_CASE("validate_icm accepts the empty circuit") {
    CHECK(validate_icm(Circuit{}).ok);
}

TEST_CASE("validate_icm flags a non-CNOT interior gate") {
    Circuit c;
    c.qubit_count = 1;
    c.gates.push_back(GateOp{"HGATE", {1}});
    ValidationReport rep = validate_icm(c);
    CHECK(!rep.ok);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].find("non-CNOT interior gate at index 0") != std::string::npos);
}

TEST_CASE("validate_icm flags intermediate bases and schedule cycles") {
    Circuit c = t_gate_icm();
    c.measurements[2] = Measurement{MeasKind::ABasis, {}};
    CHECK(!validate_icm(c).ok);

    Circuit d = t_gate_icm();
    d.measurements[2] = Measurement{MeasKind::X, {}};
    d.schedule = {{1, 2}, {2, 1}};
    CHECK(!validate_icm(d).ok);
}

TEST_CASE("compute_stats on the controlled-V primitive sequence") {
    // H(2) T(1) T(2) CNOT T'(2) CNOT H(2): T-count 3, T-depth 2
    Circuit c;
    c.qubit_count = 2;
    c.gates = {
        GateOp{"HGATE", {2}},    GateOp{"TGATE", {1}}, GateOp{"TGATE", {2}},
        GateOp::make_cnot(1, 2), GateOp{"TDAG", {2}},  GateOp::make_cnot(1, 2),
        GateOp{"HGATE", {2}},
    };
    CircuitStats s = compute_stats(c);
    CHECK(s.t_count == 3);
    CHECK(s.t_depth == 2);
    CHECK(s.t_depth == oracle::t_depth_longest_path(c));
    CHECK(s.qubit_count == 2);
    CHECK(s.gate_count == 7);
}

TEST_CASE("compute_stats on a CNOT-only circuit") {
    Circuit c;
    c.qubit_count = 3;
    c.gates = {GateOp::make_cnot(1, 2), GateOp::make_cnot(2, 3)};
    CircuitStats s = compute_stats(c);
    CHECK(s.t_count == 0);
    CHECK(s.t_depth == 0);
}

TEST_CASE("compute_stats matches the longest-path oracle on random circuits") {
    std::mt19937_64 rng(11);
    const std::vector<std::pair<std::string, int>> gateset = {
        {"TGATE", 1}, {"TDAG", 1}, {"HGATE", 1}, {"PGATE", 1}, {"CNOT", 2},
    };
    for (int i = 0; i < 60; ++i) {
        Circuit c = oracle::random_circuit(rng, 5, 18, gateset);
        CHECK(compute_stats(c).t_depth == oracle::t_depth_longest_path(c));
    }
}

TEST_CASE("compute_stats is invariant under qubit relabeling") {
    std::mt19937_64 rng(5);
    const std::vector<std::pair<std::string, int>> gateset = {
        {"TGATE", 1}, {"HGATE", 1}, {"CNOT", 2}};
    for (int i = 0; i < 20; ++i) {
        Circuit c = oracle::random_circuit(rng, 5, 12, gateset);
        std::vector<QubitId> perm(static_cast<size_t>(c.qubit_count) + 1);
        for (QubitId q = 1; q <= c.qubit_count; ++q) perm[static_cast<size_t>(q)] = q;
        std::shuffle(perm.begin() + 1, perm.end(), rng);
        Circuit r = c;
        for (GateOp& g : r.gates) {
            for (QubitId& q : g.qubits) q = perm[static_cast<size_t>(q)];
        }
        CircuitStats a = compute_stats(c), b = compute_stats(r);
        CHECK(a.t_count == b.t_count);
        CHECK(a.t_depth == b.t_depth);
    }
}

TEST_CASE("order_measurements puts independent qubits in ascending order") {
    Circuit c;
    c.qubit_count = 4;
    c.measurements[3] = Measurement{MeasKind::X, {}};
    c.measurements[1] = Measurement{MeasKind::Z, {}};
    c.measurements[4] = Measurement{MeasKind::Z, {}};
    auto order = order_measurements(c);
    REQUIRE(order.size() == 3);
    CHECK(order[0].first == 1);
    CHECK(order[1].first == 3);
    CHECK(order[2].first == 4);
}

TEST_CASE("order_measurements respects dependencies") {
    // deterministic-T style: qubit 1's MZ precedes the conditional bank
    Circuit c;
    c.qubit_count = 5;
    c.measurements[1] = Measurement{MeasKind::Z, {}};
    for (QubitId q = 2; q <= 5; ++q) {
        c.measurements[q] = Measurement{q % 2 ? MeasKind::CondZX : MeasKind::CondXZ, {1}};
        c.schedule.emplace_back(1, q);
    }
    auto order = order_measurements(c);
    CHECK(order[0].first == 1);
    for (size_t i = 1; i < order.size(); ++i) CHECK(order[i].first > 1);
}

TEST_CASE("order_measurements output is a linear extension of the schedule") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        Circuit c;
        std::uniform_int_distribution<int> nq(2, 10);
        c.qubit_count = nq(rng);
        for (QubitId q = 1; q <= c.qubit_count; ++q) {
            c.measurements[q] = Measurement{MeasKind::Z, {}};
        }
        // random forward edges keep the schedule acyclic
        std::uniform_int_distribution<int> pickq(1, c.qubit_count);
        for (int e = 0; e < c.qubit_count; ++e) {
            int a = pickq(rng), b = pickq(rng);
            if (a < b) c.schedule.emplace_back(a, b);
        }
        auto order = order_measurements(c);
        std::map<QubitId, size_t> pos;
        for (size_t i = 0; i < order.size(); ++i) pos[order[i].first] = i;
        for (const auto& [a, b] : c.schedule) CHECK(pos.at(a) < pos.at(b));
    }
}

TEST_CASE("order_measurements reports cycles") {
    Circuit c;
    c.qubit_count = 2;
    c.measurements[1] = Measurement{MeasKind::Z, {}};
    c.measurements[2] = Measurement{MeasKind::Z, {}};
    c.schedule = {{1, 2}, {2, 1}};
    CHECK_THROWS_WITH_AS(order_measurements(c), doctest::Contains("cycle"), Error);
}

TEST_CASE(".circ emission matches the teleported-T listing byte for byte") {
    CHECK(to_circ(t_gate_icm()) == "init 2 A\ncnot 2 1\nmeasure 1 Z\n");
}

TEST_CASE(".circ round-trips") {
    Circuit c = t_gate_icm();
    CHECK(parse_circ(to_circ(c)) == c);

    Circuit d;
    d.qubit_count = 6;
    d.inits = {{2, InitBasis::A},
               {3, InitBasis::Zero},
               {4, InitBasis::Y},
               {5, InitBasis::Plus},
               {6, InitBasis::Zero}};
    d.gates = {GateOp::make_cnot(2, 1), GateOp::make_cnot(2, 3), GateOp::make_cnot(4, 2),
               GateOp::make_cnot(5, 3), GateOp::make_cnot(4, 6), GateOp::make_cnot(5, 6)};
    d.measurements[1] = Measurement{MeasKind::Z, {}};
    d.measurements[2] = Measurement{MeasKind::CondZX, {1}};
    d.measurements[3] = Measurement{MeasKind::CondXZ, {1}};
    d.schedule = {{1, 2}, {1, 3}};
    Circuit back = parse_circ(to_circ(d));
    CHECK(back.inits == d.inits);
    CHECK(back.gates == d.gates);
    CHECK(back.measurements == d.measurements);
    CHECK(to_circ(back) == to_circ(d));
}

TEST_CASE(".circ parser rejects malformed input") {
    CHECK_THROWS_AS(parse_circ("init 1 Q\n"), Error);
    CHECK_THROWS_AS(parse_circ("frob 1 2\n"), Error);
    CHECK_THROWS_AS(parse_circ("measure 1 ZX()\n"), Error);
    CHECK_THROWS_AS(parse_circ("init 1 A\ninit 1 A\n"), Error);
    CHECK_THROWS_AS(parse_circ("cnot 1 1\n"), Error);
}

TEST_CASE("well-formedness catches out-of-range references") {
    Circuit c;
    c.qubit_count = 1;
    c.gates.push_back(GateOp::make_cnot(1, 2));
    CHECK_THROWS_AS(c.check_well_formed(), Error);
}
