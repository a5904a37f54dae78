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

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace icm {

// Qubit indices are 1-based throughout, matching the database conventions
// ("c 2 1" is a CNOT controlled by qubit 2 targeting qubit 1).
using QubitId = int;

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

enum class InitBasis { Zero, Plus, A, Y, Empty };

enum class MeasKind {
    X,
    Z,
    CondZX,  // Z when the dependency parity is 1, X when it is 0
    CondXZ,  // X when the dependency parity is 1, Z when it is 0
    ABasis,  // intermediate only; rewritten before the circuit is final
    YBasis,  // intermediate only; Y analogue of ABasis
    Empty,
};

struct Measurement {
    MeasKind kind = MeasKind::Empty;
    std::vector<QubitId> deps;  // outcome qubits whose XOR selects a Cond* basis

    bool operator==(const Measurement&) const = default;
};

struct GateOp {
    std::string name;            // canonical token; "CNOT" for the primitive
    std::vector<QubitId> qubits; // CNOT: {control, target}

    static GateOp make_cnot(QubitId control, QubitId target) {
        return GateOp{"CNOT", {control, target}};
    }
    bool is_cnot() const { return name == "CNOT"; }
    QubitId control() const { return qubits.at(0); }
    QubitId target() const { return qubits.at(1); }

    bool operator==(const GateOp&) const = default;
};

// Shared circuit value for every pipeline stage. Immutable by convention
// after construction; all operations below are pure functions.
struct Circuit {
    int qubit_count = 0;
    std::map<QubitId, InitBasis> inits;           // absent entries are Empty
    std::vector<GateOp> gates;
    std::map<QubitId, Measurement> measurements;  // absent entries are Empty
    // Measurement partial order: (before, after) pairs of measured qubits.
    std::vector<std::pair<QubitId, QubitId>> schedule;

    InitBasis init_of(QubitId q) const {
        auto it = inits.find(q);
        return it == inits.end() ? InitBasis::Empty : it->second;
    }
    Measurement meas_of(QubitId q) const {
        auto it = measurements.find(q);
        return it == measurements.end() ? Measurement{} : it->second;
    }

    // Throws Error when a gate or annotation references a qubit outside
    // 1..qubit_count or a CNOT has control == target.
    void check_well_formed() const;

    bool operator==(const Circuit&) const = default;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;

    void fail(std::string msg) {
        ok = false;
        violations.push_back(std::move(msg));
    }
};

struct CircuitStats {
    int t_count = 0;
    int t_depth = 0;
    int qubit_count = 0;
    int gate_count = 0;
};

// ICM structural contract: interior gates are all CNOT, inits are drawn from
// {0,+,A,Y,Empty}, measurements from {X,Z,ZX,XZ,Empty} and the measurement
// schedule is acyclic. Violations are reported as data, not thrown.
ValidationReport validate_icm(const Circuit& c);

// T-count and T-depth of a primitive (pre-ICM) circuit; qubit/gate counts as
// raw sizes. T-depth is the longest chain of sequentially dependent T gates
// over the qubit-sharing dependency DAG.
CircuitStats compute_stats(const Circuit& c);

// Total order extending the schedule partial order; qubits without pending
// dependencies come first, ties broken by ascending qubit id. Throws Error
// naming a cycle member when the schedule is cyclic.
std::vector<std::pair<QubitId, Measurement>> order_measurements(const Circuit& c);

// .circ text format: "init <q> <0|+|A|Y>", "cnot <c> <t>",
// "measure <q> <X|Z|ZX(d,..)|XZ(d,..)>". Unlisted qubits are configurable
// I/O. Measurement lines follow order_measurements, so output is canonical.
std::string to_circ(const Circuit& c);
Circuit parse_circ(const std::string& text);

const char* init_basis_name(InitBasis b);  // database token (ZERO, PLUS, AA, YY, EMPTY)

}  // namespace icm
