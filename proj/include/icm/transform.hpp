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
#include <optional>
#include <string>
#include <vector>

#include "icm/circuit.hpp"
#include "icm/database.hpp"

namespace icm {

enum class TeleportMode { Simple, Deterministic };

struct ConversionOptions {
    TeleportMode teleport_mode = TeleportMode::Simple;
    int distillation_rounds = 0;
    int duplicate_distillers = 1;  // copies per injected state for failure recovery
};

// Teleportation sub-circuits recorded on the converted circuit. The
// simulator uses these to resolve Pauli-frame corrections from measurement
// outcomes.
enum class BlockKind {
    TeleportT,     // qubits {in(MZ), out}; m=1 leaves an X frame + pending P
    TeleportTdag,  // same circuit, inverted outcome interpretation
    TeleportP,     // qubits {in(MZ), out}; m=1 leaves X and Z frames
    TeleportPdag,
    Hadamard,      // qubits {in(MX m1), a1(MZ m2), a2(MX m3), out};
                   // frame x = 1^m1^m3, z = 1^m2^m3
    DetT,          // qubits {in(MZ), q2..q5(conditional), out}
    DetTdag,
    PauliX,        // qubits {wire}; constant frame entry, no gates emitted
    PauliZ,
};

struct TeleportBlock {
    BlockKind kind;
    std::vector<QubitId> qubits;  // role order as documented on BlockKind
    // Index into the gate list after which this block's Pauli correction
    // applies; corrections commute through the remaining CNOT array.
    int anchor = 0;
};

struct IcmCircuit {
    Circuit circuit;
    std::vector<TeleportBlock> blocks;
    std::map<QubitId, QubitId> wire_out;  // input wire -> final carrier qubit
    std::vector<QubitId> data_wires;      // wires that entered without an init
    int t_count = 0;                      // teleported-T blocks
    int t_depth = 0;                      // longest chain of dependent T blocks
};

CircuitStats compute_stats(const IcmCircuit& icm);

// Replaces every named gate that is not a primitive with its nicm database
// entry, recursively, until only primitives remain. Grid cells may name
// single-qubit nicm entries; direct or transitive self-reference is an
// error. Grid MZ/MX cells become measurement annotations.
Circuit expand_nicm(const Circuit& circuit, const Database& db);

bool is_primitive_gate(const std::string& name);

// Rewrites every primitive single-qubit gate into its teleportation form,
// rethreading each data wire onto the teleportation output. Ancilla ids are
// allocated densely after the highest existing id, in gate order. In
// Deterministic mode T/T† use the 5-ancilla entry and emit conditional
// measurements whose dependency lists carry the selector qubits.
IcmCircuit convert_to_icm(const Circuit& circuit, const Database& db,
                          const ConversionOptions& opts);

// Replaces every |A> (|Y>) initialisation with the AA (YY) icmdist circuit,
// rewrites the intermediate MA/MY measurements into teleported rotations
// followed by MX, and recurses `distillation_rounds` times. With
// duplicate_distillers k > 1, k copies feed a selective-source join whose
// final measurements depend on every copy's syndrome measurements.
IcmCircuit inline_distillation(const IcmCircuit& icm, const Database& db,
                               const ConversionOptions& opts);

// Controlled-U via the A/X/B/X/C identity: emits C, CNOT, B, CNOT, A on the
// target with an optional phase-correction gate on the control. Sequences
// are primitive single-qubit gate names in application order.
struct AbcSequences {
    std::vector<std::string> a, b, c;
    std::optional<std::string> control_phase_gate;
};
Circuit expand_controlled_u(QubitId control, QubitId target, const AbcSequences& abc);

// Input-circuit text: one gate per line, "name qubit...", '#' comments.
Circuit parse_gate_list(const std::string& text, const Database& db);
std::string to_gate_list(const Circuit& circuit);

}  // namespace icm
