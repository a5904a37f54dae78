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

#include <optional>
#include <string>
#include <vector>

#include "icm/circuit.hpp"

namespace icm {

enum class DecompKind { Icm, Nicm, Icmdist };

// Two icm flavours can share a gate name: the plain teleportation and the
// deterministic (selective source/destination) one whose measurement row
// carries MZX/MXZ tokens. Lookups are keyed on (name, variant).
enum class EntryVariant { Simple, Deterministic };

// One CNOT fanout row: "c 15 3 5 6" is three CNOTs sharing control 15.
struct CnotRow {
    QubitId control = 0;
    std::vector<QubitId> targets;

    bool operator==(const CnotRow&) const = default;
};

struct DecompEntry {
    std::string name;
    DecompKind kind = DecompKind::Nicm;
    int ancilla_count = 0;

    // icm / icmdist body
    std::vector<InitBasis> init_row;
    std::vector<CnotRow> cnot_rows;
    std::vector<MeasKind> meas_row;

    // nicm body: one row of tokens per qubit, columns are time steps
    std::vector<std::vector<std::string>> grid;

    int arity() const {
        if (kind == DecompKind::Nicm) return static_cast<int>(grid.size());
        return static_cast<int>(init_row.size()) - ancilla_count;
    }
    EntryVariant variant() const;

    bool operator==(const DecompEntry&) const = default;
};

struct Database {
    std::vector<DecompEntry> entries;  // source order, preserved by serialization

    const DecompEntry* find(const std::string& name,
                            EntryVariant variant = EntryVariant::Simple) const;
    const DecompEntry* find_any(const std::string& name) const;
    bool contains(const std::string& name) const { return find_any(name) != nullptr; }
    void add(DecompEntry entry);  // throws on duplicate (name, kind, variant)

    bool operator==(const Database&) const = default;
};

// Text database format: "=NAME" / kind line / ancilla-count line / body
// lines. A trailing backslash continues a line; "#" lines are comments.
// Errors carry the offending line number.
Database parse_database(const std::string& text);

// Canonical form: single-space separated tokens, no continuation lines.
// parse_database(serialize_database(db)) is structurally equal to db.
std::string serialize_database(const Database& db);

// Expands a fanout row into individual CNOTs, preserving target order.
// Throws on duplicate targets or control == target.
std::vector<GateOp> expand_fanout(const CnotRow& row);

// The shipped decomposition database: teleported T/P/H entries (plain and
// deterministic T), the Toffoli and controlled-V grids, the MA/MY
// measurement rewrites and the |A>/|Y> distillation circuits.
const std::string& seed_database_text();
Database seed_database();

const char* meas_kind_token(MeasKind m);
const char* decomp_kind_name(DecompKind k);

}  // namespace icm
