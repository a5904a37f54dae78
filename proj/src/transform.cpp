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

#include "icm/transform.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace icm {

namespace {

const std::set<std::string> kPrimitives = {
    "CNOT", "TGATE", "TDAG", "HGATE", "PGATE", "PDAG", "XGATE", "ZGATE",
};

std::string upper(std::string s) {
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

// Symmetric difference accumulators for Pauli-frame dependency tracking.
void toggle(std::set<QubitId>& s, QubitId q) {
    auto [it, inserted] = s.insert(q);
    if (!inserted) s.erase(it);
}

void toggle_all(std::set<QubitId>& s, const std::set<QubitId>& other) {
    for (QubitId q : other) toggle(s, q);
}

}  // namespace

bool is_primitive_gate(const std::string& name) { return kPrimitives.count(name) > 0; }

CircuitStats compute_stats(const IcmCircuit& icm) {
    CircuitStats s;
    s.qubit_count = icm.circuit.qubit_count;
    s.gate_count = static_cast<int>(icm.circuit.gates.size());
    for (const TeleportBlock& b : icm.blocks) {
        switch (b.kind) {
            case BlockKind::TeleportT:
            case BlockKind::TeleportTdag:
            case BlockKind::DetT:
            case BlockKind::DetTdag:
                s.t_count++;
                break;
            default:
                break;
        }
    }
    s.t_depth = icm.t_depth;
    return s;
}

// ---------------------------------------------------------------- expand_nicm

namespace {

struct Expander {
    const Database& db;
    Circuit out;
    std::set<QubitId> finished;  // measured by a grid cell; no further use
    std::vector<std::string> stack;

    void append_gate(GateOp g) {
        for (QubitId q : g.qubits) {
            if (finished.count(q)) {
                throw Error("qubit " + std::to_string(q) + " used after measurement");
            }
        }
        out.gates.push_back(std::move(g));
    }

    void set_measurement(QubitId q, MeasKind kind) {
        if (out.measurements.count(q)) {
            throw Error("qubit " + std::to_string(q) + " measured twice");
        }
        out.measurements[q] = Measurement{kind, {}};
        finished.insert(q);
    }

    void expand(const GateOp& g) {
        if (is_primitive_gate(g.name)) {
            append_gate(g);
            return;
        }
        const DecompEntry* e = db.find_any(g.name);
        if (e == nullptr) throw Error("no database entry for gate '" + g.name + "'");
        if (e->kind != DecompKind::Nicm) {
            throw Error("gate '" + g.name + "' has a " + decomp_kind_name(e->kind) +
                        " entry, not an nicm decomposition");
        }
        if (std::find(stack.begin(), stack.end(), g.name) != stack.end()) {
            throw Error("substitution cycle through entry '" + g.name + "'");
        }
        int arity = static_cast<int>(e->grid.size()) - e->ancilla_count;
        if (arity != static_cast<int>(g.qubits.size())) {
            throw Error("gate '" + g.name + "' applied to " + std::to_string(g.qubits.size()) +
                        " qubits but its entry has arity " + std::to_string(arity));
        }
        std::vector<QubitId> op = g.qubits;  // controls first, per the entry convention
        for (int i = 0; i < e->ancilla_count; ++i) op.push_back(++out.qubit_count);

        stack.push_back(g.name);
        size_t steps = e->grid.front().size();
        for (size_t col = 0; col < steps; ++col) {
            int ctrl_row = -1, tgt_row = -1;
            std::vector<std::pair<size_t, std::string>> singles;
            for (size_t row = 0; row < e->grid.size(); ++row) {
                const std::string& tok = e->grid[row][col];
                if (tok == "WIRE") continue;
                if (tok == "CTRL") {
                    if (ctrl_row >= 0) throw Error("entry '" + g.name + "': two controls in one column");
                    ctrl_row = static_cast<int>(row);
                } else if (tok == "TGT") {
                    if (tgt_row >= 0) throw Error("entry '" + g.name + "': two targets in one column");
                    tgt_row = static_cast<int>(row);
                } else {
                    singles.emplace_back(row, tok);
                }
            }
            if ((ctrl_row >= 0) != (tgt_row >= 0)) {
                throw Error("entry '" + g.name + "': unpaired CTRL/TGT in column " +
                            std::to_string(col + 1));
            }
            if (ctrl_row >= 0) {
                append_gate(GateOp::make_cnot(op[static_cast<size_t>(ctrl_row)],
                                              op[static_cast<size_t>(tgt_row)]));
            }
            for (const auto& [row, tok] : singles) {
                QubitId q = op[row];
                if (tok == "MZ") {
                    set_measurement(q, MeasKind::Z);
                } else if (tok == "MX") {
                    set_measurement(q, MeasKind::X);
                } else {
                    expand(GateOp{tok, {q}});
                }
            }
        }
        stack.pop_back();
    }
};

}  // namespace

Circuit expand_nicm(const Circuit& circuit, const Database& db) {
    circuit.check_well_formed();
    Expander ex{db, {}, {}, {}};
    ex.out.qubit_count = circuit.qubit_count;
    ex.out.inits = circuit.inits;
    for (const GateOp& g : circuit.gates) ex.expand(g);
    for (const auto& [q, m] : circuit.measurements) {
        if (ex.out.measurements.count(q)) {
            throw Error("qubit " + std::to_string(q) + " measured twice");
        }
        ex.out.measurements[q] = m;
    }
    ex.out.schedule = circuit.schedule;
    return ex.out;
}

// ------------------------------------------------------------- convert_to_icm

namespace {

struct WireState {
    QubitId carrier = 0;
    // Measured qubits whose outcome parity flips the wire's X/Z Pauli frame,
    // plus constant contributions. X feeds the conditional-basis selectors
    // (an X record turns a later T into T-dagger).
    std::set<QubitId> xdeps, zdeps;
    bool xconst = false, zconst = false;
    std::set<QubitId> last_t;  // frontier T-block MZ qubits, for staggering
    int tdepth = 0;
};

struct Converter {
    const Database& db;
    const ConversionOptions& opts;
    IcmCircuit icm;
    std::vector<WireState> wire;

    Circuit& out() { return icm.circuit; }
    QubitId alloc() { return ++out().qubit_count; }

    void stagger(WireState& w, QubitId mz) {
        for (QubitId prev : w.last_t) out().schedule.emplace_back(prev, mz);
        w.last_t = {mz};
        w.tdepth += 1;
        icm.t_depth = std::max(icm.t_depth, w.tdepth);
    }

    void emit_cnot(QubitId a, QubitId b) {
        WireState& wa = wire[static_cast<size_t>(a)];
        WireState& wb = wire[static_cast<size_t>(b)];
        out().gates.push_back(GateOp::make_cnot(wa.carrier, wb.carrier));
        // X on the control copies onto the target; Z on the target copies
        // onto the control.
        toggle_all(wb.xdeps, wa.xdeps);
        wb.xconst ^= wa.xconst;
        toggle_all(wa.zdeps, wb.zdeps);
        wa.zconst ^= wb.zconst;
        std::set<QubitId> merged = wa.last_t;
        merged.insert(wb.last_t.begin(), wb.last_t.end());
        wa.last_t = merged;
        wb.last_t = std::move(merged);
        int d = std::max(wa.tdepth, wb.tdepth);
        wa.tdepth = wb.tdepth = d;
    }

    void emit_simple_t(QubitId w, bool dagger) {
        WireState& ws = wire[static_cast<size_t>(w)];
        QubitId anc = alloc();
        QubitId mz = ws.carrier;
        out().inits[anc] = InitBasis::A;
        out().gates.push_back(GateOp::make_cnot(anc, mz));
        out().measurements[mz] = Measurement{MeasKind::Z, {}};
        stagger(ws, mz);
        icm.blocks.push_back({dagger ? BlockKind::TeleportTdag : BlockKind::TeleportT,
                              {mz, anc},
                              static_cast<int>(out().gates.size())});
        toggle(ws.xdeps, mz);  // outcome 1 leaves an X record
        ws.carrier = anc;
    }

    void emit_det_t(QubitId w, bool dagger) {
        const char* name = dagger ? "TDAG" : "TGATE";
        const DecompEntry* e = db.find(name, EntryVariant::Deterministic);
        if (e == nullptr) {
            throw Error(std::string("deterministic mode requires the 5-ancilla '") + name +
                        "' database entry");
        }
        WireState& ws = wire[static_cast<size_t>(w)];
        std::vector<QubitId> op(7, 0);  // 1-based columns
        op[1] = ws.carrier;
        for (int i = 2; i <= 6; ++i) op[static_cast<size_t>(i)] = alloc();
        for (size_t col = 2; col <= 6; ++col) {
            out().inits[op[col]] = e->init_row[col - 1];
        }
        for (const CnotRow& row : e->cnot_rows) {
            for (const GateOp& g : expand_fanout(row)) {
                out().gates.push_back(GateOp::make_cnot(op[static_cast<size_t>(g.control())],
                                                        op[static_cast<size_t>(g.target())]));
            }
        }
        QubitId mz = op[1];
        out().measurements[mz] = Measurement{MeasKind::Z, {}};
        // Selector for the conditional bases: the block's own Z outcome XORed
        // with the wire's accumulated X record. A constant X record swaps the
        // token instead, since dependency lists cannot carry constants.
        std::vector<QubitId> deps{mz};
        deps.insert(deps.end(), ws.xdeps.begin(), ws.xdeps.end());
        std::sort(deps.begin(), deps.end());
        deps.erase(std::unique(deps.begin(), deps.end()), deps.end());
        for (size_t col = 2; col <= 5; ++col) {
            MeasKind kind = e->meas_row[col - 1];
            if (ws.xconst) {
                kind = (kind == MeasKind::CondZX) ? MeasKind::CondXZ : MeasKind::CondZX;
            }
            out().measurements[op[col]] = Measurement{kind, deps};
            for (QubitId d : deps) out().schedule.emplace_back(d, op[col]);
        }
        stagger(ws, mz);
        icm.blocks.push_back({dagger ? BlockKind::DetTdag : BlockKind::DetT,
                              {op[1], op[2], op[3], op[4], op[5], op[6]},
                              static_cast<int>(out().gates.size())});
        // Output frame record, primary (selector = 0) branch: the X record
        // follows the two Z-measured ancillae, the Z record the X-measured
        // pair. The selector-1 branch differs; the simulator resolves blocks
        // exactly from realized outcomes.
        ws.xdeps = dagger ? std::set<QubitId>{op[2], op[5]} : std::set<QubitId>{op[3], op[4]};
        ws.zdeps = dagger ? std::set<QubitId>{op[3], op[4]} : std::set<QubitId>{op[2], op[5]};
        ws.xconst = false;
        ws.zconst = false;
        ws.carrier = op[6];
    }

    void emit_p(QubitId w, bool dagger) {
        WireState& ws = wire[static_cast<size_t>(w)];
        QubitId anc = alloc();
        QubitId mz = ws.carrier;
        out().inits[anc] = InitBasis::Y;
        out().gates.push_back(GateOp::make_cnot(anc, mz));
        out().measurements[mz] = Measurement{MeasKind::Z, {}};
        icm.blocks.push_back({dagger ? BlockKind::TeleportPdag : BlockKind::TeleportP,
                              {mz, anc},
                              static_cast<int>(out().gates.size())});
        // P conjugation turns an X record into a Y record; the block's own
        // correction is Y on outcome 1 (P) or Z/X split (P-dagger).
        toggle_all(ws.zdeps, ws.xdeps);
        ws.zconst ^= ws.xconst;
        toggle(ws.xdeps, mz);
        toggle(ws.zdeps, mz);
        if (dagger) ws.zconst ^= true;
        ws.carrier = anc;
    }

    void emit_h(QubitId w) {
        WireState& ws = wire[static_cast<size_t>(w)];
        QubitId a1 = alloc(), a2 = alloc(), a3 = alloc();
        out().inits[a1] = InitBasis::Y;
        out().inits[a2] = InitBasis::Y;
        out().inits[a3] = InitBasis::Y;
        QubitId d = ws.carrier;
        out().gates.push_back(GateOp::make_cnot(d, a1));
        out().gates.push_back(GateOp::make_cnot(a2, a1));
        out().gates.push_back(GateOp::make_cnot(a2, a3));
        out().measurements[d] = Measurement{MeasKind::X, {}};   // m1
        out().measurements[a1] = Measurement{MeasKind::Z, {}};  // m2
        out().measurements[a2] = Measurement{MeasKind::X, {}};  // m3
        icm.blocks.push_back(
            {BlockKind::Hadamard, {d, a1, a2, a3}, static_cast<int>(out().gates.size())});
        // H swaps the X and Z records and adds its own:
        // x = 1^m1^m3, z = 1^m2^m3.
        std::set<QubitId> new_x = ws.zdeps;
        toggle(new_x, d);
        toggle(new_x, a2);
        std::set<QubitId> new_z = ws.xdeps;
        toggle(new_z, a1);
        toggle(new_z, a2);
        bool new_xc = ws.zconst ^ true;
        bool new_zc = ws.xconst ^ true;
        ws.xdeps = std::move(new_x);
        ws.zdeps = std::move(new_z);
        ws.xconst = new_xc;
        ws.zconst = new_zc;
        ws.carrier = a3;
    }

    void emit_pauli(QubitId w, bool is_x) {
        WireState& ws = wire[static_cast<size_t>(w)];
        icm.blocks.push_back({is_x ? BlockKind::PauliX : BlockKind::PauliZ,
                              {ws.carrier},
                              static_cast<int>(out().gates.size())});
        if (is_x) ws.xconst ^= true;
        else ws.zconst ^= true;
    }
};

}  // namespace

IcmCircuit convert_to_icm(const Circuit& circuit, const Database& db,
                          const ConversionOptions& opts) {
    circuit.check_well_formed();
    for (const GateOp& g : circuit.gates) {
        if (!is_primitive_gate(g.name)) {
            throw Error("unconvertible gate '" + g.name + "' (expand nicm entries first)");
        }
    }
    Converter cv{db, opts, {}, {}};
    cv.out().qubit_count = circuit.qubit_count;
    cv.wire.resize(static_cast<size_t>(circuit.qubit_count) + 1);
    for (QubitId w = 1; w <= circuit.qubit_count; ++w) {
        cv.wire[static_cast<size_t>(w)].carrier = w;
        InitBasis b = circuit.init_of(w);
        if (b == InitBasis::Empty) cv.icm.data_wires.push_back(w);
        else cv.out().inits[w] = b;
    }
    for (const GateOp& g : circuit.gates) {
        if (g.is_cnot()) {
            cv.emit_cnot(g.control(), g.target());
        } else if (g.name == "TGATE" || g.name == "TDAG") {
            if (opts.teleport_mode == TeleportMode::Simple) {
                cv.emit_simple_t(g.qubits[0], g.name == "TDAG");
            } else {
                cv.emit_det_t(g.qubits[0], g.name == "TDAG");
            }
        } else if (g.name == "PGATE" || g.name == "PDAG") {
            cv.emit_p(g.qubits[0], g.name == "PDAG");
        } else if (g.name == "HGATE") {
            cv.emit_h(g.qubits[0]);
        } else if (g.name == "XGATE" || g.name == "ZGATE") {
            cv.emit_pauli(g.qubits[0], g.name == "XGATE");
        }
    }
    for (const auto& [q, m] : circuit.measurements) {
        QubitId carrier = cv.wire[static_cast<size_t>(q)].carrier;
        if (cv.out().measurements.count(carrier)) {
            throw Error("qubit " + std::to_string(q) + " measured twice");
        }
        cv.out().measurements[carrier] = m;
    }
    for (QubitId w = 1; w <= circuit.qubit_count; ++w) {
        cv.icm.wire_out[w] = cv.wire[static_cast<size_t>(w)].carrier;
    }
    cv.icm.t_count = compute_stats(cv.icm).t_count;
    return cv.icm;
}

// -------------------------------------------------------- inline_distillation

namespace {

struct DistillRound {
    const Database& db;
    const ConversionOptions& opts;
    IcmCircuit icm;
    std::vector<GateOp> prefix;  // distiller CNOT arrays, before existing gates

    Circuit& out() { return icm.circuit; }
    QubitId alloc() { return ++out().qubit_count; }

    // Teleported-rotation site replacing an MA/MY measurement on `site`.
    void emit_site(QubitId site, bool a_kind) {
        if (opts.teleport_mode == TeleportMode::Simple) {
            QubitId anc = alloc();
            out().inits[anc] = a_kind ? InitBasis::A : InitBasis::Y;
            prefix.push_back(GateOp::make_cnot(anc, site));
            out().measurements[site] = Measurement{MeasKind::Z, {}};
            out().measurements[anc] = Measurement{MeasKind::X, {}};
            out().schedule.emplace_back(site, anc);
            icm.blocks.push_back({a_kind ? BlockKind::TeleportT : BlockKind::TeleportP,
                                  {site, anc},
                                  static_cast<int>(prefix.size())});
            return;
        }
        if (!a_kind) {  // P corrections are Pauli; the plain block suffices
            QubitId anc = alloc();
            out().inits[anc] = InitBasis::Y;
            prefix.push_back(GateOp::make_cnot(anc, site));
            out().measurements[site] = Measurement{MeasKind::Z, {}};
            out().measurements[anc] = Measurement{MeasKind::X, {}};
            out().schedule.emplace_back(site, anc);
            icm.blocks.push_back(
                {BlockKind::TeleportP, {site, anc}, static_cast<int>(prefix.size())});
            return;
        }
        const DecompEntry* e = db.find("TGATE", EntryVariant::Deterministic);
        if (e == nullptr) {
            throw Error("deterministic mode requires the 5-ancilla 'TGATE' database entry");
        }
        std::vector<QubitId> op(7, 0);
        op[1] = site;
        for (int i = 2; i <= 6; ++i) op[static_cast<size_t>(i)] = alloc();
        for (size_t col = 2; col <= 6; ++col) out().inits[op[col]] = e->init_row[col - 1];
        for (const CnotRow& row : e->cnot_rows) {
            for (const GateOp& g : expand_fanout(row)) {
                prefix.push_back(GateOp::make_cnot(op[static_cast<size_t>(g.control())],
                                                   op[static_cast<size_t>(g.target())]));
            }
        }
        out().measurements[op[1]] = Measurement{MeasKind::Z, {}};
        for (size_t col = 2; col <= 5; ++col) {
            out().measurements[op[col]] = Measurement{e->meas_row[col - 1], {op[1]}};
            out().schedule.emplace_back(op[1], op[col]);
        }
        out().measurements[op[6]] = Measurement{MeasKind::X, {}};
        out().schedule.emplace_back(op[1], op[6]);
        icm.blocks.push_back({BlockKind::DetT,
                              {op[1], op[2], op[3], op[4], op[5], op[6]},
                              static_cast<int>(prefix.size())});
    }

    // One distiller copy; returns {output qubit, syndrome MX qubits}.
    std::pair<QubitId, std::vector<QubitId>> emit_copy(const DecompEntry& entry, bool a_kind,
                                                       QubitId reuse_output) {
        int width = static_cast<int>(entry.init_row.size());
        int out_col = -1;
        for (int c = 0; c < width; ++c) {
            if (entry.meas_row[static_cast<size_t>(c)] == MeasKind::Empty) out_col = c;
        }
        if (out_col < 0) throw Error("icmdist entry '" + entry.name + "' has no output column");
        std::vector<QubitId> op(static_cast<size_t>(width));
        for (int c = 0; c < width; ++c) {
            op[static_cast<size_t>(c)] = (c == out_col && reuse_output != 0)
                                             ? reuse_output
                                             : alloc();
        }
        for (int c = 0; c < width; ++c) {
            out().inits[op[static_cast<size_t>(c)]] = entry.init_row[static_cast<size_t>(c)];
        }
        for (const CnotRow& row : entry.cnot_rows) {
            for (const GateOp& g : expand_fanout(row)) {
                prefix.push_back(GateOp::make_cnot(op[static_cast<size_t>(g.control() - 1)],
                                                   op[static_cast<size_t>(g.target() - 1)]));
            }
        }
        std::vector<QubitId> sites;
        for (int c = 0; c < width; ++c) {
            MeasKind m = entry.meas_row[static_cast<size_t>(c)];
            if (m == MeasKind::ABasis || m == MeasKind::YBasis) {
                sites.push_back(op[static_cast<size_t>(c)]);
            } else if (m != MeasKind::Empty) {
                out().measurements[op[static_cast<size_t>(c)]] = Measurement{m, {}};
            }
        }
        std::vector<QubitId> syndrome;
        size_t blocks_before = icm.blocks.size();
        for (QubitId s : sites) emit_site(s, a_kind);
        for (size_t i = blocks_before; i < icm.blocks.size(); ++i) {
            const TeleportBlock& b = icm.blocks[i];
            syndrome.push_back(b.qubits.back());  // the site's final MX qubit
        }
        return {op[static_cast<size_t>(out_col)], syndrome};
    }

    void replace_init(QubitId q, bool a_kind) {
        const DecompEntry* entry = db.find_any(a_kind ? "AA" : "YY");
        if (entry == nullptr || entry->kind != DecompKind::Icmdist) {
            throw Error(std::string("distillation requires the '") + (a_kind ? "AA" : "YY") +
                        "' icmdist database entry");
        }
        int k = opts.duplicate_distillers;
        if (k <= 1) {
            emit_copy(*entry, a_kind, q);
            return;
        }
        // Selective-source join over k copies: any surviving copy can be
        // routed to q; the basis bank depends on every copy's syndrome.
        out().inits[q] = InitBasis::Zero;
        std::vector<QubitId> outputs;
        std::vector<QubitId> all_syndrome;
        for (int i = 0; i < k; ++i) {
            auto [o, syn] = emit_copy(*entry, a_kind, 0);
            outputs.push_back(o);
            all_syndrome.insert(all_syndrome.end(), syn.begin(), syn.end());
        }
        for (QubitId o : outputs) {
            prefix.push_back(GateOp::make_cnot(o, q));
            out().measurements[o] = Measurement{MeasKind::CondXZ, all_syndrome};
            for (QubitId s : all_syndrome) out().schedule.emplace_back(s, o);
        }
    }
};

}  // namespace

IcmCircuit inline_distillation(const IcmCircuit& icm, const Database& db,
                               const ConversionOptions& opts) {
    IcmCircuit cur = icm;
    for (int round = 0; round < opts.distillation_rounds; ++round) {
        std::vector<std::pair<QubitId, bool>> targets;
        for (const auto& [q, b] : cur.circuit.inits) {
            if (b == InitBasis::A) targets.emplace_back(q, true);
            else if (b == InitBasis::Y) targets.emplace_back(q, false);
        }
        if (targets.empty()) break;
        DistillRound dr{db, opts, std::move(cur), {}};
        size_t old_blocks = dr.icm.blocks.size();
        for (const auto& [q, a_kind] : targets) dr.replace_init(q, a_kind);
        Circuit& c = dr.out();
        for (size_t i = 0; i < old_blocks; ++i) {
            dr.icm.blocks[i].anchor += static_cast<int>(dr.prefix.size());
        }
        dr.prefix.insert(dr.prefix.end(), c.gates.begin(), c.gates.end());
        c.gates = std::move(dr.prefix);
        cur = std::move(dr.icm);
        cur.t_count = compute_stats(cur).t_count;
    }
    return cur;
}

// --------------------------------------------------------- controlled-U ABC

Circuit expand_controlled_u(QubitId control, QubitId target, const AbcSequences& abc) {
    if (control == target) throw Error("controlled gate: control equals target");
    auto check = [](const std::vector<std::string>& seq, const char* which) {
        for (const std::string& n : seq) {
            if (!is_primitive_gate(n) || n == "CNOT") {
                throw Error(std::string("controlled-U sequence ") + which +
                            " contains non-primitive gate '" + n + "'");
            }
        }
    };
    check(abc.a, "A");
    check(abc.b, "B");
    check(abc.c, "C");
    Circuit frag;
    frag.qubit_count = std::max(control, target);
    auto emit_seq = [&](const std::vector<std::string>& seq) {
        for (const std::string& n : seq) frag.gates.push_back(GateOp{n, {target}});
    };
    emit_seq(abc.c);
    frag.gates.push_back(GateOp::make_cnot(control, target));
    emit_seq(abc.b);
    frag.gates.push_back(GateOp::make_cnot(control, target));
    emit_seq(abc.a);
    if (abc.control_phase_gate) {
        const std::string& n = *abc.control_phase_gate;
        if (!is_primitive_gate(n) || n == "CNOT") {
            throw Error("controlled-U phase correction '" + n + "' is not a primitive gate");
        }
        frag.gates.push_back(GateOp{n, {control}});
    }
    return frag;
}

// ------------------------------------------------------------ gate-list text

namespace {

std::string resolve_name(const std::string& raw, const Database& db, int line_no) {
    static const std::map<std::string, std::string> kAliases = {
        {"T", "TGATE"},     {"TGATE", "TGATE"}, {"TDAG", "TDAG"},   {"TDG", "TDAG"},
        {"H", "HGATE"},     {"HGATE", "HGATE"}, {"P", "PGATE"},     {"PGATE", "PGATE"},
        {"S", "PGATE"},     {"PDAG", "PDAG"},   {"SDAG", "PDAG"},   {"PDG", "PDAG"},
        {"X", "XGATE"},     {"XGATE", "XGATE"}, {"Z", "ZGATE"},     {"ZGATE", "ZGATE"},
        {"CNOT", "CNOT"},   {"C", "CNOT"},      {"CX", "CNOT"},
    };
    auto it = kAliases.find(upper(raw));
    if (it != kAliases.end()) return it->second;
    if (db.find_any(raw) != nullptr) return raw;
    // case-insensitive unique match against database names
    std::string found;
    for (const DecompEntry& e : db.entries) {
        if (upper(e.name) == upper(raw) && e.name != found) {
            if (!found.empty()) {
                throw Error("line " + std::to_string(line_no) + ": ambiguous gate name '" + raw + "'");
            }
            found = e.name;
        }
    }
    if (!found.empty()) return found;
    throw Error("line " + std::to_string(line_no) + ": unknown gate '" + raw + "'");
}

}  // namespace

Circuit parse_gate_list(const std::string& text, const Database& db) {
    Circuit c;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string name;
        if (!(ls >> name) || name[0] == '#') continue;
        GateOp g;
        g.name = resolve_name(name, db, line_no);
        QubitId q;
        while (ls >> q) {
            if (q < 1) throw Error("line " + std::to_string(line_no) + ": bad qubit index");
            g.qubits.push_back(q);
            c.qubit_count = std::max(c.qubit_count, q);
        }
        size_t arity;
        if (g.is_cnot()) {
            arity = 2;
        } else if (is_primitive_gate(g.name)) {
            arity = 1;
        } else {
            const DecompEntry* e = db.find_any(g.name);
            arity = static_cast<size_t>(e->kind == DecompKind::Nicm
                                            ? static_cast<int>(e->grid.size()) - e->ancilla_count
                                            : e->arity());
        }
        if (g.qubits.size() != arity) {
            throw Error("line " + std::to_string(line_no) + ": gate '" + name + "' expects " +
                        std::to_string(arity) + " qubits, got " + std::to_string(g.qubits.size()));
        }
        c.gates.push_back(std::move(g));
    }
    c.check_well_formed();
    return c;
}

std::string to_gate_list(const Circuit& circuit) {
    std::ostringstream out;
    for (const GateOp& g : circuit.gates) {
        if (g.is_cnot()) {
            out << "cnot " << g.control() << ' ' << g.target() << '\n';
        } else {
            out << g.name;
            for (QubitId q : g.qubits) out << ' ' << q;
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace icm
