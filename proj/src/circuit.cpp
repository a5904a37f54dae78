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

#include "icm/circuit.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

namespace icm {

void Circuit::check_well_formed() const {
    auto check_q = [&](QubitId q, const std::string& what) {
        if (q < 1 || q > qubit_count) {
            throw Error(what + " references qubit " + std::to_string(q) +
                        " outside 1.." + std::to_string(qubit_count));
        }
    };
    for (size_t i = 0; i < gates.size(); ++i) {
        const GateOp& g = gates[i];
        for (QubitId q : g.qubits) check_q(q, "gate " + std::to_string(i));
        if (g.is_cnot() && g.control() == g.target()) {
            throw Error("gate " + std::to_string(i) + ": CNOT control equals target");
        }
        std::set<QubitId> seen(g.qubits.begin(), g.qubits.end());
        if (seen.size() != g.qubits.size()) {
            throw Error("gate " + std::to_string(i) + " (" + g.name + ") repeats a qubit");
        }
    }
    for (const auto& [q, b] : inits) check_q(q, "init");
    for (const auto& [q, m] : measurements) {
        check_q(q, "measurement");
        for (QubitId d : m.deps) check_q(d, "measurement dependency");
    }
    for (const auto& [a, b] : schedule) {
        check_q(a, "schedule edge");
        check_q(b, "schedule edge");
    }
}

namespace {

bool schedule_has_cycle(const Circuit& c, QubitId* member) {
    // Kahn over the measured qubits.
    std::map<QubitId, int> indeg;
    std::map<QubitId, std::vector<QubitId>> succ;
    for (const auto& [q, m] : c.measurements) indeg.emplace(q, 0);
    for (const auto& [a, b] : c.schedule) {
        indeg.emplace(a, 0);
        indeg.emplace(b, 0);
    }
    for (const auto& [a, b] : c.schedule) {
        succ[a].push_back(b);
        indeg[b]++;
    }
    std::queue<QubitId> ready;
    for (const auto& [q, d] : indeg) {
        if (d == 0) ready.push(q);
    }
    size_t done = 0;
    while (!ready.empty()) {
        QubitId q = ready.front();
        ready.pop();
        ++done;
        for (QubitId s : succ[q]) {
            if (--indeg[s] == 0) ready.push(s);
        }
    }
    if (done == indeg.size()) return false;
    for (const auto& [q, d] : indeg) {
        if (d > 0) {
            *member = q;
            return true;
        }
    }
    return true;
}

}  // namespace

ValidationReport validate_icm(const Circuit& c) {
    ValidationReport rep;
    for (size_t i = 0; i < c.gates.size(); ++i) {
        if (!c.gates[i].is_cnot()) {
            rep.fail("non-CNOT interior gate at index " + std::to_string(i) + " (" +
                     c.gates[i].name + ")");
        }
    }
    for (const auto& [q, m] : c.measurements) {
        switch (m.kind) {
            case MeasKind::X:
            case MeasKind::Z:
            case MeasKind::CondZX:
            case MeasKind::CondXZ:
            case MeasKind::Empty:
                break;
            default:
                rep.fail("qubit " + std::to_string(q) +
                         " measured in an intermediate basis");
        }
    }
    QubitId member = 0;
    if (schedule_has_cycle(c, &member)) {
        rep.fail("measurement schedule has a cycle through qubit " + std::to_string(member));
    }
    return rep;
}

CircuitStats compute_stats(const Circuit& c) {
    CircuitStats s;
    s.qubit_count = c.qubit_count;
    s.gate_count = static_cast<int>(c.gates.size());
    std::vector<int> depth(static_cast<size_t>(c.qubit_count) + 1, 0);
    for (const GateOp& g : c.gates) {
        bool is_t = g.name == "TGATE" || g.name == "TDAG";
        if (is_t) s.t_count++;
        int d = 0;
        for (QubitId q : g.qubits) d = std::max(d, depth[static_cast<size_t>(q)]);
        if (is_t) d += 1;
        for (QubitId q : g.qubits) depth[static_cast<size_t>(q)] = d;
        if (is_t) s.t_depth = std::max(s.t_depth, d);
    }
    return s;
}

std::vector<std::pair<QubitId, Measurement>> order_measurements(const Circuit& c) {
    std::map<QubitId, int> indeg;
    std::map<QubitId, std::vector<QubitId>> succ;
    for (const auto& [q, m] : c.measurements) indeg.emplace(q, 0);
    for (const auto& [a, b] : c.schedule) {
        indeg.emplace(a, 0);
        indeg.emplace(b, 0);
        succ[a].push_back(b);
        indeg[b]++;
    }
    // min-heap on qubit id keeps ties deterministic
    std::priority_queue<QubitId, std::vector<QubitId>, std::greater<>> ready;
    for (const auto& [q, d] : indeg) {
        if (d == 0) ready.push(q);
    }
    std::vector<std::pair<QubitId, Measurement>> out;
    while (!ready.empty()) {
        QubitId q = ready.top();
        ready.pop();
        out.emplace_back(q, c.meas_of(q));
        for (QubitId s : succ[q]) {
            if (--indeg[s] == 0) ready.push(s);
        }
    }
    if (out.size() != indeg.size()) {
        for (const auto& [q, d] : indeg) {
            if (d > 0) {
                throw Error("measurement schedule cycle through qubit " + std::to_string(q));
            }
        }
    }
    return out;
}

const char* init_basis_name(InitBasis b) {
    switch (b) {
        case InitBasis::Zero: return "ZERO";
        case InitBasis::Plus: return "PLUS";
        case InitBasis::A: return "AA";
        case InitBasis::Y: return "YY";
        case InitBasis::Empty: return "EMPTY";
    }
    return "?";
}

namespace {

const char* circ_init_token(InitBasis b) {
    switch (b) {
        case InitBasis::Zero: return "0";
        case InitBasis::Plus: return "+";
        case InitBasis::A: return "A";
        case InitBasis::Y: return "Y";
        case InitBasis::Empty: return "";
    }
    return "";
}

std::string circ_meas_token(const Measurement& m) {
    std::string s;
    switch (m.kind) {
        case MeasKind::X: return "X";
        case MeasKind::Z: return "Z";
        case MeasKind::CondZX: s = "ZX"; break;
        case MeasKind::CondXZ: s = "XZ"; break;
        default: return "";
    }
    s += '(';
    for (size_t i = 0; i < m.deps.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(m.deps[i]);
    }
    s += ')';
    return s;
}

}  // namespace

std::string to_circ(const Circuit& c) {
    std::ostringstream out;
    for (const auto& [q, b] : c.inits) {
        if (b == InitBasis::Empty) continue;
        out << "init " << q << ' ' << circ_init_token(b) << '\n';
    }
    for (const GateOp& g : c.gates) {
        if (g.is_cnot()) {
            out << "cnot " << g.control() << ' ' << g.target() << '\n';
        } else {
            out << g.name;
            for (QubitId q : g.qubits) out << ' ' << q;
            out << '\n';
        }
    }
    for (const auto& [q, m] : order_measurements(c)) {
        if (m.kind == MeasKind::Empty) continue;
        out << "measure " << q << ' ' << circ_meas_token(m) << '\n';
    }
    return out.str();
}

namespace {

Measurement parse_meas_token(const std::string& tok, int line_no) {
    Measurement m;
    if (tok == "X") {
        m.kind = MeasKind::X;
        return m;
    }
    if (tok == "Z") {
        m.kind = MeasKind::Z;
        return m;
    }
    size_t open = tok.find('(');
    if (open == std::string::npos || tok.back() != ')') {
        throw Error("line " + std::to_string(line_no) + ": bad measurement basis '" + tok + "'");
    }
    std::string head = tok.substr(0, open);
    if (head == "ZX") {
        m.kind = MeasKind::CondZX;
    } else if (head == "XZ") {
        m.kind = MeasKind::CondXZ;
    } else {
        throw Error("line " + std::to_string(line_no) + ": bad measurement basis '" + tok + "'");
    }
    std::string deps = tok.substr(open + 1, tok.size() - open - 2);
    std::istringstream ds(deps);
    std::string item;
    while (std::getline(ds, item, ',')) {
        try {
            m.deps.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw Error("line " + std::to_string(line_no) + ": bad dependency '" + item + "'");
        }
    }
    if (m.deps.empty()) {
        throw Error("line " + std::to_string(line_no) + ": conditional basis without dependencies");
    }
    return m;
}

}  // namespace

Circuit parse_circ(const std::string& text) {
    Circuit c;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    auto bump = [&](QubitId q) { c.qubit_count = std::max(c.qubit_count, q); };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string cmd;
        if (!(ls >> cmd) || cmd[0] == '#') continue;
        if (cmd == "init") {
            QubitId q;
            std::string b;
            if (!(ls >> q >> b)) throw Error("line " + std::to_string(line_no) + ": bad init");
            InitBasis ib;
            if (b == "0") ib = InitBasis::Zero;
            else if (b == "+") ib = InitBasis::Plus;
            else if (b == "A") ib = InitBasis::A;
            else if (b == "Y") ib = InitBasis::Y;
            else throw Error("line " + std::to_string(line_no) + ": bad init basis '" + b + "'");
            if (c.inits.count(q)) {
                throw Error("line " + std::to_string(line_no) + ": qubit " + std::to_string(q) +
                            " initialised twice");
            }
            c.inits[q] = ib;
            bump(q);
        } else if (cmd == "cnot") {
            QubitId a, b;
            if (!(ls >> a >> b)) throw Error("line " + std::to_string(line_no) + ": bad cnot");
            c.gates.push_back(GateOp::make_cnot(a, b));
            bump(a);
            bump(b);
        } else if (cmd == "measure") {
            QubitId q;
            std::string b;
            if (!(ls >> q >> b)) throw Error("line " + std::to_string(line_no) + ": bad measure");
            if (c.measurements.count(q)) {
                throw Error("line " + std::to_string(line_no) + ": qubit " + std::to_string(q) +
                            " measured twice");
            }
            Measurement m = parse_meas_token(b, line_no);
            for (QubitId d : m.deps) c.schedule.emplace_back(d, q);
            c.measurements[q] = m;
            bump(q);
            for (QubitId d : m.deps) bump(d);
        } else {
            throw Error("line " + std::to_string(line_no) + ": unknown command '" + cmd + "'");
        }
    }
    c.check_well_formed();
    return c;
}

}  // namespace icm
