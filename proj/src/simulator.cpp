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

#include "icm/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace icm {

namespace {

constexpr double kSqrtHalf = 0.70710678118654752440;

const std::array<Amp, 4> kH = {kSqrtHalf, kSqrtHalf, kSqrtHalf, -kSqrtHalf};
const std::array<Amp, 4> kX = {0, 1, 1, 0};
const std::array<Amp, 4> kZ = {1, 0, 0, -1};
const std::array<Amp, 4> kP = {1, 0, 0, Amp(0, 1)};
const std::array<Amp, 4> kPd = {1, 0, 0, Amp(0, -1)};
const std::array<Amp, 4> kT = {1, 0, 0, std::polar(1.0, std::numbers::pi / 4)};
const std::array<Amp, 4> kTd = {1, 0, 0, std::polar(1.0, -std::numbers::pi / 4)};

}  // namespace

StateVector StateVector::zeros(int qubit_count) {
    if (qubit_count < 0 || qubit_count > kMaxSimQubits) {
        throw Error("simulator qubit budget exceeded: " + std::to_string(qubit_count) + " > " +
                    std::to_string(kMaxSimQubits));
    }
    StateVector v;
    v.qubit_count = qubit_count;
    v.amps.assign(size_t{1} << qubit_count, Amp{});
    v.amps[0] = 1.0;
    return v;
}

double StateVector::norm() const {
    double s = 0;
    for (const Amp& a : amps) s += std::norm(a);
    return std::sqrt(s);
}

void StateVector::apply_cnot(QubitId control, QubitId target) {
    const size_t cb = size_t{1} << (control - 1);
    const size_t tb = size_t{1} << (target - 1);
    for (size_t i = 0; i < amps.size(); ++i) {
        if ((i & cb) && !(i & tb)) std::swap(amps[i], amps[i | tb]);
    }
}

void StateVector::apply_1q(const std::array<Amp, 4>& u, QubitId q) {
    const size_t b = size_t{1} << (q - 1);
    for (size_t i = 0; i < amps.size(); ++i) {
        if (i & b) continue;
        Amp a0 = amps[i], a1 = amps[i | b];
        amps[i] = u[0] * a0 + u[1] * a1;
        amps[i | b] = u[2] * a0 + u[3] * a1;
    }
}

StateVector make_input(const Circuit& c, const std::map<QubitId, std::array<Amp, 2>>& data) {
    StateVector v = StateVector::zeros(c.qubit_count);
    for (const auto& [q, st] : data) {
        if (q < 1 || q > c.qubit_count) throw Error("data qubit outside circuit");
        if (c.init_of(q) != InitBasis::Empty) {
            throw Error("qubit " + std::to_string(q) + " is initialised by the circuit");
        }
        // product load: amplitude(bit=0) = st[0], amplitude(bit=1) = st[1]
        const size_t b = size_t{1} << (q - 1);
        for (size_t i = 0; i < v.amps.size(); ++i) {
            if (i & b) continue;
            Amp base = v.amps[i];
            v.amps[i] = base * st[0];
            v.amps[i | b] = base * st[1];
        }
    }
    return v;
}

namespace {

void prepare_inits(const Circuit& c, StateVector& v) {
    for (const auto& [q, b] : c.inits) {
        switch (b) {
            case InitBasis::Zero:
            case InitBasis::Empty:
                break;
            case InitBasis::Plus:
                v.apply_1q(kH, q);
                break;
            case InitBasis::A:
                v.apply_1q(kH, q);
                v.apply_1q(kT, q);
                break;
            case InitBasis::Y:
                v.apply_1q(kH, q);
                v.apply_1q(kP, q);
                break;
        }
    }
}

void apply_named(const GateOp& g, StateVector& v) {
    if (g.is_cnot()) {
        v.apply_cnot(g.control(), g.target());
        return;
    }
    QubitId q = g.qubits.at(0);
    if (g.name == "TGATE") v.apply_1q(kT, q);
    else if (g.name == "TDAG") v.apply_1q(kTd, q);
    else if (g.name == "HGATE") v.apply_1q(kH, q);
    else if (g.name == "PGATE") v.apply_1q(kP, q);
    else if (g.name == "PDAG") v.apply_1q(kPd, q);
    else if (g.name == "XGATE") v.apply_1q(kX, q);
    else if (g.name == "ZGATE") v.apply_1q(kZ, q);
    else throw Error("simulator: unknown gate '" + g.name + "'");
}

// Projects qubit q onto Z- or X-basis outcome o, renormalises and resets the
// qubit to |0>. Returns the branch probability.
double project_reset(StateVector& v, QubitId q, bool x_basis, int o) {
    if (x_basis) v.apply_1q(kH, q);
    const size_t b = size_t{1} << (q - 1);
    double p = 0;
    for (size_t i = 0; i < v.amps.size(); ++i) {
        if (((i & b) != 0) == (o == 1)) p += std::norm(v.amps[i]);
    }
    if (p < 1e-300) return 0.0;
    const double inv = 1.0 / std::sqrt(p);
    for (size_t i = 0; i < v.amps.size(); ++i) {
        if (((i & b) != 0) != (o == 1)) {
            v.amps[i] = 0;
        } else {
            v.amps[i] *= inv;
        }
    }
    if (o == 1) {  // shift amplitude to the bit-0 half
        for (size_t i = 0; i < v.amps.size(); ++i) {
            if (i & b) {
                v.amps[i & ~b] = v.amps[i];
                v.amps[i] = 0;
            }
        }
    }
    return p;
}

}  // namespace

SimResult simulate(const Circuit& c, const StateVector& input, const OutcomeAssignment& fixed,
                   const SimOptions& opts) {
    if (c.qubit_count > kMaxSimQubits) {
        throw Error("simulator qubit budget exceeded: " + std::to_string(c.qubit_count) +
                    " qubits");
    }
    if (input.qubit_count != c.qubit_count) throw Error("input state width mismatch");
    for (const auto& [q, o] : fixed.fixed) {
        if (!c.measurements.count(q) || c.meas_of(q).kind == MeasKind::Empty) {
            throw Error("post-selected qubit " + std::to_string(q) + " is not measured");
        }
        if (o != 0 && o != 1) throw Error("outcome must be 0 or 1");
    }
    SimResult r;
    r.state = input;
    prepare_inits(c, r.state);
    for (const GateOp& g : c.gates) apply_named(g, r.state);

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (const auto& [q, m] : order_measurements(c)) {
        if (m.kind == MeasKind::Empty) continue;
        bool x_basis;
        switch (m.kind) {
            case MeasKind::X: x_basis = true; break;
            case MeasKind::Z: x_basis = false; break;
            case MeasKind::CondZX:
            case MeasKind::CondXZ: {
                int sel = 0;
                for (QubitId d : m.deps) {
                    auto it = r.outcomes.find(d);
                    if (it == r.outcomes.end()) {
                        throw Error("conditional measurement on qubit " + std::to_string(q) +
                                    " depends on unmeasured qubit " + std::to_string(d));
                    }
                    sel ^= it->second;
                }
                x_basis = (m.kind == MeasKind::CondZX) ? (sel == 0) : (sel == 1);
                break;
            }
            default:
                throw Error("qubit " + std::to_string(q) +
                            " carries an intermediate measurement basis");
        }
        auto it = fixed.fixed.find(q);
        if (it != fixed.fixed.end()) {
            double p = project_reset(r.state, q, x_basis, it->second);
            if (p == 0.0) throw Error("zero-probability post-selection on qubit " + std::to_string(q));
            r.acceptance *= p;
            r.outcomes[q] = it->second;
        } else {
            // sample the branch
            StateVector probe = r.state;
            double p1 = 0;
            {
                if (x_basis) probe.apply_1q(kH, q);
                const size_t b = size_t{1} << (q - 1);
                for (size_t i = 0; i < probe.amps.size(); ++i) {
                    if (i & b) p1 += std::norm(probe.amps[i]);
                }
            }
            int o = uni(rng) < p1 ? 1 : 0;
            project_reset(r.state, q, x_basis, o);
            r.outcomes[q] = o;
        }
    }
    return r;
}

namespace {

int outcome_of(const SimResult& r, QubitId q) {
    auto it = r.outcomes.find(q);
    return it == r.outcomes.end() ? 0 : it->second;
}

// Pauli-frame correction of one teleportation block from its realized
// outcomes; derived from the block algebra and checked branch-by-branch by
// the test suite.
void resolve_block(const TeleportBlock& b, SimResult& r) {
    auto add = [&](QubitId q, int x, int z) {
        auto& f = r.frame[q];
        f.first ^= x;
        f.second ^= z;
    };
    switch (b.kind) {
        case BlockKind::TeleportT: {
            int m = outcome_of(r, b.qubits[0]);
            add(b.qubits[1], m, 0);
            r.pending_p += m;  // outcome 1 needs an active P on the output
            break;
        }
        case BlockKind::TeleportTdag: {
            int m = outcome_of(r, b.qubits[0]);
            add(b.qubits[1], m, 0);
            r.pending_p += 1 - m;  // inverted interpretation
            break;
        }
        case BlockKind::TeleportP: {
            int m = outcome_of(r, b.qubits[0]);
            add(b.qubits[1], m, m);  // Y correction
            break;
        }
        case BlockKind::TeleportPdag: {
            int m = outcome_of(r, b.qubits[0]);
            add(b.qubits[1], m, 1 - m);
            break;
        }
        case BlockKind::Hadamard: {
            int m1 = outcome_of(r, b.qubits[0]);
            int m2 = outcome_of(r, b.qubits[1]);
            int m3 = outcome_of(r, b.qubits[2]);
            add(b.qubits[3], 1 ^ m1 ^ m3, 1 ^ m2 ^ m3);
            break;
        }
        case BlockKind::DetT: {
            int m1 = outcome_of(r, b.qubits[0]);
            int o2 = outcome_of(r, b.qubits[1]);
            int o3 = outcome_of(r, b.qubits[2]);
            int o4 = outcome_of(r, b.qubits[3]);
            int o5 = outcome_of(r, b.qubits[4]);
            if (m1 == 0) add(b.qubits[5], o3 ^ o4, o2 ^ o5);
            else add(b.qubits[5], 1 ^ o2 ^ o5, 1 ^ o2 ^ o3 ^ o4);
            break;
        }
        case BlockKind::DetTdag: {
            int m1 = outcome_of(r, b.qubits[0]);
            int o2 = outcome_of(r, b.qubits[1]);
            int o3 = outcome_of(r, b.qubits[2]);
            int o4 = outcome_of(r, b.qubits[3]);
            int o5 = outcome_of(r, b.qubits[4]);
            if (m1 == 1) add(b.qubits[5], 1 ^ o3 ^ o4, o2 ^ o5);
            else add(b.qubits[5], o2 ^ o5, 1 ^ o2 ^ o3 ^ o4);
            break;
        }
        case BlockKind::PauliX:
            add(b.qubits[0], 1, 0);
            break;
        case BlockKind::PauliZ:
            add(b.qubits[0], 0, 1);
            break;
    }
}

}  // namespace

SimResult simulate(const IcmCircuit& icm, const StateVector& input,
                   const OutcomeAssignment& fixed, const SimOptions& opts) {
    SimResult r = simulate(icm.circuit, input, fixed, opts);
    if (!opts.track_frame) return r;
    const auto& gates = icm.circuit.gates;
    for (const TeleportBlock& b : icm.blocks) {
        SimResult local;
        local.outcomes = r.outcomes;
        resolve_block(b, local);
        r.pending_p += local.pending_p;
        // Commute the block's correction through the CNOT array that follows
        // its anchor: X on a control copies onto the target, Z on a target
        // copies onto the control.
        std::map<QubitId, std::pair<int, int>> pauli = local.frame;
        for (size_t gi = static_cast<size_t>(b.anchor); gi < gates.size(); ++gi) {
            if (!gates[gi].is_cnot()) continue;
            QubitId c = gates[gi].control(), t = gates[gi].target();
            auto& fc = pauli[c];
            auto& ft = pauli[t];
            ft.first ^= fc.first;
            fc.second ^= ft.second;
        }
        for (const auto& [q, f] : pauli) {
            if (f.first == 0 && f.second == 0) continue;
            auto& acc = r.frame[q];
            acc.first ^= f.first;
            acc.second ^= f.second;
        }
    }
    for (const auto& [q, f] : r.frame) {
        if (f.first == 0 && f.second == 0) continue;
        auto mit = icm.circuit.measurements.find(q);
        if (mit != icm.circuit.measurements.end() && mit->second.kind != MeasKind::Empty) {
            // Corrections landing on consumed qubits reinterpret outcomes
            // the following blocks already used; the deterministic mode
            // resolves those in-circuit. Dropped here.
            continue;
        }
        if (f.first) r.state.apply_1q(kX, q);
        if (f.second) r.state.apply_1q(kZ, q);
    }
    return r;
}

OutcomeAssignment appropriate_outcomes(const IcmCircuit& icm) {
    OutcomeAssignment a;
    for (const auto& [q, m] : icm.circuit.measurements) {
        if (m.kind != MeasKind::Empty) a.fixed[q] = 0;
    }
    for (const TeleportBlock& b : icm.blocks) {
        switch (b.kind) {
            case BlockKind::TeleportTdag:
                a.fixed[b.qubits[0]] = 1;  // inverted interpretation
                break;
            case BlockKind::Hadamard:
                a.fixed[b.qubits[2]] = 1;  // frame-free branch (0,0,1)
                break;
            default:
                break;
        }
    }
    return a;
}

Unitary Unitary::identity(int dim) {
    Unitary u;
    u.dim = dim;
    u.m.assign(static_cast<size_t>(dim) * dim, Amp{});
    for (int i = 0; i < dim; ++i) u.at(i, i) = 1.0;
    return u;
}

Unitary Unitary::mul(const Unitary& rhs) const {
    Unitary out;
    out.dim = dim;
    out.m.assign(m.size(), Amp{});
    for (int i = 0; i < dim; ++i) {
        for (int k = 0; k < dim; ++k) {
            Amp a = at(i, k);
            if (a == Amp{}) continue;
            for (int j = 0; j < dim; ++j) out.at(i, j) += a * rhs.at(k, j);
        }
    }
    return out;
}

Unitary Unitary::dagger() const {
    Unitary out;
    out.dim = dim;
    out.m.assign(m.size(), Amp{});
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) out.at(i, j) = std::conj(at(j, i));
    }
    return out;
}

double Unitary::max_dev_from_identity() const {
    double dev = 0;
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            dev = std::max(dev, std::abs(at(i, j) - (i == j ? Amp{1} : Amp{})));
        }
    }
    return dev;
}

double phase_fidelity(const Unitary& u, const Unitary& v) {
    Amp tr{};
    Unitary p = u.dagger().mul(v);
    for (int i = 0; i < p.dim; ++i) tr += p.at(i, i);
    return std::abs(tr) / p.dim;
}

namespace {

Unitary extract_unitary(const Circuit& c, const OutcomeAssignment& fixed,
                        const std::vector<QubitId>& data_in, const std::vector<QubitId>& data_out,
                        const IcmCircuit* icm, bool frame_on) {
    if (data_in.size() != data_out.size()) throw Error("data in/out width mismatch");
    const int k = static_cast<int>(data_in.size());
    const int dim = 1 << k;
    Unitary u;
    u.dim = dim;
    u.m.assign(static_cast<size_t>(dim) * dim, Amp{});
    double acc0 = -1;
    for (int col = 0; col < dim; ++col) {
        std::map<QubitId, std::array<Amp, 2>> data;
        for (int b = 0; b < k; ++b) {
            bool one = (col >> b) & 1;
            data[data_in[static_cast<size_t>(b)]] = one ? std::array<Amp, 2>{Amp{0}, Amp{1}}
                                                        : std::array<Amp, 2>{Amp{1}, Amp{0}};
        }
        SimOptions so;
        so.track_frame = frame_on;
        SimResult r = icm ? simulate(*icm, make_input(c, data), fixed, so)
                          : simulate(c, make_input(c, data), fixed, so);
        if (acc0 < 0) acc0 = r.acceptance;
        // all measured qubits are reset, so the state lives on data_out bits
        size_t out_mask = 0;
        for (QubitId q : data_out) out_mask |= size_t{1} << (q - 1);
        for (size_t i = 0; i < r.state.amps.size(); ++i) {
            if (r.state.amps[i] == Amp{}) continue;
            if ((i & ~out_mask) != 0) {
                if (std::abs(r.state.amps[i]) > 1e-9) {
                    throw Error("residual amplitude outside the designated data qubits");
                }
                continue;
            }
            int row = 0;
            for (int b = 0; b < k; ++b) {
                if (i & (size_t{1} << (data_out[static_cast<size_t>(b)] - 1))) row |= 1 << b;
            }
            u.at(row, col) = r.state.amps[i];
        }
    }
    double dev = u.dagger().mul(u).max_dev_from_identity();
    if (dev > 1e-9) {
        throw Error("extracted matrix is not unitary (deviation " + std::to_string(dev) +
                    "); wrong decomposition or post-selection");
    }
    return u;
}

}  // namespace

Unitary circuit_unitary(const Circuit& c, const OutcomeAssignment& fixed,
                        const std::vector<QubitId>& data_in,
                        const std::vector<QubitId>& data_out) {
    return extract_unitary(c, fixed, data_in, data_out, nullptr, false);
}

Unitary circuit_unitary(const IcmCircuit& icm, const OutcomeAssignment& fixed, bool frame_on) {
    std::vector<QubitId> in = icm.data_wires;
    std::vector<QubitId> out;
    for (QubitId w : in) out.push_back(icm.wire_out.at(w));
    return extract_unitary(icm.circuit, fixed, in, out, &icm, frame_on);
}

// ----------------------------------------------------------- distillation MC

namespace {

struct Distiller {
    int width = 0;        // total qubits (code block + output)
    int out_col = 0;      // 1-based output column
    std::vector<QubitId> code;  // measured code columns
    std::vector<size_t> check_masks;
    size_t logical_mask = 0;
    StateVector noiseless;      // state after encoder and transversal rotation
    std::vector<int> ref_syndrome;
    std::array<int, 2> correction;  // logical parity -> pauli index I=0,X=1,Z=2,XZ=3
    std::array<Amp, 2> target;

    size_t code_mask() const {
        size_t m = 0;
        for (QubitId q : code) m |= size_t{1} << (q - 1);
        return m;
    }
};

std::array<Amp, 2> apply_pauli(int pauli, const std::array<Amp, 2>& s) {
    std::array<Amp, 2> r = s;
    if (pauli & 1) std::swap(r[0], r[1]);   // X
    if (pauli & 2) r[1] = -r[1];            // Z
    return r;
}

struct Trial {
    std::vector<int> syndrome;
    int logical = 0;
    std::array<Amp, 2> out;
};

Trial run_trial(const Distiller& d, size_t z_pattern, std::mt19937_64& rng) {
    StateVector v = d.noiseless;
    // injected-state Z errors commute onto the code qubits
    if (z_pattern) {
        for (size_t i = 0; i < v.amps.size(); ++i) {
            if (std::popcount(i & z_pattern) & 1) v.amps[i] = -v.amps[i];
        }
    }
    for (QubitId q : d.code) v.apply_1q(kH, q);
    // sample the joint X-outcome string
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double r = uni(rng);
    double acc = 0;
    size_t idx = 0;
    for (size_t i = 0; i < v.amps.size(); ++i) {
        acc += std::norm(v.amps[i]);
        if (acc >= r) {
            idx = i;
            break;
        }
    }
    size_t s = idx & d.code_mask();
    Trial t;
    for (size_t mask : d.check_masks) t.syndrome.push_back(std::popcount(s & mask) & 1);
    t.logical = std::popcount(s & d.logical_mask) & 1;
    const size_t ob = size_t{1} << (d.out_col - 1);
    Amp c0 = v.amps[s];
    Amp c1 = v.amps[s | ob];
    double n = std::sqrt(std::norm(c0) + std::norm(c1));
    t.out = {c0 / n, c1 / n};
    return t;
}

Distiller build_distiller(MagicKind kind, const Database& db) {
    const char* name = kind == MagicKind::A ? "AA" : "YY";
    const DecompEntry* e = db.find_any(name);
    if (e == nullptr || e->kind != DecompKind::Icmdist) {
        throw Error(std::string("missing icmdist entry '") + name + "'");
    }
    Distiller d;
    d.width = static_cast<int>(e->init_row.size());
    if (d.width > kMaxSimQubits) throw Error("distiller exceeds the simulator qubit budget");
    for (int c = 1; c <= d.width; ++c) {
        MeasKind m = e->meas_row[static_cast<size_t>(c - 1)];
        if (m == MeasKind::ABasis || m == MeasKind::YBasis) d.code.push_back(c);
        else if (m == MeasKind::Empty) d.out_col = c;
    }
    if (d.out_col == 0) throw Error("distiller entry has no output column");

    // build the noiseless pre-measurement state
    StateVector v = StateVector::zeros(d.width);
    for (int c = 1; c <= d.width; ++c) {
        if (e->init_row[static_cast<size_t>(c - 1)] == InitBasis::Plus) v.apply_1q(kH, c);
    }
    for (const CnotRow& row : e->cnot_rows) {
        for (const GateOp& g : expand_fanout(row)) v.apply_cnot(g.control(), g.target());
    }
    for (QubitId q : d.code) v.apply_1q(kind == MagicKind::A ? kT : kP, q);
    d.noiseless = std::move(v);

    // deterministic check parities: X-stabiliser supports propagated through
    // the encoder (control in support toggles the target), seeded at each
    // |+> column; the output column's propagated support restricted to the
    // code block is the logical representative.
    std::map<int, std::set<int>> sup;
    for (int c = 1; c <= d.width; ++c) {
        if (e->init_row[static_cast<size_t>(c - 1)] == InitBasis::Plus && c != d.out_col) {
            sup[c] = {c};
        }
    }
    sup[d.out_col] = {d.out_col};
    for (const CnotRow& row : e->cnot_rows) {
        for (const GateOp& g : expand_fanout(row)) {
            for (auto& [seed, s] : sup) {
                if (s.count(g.control())) {
                    if (!s.insert(g.target()).second) s.erase(g.target());
                }
            }
        }
    }
    for (auto& [seed, s] : sup) {
        size_t mask = 0;
        for (int q : s) {
            if (q != d.out_col) mask |= size_t{1} << (q - 1);
        }
        if (seed == d.out_col) d.logical_mask = mask;
        else d.check_masks.push_back(mask);
    }

    // reference syndrome and logical->Pauli correction table from noiseless
    // runs; both must be consistent or the entry itself is wrong.
    d.target = kind == MagicKind::A
                   ? std::array<Amp, 2>{kSqrtHalf, std::polar(kSqrtHalf, std::numbers::pi / 4)}
                   : std::array<Amp, 2>{kSqrtHalf, Amp(0, kSqrtHalf)};
    d.correction = {-1, -1};
    std::mt19937_64 rng(0x1c3u);
    for (int it = 0; it < 64; ++it) {
        Trial t = run_trial(d, 0, rng);
        if (d.ref_syndrome.empty()) {
            d.ref_syndrome = t.syndrome;
        } else if (t.syndrome != d.ref_syndrome) {
            throw Error("distiller syndrome is not deterministic without errors");
        }
        int pauli = -1;
        for (int pc = 0; pc < 4; ++pc) {
            std::array<Amp, 2> fixed = apply_pauli(pc, t.out);
            Amp ov = std::conj(d.target[0]) * fixed[0] + std::conj(d.target[1]) * fixed[1];
            if (std::abs(std::abs(ov) - 1.0) < 1e-9) {
                pauli = pc;
                break;
            }
        }
        if (pauli < 0) throw Error("distiller output is not Pauli-equivalent to the target state");
        int& slot = d.correction[static_cast<size_t>(t.logical)];
        if (slot >= 0 && slot != pauli) throw Error("inconsistent distiller correction table");
        slot = pauli;
        if (d.correction[0] >= 0 && d.correction[1] >= 0 && it > 16) break;
    }
    if (d.correction[0] < 0 || d.correction[1] < 0) {
        throw Error("distiller correction table incomplete");
    }
    return d;
}

double ln_choose(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// uniformly random weight-w subset of n sites, as a bitmask over `code`
size_t random_pattern(const std::vector<QubitId>& code, int w, std::mt19937_64& rng) {
    std::vector<int> idx(code.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    size_t mask = 0;
    for (int j = 0; j < w; ++j) {
        std::uniform_int_distribution<size_t> pick(j, idx.size() - 1);
        std::swap(idx[static_cast<size_t>(j)], idx[pick(rng)]);
        mask |= size_t{1} << (code[static_cast<size_t>(idx[static_cast<size_t>(j)])] - 1);
    }
    return mask;
}

}  // namespace

DistillationResult distillation_infidelity(MagicKind kind, const Database& db, double p,
                                           int trials, std::uint64_t seed) {
    if (p < 0 || p >= 1) throw Error("error probability outside [0,1)");
    if (trials < 1) throw Error("at least one trial required");
    Distiller d = build_distiller(kind, db);
    const int n = static_cast<int>(d.code.size());
    std::mt19937_64 rng(seed);

    // Stratify over the error weight: strata above w_max carry O(p^{w_max+1})
    // probability and are dropped.
    const int w_max = std::min(n, 5);
    double num = 0, den = 0;
    for (int w = 0; w <= w_max; ++w) {
        double stratum_p =
            p == 0 ? (w == 0 ? 1.0 : 0.0)
                   : std::exp(ln_choose(n, w) + w * std::log(p) + (n - w) * std::log1p(-p));
        if (stratum_p == 0.0) continue;
        int n_trials = std::max(1, trials / (w_max + 1));
        double acc_sum = 0, infid_sum = 0;
        for (int t = 0; t < n_trials; ++t) {
            size_t pattern = random_pattern(d.code, w, rng);
            Trial tr = run_trial(d, pattern, rng);
            if (tr.syndrome != d.ref_syndrome) continue;
            acc_sum += 1;
            std::array<Amp, 2> fixed =
                apply_pauli(d.correction[static_cast<size_t>(tr.logical)], tr.out);
            Amp ov = std::conj(d.target[0]) * fixed[0] + std::conj(d.target[1]) * fixed[1];
            infid_sum += std::max(0.0, 1.0 - std::norm(ov));
        }
        num += stratum_p * infid_sum / n_trials;
        den += stratum_p * acc_sum / n_trials;
    }
    DistillationResult r;
    r.acceptance_rate = den;
    r.mean_infidelity = den > 0 ? num / den : 0.0;
    return r;
}

double duplicate_failure_probability(MagicKind kind, const Database& db, double p, int copies,
                                     int trials, std::uint64_t seed) {
    if (copies < 1) throw Error("at least one distiller copy required");
    Distiller d = build_distiller(kind, db);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int failures = 0;
    for (int t = 0; t < trials; ++t) {
        bool any_ok = false;
        for (int c = 0; c < copies && !any_ok; ++c) {
            size_t pattern = 0;
            for (QubitId q : d.code) {
                if (uni(rng) < p) pattern |= size_t{1} << (q - 1);
            }
            Trial tr = run_trial(d, pattern, rng);
            any_ok = tr.syndrome == d.ref_syndrome;
        }
        if (!any_ok) ++failures;
    }
    return static_cast<double>(failures) / trials;
}

}  // namespace icm
