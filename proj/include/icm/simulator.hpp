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

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "icm/database.hpp"
#include "icm/transform.hpp"

namespace icm {

using Amp = std::complex<double>;

inline constexpr int kMaxSimQubits = 16;

// Dense statevector over 1-based qubits; qubit i is bit (i-1) of the index.
struct StateVector {
    int qubit_count = 0;
    std::vector<Amp> amps;

    static StateVector zeros(int qubit_count);
    double norm() const;
    void apply_cnot(QubitId control, QubitId target);
    void apply_1q(const std::array<Amp, 4>& u, QubitId q);  // row-major 2x2
};

// Post-selected measurement outcomes; unassigned measurements are sampled.
struct OutcomeAssignment {
    std::map<QubitId, int> fixed;
};

struct SimOptions {
    bool track_frame = false;  // resolve teleportation-block Pauli corrections
    std::uint64_t seed = 0;    // for sampled outcomes
};

struct SimResult {
    StateVector state;  // measured qubits are reset to |0>
    double acceptance = 1.0;  // product of post-selected projection norms
    std::map<QubitId, int> outcomes;
    std::map<QubitId, std::pair<int, int>> frame;  // qubit -> (x, z) flips
    int pending_p = 0;  // unresolved T-block P-corrections (simple mode)
};

// Product input state: init-annotated qubits per their basis, data qubits
// from `data` (default |0>).
StateVector make_input(const Circuit& c,
                       const std::map<QubitId, std::array<Amp, 2>>& data = {});

// Applies initial-state preparations, gates (CNOT and the single-qubit
// primitives) and measurements in schedule order. Conditional bases resolve
// to Z (CondZX) or X (CondXZ) when the XOR of their dependency outcomes is
// 1, and to the opposite basis otherwise. Measured qubits are projected,
// renormalised and reset to |0>.
SimResult simulate(const Circuit& c, const StateVector& input, const OutcomeAssignment& fixed,
                   const SimOptions& opts = {});

// As above, and with track_frame resolves each teleportation block's Pauli
// correction from the realized outcomes, commuting it through the trailing
// CNOT array onto the surviving qubits. Unresolved T-corrections are counted
// in pending_p; corrections that would reinterpret an already-consumed
// outcome are dropped (the deterministic mode resolves those in-circuit).
SimResult simulate(const IcmCircuit& icm, const StateVector& input,
                   const OutcomeAssignment& fixed, const SimOptions& opts = {});

// The outcome assignment under which every block realizes its named gate:
// all zeros, except T-dagger blocks (inverted interpretation) and the
// frame-free Hadamard branch.
OutcomeAssignment appropriate_outcomes(const IcmCircuit& icm);

// Small dense complex matrix (row-major), used for unitary extraction.
struct Unitary {
    int dim = 0;
    std::vector<Amp> m;

    Amp& at(int r, int c) { return m[static_cast<size_t>(r * dim + c)]; }
    const Amp& at(int r, int c) const { return m[static_cast<size_t>(r * dim + c)]; }
    static Unitary identity(int dim);
    Unitary mul(const Unitary& rhs) const;
    Unitary dagger() const;
    double max_dev_from_identity() const;
};

// |tr(U^dag V)| / dim; 1 iff U = V up to global phase.
double phase_fidelity(const Unitary& u, const Unitary& v);

// Matrix on designated data qubits, columns obtained by simulating all
// computational basis inputs under the given post-selection. Throws when the
// result is not unitary within 1e-9 (wrong decomposition or post-selection).
Unitary circuit_unitary(const Circuit& c, const OutcomeAssignment& fixed,
                        const std::vector<QubitId>& data_in, const std::vector<QubitId>& data_out);
Unitary circuit_unitary(const IcmCircuit& icm, const OutcomeAssignment& fixed,
                        bool frame_on = true);

struct DistillationResult {
    double mean_infidelity = 0.0;
    double acceptance_rate = 1.0;
};

enum class MagicKind { A, Y };

// Monte-Carlo over independent Z errors on each injected state of the
// AA/YY distiller, post-selecting runs whose final X-measurement syndrome
// matches the noiseless reference. Trials are stratified over the error
// weight so that the O(p^3) output infidelity is resolved at modest trial
// counts; estimates are unbiased up to the dropped O(p^6) strata.
DistillationResult distillation_infidelity(MagicKind kind, const Database& db, double p,
                                           int trials, std::uint64_t seed);

// Probability that all k duplicate distillers reject (failure to produce a
// distilled state), estimated by direct sampling.
double duplicate_failure_probability(MagicKind kind, const Database& db, double p, int copies,
                                     int trials, std::uint64_t seed);

}  // namespace icm
