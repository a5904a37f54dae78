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
// Test-only oracles, kept independent of the library's simulation path:
// dense matrix products over explicit gate embeddings, a longest-path
// T-depth computation over the gate DAG, and analytic gate matrices.

#pragma once

#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "icm/circuit.hpp"

namespace oracle {

using C = std::complex<double>;
using Mat = std::vector<std::vector<C>>;

inline Mat eye(int dim) {
    Mat m(dim, std::vector<C>(dim));
    for (int i = 0; i < dim; ++i) m[i][i] = 1.0;
    return m;
}

inline Mat mul(const Mat& a, const Mat& b) {
    int n = static_cast<int>(a.size());
    Mat out(n, std::vector<C>(n));
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            if (a[i][k] == C{}) continue;
            for (int j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    }
    return out;
}

inline double phase_fid(const Mat& a, const Mat& b) {
    C tr{};
    int n = static_cast<int>(a.size());
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) tr += std::conj(a[k][i]) * b[k][i];
    }
    return std::abs(tr) / n;
}

inline Mat gate2(const std::string& name) {
    const double s = std::numbers::sqrt2 / 2;
    if (name == "HGATE") return {{s, s}, {s, -s}};
    if (name == "TGATE") return {{1, 0}, {0, std::polar(1.0, std::numbers::pi / 4)}};
    if (name == "TDAG") return {{1, 0}, {0, std::polar(1.0, -std::numbers::pi / 4)}};
    if (name == "PGATE") return {{1, 0}, {0, C(0, 1)}};
    if (name == "PDAG") return {{1, 0}, {0, C(0, -1)}};
    if (name == "XGATE") return {{0, 1}, {1, 0}};
    if (name == "ZGATE") return {{1, 0}, {0, -1}};
    throw std::runtime_error("oracle: unknown gate " + name);
}

// Embeds a single-qubit gate on qubit q (1-based, bit q-1) into dim 2^n.
inline Mat embed1(const Mat& u, int q, int n) {
    int dim = 1 << n;
    Mat out(dim, std::vector<C>(dim));
    int b = 1 << (q - 1);
    for (int i = 0; i < dim; ++i) {
        int i0 = i & ~b;
        int bit = (i & b) ? 1 : 0;
        out[i0][i] += u[0][bit];
        out[i0 | b][i] += u[1][bit];
    }
    return out;
}

inline Mat embed_cnot(int c, int t, int n) {
    int dim = 1 << n;
    Mat out(dim, std::vector<C>(dim));
    int cb = 1 << (c - 1), tb = 1 << (t - 1);
    for (int i = 0; i < dim; ++i) out[(i & cb) ? i ^ tb : i][i] = 1.0;
    return out;
}

// Full unitary of a primitive circuit, by explicit matrix products.
inline Mat circuit_matrix(const icm::Circuit& c) {
    Mat u = eye(1 << c.qubit_count);
    for (const icm::GateOp& g : c.gates) {
        Mat m = g.is_cnot() ? embed_cnot(g.control(), g.target(), c.qubit_count)
                            : embed1(gate2(g.name), g.qubits[0], c.qubit_count);
        u = mul(m, u);
    }
    return u;
}

inline Mat analytic_toffoli() {
    Mat m(8, std::vector<C>(8));
    for (int i = 0; i < 8; ++i) m[(i & 3) == 3 ? i ^ 4 : i][i] = 1.0;
    return m;
}

inline Mat analytic_cv() {
    Mat m = eye(4);
    m[1][1] = C(0.5, 0.5);
    m[1][3] = C(0.5, -0.5);
    m[3][1] = C(0.5, -0.5);
    m[3][3] = C(0.5, 0.5);
    return m;
}

// Longest chain of T gates over the explicit gate-dependency DAG (edge when
// two gates share a qubit); memoized longest path counting T/TDAG nodes.
inline int t_depth_longest_path(const icm::Circuit& c) {
    int n = static_cast<int>(c.gates.size());
    std::vector<std::vector<int>> succ(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            bool share = false;
            for (icm::QubitId a : c.gates[i].qubits) {
                for (icm::QubitId b : c.gates[j].qubits) share |= a == b;
            }
            if (share) succ[i].push_back(j);
        }
    }
    std::vector<int> memo(n, -1);
    std::function<int(int)> depth = [&](int i) -> int {
        if (memo[i] >= 0) return memo[i];
        int best = 0;
        for (int j : succ[i]) best = std::max(best, depth(j));
        bool is_t = c.gates[i].name == "TGATE" || c.gates[i].name == "TDAG";
        return memo[i] = best + (is_t ? 1 : 0);
    };
    int best = 0;
    for (int i = 0; i < n; ++i) best = std::max(best, depth(i));
    return best;
}

// Random primitive/high-level circuits for fuzzing.
inline icm::Circuit random_circuit(std::mt19937_64& rng, int max_qubits, int max_gates,
                                   const std::vector<std::pair<std::string, int>>& gateset) {
    std::uniform_int_distribution<int> nq(2, max_qubits);
    icm::Circuit c;
    c.qubit_count = nq(rng);
    std::uniform_int_distribution<int> ng(1, max_gates);
    int gates = ng(rng);
    std::uniform_int_distribution<size_t> pick(0, gateset.size() - 1);
    for (int i = 0; i < gates; ++i) {
        auto [name, arity] = gateset[pick(rng)];
        if (arity > c.qubit_count) {
            --i;
            continue;
        }
        std::vector<icm::QubitId> qs;
        while (static_cast<int>(qs.size()) < arity) {
            std::uniform_int_distribution<int> q(1, c.qubit_count);
            int cand = q(rng);
            bool dup = false;
            for (icm::QubitId u : qs) dup |= u == cand;
            if (!dup) qs.push_back(cand);
        }
        if (name == "CNOT") c.gates.push_back(icm::GateOp::make_cnot(qs[0], qs[1]));
        else c.gates.push_back(icm::GateOp{name, qs});
    }
    return c;
}

}  // namespace oracle
