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

#include "icm/unitary.hpp"

#include <cmath>
#include <cstdint>
#include <deque>
#include <numbers>
#include <sstream>
#include <unordered_map>

namespace icm {

namespace {

constexpr double kSqrtHalf = 0.70710678118654752440;

// lexicographic generator order fixes BFS tie-breaking
const std::vector<std::string> kGenerators = {"H", "P", "Pdag", "T", "Tdag", "X", "Z"};

Matrix2 gen_matrix(const std::string& n) {
    if (n == "H") return {kSqrtHalf, kSqrtHalf, kSqrtHalf, -kSqrtHalf};
    if (n == "P") return {1, 0, 0, Complex(0, 1)};
    if (n == "Pdag") return {1, 0, 0, Complex(0, -1)};
    if (n == "T") return {1, 0, 0, std::polar(1.0, std::numbers::pi / 4)};
    if (n == "Tdag") return {1, 0, 0, std::polar(1.0, -std::numbers::pi / 4)};
    if (n == "X") return {0, 1, 1, 0};
    if (n == "Z") return {1, 0, 0, -1};
    throw Error("unknown generator '" + n + "'");
}

// Global-phase canonical form: the first entry of magnitude > eps is made
// real positive; components snapped to a coarse grid for hashing.
struct CanonKey {
    std::array<std::int64_t, 8> v;
    bool operator==(const CanonKey&) const = default;
};

struct CanonKeyHash {
    size_t operator()(const CanonKey& k) const {
        size_t h = 0xcbf29ce484222325ull;
        for (std::int64_t x : k.v) {
            h ^= static_cast<size_t>(x);
            h *= 0x100000001b3ull;
        }
        return h;
    }
};

Matrix2 canonicalize(const Matrix2& m) {
    for (const Complex& c : m) {
        if (std::abs(c) > 1e-8) {
            Complex ph = std::conj(c) / std::abs(c);
            Matrix2 out = m;
            for (Complex& o : out) o *= ph;
            return out;
        }
    }
    return m;
}

CanonKey key_of(const Matrix2& m) {
    Matrix2 c = canonicalize(m);
    CanonKey k{};
    for (size_t i = 0; i < 4; ++i) {
        k.v[2 * i] = std::llround(c[i].real() * 1e8);
        k.v[2 * i + 1] = std::llround(c[i].imag() * 1e8);
    }
    return k;
}

ApproximationHook& hook_slot() {
    static ApproximationHook hook;
    return hook;
}

}  // namespace

Matrix2 generator_matrix(const std::string& name) { return gen_matrix(name); }

Matrix2 mat_mul(const Matrix2& a, const Matrix2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

double phase_aligned_distance(const Matrix2& a, const Matrix2& b, Complex* phase) {
    Complex s{};
    for (size_t i = 0; i < 4; ++i) s += std::conj(b[i]) * a[i];
    Complex ph = std::abs(s) > 1e-12 ? s / std::abs(s) : Complex{1};
    if (phase != nullptr) *phase = ph;
    double dist = 0;
    for (size_t i = 0; i < 4; ++i) dist = std::max(dist, std::abs(a[i] - ph * b[i]));
    return dist;
}

std::vector<UnitarySpec> parse_unitary_specs(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> lines;
    std::string raw;
    while (std::getline(in, raw)) {
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (raw.find_first_not_of(" \t") == std::string::npos) continue;
        lines.push_back(raw);
    }
    if (lines.empty()) throw Error("unitary spec file is empty");
    size_t count;
    try {
        count = static_cast<size_t>(std::stoul(lines[0]));
    } catch (const std::exception&) {
        throw Error("unitary spec file: bad gate count '" + lines[0] + "'");
    }
    if (lines.size() != 1 + count * 5) {
        throw Error("unitary spec file: header says " + std::to_string(count) + " gates but " +
                    std::to_string(lines.size() - 1) + " body lines were found");
    }
    // polar pair with an optional detached sign token before the radius
    auto parse_polar = [&](const std::string& line, const std::string& gate) -> Complex {
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        std::vector<double> vals;
        double sign = 1.0;
        for (const std::string& tok : toks) {
            if (tok == "-") {
                sign = -sign;
                continue;
            }
            if (tok == "+") continue;
            try {
                size_t used = 0;
                double v = std::stod(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                vals.push_back(sign * v);
            } catch (const std::exception&) {
                throw Error("gate '" + gate + "': non-numeric entry '" + tok + "'");
            }
            sign = 1.0;
        }
        if (vals.size() != 2) {
            throw Error("gate '" + gate + "': expected radius and angle, got '" + line + "'");
        }
        return std::polar(1.0, vals[1]) * vals[0];
    };

    std::vector<UnitarySpec> specs;
    for (size_t g = 0; g < count; ++g) {
        UnitarySpec s;
        s.name = lines[1 + g * 5];
        for (size_t e = 0; e < 4; ++e) {
            s.matrix[e] = parse_polar(lines[2 + g * 5 + e], s.name);
        }
        // unitarity: ||U^dag U - I||_max <= 1e-9
        Matrix2 dag = {std::conj(s.matrix[0]), std::conj(s.matrix[2]), std::conj(s.matrix[1]),
                       std::conj(s.matrix[3])};
        Matrix2 prod = mat_mul(dag, s.matrix);
        double dev = std::max(std::max(std::abs(prod[0] - 1.0), std::abs(prod[3] - 1.0)),
                              std::max(std::abs(prod[1]), std::abs(prod[2])));
        if (dev > 1e-9) {
            throw Error("gate '" + s.name + "': matrix is not unitary (deviation " +
                        std::to_string(dev) + ")");
        }
        specs.push_back(std::move(s));
    }
    return specs;
}

RecognitionResult recognize_unitary(const UnitarySpec& spec, int max_len, double tol) {
    if (max_len < 1) throw Error("max_len must be at least 1");
    struct Node {
        Matrix2 m;
        std::vector<std::string> seq;
    };
    auto finish = [&](const Node& n) {
        RecognitionResult r;
        r.sequence = n.seq;
        r.residual = phase_aligned_distance(spec.matrix, n.m, &r.phase);
        return r;
    };
    std::unordered_map<CanonKey, bool, CanonKeyHash> seen;
    std::deque<Node> queue;
    Node id{{1, 0, 0, 1}, {}};
    if (phase_aligned_distance(spec.matrix, id.m) <= tol) return finish(id);
    seen.emplace(key_of(id.m), true);
    queue.push_back(std::move(id));
    while (!queue.empty()) {
        Node cur = std::move(queue.front());
        queue.pop_front();
        if (static_cast<int>(cur.seq.size()) >= max_len) continue;
        for (const std::string& g : kGenerators) {
            Node next;
            next.m = mat_mul(gen_matrix(g), cur.m);  // g applied after cur
            if (!seen.emplace(key_of(next.m), true).second) continue;
            next.seq = cur.seq;
            next.seq.push_back(g);
            if (phase_aligned_distance(spec.matrix, next.m) <= tol) return finish(next);
            queue.push_back(std::move(next));
        }
    }
    throw NotRepresentableError("gate '" + spec.name + "' is not representable with at most " +
                                std::to_string(max_len) + " generators");
}

DecompEntry emit_nicm_entry(const std::string& name, const RecognitionResult& result) {
    static const std::map<std::string, std::string> kTokens = {
        {"H", "HGATE"}, {"P", "PGATE"}, {"Pdag", "PDAG"}, {"T", "TGATE"},
        {"Tdag", "TDAG"}, {"X", "XGATE"}, {"Z", "ZGATE"},
    };
    DecompEntry e;
    e.name = name;
    e.kind = DecompKind::Nicm;
    e.ancilla_count = 0;
    std::vector<std::string> row;
    for (const std::string& g : result.sequence) row.push_back(kTokens.at(g));
    if (row.empty()) row.push_back("WIRE");
    e.grid.push_back(std::move(row));
    return e;
}

void set_approximation_hook(ApproximationHook hook) { hook_slot() = std::move(hook); }

std::vector<std::string> approximation_hook(const UnitarySpec& spec, double epsilon) {
    if (!hook_slot()) {
        throw NotImplementedError("no approximation backend registered for gate '" + spec.name +
                                  "'");
    }
    std::vector<std::string> seq = hook_slot()(spec, epsilon);
    // contract check: the product must be within epsilon of the target
    Matrix2 prod = {1, 0, 0, 1};
    for (const std::string& g : seq) prod = mat_mul(gen_matrix(g), prod);
    double dist = phase_aligned_distance(spec.matrix, prod);
    if (dist > epsilon) {
        throw Error("approximation hook for '" + spec.name + "' missed its tolerance: " +
                    std::to_string(dist) + " > " + std::to_string(epsilon));
    }
    return seq;
}

}  // namespace icm
