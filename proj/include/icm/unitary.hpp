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
#include <functional>
#include <string>
#include <vector>

#include "icm/database.hpp"

namespace icm {

using Complex = std::complex<double>;
using Matrix2 = std::array<Complex, 4>;  // row-major

struct NotRepresentableError : Error {
    using Error::Error;
};
struct NotImplementedError : Error {
    using Error::Error;
};

// A gate given as a 2x2 complex matrix in polar form, read from the
// decompose tool's input files.
struct UnitarySpec {
    std::string name;
    Matrix2 matrix;
};

struct RecognitionResult {
    // Generator names in circuit (left-to-right application) order; the
    // matrix product taken right-to-left reproduces the target up to phase.
    std::vector<std::string> sequence;
    Complex phase;    // target = phase * product
    double residual;  // max-norm distance after phase alignment
};

// File format: count header, then per gate a name line and four polar
// "radius angle" lines (radians), with an optional sign token before the
// radius. Each matrix must be unitary within 1e-9.
std::vector<UnitarySpec> parse_unitary_specs(const std::string& text);

// Breadth-first search over products of {H, P, Pdag, T, Tdag, X, Z},
// deduplicated up to global phase; returns the shortest matching sequence,
// ties broken by lexicographic generator order. Throws NotRepresentableError
// when no product of length <= max_len matches within tol.
RecognitionResult recognize_unitary(const UnitarySpec& spec, int max_len = 12, double tol = 1e-9);

// Single-row nicm grid whose tokens are the recognised generator sequence;
// an empty sequence becomes a single WIRE.
DecompEntry emit_nicm_entry(const std::string& name, const RecognitionResult& result);

// Hook for approximate synthesis of gates outside the exact set. The default
// backend throws NotImplementedError; a plugged implementation must return a
// sequence whose product is within epsilon of the target up to global phase.
using ApproximationHook = std::function<std::vector<std::string>(const UnitarySpec&, double)>;
void set_approximation_hook(ApproximationHook hook);
std::vector<std::string> approximation_hook(const UnitarySpec& spec, double epsilon);

Matrix2 generator_matrix(const std::string& name);
Matrix2 mat_mul(const Matrix2& a, const Matrix2& b);

// Max-norm distance between two 2x2 matrices after optimal global-phase
// alignment of b to a; also reports the aligning phase.
double phase_aligned_distance(const Matrix2& a, const Matrix2& b, Complex* phase = nullptr);

}  // namespace icm
