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

#include <string>

#include "icm/circuit.hpp"
#include "icm/geometry.hpp"

namespace icm {

// Static 2D diagram: initialisation column, CNOT array left-to-right,
// measurement column.
std::string render_circuit_svg(const Circuit& c);

// Isometric wireframe projection; primal strands dark, dual strands blue,
// configuration and injection points marked.
std::string render_geometry_svg(const GeometryDesc& g);

// Both views stacked in one document.
std::string render_svg(const Circuit& c, const GeometryDesc& g);

}  // namespace icm
