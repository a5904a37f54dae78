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
#include <vector>

#include "icm/circuit.hpp"
#include "icm/transform.hpp"

namespace icm {

struct LatticePoint {
    int id = 0;  // dense 1..N in serialization order
    int x = 0, y = 0, z = 0;

    bool operator==(const LatticePoint&) const = default;
};

struct Segment {
    int a = 0, b = 0;  // point ids; must differ in exactly one coordinate

    bool operator==(const Segment&) const = default;
};

enum class IoType { Input, Output };
enum class ConfigState { Configurable, InjectA, InjectY };
enum class StrandClass { Primal, Dual };

struct ConfigPoint {
    int point_id = 0;
    IoType io = IoType::Input;
    ConfigState state = ConfigState::Configurable;

    bool operator==(const ConfigPoint&) const = default;
};

// Cross-reference table: every circuit element owns exactly one set of
// geometric pieces and every piece belongs to exactly one element.
struct BijEntry {
    std::string element;        // e.g. "qubit 2", "cnot 1", "init 3", "measure 1"
    std::vector<int> points;    // point ids
    std::vector<int> segments;  // segment indices (0-based)

    bool operator==(const BijEntry&) const = default;
};

struct GeometryDesc {
    std::vector<LatticePoint> points;
    std::vector<Segment> segments;
    std::vector<ConfigPoint> config_points;
    std::vector<StrandClass> point_class;  // parallel to points
    std::vector<BijEntry> bijectivity;

    int config_count() const { return static_cast<int>(config_points.size()); }
    const LatticePoint& point(int id) const;

    bool operator==(const GeometryDesc&) const = default;
};

// Canonical three-dimensional description of an ICM circuit: time along +x,
// each qubit a pair of primal strands 2 lattice units apart in z, qubit rows
// 12 apart in y, one dual-loop braid template per CNOT at x-pitch 6.
// Initialisation geometries sit on the left face, measurement geometries
// mirrored on the right; Empty and conditional bases become configuration
// points, |A>/|Y> become injection points.
GeometryDesc generate_geometry(const IcmCircuit& icm);

// Checks segment axis-alignment, complementary primal/dual coordinate
// parities (any global offset), configuration points at exact midpoints,
// strand-pair structure and two-way totality of the bijectivity table.
ValidationReport validate_geometry(const GeometryDesc& g);

enum class IoChoice { MeasureX, MeasureZ, InitX, InitZ, KeepInjection };

// Fixes a configurable point: X deletes the point and its incident segments,
// Z joins the incident segments into one, KeepInjection (inputs only)
// retypes the point as an injection. Remaining point ids are renumbered
// densely.
GeometryDesc configure_io(const GeometryDesc& g, int point_id, IoChoice choice,
                          ConfigState inject = ConfigState::InjectA);

// Text format: config-point count, point count, segment count, the config
// id list, segment id pairs, "id,x,y,z" coordinates, then "id,i|o|a|y"
// marks. The bijectivity table and strand classes ride in '#' sidecar lines.
std::string serialize_geometry(const GeometryDesc& g);
GeometryDesc parse_geometry(const std::string& text);

}  // namespace icm
