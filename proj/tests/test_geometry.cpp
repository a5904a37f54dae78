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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "icm/geometry.hpp"
#include "icm/simulator.hpp"
#include "oracles.hpp"

using namespace icm;

namespace {

// frozen coordinates and segments of the primal-primal CNOT description
struct GoldenPoint {
    int id, x, y, z;
};
const std::vector<GoldenPoint> kGoldenPoints = {
    {1, 0, 0, 0},   {2, 0, 0, 2},   {3, 0, 0, 1},   {4, 0, 6, 0},   {5, 0, 6, 2},
    {6, 0, 8, 0},   {7, 0, 8, 2},   {8, 0, 12, 0},  {9, 0, 12, 2},  {10, 0, 12, 1},
    {11, 2, 0, 0},  {12, 2, 0, 2},  {13, 2, 0, 1},  {14, 2, 12, 0}, {15, 2, 12, 2},
    {16, 2, 12, 1}, {17, -1, 9, 1}, {18, -1, 5, 1}, {19, 1, 5, 1},  {20, 1, 5, -1},
    {21, 3, 5, -1}, {22, 3, 5, 1},  {23, 3, 9, 1},
};
const std::set<std::pair<int, int>> kGoldenSegments = {
    {1, 3},   {2, 3},   {4, 5},   {1, 4},   {2, 5},   {6, 7},   {8, 10},  {9, 10},
    {6, 8},   {7, 9},   {11, 13}, {12, 13}, {14, 16}, {15, 16}, {11, 14}, {12, 15},
    {17, 18}, {18, 19}, {19, 20}, {20, 21}, {21, 22}, {22, 23}, {17, 23},
};

IcmCircuit cnot_icm() {
    Circuit c;
    c.qubit_count = 2;
    c.gates.push_back(GateOp::make_cnot(1, 2));
    IcmCircuit icm;
    icm.circuit = c;
    icm.wire_out = {{1, 1}, {2, 2}};
    icm.data_wires = {1, 2};
    return icm;
}

IcmCircuit t_gate_icm() {
    Database db = seed_database();
    Circuit c;
    c.qubit_count = 1;
    c.gates.push_back(GateOp{"TGATE", {1}});
    return convert_to_icm(c, db, {});
}

std::set<std::pair<int, int>> segment_set(const GeometryDesc& g) {
    std::set<std::pair<int, int>> s;
    for (const Segment& seg : g.segments) {
        s.insert({std::min(seg.a, seg.b), std::max(seg.a, seg.b)});
    }
    return s;
}

}  // namespace

TEST_CASE("the primal-primal CNOT geometry matches the canonical description") {
    GeometryDesc g = generate_geometry(cnot_icm());
    CHECK(g.config_count() == 4);
    CHECK(g.points.size() == 23);
    CHECK(g.segments.size() == 23);

    std::vector<int> config_ids;
    for (const ConfigPoint& cp : g.config_points) config_ids.push_back(cp.point_id);
    std::sort(config_ids.begin(), config_ids.end());
    CHECK(config_ids == std::vector<int>{3, 10, 13, 16});
    std::map<int, std::pair<IoType, ConfigState>> marks;
    for (const ConfigPoint& cp : g.config_points) marks[cp.point_id] = {cp.io, cp.state};
    CHECK(marks.at(3).first == IoType::Input);
    CHECK(marks.at(10).first == IoType::Input);
    CHECK(marks.at(13).first == IoType::Output);
    CHECK(marks.at(16).first == IoType::Output);

    // coordinates equal up to a rigid even translation (zero here)
    REQUIRE(g.points.size() == kGoldenPoints.size());
    int dx = g.points[0].x - kGoldenPoints[0].x;
    int dy = g.points[0].y - kGoldenPoints[0].y;
    int dz = g.points[0].z - kGoldenPoints[0].z;
    CHECK(dx % 2 == 0);
    CHECK(dy % 2 == 0);
    CHECK(dz % 2 == 0);
    for (size_t i = 0; i < kGoldenPoints.size(); ++i) {
        CAPTURE(kGoldenPoints[i].id);
        CHECK(g.points[i].id == kGoldenPoints[i].id);
        CHECK(g.points[i].x == kGoldenPoints[i].x + dx);
        CHECK(g.points[i].y == kGoldenPoints[i].y + dy);
        CHECK(g.points[i].z == kGoldenPoints[i].z + dz);
    }
    CHECK(segment_set(g) == kGoldenSegments);
    CHECK(validate_geometry(g).ok);
}

TEST_CASE("the empty circuit produces an empty geometry") {
    IcmCircuit icm;
    GeometryDesc g = generate_geometry(icm);
    CHECK(g.points.empty());
    CHECK(g.segments.empty());
    CHECK(g.config_count() == 0);
    CHECK(serialize_geometry(g) == "0\n0\n0\n");
}

TEST_CASE("the teleported-T geometry carries one injection and one join") {
    GeometryDesc g = generate_geometry(t_gate_icm());
    int inject_a = 0, conf_in = 0, conf_out = 0;
    for (const ConfigPoint& cp : g.config_points) {
        if (cp.state == ConfigState::InjectA) ++inject_a;
        else if (cp.io == IoType::Input) ++conf_in;
        else ++conf_out;
    }
    CHECK(inject_a == 1);
    CHECK(conf_in == 1);
    CHECK(conf_out == 1);
    // one braid template: exactly 7 dual points
    int dual = 0;
    for (StrandClass s : g.point_class) dual += s == StrandClass::Dual;
    CHECK(dual == 7);
    CHECK(validate_geometry(g).ok);
}

TEST_CASE("validation catches diagonal segments and broken midpoints") {
    GeometryDesc g = generate_geometry(cnot_icm());
    {
        GeometryDesc bad = g;
        bad.segments[0] = {1, 5};  // differs in y and z
        CHECK(!validate_geometry(bad).ok);
    }
    {
        GeometryDesc bad = g;
        bad.points[2] = {3, 0, 0, 2};  // config point 3 moved off-midpoint
        bool midpoint_violation = false;
        for (const std::string& v : validate_geometry(bad).violations) {
            midpoint_violation |= v.find("midpoint") != std::string::npos;
        }
        CHECK(midpoint_violation);
    }
}

TEST_CASE("validation is invariant under even translations") {
    GeometryDesc g = generate_geometry(t_gate_icm());
    for (LatticePoint& p : g.points) {
        p.x += 4;
        p.y -= 2;
        p.z += 6;
    }
    CHECK(validate_geometry(g).ok);
}

TEST_CASE("configuring Z joins the incident segments") {
    GeometryDesc g = generate_geometry(cnot_icm());
    GeometryDesc z = configure_io(g, 3, IoChoice::MeasureZ);
    CHECK(z.config_count() == 3);
    CHECK(z.points.size() == 22);
    CHECK(z.segments.size() == 22);
    // the strand ends joined directly; their ids are unchanged by renumbering
    CHECK(segment_set(z).count({1, 2}) == 1);
    CHECK(validate_geometry(z).ok);
}

TEST_CASE("configuring X deletes the point and incident segments") {
    GeometryDesc g = generate_geometry(cnot_icm());
    GeometryDesc x = configure_io(g, 3, IoChoice::MeasureX);
    CHECK(x.config_count() == 3);
    CHECK(x.points.size() == 22);
    CHECK(x.segments.size() == 21);
    CHECK(validate_geometry(x).ok);
}

TEST_CASE("injection is kept only on inputs") {
    GeometryDesc g = generate_geometry(cnot_icm());
    CHECK_THROWS_WITH_AS(configure_io(g, 13, IoChoice::KeepInjection),
                         doctest::Contains("output"), Error);
    GeometryDesc k = configure_io(g, 3, IoChoice::KeepInjection, ConfigState::InjectA);
    bool found = false;
    for (const ConfigPoint& cp : k.config_points) {
        if (cp.point_id == 3) {
            found = true;
            CHECK(cp.state == ConfigState::InjectA);
        }
    }
    CHECK(found);
    CHECK_THROWS_AS(configure_io(g, 999, IoChoice::MeasureX), Error);
}

TEST_CASE("configure then serialize preserves non-incident structure") {
    GeometryDesc g = generate_geometry(cnot_icm());
    GeometryDesc z = configure_io(g, 3, IoChoice::MeasureZ);
    GeometryDesc back = parse_geometry(serialize_geometry(z));
    CHECK(back == z);
    // every original segment not incident to point 3 survives (ids shift by
    // one past the removed point)
    auto shifted = [](std::pair<int, int> s) {
        auto fix = [](int v) { return v > 3 ? v - 1 : v; };
        return std::pair<int, int>{fix(s.first), fix(s.second)};
    };
    auto zsegs = segment_set(z);
    for (const auto& s : kGoldenSegments) {
        if (s.first == 3 || s.second == 3) continue;
        CHECK(zsegs.count(shifted(s)) == 1);
    }
}

TEST_CASE("serialization round-trips generated geometries") {
    for (const IcmCircuit& icm : {cnot_icm(), t_gate_icm()}) {
        GeometryDesc g = generate_geometry(icm);
        GeometryDesc back = parse_geometry(serialize_geometry(g));
        CHECK(back == g);
        CHECK(serialize_geometry(back) == serialize_geometry(g));
    }
}

TEST_CASE("geometry header lines match the canonical example") {
    GeometryDesc g = generate_geometry(cnot_icm());
    std::string text = serialize_geometry(g);
    CHECK(text.substr(0, 13) == "4\n23\n23\n3,10,");
    CHECK(text.find("3,i\n") != std::string::npos);
    CHECK(text.find("10,i\n") != std::string::npos);
    CHECK(text.find("13,o\n") != std::string::npos);
    CHECK(text.find("16,o\n") != std::string::npos);
}

TEST_CASE("geometry parser rejects malformed input") {
    CHECK_THROWS_AS(parse_geometry("1\n0\n"), Error);
    CHECK_THROWS_AS(parse_geometry("0\n1\n1\n1,2\n1,0,0,0\n"), Error);  // dangling segment ref
    CHECK_THROWS_AS(parse_geometry("1\n1\n0\n1\n1,0,0,0\n1,q\n"), Error);
}

TEST_CASE("bijectivity and counts hold over random converted circuits") {
    Database db = seed_database();
    std::mt19937_64 rng(61);
    const std::vector<std::pair<std::string, int>> gateset = {
        {"TGATE", 1}, {"HGATE", 1}, {"PGATE", 1}, {"CNOT", 2}};
    for (int i = 0; i < 25; ++i) {
        Circuit c = oracle::random_circuit(rng, 4, 8, gateset);
        IcmCircuit icm = convert_to_icm(c, db, {});
        GeometryDesc g = generate_geometry(icm);
        ValidationReport rep = validate_geometry(g);
        CAPTURE(to_gate_list(c));
        if (!rep.ok) CAPTURE(rep.violations.front());
        CHECK(rep.ok);

        int empty_init = 0, inject = 0, empty_meas = 0;
        const Circuit& cc = icm.circuit;
        for (QubitId q = 1; q <= cc.qubit_count; ++q) {
            InitBasis b = cc.init_of(q);
            if (b == InitBasis::Empty) ++empty_init;
            if (b == InitBasis::A || b == InitBasis::Y) ++inject;
            MeasKind m = cc.meas_of(q).kind;
            if (m == MeasKind::Empty || m == MeasKind::CondZX || m == MeasKind::CondXZ) {
                ++empty_meas;
            }
        }
        CHECK(g.config_count() == empty_init + inject + empty_meas);
        // one dual ring per CNOT
        int dual = 0;
        for (StrandClass s : g.point_class) dual += s == StrandClass::Dual;
        CHECK(dual == static_cast<int>(cc.gates.size()) * 7);
    }
}
