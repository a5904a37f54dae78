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

#include "icm/render.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace icm {

namespace {

constexpr double kColW = 28.0;
constexpr double kRowH = 26.0;
constexpr double kLeft = 70.0;
constexpr double kTop = 30.0;

std::string init_label(InitBasis b) {
    switch (b) {
        case InitBasis::Zero: return "|0>";
        case InitBasis::Plus: return "|+>";
        case InitBasis::A: return "|A>";
        case InitBasis::Y: return "|Y>";
        case InitBasis::Empty: return "in";
    }
    return "";
}

std::string meas_label(const Measurement& m) {
    switch (m.kind) {
        case MeasKind::X: return "MX";
        case MeasKind::Z: return "MZ";
        case MeasKind::CondZX: return "M(Z/X)";
        case MeasKind::CondXZ: return "M(X/Z)";
        case MeasKind::ABasis: return "MA";
        case MeasKind::YBasis: return "MY";
        case MeasKind::Empty: return "out";
    }
    return "";
}

void svg_text(std::ostringstream& o, double x, double y, const std::string& s,
              const char* anchor = "middle", const char* fill = "#222") {
    o << "<text x='" << x << "' y='" << y << "' font-size='11' font-family='monospace' "
      << "text-anchor='" << anchor << "' fill='" << fill << "'>" << s << "</text>\n";
}

void svg_line(std::ostringstream& o, double x1, double y1, double x2, double y2, const char* color,
              double w = 1.5) {
    o << "<line x1='" << x1 << "' y1='" << y1 << "' x2='" << x2 << "' y2='" << y2 << "' stroke='"
      << color << "' stroke-width='" << w << "'/>\n";
}

std::string circuit_body(const Circuit& c, double& width, double& height) {
    std::ostringstream o;
    const int q = c.qubit_count;
    const int n = static_cast<int>(c.gates.size());
    width = kLeft + kColW * (n + 1) + 70.0;
    height = kTop + kRowH * q + 20.0;
    auto wy = [&](QubitId w) { return kTop + kRowH * (w - 1) + kRowH / 2; };
    for (QubitId w = 1; w <= q; ++w) {
        svg_text(o, kLeft - 40, wy(w) + 4, std::to_string(w) + ":" + init_label(c.init_of(w)),
                 "start");
        svg_line(o, kLeft, wy(w), kLeft + kColW * n + kColW, wy(w), "#444", 1.0);
        svg_text(o, kLeft + kColW * n + kColW + 6, wy(w) + 4, meas_label(c.meas_of(w)), "start");
    }
    for (int i = 0; i < n; ++i) {
        const GateOp& g = c.gates[static_cast<size_t>(i)];
        double x = kLeft + kColW * i + kColW / 2;
        if (g.is_cnot()) {
            svg_line(o, x, wy(g.control()), x, wy(g.target()), "#b22", 1.5);
            o << "<circle cx='" << x << "' cy='" << wy(g.control())
              << "' r='3.5' fill='#b22'/>\n";
            o << "<circle cx='" << x << "' cy='" << wy(g.target())
              << "' r='6' fill='none' stroke='#b22' stroke-width='1.5'/>\n";
            svg_line(o, x - 6, wy(g.target()), x + 6, wy(g.target()), "#b22", 1.5);
        } else {
            for (QubitId w : g.qubits) {
                o << "<rect x='" << x - 11 << "' y='" << wy(w) - 9
                  << "' width='22' height='18' fill='#eee' stroke='#333'/>\n";
                svg_text(o, x, wy(w) + 4, g.name.substr(0, 2));
            }
        }
    }
    return o.str();
}

std::string geometry_body(const GeometryDesc& g, double& width, double& height) {
    // isometric projection: u = x + 0.45 y, v = -z + 0.3 y (y recedes)
    auto proj = [](const LatticePoint& p) {
        return std::pair<double, double>{12.0 * (p.x + 0.45 * p.y), 12.0 * (-p.z + 0.3 * p.y)};
    };
    double minu = 0, maxu = 0, minv = 0, maxv = 0;
    bool first = true;
    for (const LatticePoint& p : g.points) {
        auto [u, v] = proj(p);
        if (first) {
            minu = maxu = u;
            minv = maxv = v;
            first = false;
        }
        minu = std::min(minu, u);
        maxu = std::max(maxu, u);
        minv = std::min(minv, v);
        maxv = std::max(maxv, v);
    }
    const double pad = 24.0;
    width = maxu - minu + 2 * pad;
    height = maxv - minv + 2 * pad;
    std::ostringstream o;
    auto at = [&](int id) {
        auto [u, v] = proj(g.point(id));
        return std::pair<double, double>{u - minu + pad, v - minv + pad};
    };
    std::map<int, size_t> index_of;
    for (size_t i = 0; i < g.points.size(); ++i) index_of[g.points[i].id] = i;
    for (const Segment& s : g.segments) {
        auto [x1, y1] = at(s.a);
        auto [x2, y2] = at(s.b);
        bool dual = g.point_class[index_of.at(s.a)] == StrandClass::Dual;
        svg_line(o, x1, y1, x2, y2, dual ? "#36c" : "#333", dual ? 1.6 : 2.0);
    }
    for (const ConfigPoint& cp : g.config_points) {
        auto [x, y] = at(cp.point_id);
        const char* fill = cp.state == ConfigState::Configurable ? "#d22" : "#2a2";
        o << "<circle cx='" << x << "' cy='" << y << "' r='4' fill='" << fill << "'/>\n";
        std::string mark = cp.state == ConfigState::InjectA
                               ? "A"
                               : (cp.state == ConfigState::InjectY
                                      ? "Y"
                                      : (cp.io == IoType::Input ? "i" : "o"));
        svg_text(o, x + 7, y - 4, std::to_string(cp.point_id) + "," + mark, "start", "#555");
    }
    return o.str();
}

}  // namespace

std::string render_circuit_svg(const Circuit& c) {
    double w = 0, h = 0;
    std::string body = circuit_body(c, w, h);
    std::ostringstream o;
    o << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "'>\n"
      << body << "</svg>\n";
    return o.str();
}

std::string render_geometry_svg(const GeometryDesc& g) {
    double w = 0, h = 0;
    std::string body = g.points.empty() ? "" : geometry_body(g, w, h);
    std::ostringstream o;
    o << "<svg xmlns='http://www.w3.org/2000/svg' width='" << std::max(w, 40.0) << "' height='"
      << std::max(h, 40.0) << "'>\n"
      << body << "</svg>\n";
    return o.str();
}

std::string render_svg(const Circuit& c, const GeometryDesc& g) {
    double cw = 0, ch = 0;
    std::string cb = circuit_body(c, cw, ch);
    double gw = 0, gh = 0;
    std::string gb = g.points.empty() ? "" : geometry_body(g, gw, gh);
    double w = std::max({cw, gw, 40.0});
    double h = ch + gh + 30.0;
    std::ostringstream o;
    o << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "'>\n";
    o << "<g>\n" << cb << "</g>\n";
    o << "<g transform='translate(0," << ch + 20.0 << ")'>\n" << gb << "</g>\n";
    o << "</svg>\n";
    return o.str();
}

}  // namespace icm
