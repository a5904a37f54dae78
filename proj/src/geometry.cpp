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

#include "icm/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace icm {

namespace {

constexpr int kRowPitch = 12;      // y distance between qubit strand rows
constexpr int kSlotPitch = 6;      // x distance between CNOT templates
constexpr int kStrandGap = 2;      // z distance between a qubit's two strands
constexpr int kTemplateWidth = 2;  // x span between a template's faces

}  // namespace

const LatticePoint& GeometryDesc::point(int id) const {
    for (const LatticePoint& p : points) {
        if (p.id == id) return p;
    }
    throw Error("unknown geometry point " + std::to_string(id));
}

// ------------------------------------------------------------------ builder

namespace {

struct Builder {
    GeometryDesc g;
    std::map<std::string, BijEntry> buckets;
    std::vector<std::string> bucket_order;

    BijEntry& bucket(const std::string& name) {
        auto it = buckets.find(name);
        if (it == buckets.end()) {
            bucket_order.push_back(name);
            it = buckets.emplace(name, BijEntry{name, {}, {}}).first;
        }
        return it->second;
    }

    int add_point(int x, int y, int z, StrandClass cls, const std::string& owner) {
        int id = static_cast<int>(g.points.size()) + 1;
        g.points.push_back({id, x, y, z});
        g.point_class.push_back(cls);
        bucket(owner).points.push_back(id);
        return id;
    }

    void add_segment(int a, int b, const std::string& owner) {
        bucket(owner).segments.push_back(static_cast<int>(g.segments.size()));
        g.segments.push_back({a, b});
    }

    void finish() {
        for (const std::string& name : bucket_order) g.bijectivity.push_back(buckets[name]);
    }
};

struct Front {
    bool started = false;
    int x = 0;
    int low = 0, high = 0;  // point ids of the z=0 and z=2 strand ends
};

}  // namespace

GeometryDesc generate_geometry(const IcmCircuit& icm) {
    const Circuit& c = icm.circuit;
    ValidationReport rep = validate_icm(c);
    if (!rep.ok) throw Error("geometry requires a valid ICM circuit: " + rep.violations.front());

    Builder b;
    if (c.qubit_count == 0) {
        b.finish();
        return b.g;
    }

    auto row_of = [](QubitId q) { return kRowPitch * (q - 1); };
    std::vector<Front> front(static_cast<size_t>(c.qubit_count) + 1);
    std::vector<int> last_slot(static_cast<size_t>(c.qubit_count) + 1, -1);
    int n_cnots = 0;
    for (size_t i = 0; i < c.gates.size(); ++i) {
        last_slot[static_cast<size_t>(c.gates[i].control())] = n_cnots;
        last_slot[static_cast<size_t>(c.gates[i].target())] = n_cnots;
        ++n_cnots;
    }
    const int x_end = n_cnots == 0 ? kTemplateWidth : kSlotPitch * (n_cnots - 1) + kTemplateWidth;

    // Left-face initialisation geometry for qubit q at x.
    auto open_strand = [&](QubitId q, int x) {
        Front& f = front[static_cast<size_t>(q)];
        const int y = row_of(q);
        std::string owner = "qubit " + std::to_string(q);
        f.low = b.add_point(x, y, 0, StrandClass::Primal, owner);
        f.high = b.add_point(x, y, kStrandGap, StrandClass::Primal, owner);
        f.x = x;
        f.started = true;
        std::string init_owner = "init " + std::to_string(q);
        switch (c.init_of(q)) {
            case InitBasis::Empty: {
                int mid = b.add_point(x, y, 1, StrandClass::Primal, init_owner);
                b.add_segment(f.low, mid, init_owner);
                b.add_segment(f.high, mid, init_owner);
                b.g.config_points.push_back({mid, IoType::Input, ConfigState::Configurable});
                break;
            }
            case InitBasis::A:
            case InitBasis::Y: {
                int mid = b.add_point(x, y, 1, StrandClass::Primal, init_owner);
                b.add_segment(f.low, mid, init_owner);
                b.add_segment(f.high, mid, init_owner);
                b.g.config_points.push_back({mid, IoType::Input,
                                             c.init_of(q) == InitBasis::A ? ConfigState::InjectA
                                                                          : ConfigState::InjectY});
                break;
            }
            case InitBasis::Zero:  // strands joined into a U
                b.add_segment(f.low, f.high, init_owner);
                break;
            case InitBasis::Plus:  // strands left disjoint
                break;
        }
    };

    // Right-face measurement geometry on the final strand ends.
    auto close_strand = [&](QubitId q) {
        Front& f = front[static_cast<size_t>(q)];
        std::string owner = "qubit " + std::to_string(q);
        if (!f.started) open_strand(q, 0);
        if (f.x < x_end) {  // bridge to the right face
            const int y = row_of(q);
            int nl = b.add_point(x_end, y, 0, StrandClass::Primal, owner);
            int nh = b.add_point(x_end, y, kStrandGap, StrandClass::Primal, owner);
            b.add_segment(f.low, nl, owner);
            b.add_segment(f.high, nh, owner);
            f.low = nl;
            f.high = nh;
            f.x = x_end;
        }
        std::string meas_owner = "measure " + std::to_string(q);
        const LatticePoint& lo = b.g.point(f.low);
        Measurement m = c.meas_of(q);
        switch (m.kind) {
            case MeasKind::Empty:
            case MeasKind::CondZX:
            case MeasKind::CondXZ: {  // runtime-configurable output
                int mid = b.add_point(lo.x, lo.y, 1, StrandClass::Primal, meas_owner);
                b.add_segment(f.low, mid, meas_owner);
                b.add_segment(f.high, mid, meas_owner);
                b.g.config_points.push_back({mid, IoType::Output, ConfigState::Configurable});
                break;
            }
            case MeasKind::Z:  // join
                b.add_segment(f.low, f.high, meas_owner);
                break;
            case MeasKind::X:  // open ends
                break;
            default:
                throw Error("intermediate measurement basis reached geometry generation");
        }
    };

    // One primal-primal CNOT braid template per gate.
    for (size_t gi = 0; gi < c.gates.size(); ++gi) {
        const GateOp& gate = c.gates[gi];
        const QubitId qc = gate.control(), qt = gate.target();
        const int x0 = kSlotPitch * static_cast<int>(gi);
        const int yc = row_of(qc), yt = row_of(qt);
        const int s = yt > yc ? 1 : -1;
        const std::string owner = "cnot " + std::to_string(gi + 1);

        auto arrive = [&](QubitId q) {
            Front& f = front[static_cast<size_t>(q)];
            if (!f.started) {
                open_strand(q, x0);
            } else if (f.x < x0) {
                std::string qowner = "qubit " + std::to_string(q);
                int nl = b.add_point(x0, row_of(q), 0, StrandClass::Primal, qowner);
                int nh = b.add_point(x0, row_of(q), kStrandGap, StrandClass::Primal, qowner);
                b.add_segment(f.low, nl, qowner);
                b.add_segment(f.high, nh, qowner);
                f.low = nl;
                f.high = nh;
                f.x = x0;
            }
        };

        arrive(qc);
        Front& fc = front[static_cast<size_t>(qc)];
        // control-side U toward the target row
        int u1 = b.add_point(x0, yc + 6 * s, 0, StrandClass::Primal, owner);
        int u2 = b.add_point(x0, yc + 6 * s, kStrandGap, StrandClass::Primal, owner);
        b.add_segment(u1, u2, owner);
        b.add_segment(fc.low, u1, owner);
        b.add_segment(fc.high, u2, owner);
        // target-side U toward the control row
        int v1 = b.add_point(x0, yt - 4 * s, 0, StrandClass::Primal, owner);
        int v2 = b.add_point(x0, yt - 4 * s, kStrandGap, StrandClass::Primal, owner);
        b.add_segment(v1, v2, owner);
        arrive(qt);
        Front& ft = front[static_cast<size_t>(qt)];
        b.add_segment(v1, ft.low, owner);
        b.add_segment(v2, ft.high, owner);

        // right face: both rows advance and are joined by the template legs
        int c1 = b.add_point(x0 + kTemplateWidth, yc, 0, StrandClass::Primal,
                             "qubit " + std::to_string(qc));
        int c2 = b.add_point(x0 + kTemplateWidth, yc, kStrandGap, StrandClass::Primal,
                             "qubit " + std::to_string(qc));
        fc.low = c1;
        fc.high = c2;
        fc.x = x0 + kTemplateWidth;
        if (static_cast<int>(gi) == last_slot[static_cast<size_t>(qc)]) close_strand(qc);
        int d1 = b.add_point(x0 + kTemplateWidth, yt, 0, StrandClass::Primal,
                             "qubit " + std::to_string(qt));
        int d2 = b.add_point(x0 + kTemplateWidth, yt, kStrandGap, StrandClass::Primal,
                             "qubit " + std::to_string(qt));
        ft.low = d1;
        ft.high = d2;
        ft.x = x0 + kTemplateWidth;
        if (static_cast<int>(gi) == last_slot[static_cast<size_t>(qt)]) close_strand(qt);
        b.add_segment(c1, d1, owner);
        b.add_segment(c2, d2, owner);

        // dual ancilla ring threading the template
        int r1 = b.add_point(x0 - 1, yc + 9 * s, 1, StrandClass::Dual, owner);
        int r2 = b.add_point(x0 - 1, yc + 5 * s, 1, StrandClass::Dual, owner);
        int r3 = b.add_point(x0 + 1, yc + 5 * s, 1, StrandClass::Dual, owner);
        int r4 = b.add_point(x0 + 1, yc + 5 * s, -1, StrandClass::Dual, owner);
        int r5 = b.add_point(x0 + 3, yc + 5 * s, -1, StrandClass::Dual, owner);
        int r6 = b.add_point(x0 + 3, yc + 5 * s, 1, StrandClass::Dual, owner);
        int r7 = b.add_point(x0 + 3, yc + 9 * s, 1, StrandClass::Dual, owner);
        b.add_segment(r1, r2, owner);
        b.add_segment(r2, r3, owner);
        b.add_segment(r3, r4, owner);
        b.add_segment(r4, r5, owner);
        b.add_segment(r5, r6, owner);
        b.add_segment(r6, r7, owner);
        b.add_segment(r1, r7, owner);
    }

    // qubits untouched by any CNOT still need their faces
    for (QubitId q = 1; q <= c.qubit_count; ++q) {
        if (last_slot[static_cast<size_t>(q)] < 0) close_strand(q);
    }

    b.finish();
    return b.g;
}

// --------------------------------------------------------------- validation

ValidationReport validate_geometry(const GeometryDesc& g) {
    ValidationReport rep;
    std::map<int, const LatticePoint*> by_id;
    for (const LatticePoint& p : g.points) {
        if (!by_id.emplace(p.id, &p).second) {
            rep.fail("duplicate point id " + std::to_string(p.id));
        }
    }
    for (size_t i = 0; i < g.points.size(); ++i) {
        if (g.points[i].id != static_cast<int>(i) + 1) {
            rep.fail("point ids are not dense 1..N in order");
            break;
        }
    }
    if (g.point_class.size() != g.points.size()) {
        rep.fail("strand-class table size mismatch");
        return rep;
    }

    std::set<int> config_ids;
    for (const ConfigPoint& cp : g.config_points) config_ids.insert(cp.point_id);

    std::map<int, std::vector<int>> incident;  // point -> segment indices
    for (size_t i = 0; i < g.segments.size(); ++i) {
        const Segment& s = g.segments[i];
        auto a = by_id.find(s.a), bnd = by_id.find(s.b);
        if (a == by_id.end() || bnd == by_id.end()) {
            rep.fail("segment " + std::to_string(i) + " references a missing point");
            continue;
        }
        int dx = a->second->x != bnd->second->x;
        int dy = a->second->y != bnd->second->y;
        int dz = a->second->z != bnd->second->z;
        if (dx + dy + dz != 1) {
            rep.fail("segment " + std::to_string(i) + " (" + std::to_string(s.a) + "," +
                     std::to_string(s.b) + ") is not axis-aligned");
        }
        incident[s.a].push_back(static_cast<int>(i));
        incident[s.b].push_back(static_cast<int>(i));
    }

    // complementary primal/dual coordinate parities, any global offset
    bool have_primal = false, have_dual = false;
    std::array<int, 3> primal_par{}, dual_par{};
    for (size_t i = 0; i < g.points.size(); ++i) {
        const LatticePoint& p = g.points[i];
        if (config_ids.count(p.id)) continue;  // midpoints checked separately
        std::array<int, 3> par = {((p.x % 2) + 2) % 2, ((p.y % 2) + 2) % 2, ((p.z % 2) + 2) % 2};
        if (g.point_class[i] == StrandClass::Primal) {
            if (!have_primal) {
                primal_par = par;
                have_primal = true;
            } else if (par != primal_par) {
                rep.fail("primal point " + std::to_string(p.id) + " breaks the parity lattice");
            }
        } else {
            if (!have_dual) {
                dual_par = par;
                have_dual = true;
            } else if (par != dual_par) {
                rep.fail("dual point " + std::to_string(p.id) + " breaks the parity lattice");
            }
        }
    }
    if (have_primal && have_dual) {
        for (int a = 0; a < 3; ++a) {
            if (primal_par[static_cast<size_t>(a)] == dual_par[static_cast<size_t>(a)]) {
                rep.fail("primal and dual parities are not complementary on axis " +
                         std::to_string(a));
                break;
            }
        }
    }

    // configuration points sit at the exact midpoint of their two partners
    for (const ConfigPoint& cp : g.config_points) {
        auto it = by_id.find(cp.point_id);
        if (it == by_id.end()) {
            rep.fail("configuration point " + std::to_string(cp.point_id) + " does not exist");
            continue;
        }
        const auto& inc = incident[cp.point_id];
        if (inc.size() != 2) {
            rep.fail("configuration point " + std::to_string(cp.point_id) + " has " +
                     std::to_string(inc.size()) + " incident segments, expected 2");
            continue;
        }
        std::vector<int> partners;
        for (int si : inc) {
            const Segment& s = g.segments[static_cast<size_t>(si)];
            partners.push_back(s.a == cp.point_id ? s.b : s.a);
        }
        const LatticePoint& pa = *by_id.at(partners[0]);
        const LatticePoint& pb = *by_id.at(partners[1]);
        const LatticePoint& pm = *it->second;
        if (pa.x + pb.x != 2 * pm.x || pa.y + pb.y != 2 * pm.y || pa.z + pb.z != 2 * pm.z) {
            rep.fail("configuration point " + std::to_string(cp.point_id) +
                     " is not at the midpoint of its strand ends");
        }
        if (std::abs(pa.z - pb.z) != kStrandGap || pa.x != pb.x || pa.y != pb.y) {
            rep.fail("configuration point " + std::to_string(cp.point_id) +
                     " does not join a strand pair");
        }
    }

    // bijectivity: total and injective both ways over points and segments
    std::map<int, int> point_owner_count;
    std::map<int, int> segment_owner_count;
    for (const BijEntry& e : g.bijectivity) {
        for (int pid : e.points) point_owner_count[pid]++;
        for (int si : e.segments) segment_owner_count[si]++;
    }
    if (!g.bijectivity.empty()) {
        for (const LatticePoint& p : g.points) {
            int n = point_owner_count.count(p.id) ? point_owner_count[p.id] : 0;
            if (n != 1) {
                rep.fail("point " + std::to_string(p.id) + " owned by " + std::to_string(n) +
                         " circuit elements");
            }
        }
        for (size_t i = 0; i < g.segments.size(); ++i) {
            int n = segment_owner_count.count(static_cast<int>(i))
                        ? segment_owner_count[static_cast<int>(i)]
                        : 0;
            if (n != 1) {
                rep.fail("segment " + std::to_string(i) + " owned by " + std::to_string(n) +
                         " circuit elements");
            }
        }
    }
    return rep;
}

// ------------------------------------------------------------- configure_io

GeometryDesc configure_io(const GeometryDesc& g, int point_id, IoChoice choice,
                          ConfigState inject) {
    auto cit = std::find_if(g.config_points.begin(), g.config_points.end(),
                            [&](const ConfigPoint& c) { return c.point_id == point_id; });
    if (cit == g.config_points.end()) {
        throw Error("point " + std::to_string(point_id) + " is not a configuration point");
    }
    if (choice == IoChoice::KeepInjection) {
        if (cit->io == IoType::Output) {
            throw Error("injection is not a valid choice for output point " +
                        std::to_string(point_id));
        }
        if (inject == ConfigState::Configurable) {
            throw Error("injection requires an |A> or |Y> state type");
        }
        GeometryDesc out = g;
        for (ConfigPoint& cp : out.config_points) {
            if (cp.point_id == point_id) cp.state = inject;
        }
        return out;
    }

    const bool x_like = choice == IoChoice::MeasureX || choice == IoChoice::InitX;
    GeometryDesc out = g;

    // collect and drop the incident segments
    std::vector<int> partners;
    std::vector<size_t> dropped;
    for (size_t i = 0; i < out.segments.size(); ++i) {
        const Segment& s = out.segments[i];
        if (s.a == point_id || s.b == point_id) {
            partners.push_back(s.a == point_id ? s.b : s.a);
            dropped.push_back(i);
        }
    }
    if (partners.size() != 2) {
        throw Error("configuration point " + std::to_string(point_id) +
                    " does not have exactly two incident segments");
    }
    // remap of segment indices after dropping
    std::vector<int> seg_remap(out.segments.size(), -1);
    {
        std::vector<Segment> kept;
        for (size_t i = 0; i < out.segments.size(); ++i) {
            if (std::find(dropped.begin(), dropped.end(), i) != dropped.end()) continue;
            seg_remap[i] = static_cast<int>(kept.size());
            kept.push_back(out.segments[i]);
        }
        int joined = -1;
        if (!x_like) {
            joined = static_cast<int>(kept.size());
            kept.push_back({partners[0], partners[1]});
        }
        out.segments = std::move(kept);
        for (BijEntry& e : out.bijectivity) {
            std::vector<int> segs;
            for (int si : e.segments) {
                if (seg_remap[static_cast<size_t>(si)] >= 0) {
                    segs.push_back(seg_remap[static_cast<size_t>(si)]);
                }
            }
            bool owned_dropped = segs.size() != e.segments.size();
            if (owned_dropped && joined >= 0) segs.push_back(joined);
            e.segments = std::move(segs);
        }
    }

    // drop the point and renumber ids densely
    std::map<int, int> id_remap;
    {
        std::vector<LatticePoint> kept;
        std::vector<StrandClass> kept_cls;
        for (size_t i = 0; i < out.points.size(); ++i) {
            if (out.points[i].id == point_id) continue;
            int nid = static_cast<int>(kept.size()) + 1;
            id_remap[out.points[i].id] = nid;
            LatticePoint p = out.points[i];
            p.id = nid;
            kept.push_back(p);
            kept_cls.push_back(out.point_class[i]);
        }
        out.points = std::move(kept);
        out.point_class = std::move(kept_cls);
    }
    for (Segment& s : out.segments) {
        s.a = id_remap.at(s.a);
        s.b = id_remap.at(s.b);
    }
    {
        std::vector<ConfigPoint> kept;
        for (const ConfigPoint& cp : out.config_points) {
            if (cp.point_id == point_id) continue;
            ConfigPoint c2 = cp;
            c2.point_id = id_remap.at(cp.point_id);
            kept.push_back(c2);
        }
        out.config_points = std::move(kept);
    }
    for (BijEntry& e : out.bijectivity) {
        std::vector<int> pts;
        for (int pid : e.points) {
            if (pid == point_id) continue;
            pts.push_back(id_remap.at(pid));
        }
        e.points = std::move(pts);
    }
    return out;
}

// ------------------------------------------------------------ serialization

std::string serialize_geometry(const GeometryDesc& g) {
    std::ostringstream out;
    out << g.config_points.size() << '\n' << g.points.size() << '\n' << g.segments.size() << '\n';
    if (!g.config_points.empty()) {
        for (size_t i = 0; i < g.config_points.size(); ++i) {
            out << (i ? "," : "") << g.config_points[i].point_id;
        }
        out << '\n';
    }
    for (const Segment& s : g.segments) out << s.a << ',' << s.b << '\n';
    for (const LatticePoint& p : g.points) {
        out << p.id << ',' << p.x << ',' << p.y << ',' << p.z << '\n';
    }
    for (const ConfigPoint& cp : g.config_points) {
        char mark = 'i';
        if (cp.state == ConfigState::InjectA) mark = 'a';
        else if (cp.state == ConfigState::InjectY) mark = 'y';
        else if (cp.io == IoType::Output) mark = 'o';
        out << cp.point_id << ',' << mark << '\n';
    }
    for (size_t i = 0; i < g.points.size(); ++i) {
        if (g.point_class[i] == StrandClass::Dual) {
            out << "# dual " << g.points[i].id << '\n';
        }
    }
    for (const BijEntry& e : g.bijectivity) {
        out << "# bij " << e.element << " |";
        for (int p : e.points) out << ' ' << p;
        out << " |";
        for (int s : e.segments) out << ' ' << s;
        out << '\n';
    }
    return out.str();
}

GeometryDesc parse_geometry(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> lines;
    std::vector<std::string> sidecar;
    std::string raw;
    while (std::getline(in, raw)) {
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (raw.empty()) continue;
        if (raw[0] == '#') sidecar.push_back(raw);
        else lines.push_back(raw);
    }
    if (lines.size() < 3) throw Error("geometry file: missing header counts");
    size_t n_config, n_points, n_segments;
    try {
        n_config = std::stoul(lines[0]);
        n_points = std::stoul(lines[1]);
        n_segments = std::stoul(lines[2]);
    } catch (const std::exception&) {
        throw Error("geometry file: bad header counts");
    }
    size_t expected = 3 + (n_config > 0 ? 1 : 0) + n_segments + n_points + n_config;
    if (lines.size() != expected) {
        throw Error("geometry file: expected " + std::to_string(expected) + " lines, found " +
                    std::to_string(lines.size()));
    }
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::istringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(item);
        return out;
    };
    GeometryDesc g;
    size_t at = 3;
    std::vector<int> config_ids;
    if (n_config > 0) {
        for (const std::string& tok : split(lines[at++])) config_ids.push_back(std::stoi(tok));
        if (config_ids.size() != n_config) {
            throw Error("geometry file: configuration id list length mismatch");
        }
    }
    for (size_t i = 0; i < n_segments; ++i) {
        auto f = split(lines[at++]);
        if (f.size() != 2) throw Error("geometry file: bad segment line");
        g.segments.push_back({std::stoi(f[0]), std::stoi(f[1])});
    }
    for (size_t i = 0; i < n_points; ++i) {
        auto f = split(lines[at++]);
        if (f.size() != 4) throw Error("geometry file: bad coordinate line");
        g.points.push_back({std::stoi(f[0]), std::stoi(f[1]), std::stoi(f[2]), std::stoi(f[3])});
    }
    std::map<int, std::pair<IoType, ConfigState>> marks;
    for (size_t i = 0; i < n_config; ++i) {
        auto f = split(lines[at++]);
        if (f.size() != 2 || f[1].size() != 1) throw Error("geometry file: bad io mark line");
        IoType io = IoType::Input;
        ConfigState st = ConfigState::Configurable;
        switch (f[1][0]) {
            case 'i': break;
            case 'o': io = IoType::Output; break;
            case 'a': st = ConfigState::InjectA; break;
            case 'y': st = ConfigState::InjectY; break;
            default: throw Error("geometry file: unknown io mark '" + f[1] + "'");
        }
        marks[std::stoi(f[0])] = {io, st};
    }
    for (int id : config_ids) {
        auto it = marks.find(id);
        if (it == marks.end()) {
            throw Error("geometry file: configuration point " + std::to_string(id) +
                        " has no io mark");
        }
        g.config_points.push_back({id, it->second.first, it->second.second});
    }
    std::set<int> ids;
    for (const LatticePoint& p : g.points) ids.insert(p.id);
    for (const Segment& s : g.segments) {
        if (!ids.count(s.a) || !ids.count(s.b)) {
            throw Error("geometry file: segment references missing point");
        }
    }

    g.point_class.assign(g.points.size(), StrandClass::Primal);
    std::map<int, size_t> index_of;
    for (size_t i = 0; i < g.points.size(); ++i) index_of[g.points[i].id] = i;
    for (const std::string& s : sidecar) {
        std::istringstream ss(s);
        std::string hash, kind;
        ss >> hash >> kind;
        if (kind == "dual") {
            int id;
            while (ss >> id) {
                auto it = index_of.find(id);
                if (it != index_of.end()) g.point_class[it->second] = StrandClass::Dual;
            }
        } else if (kind == "bij") {
            std::string rest;
            std::getline(ss, rest);
            size_t bar1 = rest.find('|');
            size_t bar2 = rest.rfind('|');
            if (bar1 == std::string::npos || bar2 == bar1) continue;
            BijEntry e;
            e.element = rest.substr(1, bar1 - 2);
            std::istringstream ps(rest.substr(bar1 + 1, bar2 - bar1 - 1));
            int v;
            while (ps >> v) e.points.push_back(v);
            std::istringstream ssg(rest.substr(bar2 + 1));
            while (ssg >> v) e.segments.push_back(v);
            g.bijectivity.push_back(std::move(e));
        }
    }
    return g;
}

}  // namespace icm
