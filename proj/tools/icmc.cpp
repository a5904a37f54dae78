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

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "icm/circuit.hpp"
#include "icm/database.hpp"
#include "icm/geometry.hpp"
#include "icm/render.hpp"
#include "icm/simulator.hpp"
#include "icm/transform.hpp"
#include "icm/unitary.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;  // validation / verification failure
constexpr int kExitIo = 2;    // I/O or parse error

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw icm::Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw icm::Error("cannot write '" + path + "'");
    out << content;
}

icm::Database load_db(const std::string& path) {
    if (path.empty()) return icm::seed_database();
    return icm::parse_database(read_file(path));
}

// ------------------------------------------------------------------ verify

icm::Unitary analytic_1q(const std::array<icm::Amp, 4>& u) {
    icm::Unitary m = icm::Unitary::identity(2);
    m.at(0, 0) = u[0];
    m.at(0, 1) = u[1];
    m.at(1, 0) = u[2];
    m.at(1, 1) = u[3];
    return m;
}

icm::Unitary analytic_cnot() {
    icm::Unitary m = icm::Unitary::identity(4);
    m.m.assign(16, {});
    // qubit 1 = control (bit 0), qubit 2 = target (bit 1)
    for (int i = 0; i < 4; ++i) m.at((i & 1) ? i ^ 2 : i, i) = 1.0;
    return m;
}

icm::Unitary analytic_toffoli() {
    icm::Unitary m = icm::Unitary::identity(8);
    m.m.assign(64, {});
    for (int i = 0; i < 8; ++i) m.at((i & 3) == 3 ? i ^ 4 : i, i) = 1.0;
    return m;
}

icm::Unitary analytic_cv(bool dagger) {
    const icm::Amp h = dagger ? icm::Amp(0.5, -0.5) : icm::Amp(0.5, 0.5);
    const icm::Amp g = dagger ? icm::Amp(0.5, 0.5) : icm::Amp(0.5, -0.5);
    icm::Unitary m = icm::Unitary::identity(4);
    // control bit 0, target bit 1; V = sqrt(X)
    m.at(1, 1) = h;
    m.at(1, 3) = g;
    m.at(3, 1) = g;
    m.at(3, 3) = h;
    return m;
}

icm::Unitary analytic_cz() {
    icm::Unitary m = icm::Unitary::identity(4);
    m.at(3, 3) = -1.0;
    return m;
}

struct VerifyTarget {
    std::string label;
    std::function<double(const icm::Database&, icm::TeleportMode)> fidelity;
};

double teleported_fidelity(const icm::Database& db, icm::TeleportMode mode,
                           const std::string& gate, const icm::Unitary& want) {
    icm::Circuit c;
    c.qubit_count = 1;
    c.gates.push_back(icm::GateOp{gate, {1}});
    icm::ConversionOptions opts;
    opts.teleport_mode = mode;
    icm::IcmCircuit icm_c = icm::convert_to_icm(c, db, opts);
    icm::Unitary got =
        icm::circuit_unitary(icm_c, icm::appropriate_outcomes(icm_c), /*frame_on=*/true);
    return icm::phase_fidelity(want, got);
}

double raw_fidelity(const icm::Database& db, const std::string& gate, int arity,
                    const icm::Unitary& want) {
    icm::Circuit c;
    c.qubit_count = arity;
    icm::GateOp g;
    g.name = gate;
    for (int q = 1; q <= arity; ++q) g.qubits.push_back(q);
    c.gates.push_back(g);
    icm::Circuit prim = icm::expand_nicm(c, db);
    std::vector<icm::QubitId> data;
    for (int q = 1; q <= arity; ++q) data.push_back(q);
    icm::Unitary got = icm::circuit_unitary(prim, {}, data, data);
    return icm::phase_fidelity(want, got);
}

int cmd_verify_gates(const icm::Database& db, const std::string& which, icm::TeleportMode mode) {
    using Fn = std::function<double()>;
    std::vector<std::pair<std::string, Fn>> checks;
    auto add = [&](const std::string& name, const std::string& label, Fn fn) {
        if (which == "all" || which == name) checks.emplace_back(label, std::move(fn));
    };
    const icm::Unitary t = analytic_1q({1, 0, 0, std::polar(1.0, std::numbers::pi / 4)});
    const icm::Unitary td = analytic_1q({1, 0, 0, std::polar(1.0, -std::numbers::pi / 4)});
    const icm::Unitary p = analytic_1q({1, 0, 0, icm::Amp(0, 1)});
    const icm::Unitary pd = analytic_1q({1, 0, 0, icm::Amp(0, -1)});
    const double s = std::numbers::sqrt2 / 2;
    const icm::Unitary h = analytic_1q({s, s, s, -s});
    add("CNOT", "CNOT", [&] {
        icm::Circuit c;
        c.qubit_count = 2;
        c.gates.push_back(icm::GateOp::make_cnot(1, 2));
        return icm::phase_fidelity(analytic_cnot(), icm::circuit_unitary(c, {}, {1, 2}, {1, 2}));
    });
    add("TGATE", "T", [&] { return teleported_fidelity(db, mode, "TGATE", t); });
    add("TDAG", "Tdag", [&] { return teleported_fidelity(db, mode, "TDAG", td); });
    add("PGATE", "P", [&] { return teleported_fidelity(db, mode, "PGATE", p); });
    add("PDAG", "Pdag", [&] { return teleported_fidelity(db, mode, "PDAG", pd); });
    add("HGATE", "H", [&] { return teleported_fidelity(db, mode, "HGATE", h); });
    add("toffoli", "toffoli", [&] { return raw_fidelity(db, "toffoli", 3, analytic_toffoli()); });
    add("cv", "cv", [&] { return raw_fidelity(db, "cv", 2, analytic_cv(false)); });
    add("cvdag", "cvdag", [&] { return raw_fidelity(db, "cvdag", 2, analytic_cv(true)); });
    add("cz", "cz", [&] { return raw_fidelity(db, "cz", 2, analytic_cz()); });
    if (checks.empty()) {
        std::cerr << "no verification target named '" << which << "'\n";
        return kExitIo;
    }
    bool all_ok = true;
    for (auto& [label, fn] : checks) {
        double f = fn();
        bool ok = f >= 1.0 - 1e-9;
        all_ok &= ok;
        std::printf("%s: fidelity %.6f, %s\n", label.c_str(), f, ok ? "PASS" : "FAIL");
    }
    return all_ok ? kExitOk : kExitFail;
}

int cmd_verify_distillation(const icm::Database& db, const std::string& kind_name, double p,
                            int trials, std::uint64_t seed, bool sweep) {
    icm::MagicKind kind = kind_name == "A" ? icm::MagicKind::A : icm::MagicKind::Y;
    if (!sweep) {
        icm::DistillationResult r = icm::distillation_infidelity(kind, db, p, trials, seed);
        std::printf("distillation %s: p %.6g, infidelity %.6g, acceptance %.6f\n",
                    kind_name.c_str(), p, r.mean_infidelity, r.acceptance_rate);
        return kExitOk;
    }
    const std::vector<double> ps = {0.002, 0.005, 0.01};
    std::vector<double> infid;
    for (size_t i = 0; i < ps.size(); ++i) {
        icm::DistillationResult r =
            icm::distillation_infidelity(kind, db, ps[i], trials, seed + i);
        infid.push_back(r.mean_infidelity);
        std::printf("distillation %s: p %.6g, infidelity %.6g, acceptance %.6f\n",
                    kind_name.c_str(), ps[i], r.mean_infidelity, r.acceptance_rate);
    }
    // least-squares slope in log-log
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < ps.size(); ++i) {
        double x = std::log(ps[i]), y = std::log(infid[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = static_cast<double>(ps.size());
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    bool ok = std::abs(slope - 3.0) <= 0.3;
    std::printf("distillation %s: log-log slope %.3f, %s\n", kind_name.c_str(), slope,
                ok ? "PASS" : "FAIL");
    return ok ? kExitOk : kExitFail;
}

void print_stats(const icm::CircuitStats& s) {
    std::printf("t_count %d\nt_depth %d\nqubits %d\ngates %d\n", s.t_count, s.t_depth,
                s.qubit_count, s.gate_count);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"icmc: compiles circuits to the fault-tolerant ICM form"};
    app.require_subcommand(1);

    std::string db_path, out_stem, input_path, spec_path;
    std::string mode_name = "simple";
    std::string verify_target = "all", kind_name = "Y", circ_path, geom_path;
    int rounds = 0, dup = 1, trials = 10000;
    std::uint64_t seed = 1;
    double pval = 0.005, epsilon = 1e-10;
    bool force = false, sweep = false;
    int max_len = 12;

    CLI::App* dec = app.add_subcommand("decompose", "recognise unitary specs as nicm entries");
    dec->add_option("spec", spec_path, "unitary spec file")->required();
    dec->add_option("--db", db_path, "database file (defaults to the builtin seed)");
    dec->add_option("--out", out_stem, "output database path (defaults to --db)");
    dec->add_flag("--force", force, "replace existing entries");
    dec->add_option("--max-len", max_len, "recognition search depth");
    dec->add_option("--epsilon", epsilon, "approximation tolerance for the fallback hook");

    CLI::App* pr = app.add_subcommand("processraw", "expand nicm gates to primitives");
    pr->add_option("circuit", input_path, "input circuit file")->required();
    pr->add_option("--db", db_path, "database file");
    pr->add_option("--out", out_stem, "output circuit file")->required();

    CLI::App* cf = app.add_subcommand("convertft", "convert a primitive circuit to ICM form");
    cf->add_option("circuit", input_path, "primitive circuit file")->required();
    cf->add_option("--db", db_path, "database file");
    cf->add_option("--out", out_stem, "output stem for .circ/.geom/.svg")->required();
    cf->add_option("--rounds", rounds, "distillation rounds");
    cf->add_option("--dup", dup, "duplicate distillers per injected state");
    cf->add_option("--mode", mode_name, "teleportation mode: simple|det");

    CLI::App* ve = app.add_subcommand("verify", "check decompositions against analytic targets");
    ve->add_option("target", verify_target, "gate entry name, 'all' or 'distillation'");
    ve->add_option("--db", db_path, "database file");
    ve->add_option("--mode", mode_name, "teleportation mode: simple|det");
    ve->add_option("--kind", kind_name, "distillation kind: A|Y");
    ve->add_option("--p", pval, "injected-state error probability");
    ve->add_option("--trials", trials, "Monte-Carlo trials");
    ve->add_option("--seed", seed, "random seed");
    ve->add_flag("--sweep", sweep, "sweep p in {0.002,0.005,0.01} and fit the slope");

    CLI::App* re = app.add_subcommand("render", "draw a .circ and/or .geom file as SVG");
    re->add_option("--circ", circ_path, "circuit description file");
    re->add_option("--geom", geom_path, "geometry description file");
    re->add_option("--out", out_stem, "output stem for .svg")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitIo;
    }

    try {
        if (dec->parsed()) {
            icm::Database db = load_db(db_path);
            auto specs = icm::parse_unitary_specs(read_file(spec_path));
            for (const icm::UnitarySpec& s : specs) {
                if (db.contains(s.name)) {
                    if (!force) {
                        std::cerr << "entry '" << s.name
                                  << "' already exists (use --force to replace)\n";
                        return kExitFail;
                    }
                    std::erase_if(db.entries,
                                  [&](const icm::DecompEntry& e) { return e.name == s.name; });
                }
                std::vector<std::string> seq;
                try {
                    seq = icm::recognize_unitary(s, max_len).sequence;
                } catch (const icm::NotRepresentableError&) {
                    seq = icm::approximation_hook(s, epsilon);  // may throw NotImplemented
                }
                icm::RecognitionResult rr;
                rr.sequence = std::move(seq);
                db.add(icm::emit_nicm_entry(s.name, rr));
                std::printf("added nicm entry '%s' (%zu gates)\n", s.name.c_str(),
                            rr.sequence.size());
            }
            std::string out = out_stem.empty() ? db_path : out_stem;
            if (out.empty()) throw icm::Error("no output database path (use --db or --out)");
            write_file(out, icm::serialize_database(db));
            return kExitOk;
        }
        if (pr->parsed()) {
            icm::Database db = load_db(db_path);
            icm::Circuit c = icm::parse_gate_list(read_file(input_path), db);
            icm::Circuit prim = icm::expand_nicm(c, db);
            write_file(out_stem, icm::to_gate_list(prim));
            print_stats(icm::compute_stats(prim));
            return kExitOk;
        }
        if (cf->parsed()) {
            icm::Database db = load_db(db_path);
            icm::Circuit c = icm::parse_gate_list(read_file(input_path), db);
            icm::ConversionOptions opts;
            opts.teleport_mode =
                mode_name == "det" ? icm::TeleportMode::Deterministic : icm::TeleportMode::Simple;
            opts.distillation_rounds = rounds;
            opts.duplicate_distillers = dup;
            icm::IcmCircuit ic = icm::convert_to_icm(c, db, opts);
            ic = icm::inline_distillation(ic, db, opts);
            icm::ValidationReport rep = icm::validate_icm(ic.circuit);
            if (!rep.ok) {
                for (const std::string& v : rep.violations) std::cerr << v << '\n';
                return kExitFail;
            }
            icm::GeometryDesc g = icm::generate_geometry(ic);
            write_file(out_stem + ".circ", icm::to_circ(ic.circuit));
            write_file(out_stem + ".geom", icm::serialize_geometry(g));
            write_file(out_stem + ".svg", icm::render_svg(ic.circuit, g));
            print_stats(icm::compute_stats(ic));
            return kExitOk;
        }
        if (ve->parsed()) {
            icm::Database db = load_db(db_path);
            icm::TeleportMode mode =
                mode_name == "det" ? icm::TeleportMode::Deterministic : icm::TeleportMode::Simple;
            if (verify_target == "distillation") {
                return cmd_verify_distillation(db, kind_name, pval, trials, seed, sweep);
            }
            if (verify_target.size() > 5 && verify_target.ends_with(".circ")) {
                icm::Circuit c = icm::parse_circ(read_file(verify_target));
                std::vector<icm::QubitId> data;
                for (icm::QubitId q = 1; q <= c.qubit_count; ++q) {
                    if (c.init_of(q) == icm::InitBasis::Empty &&
                        c.meas_of(q).kind == icm::MeasKind::Empty) {
                        data.push_back(q);
                    }
                }
                icm::OutcomeAssignment fixed;
                for (const auto& [q, m] : c.measurements) fixed.fixed[q] = 0;
                icm::Unitary got = icm::circuit_unitary(c, fixed, data, data);
                double f = icm::phase_fidelity(icm::Unitary::identity(got.dim), got);
                bool ok = f >= 1.0 - 1e-9;
                std::printf("%s: fidelity %.6f, %s\n", verify_target.c_str(), f,
                            ok ? "PASS" : "FAIL");
                return ok ? kExitOk : kExitFail;
            }
            return cmd_verify_gates(db, verify_target, mode);
        }
        if (re->parsed()) {
            if (circ_path.empty() && geom_path.empty()) {
                throw icm::Error("render needs --circ and/or --geom");
            }
            icm::Circuit c;
            icm::GeometryDesc g;
            if (!circ_path.empty()) c = icm::parse_circ(read_file(circ_path));
            if (!geom_path.empty()) g = icm::parse_geometry(read_file(geom_path));
            std::string svg = circ_path.empty()
                                  ? icm::render_geometry_svg(g)
                                  : (geom_path.empty() ? icm::render_circuit_svg(c)
                                                       : icm::render_svg(c, g));
            write_file(out_stem + ".svg", svg);
            return kExitOk;
        }
    } catch (const icm::NotImplementedError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    } catch (const icm::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitIo;
}
