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

#include "icm/database.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace icm {

namespace {

const std::set<std::string> kGridTokens = {
    "WIRE", "CTRL", "TGT",  "TGATE", "TDAG", "HGATE",
    "PGATE", "PDAG", "XGATE", "ZGATE", "MZ", "MX",
};

std::optional<InitBasis> init_token(const std::string& t) {
    if (t == "ZERO") return InitBasis::Zero;
    if (t == "PLUS") return InitBasis::Plus;
    if (t == "AA") return InitBasis::A;
    if (t == "YY") return InitBasis::Y;
    if (t == "EMPTY") return InitBasis::Empty;
    return std::nullopt;
}

std::optional<MeasKind> meas_token(const std::string& t) {
    if (t == "MZ") return MeasKind::Z;
    if (t == "MX") return MeasKind::X;
    if (t == "MA") return MeasKind::ABasis;
    if (t == "MY") return MeasKind::YBasis;
    if (t == "MZX") return MeasKind::CondZX;
    if (t == "MXZ") return MeasKind::CondXZ;
    if (t == "EMPTY") return MeasKind::Empty;
    return std::nullopt;
}

struct Line {
    std::string text;
    int number;
};

[[noreturn]] void fail(int line, const std::string& msg) {
    throw Error("database line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> tokens_of(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

}  // namespace

EntryVariant DecompEntry::variant() const {
    for (MeasKind m : meas_row) {
        if (m == MeasKind::CondZX || m == MeasKind::CondXZ) return EntryVariant::Deterministic;
    }
    return EntryVariant::Simple;
}

const DecompEntry* Database::find(const std::string& name, EntryVariant variant) const {
    for (const DecompEntry& e : entries) {
        if (e.name == name && e.variant() == variant) return &e;
    }
    return nullptr;
}

const DecompEntry* Database::find_any(const std::string& name) const {
    for (const DecompEntry& e : entries) {
        if (e.name == name) return &e;
    }
    return nullptr;
}

void Database::add(DecompEntry entry) {
    for (const DecompEntry& e : entries) {
        if (e.name == entry.name && e.kind == entry.kind && e.variant() == entry.variant()) {
            throw Error("duplicate database entry '" + entry.name + "'");
        }
    }
    entries.push_back(std::move(entry));
}

std::vector<GateOp> expand_fanout(const CnotRow& row) {
    std::vector<GateOp> out;
    std::set<QubitId> seen;
    for (QubitId t : row.targets) {
        if (t == row.control) {
            throw Error("fanout row: control " + std::to_string(row.control) +
                        " equals target");
        }
        if (!seen.insert(t).second) {
            throw Error("fanout row: duplicate target " + std::to_string(t));
        }
        out.push_back(GateOp::make_cnot(row.control, t));
    }
    return out;
}

namespace {

void finish_entry(DecompEntry& e, const std::vector<Line>& body, Database& db) {
    if (e.kind == DecompKind::Nicm) {
        size_t width = 0;
        for (const Line& ln : body) {
            auto toks = tokens_of(ln.text);
            if (width == 0) width = toks.size();
            if (toks.size() != width) {
                fail(ln.number, "grid row width " + std::to_string(toks.size()) +
                                    " does not match " + std::to_string(width));
            }
            e.grid.push_back(std::move(toks));
        }
        if (e.grid.empty()) fail(0, "nicm entry '" + e.name + "' has no grid rows");
        return;
    }
    // icm / icmdist: init row, c rows, measurement row
    if (body.size() < 2) fail(body.empty() ? 0 : body.front().number,
                              "icm entry '" + e.name + "' needs init and measurement rows");
    {
        const Line& ln = body.front();
        for (const std::string& t : tokens_of(ln.text)) {
            auto b = init_token(t);
            if (!b) fail(ln.number, "unknown initialisation token '" + t + "'");
            e.init_row.push_back(*b);
        }
    }
    for (size_t i = 1; i + 1 < body.size(); ++i) {
        const Line& ln = body[i];
        auto toks = tokens_of(ln.text);
        if (toks.empty() || toks[0] != "c") fail(ln.number, "expected a CNOT row");
        if (toks.size() < 3) fail(ln.number, "CNOT row needs a control and a target");
        CnotRow row;
        try {
            row.control = std::stoi(toks[1]);
            for (size_t k = 2; k < toks.size(); ++k) row.targets.push_back(std::stoi(toks[k]));
        } catch (const std::exception&) {
            fail(ln.number, "bad qubit index in CNOT row");
        }
        try {
            expand_fanout(row);
        } catch (const Error& err) {
            fail(ln.number, err.what());
        }
        e.cnot_rows.push_back(std::move(row));
    }
    {
        const Line& ln = body.back();
        for (const std::string& t : tokens_of(ln.text)) {
            auto m = meas_token(t);
            if (!m) fail(ln.number, "unknown measurement token '" + t + "'");
            e.meas_row.push_back(*m);
        }
        if (e.init_row.size() != e.meas_row.size()) {
            fail(ln.number, "entry '" + e.name + "': init row has " +
                                std::to_string(e.init_row.size()) + " tokens, measurement row " +
                                std::to_string(e.meas_row.size()));
        }
        int width = static_cast<int>(e.init_row.size());
        if (e.ancilla_count >= width) {
            fail(ln.number, "entry '" + e.name + "': ancilla count " +
                                std::to_string(e.ancilla_count) + " leaves no data qubit in " +
                                std::to_string(width) + " columns");
        }
        for (const CnotRow& row : e.cnot_rows) {
            if (row.control < 1 || row.control > width) {
                fail(ln.number, "entry '" + e.name + "': CNOT control " +
                                    std::to_string(row.control) + " outside 1.." +
                                    std::to_string(width));
            }
            for (QubitId t : row.targets) {
                if (t < 1 || t > width) {
                    fail(ln.number, "entry '" + e.name + "': CNOT target " + std::to_string(t) +
                                        " outside 1.." + std::to_string(width));
                }
            }
        }
    }
    (void)db;
}

}  // namespace

Database parse_database(const std::string& text) {
    // Join continuation lines, drop comments, keep line numbers for errors.
    std::vector<Line> lines;
    {
        std::istringstream in(text);
        std::string raw;
        int no = 0;
        std::string pending;
        int pending_no = 0;
        while (std::getline(in, raw)) {
            ++no;
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            std::string stripped = raw;
            size_t first = stripped.find_first_not_of(" \t");
            if (first != std::string::npos && stripped[first] == '#') continue;
            bool cont = false;
            size_t bs = stripped.find_last_not_of(" \t");
            if (bs != std::string::npos && stripped[bs] == '\\') {
                cont = true;
                stripped = stripped.substr(0, bs);
            }
            if (pending.empty()) pending_no = no;
            pending += stripped;
            pending += ' ';
            if (cont) continue;
            if (pending.find_first_not_of(" \t") != std::string::npos) {
                lines.push_back({pending, pending_no});
            }
            pending.clear();
        }
        if (!pending.empty() && pending.find_first_not_of(" \t") != std::string::npos) {
            lines.push_back({pending, pending_no});
        }
    }

    Database db;
    size_t i = 0;
    while (i < lines.size()) {
        auto head = tokens_of(lines[i].text);
        if (head.size() != 1 || head[0][0] != '=' || head[0].size() < 2) {
            fail(lines[i].number, "expected an entry header '=NAME'");
        }
        DecompEntry e;
        e.name = head[0].substr(1);
        ++i;
        if (i >= lines.size()) fail(lines[i - 1].number, "entry '" + e.name + "' missing kind");
        {
            auto kind = tokens_of(lines[i].text);
            if (kind.size() != 1) fail(lines[i].number, "expected a decomposition kind");
            if (kind[0] == "icm") e.kind = DecompKind::Icm;
            else if (kind[0] == "nicm") e.kind = DecompKind::Nicm;
            else if (kind[0] == "icmdist") e.kind = DecompKind::Icmdist;
            else fail(lines[i].number, "unknown decomposition kind '" + kind[0] + "'");
        }
        ++i;
        if (i >= lines.size()) fail(lines[i - 1].number, "entry '" + e.name + "' missing ancilla count");
        {
            auto anc = tokens_of(lines[i].text);
            try {
                if (anc.size() != 1) throw std::invalid_argument("count");
                e.ancilla_count = std::stoi(anc[0]);
                if (e.ancilla_count < 0) throw std::invalid_argument("count");
            } catch (const std::exception&) {
                fail(lines[i].number, "bad ancilla count");
            }
        }
        ++i;
        std::vector<Line> body;
        while (i < lines.size()) {
            auto toks = tokens_of(lines[i].text);
            if (!toks.empty() && toks[0][0] == '=') break;
            body.push_back(lines[i]);
            ++i;
        }
        finish_entry(e, body, db);
        try {
            db.add(std::move(e));
        } catch (const Error& err) {
            fail(body.empty() ? lines[i - 1].number : body.front().number, err.what());
        }
    }

    // Grid cells must be known tokens or names of single-qubit entries in
    // this database; anything else would silently break the ICM guarantee.
    for (const DecompEntry& e : db.entries) {
        for (const auto& row : e.grid) {
            for (const std::string& t : row) {
                if (kGridTokens.count(t)) continue;
                const DecompEntry* ref = db.find_any(t);
                if (ref == nullptr) {
                    throw Error("database entry '" + e.name + "': unknown token '" + t + "'");
                }
                if (ref->kind == DecompKind::Nicm && ref->arity() != 1) {
                    throw Error("database entry '" + e.name + "': grid cell '" + t +
                                "' names a multi-qubit gate");
                }
            }
        }
    }
    return db;
}

const char* meas_kind_token(MeasKind m) {
    switch (m) {
        case MeasKind::Z: return "MZ";
        case MeasKind::X: return "MX";
        case MeasKind::ABasis: return "MA";
        case MeasKind::YBasis: return "MY";
        case MeasKind::CondZX: return "MZX";
        case MeasKind::CondXZ: return "MXZ";
        case MeasKind::Empty: return "EMPTY";
    }
    return "?";
}

const char* decomp_kind_name(DecompKind k) {
    switch (k) {
        case DecompKind::Icm: return "icm";
        case DecompKind::Nicm: return "nicm";
        case DecompKind::Icmdist: return "icmdist";
    }
    return "?";
}

std::string serialize_database(const Database& db) {
    std::ostringstream out;
    bool first = true;
    for (const DecompEntry& e : db.entries) {
        if (!first) out << '\n';
        first = false;
        out << '=' << e.name << '\n'
            << decomp_kind_name(e.kind) << '\n'
            << e.ancilla_count << '\n';
        if (e.kind == DecompKind::Nicm) {
            for (const auto& row : e.grid) {
                for (size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i];
                out << '\n';
            }
        } else {
            for (size_t i = 0; i < e.init_row.size(); ++i) {
                out << (i ? " " : "") << init_basis_name(e.init_row[i]);
            }
            out << '\n';
            for (const CnotRow& row : e.cnot_rows) {
                out << "c " << row.control;
                for (QubitId t : row.targets) out << ' ' << t;
                out << '\n';
            }
            for (size_t i = 0; i < e.meas_row.size(); ++i) {
                out << (i ? " " : "") << meas_kind_token(e.meas_row[i]);
            }
            out << '\n';
        }
    }
    return out.str();
}

Database seed_database() { return parse_database(seed_database_text()); }

}  // namespace icm
