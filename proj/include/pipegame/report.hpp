// Copyright 2026 The pipegame Authors
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

#ifndef PIPEGAME_REPORT_HPP
#define PIPEGAME_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <string>
#include <vector>

#include "pipegame/game.hpp"
#include "pipegame/recursive_core.hpp"

namespace pipegame {

enum class OutputFormat { table, csv, json };

// ---------------------------------------------------------------------------
// Formatting primitives
// ---------------------------------------------------------------------------

/// Plain-text numbers: twelve significant digits, which is finer than any
/// stated tolerance but coarse enough to swallow accumulated float noise.
inline std::string fmt_full(double x) {
    if (std::fabs(x) < 1e-9) return "0";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

/// Money with one decimal place, as used in the text tables.
inline std::string fmt_money(double x) {
    if (x == 0.0) x = 0.0;  // avoid "-0.0"
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.1f", x);
    return buf;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string coalition_label(const Network& net, Coalition c) {
    std::string s = "{";
    bool first = true;
    for (int i : c.members()) {
        if (!first) s += ",";
        s += net.player_ids[i];
        first = false;
    }
    return s + "}";
}

inline std::string partition_label(const Network& net, const Partition& p) {
    std::string s;
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
        if (b > 0) s += "|";
        s += coalition_label(net, p.blocks[b]);
    }
    return s;
}

inline nlohmann::json coalition_json(const Network& net, Coalition c) {
    nlohmann::json arr = nlohmann::json::array();
    for (int i : c.members()) arr.push_back(net.player_ids[i]);
    return arr;
}

inline nlohmann::json partition_json(const Network& net, const Partition& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Coalition& b : p.blocks) arr.push_back(coalition_json(net, b));
    return arr;
}

/// Pads a grid of cells into aligned columns (first column left, rest right).
inline std::string render_grid(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (width.size() <= c) width.resize(c + 1, 0);
            width[c] = std::max(width[c], row[c].size());
        }
    std::string out;
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out += "  ";
            const std::string& cell = row[c];
            std::string pad(width[c] - cell.size(), ' ');
            out += c == 0 ? cell + pad : pad + cell;
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Game exports
// ---------------------------------------------------------------------------

struct GameRow {
    std::string partition;  // "-" for isolated (characteristic-form) rows
    Coalition coalition;
    double value = 0.0;
    double phi = 0.0;
    double internal_profit = 0.0;
    double external_profit = 0.0;
};

inline std::vector<GameRow> game_rows(const CffResult& cff) {
    std::vector<GameRow> rows;
    for (const auto& [bits, eval] : cff.evals) {
        Coalition c(bits);
        rows.push_back({"-", c, cff.v.value(c), eval.phi, eval.internal_profit, 0.0});
    }
    return rows;
}

inline std::vector<GameRow> game_rows(const Network& net, const PartitionFunction& pf) {
    std::vector<GameRow> rows;
    for (std::size_t p = 0; p < pf.partitions.size(); ++p) {
        std::string label = partition_label(net, pf.partitions[p]);
        for (std::size_t b = 0; b < pf.partitions[p].blocks.size(); ++b) {
            const EmbeddedEntry& e = pf.entries[p][b];
            rows.push_back({label, pf.partitions[p].blocks[b], e.value, e.phi,
                            e.internal_profit, e.external_profit});
        }
    }
    return rows;
}

inline std::string render_game(const Network& net, const std::vector<GameRow>& rows,
                               const char* mode, OutputFormat format) {
    if (format == OutputFormat::csv) {
        std::string out = "partition,coalition,value,phi,internal_profit,external_profit\n";
        for (const GameRow& r : rows) {
            out += csv_field(r.partition) + "," + csv_field(coalition_label(net, r.coalition)) +
                   "," + fmt_full(r.value) + "," + fmt_full(r.phi) + "," +
                   fmt_full(r.internal_profit) + "," + fmt_full(r.external_profit) + "\n";
        }
        return out;
    }
    if (format == OutputFormat::json) {
        nlohmann::json doc;
        doc["mode"] = mode;
        doc["rows"] = nlohmann::json::array();
        for (const GameRow& r : rows) {
            nlohmann::json row;
            row["partition"] = r.partition;
            row["coalition"] = coalition_json(net, r.coalition);
            row["value"] = r.value;
            row["phi"] = r.phi;
            row["internal_profit"] = r.internal_profit;
            row["external_profit"] = r.external_profit;
            doc["rows"].push_back(std::move(row));
        }
        return doc.dump(2) + "\n";
    }
    std::vector<std::vector<std::string>> grid;
    grid.push_back({"partition", "coalition", "value", "phi", "int.profit", "ext.profit"});
    for (const GameRow& r : rows)
        grid.push_back({r.partition, coalition_label(net, r.coalition), fmt_money(r.value),
                        fmt_money(r.phi), fmt_money(r.internal_profit),
                        fmt_money(r.external_profit)});
    return render_grid(grid);
}

// ---------------------------------------------------------------------------
// Minimal claim export
// ---------------------------------------------------------------------------

inline std::string render_minimal_claim(const Network& net, const MinimalClaimResult& mc,
                                        OutputFormat format) {
    if (format == OutputFormat::csv) {
        std::string out = "coalition,value,stable_residual_partitions\n";
        for (const auto& [bits, value] : mc.claims.values) {
            std::string stables;
            auto it = mc.stable_residuals.find(bits);
            if (it != mc.stable_residuals.end()) {
                for (std::size_t i = 0; i < it->second.size(); ++i) {
                    if (i > 0) stables += ";";
                    stables += partition_label(net, it->second[i]);
                }
            }
            out += csv_field(coalition_label(net, Coalition(bits))) + "," + fmt_full(value) +
                   "," + csv_field(stables) + "\n";
        }
        return out;
    }
    if (format == OutputFormat::json) {
        nlohmann::json doc;
        doc["mode"] = "minimal_claim";
        doc["coalitions"] = nlohmann::json::array();
        for (const auto& [bits, value] : mc.claims.values) {
            nlohmann::json row;
            row["coalition"] = coalition_json(net, Coalition(bits));
            row["value"] = value;
            auto it = mc.stable_residuals.find(bits);
            nlohmann::json stables = nlohmann::json::array();
            if (it != mc.stable_residuals.end())
                for (const Partition& q : it->second) stables.push_back(partition_json(net, q));
            row["stable_residual_partitions"] = std::move(stables);
            doc["coalitions"].push_back(std::move(row));
        }
        doc["notes"] = mc.notes;
        return doc.dump(2) + "\n";
    }
    std::vector<std::vector<std::string>> grid;
    grid.push_back({"coalition", "claim", "stable outside arrangements"});
    for (const auto& [bits, value] : mc.claims.values) {
        std::string stables;
        auto it = mc.stable_residuals.find(bits);
        if (it != mc.stable_residuals.end()) {
            for (std::size_t i = 0; i < it->second.size(); ++i) {
                if (i > 0) stables += " ";
                stables += partition_label(net, it->second[i]);
            }
        }
        grid.push_back({coalition_label(net, Coalition(bits)), fmt_money(value), stables});
    }
    std::string out = render_grid(grid);
    for (const std::string& note : mc.notes) out += "note: " + note + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Power reports
// ---------------------------------------------------------------------------

inline std::string render_power_reports(const Network& net,
                                        const std::vector<PowerReport>& reports,
                                        OutputFormat format) {
    if (format == OutputFormat::csv) {
        std::string out = "method,player,value\n";
        for (const PowerReport& r : reports)
            for (int i = 0; i < net.player_count; ++i)
                out += std::string(method_tag(r.method)) + "," + csv_field(net.player_ids[i]) +
                       "," + fmt_full(r.shapley[i]) + "\n";
        return out;
    }
    if (format == OutputFormat::json) {
        nlohmann::json doc;
        doc["players"] = net.player_ids;
        doc["reports"] = nlohmann::json::array();
        for (const PowerReport& r : reports) {
            nlohmann::json rep;
            rep["method"] = method_tag(r.method);
            nlohmann::json values;
            for (int i = 0; i < net.player_count; ++i) values[net.player_ids[i]] = r.shapley[i];
            rep["values"] = std::move(values);
            if (!r.stable_residuals.empty()) {
                nlohmann::json stables = nlohmann::json::array();
                for (const auto& [bits, parts] : r.stable_residuals) {
                    nlohmann::json entry;
                    entry["coalition"] = coalition_json(net, Coalition(bits));
                    nlohmann::json list = nlohmann::json::array();
                    for (const Partition& q : parts) list.push_back(partition_json(net, q));
                    entry["stable_partitions"] = std::move(list);
                    stables.push_back(std::move(entry));
                }
                rep["stable_residuals"] = std::move(stables);
            }
            if (!r.notes.empty()) rep["notes"] = r.notes;
            doc["reports"].push_back(std::move(rep));
        }
        return doc.dump(2) + "\n";
    }
    std::vector<std::vector<std::string>> grid;
    std::vector<std::string> head = {"method"};
    for (int i = 0; i < net.player_count; ++i) head.push_back(net.player_ids[i]);
    grid.push_back(std::move(head));
    for (const PowerReport& r : reports) {
        std::vector<std::string> row = {method_tag(r.method)};
        for (int i = 0; i < net.player_count; ++i) row.push_back(fmt_money(r.shapley[i]));
        grid.push_back(std::move(row));
    }
    std::string out = render_grid(grid);
    for (const PowerReport& r : reports)
        for (const std::string& note : r.notes)
            out += "note (" + std::string(method_tag(r.method)) + "): " + note + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Flows and flow traces
// ---------------------------------------------------------------------------

namespace detail {

/// One aggregate plan per player, in first-appearance order.
inline std::vector<MemberFlow> aggregate_members(const Network& net,
                                                 const std::vector<MemberFlow>& members) {
    std::vector<MemberFlow> out;
    for (const MemberFlow& mf : members) {
        MemberFlow* slot = nullptr;
        for (MemberFlow& existing : out)
            if (existing.player == mf.player) slot = &existing;
        if (!slot) {
            out.push_back({mf.player, -1, zero_flow(net)});
            slot = &out.back();
        }
        accumulate(slot->flow, mf.flow);
    }
    return out;
}

}  // namespace detail

inline void append_trace_rows(const Network& net, const std::string& partition,
                              Coalition coalition, const std::vector<MemberFlow>& members,
                              std::string& out) {
    const double eps = 1e-12;
    std::string coalition_str = coalition_label(net, coalition);
    for (const MemberFlow& mf : detail::aggregate_members(net, members)) {
        auto emit_edge = [&](int k, const char* dir, double qty) {
            if (qty <= eps) return;
            std::string fees;
            for (int i = 0; i < net.player_count; ++i) {
                if (i == mf.player) continue;
                double fee = net.transport_fee(i, k) * qty;
                if (fee <= 0.0) continue;
                if (!fees.empty()) fees += ";";
                fees += net.player_ids[i] + ":" + fmt_full(fee);
            }
            out += csv_field(partition) + "," + csv_field(coalition_str) + "," +
                   csv_field(net.player_ids[mf.player]) + "," + csv_field(net.edge_ids[k]) + "," +
                   dir + "," + fmt_full(qty) + "," +
                   fmt_full(net.transport_cost(mf.player, k) * qty) + "," + csv_field(fees) + "\n";
        };
        for (int k = 0; k < net.edge_count; ++k) {
            emit_edge(k, "+", mf.flow.f_plus[k]);
            emit_edge(k, "-", mf.flow.f_minus[k]);
        }
        for (int r = 0; r < net.source_count; ++r) {
            double qty = mf.flow.production[r];
            if (qty <= eps) continue;
            out += csv_field(partition) + "," + csv_field(coalition_str) + "," +
                   csv_field(net.player_ids[mf.player]) + "," + csv_field(net.source_ids[r]) +
                   ",src," + fmt_full(qty) + "," + fmt_full(source_unit_cost(net, r) * qty) +
                   ",\n";
        }
    }
}

inline std::string flow_trace_header() {
    return "partition,coalition,member,edge_or_source,direction,quantity,cost,fee_paid_to\n";
}

inline std::string flow_trace_csv(const Network& net, const CffResult& cff) {
    std::string out = flow_trace_header();
    for (const auto& [bits, eval] : cff.evals)
        append_trace_rows(net, "-", Coalition(bits), eval.members, out);
    return out;
}

inline std::string flow_trace_csv(const Network& net, const PartitionFunction& pf,
                                  const std::vector<PartitionFlows>& details) {
    std::string out = flow_trace_header();
    for (std::size_t p = 0; p < pf.partitions.size(); ++p) {
        std::string label = partition_label(net, pf.partitions[p]);
        for (std::size_t b = 0; b < pf.partitions[p].blocks.size(); ++b)
            append_trace_rows(net, label, pf.partitions[p].blocks[b],
                              details[p].coalition_members[b], out);
    }
    return out;
}

inline std::string render_flows(const Network& net, const CoalitionFlows& flows,
                                Coalition coalition, OutputFormat format) {
    if (format == OutputFormat::csv) {
        std::string out = flow_trace_header();
        append_trace_rows(net, "-", coalition, flows.members, out);
        return out;
    }
    if (format == OutputFormat::json) {
        nlohmann::json doc;
        doc["coalition"] = coalition_json(net, coalition);
        doc["total_cost"] = flows.total_cost;
        doc["members"] = nlohmann::json::array();
        for (const MemberFlow& mf : detail::aggregate_members(net, flows.members)) {
            nlohmann::json member;
            member["player"] = net.player_ids[mf.player];
            member["cost"] = mf.flow.cost;
            nlohmann::json edges = nlohmann::json::array();
            for (int k = 0; k < net.edge_count; ++k) {
                if (mf.flow.f_plus[k] > 1e-12)
                    edges.push_back({{"edge", net.edge_ids[k]},
                                     {"direction", "+"},
                                     {"quantity", mf.flow.f_plus[k]}});
                if (mf.flow.f_minus[k] > 1e-12)
                    edges.push_back({{"edge", net.edge_ids[k]},
                                     {"direction", "-"},
                                     {"quantity", mf.flow.f_minus[k]}});
            }
            member["edges"] = std::move(edges);
            nlohmann::json production = nlohmann::json::array();
            for (int r = 0; r < net.source_count; ++r)
                if (mf.flow.production[r] > 1e-12)
                    production.push_back(
                        {{"source", net.source_ids[r]}, {"quantity", mf.flow.production[r]}});
            member["production"] = std::move(production);
            doc["members"].push_back(std::move(member));
        }
        return doc.dump(2) + "\n";
    }
    std::vector<std::vector<std::string>> grid;
    grid.push_back({"member", "item", "direction", "quantity", "cost"});
    for (const MemberFlow& mf : detail::aggregate_members(net, flows.members)) {
        for (int k = 0; k < net.edge_count; ++k) {
            if (mf.flow.f_plus[k] > 1e-12)
                grid.push_back({net.player_ids[mf.player], net.edge_ids[k], "+",
                                fmt_full(mf.flow.f_plus[k]),
                                fmt_money(net.transport_cost(mf.player, k) * mf.flow.f_plus[k])});
            if (mf.flow.f_minus[k] > 1e-12)
                grid.push_back({net.player_ids[mf.player], net.edge_ids[k], "-",
                                fmt_full(mf.flow.f_minus[k]),
                                fmt_money(net.transport_cost(mf.player, k) * mf.flow.f_minus[k])});
        }
        for (int r = 0; r < net.source_count; ++r)
            if (mf.flow.production[r] > 1e-12)
                grid.push_back({net.player_ids[mf.player], net.source_ids[r], "src",
                                fmt_full(mf.flow.production[r]),
                                fmt_money(source_unit_cost(net, r) * mf.flow.production[r])});
    }
    std::string out = render_grid(grid);
    out += "total cost: " + fmt_money(flows.total_cost) + "\n";
    return out;
}

inline std::string render_diagnostics(const std::vector<Diagnostic>& diags,
                                      OutputFormat format) {
    if (format == OutputFormat::csv) {
        std::string out = "severity,message\n";
        for (const Diagnostic& d : diags)
            out += std::string(d.severity == Diagnostic::Severity::error ? "error" : "warning") +
                   "," + csv_field(d.message) + "\n";
        return out;
    }
    if (format == OutputFormat::json) {
        nlohmann::json doc = nlohmann::json::array();
        for (const Diagnostic& d : diags)
            doc.push_back(
                {{"severity", d.severity == Diagnostic::Severity::error ? "error" : "warning"},
                 {"message", d.message}});
        return doc.dump(2) + "\n";
    }
    std::string out;
    for (const Diagnostic& d : diags)
        out += std::string(d.severity == Diagnostic::Severity::error ? "error: " : "warning: ") +
               d.message + "\n";
    if (diags.empty()) out = "ok\n";
    return out;
}

}  // namespace pipegame

#endif  // PIPEGAME_REPORT_HPP
