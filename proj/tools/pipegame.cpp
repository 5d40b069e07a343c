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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "pipegame/pipegame.hpp"

namespace {

// Exit codes: 0 success, 1 validation errors, 2 infeasible flows,
// 3 schema errors, 4 unreadable file.
constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitSchema = 3;
constexpr int kExitFile = 4;

struct Options {
    std::string scenario;
    std::string format = "table";
    std::string order;        // "demand" or "explicit:<id,id,...>"
    std::string granularity;  // "player" or "node"
    std::string out;
    std::string trace;
};

pipegame::OutputFormat parse_format(const std::string& f) {
    if (f == "table") return pipegame::OutputFormat::table;
    if (f == "csv") return pipegame::OutputFormat::csv;
    if (f == "json") return pipegame::OutputFormat::json;
    throw CLI::ValidationError("--format", "expected table, csv or json");
}

void apply_overrides(pipegame::Scenario& s, const Options& opt) {
    using pipegame::scenario_error;
    if (!opt.order.empty()) {
        if (opt.order == "demand") {
            s.config.order_policy = pipegame::OrderPolicy::by_total_demand_desc;
            s.config.explicit_order.clear();
        } else if (opt.order.rfind("explicit:", 0) == 0) {
            s.config.order_policy = pipegame::OrderPolicy::explicit_list;
            s.config.explicit_order.clear();
            std::string ids = opt.order.substr(9);
            std::size_t start = 0;
            while (start <= ids.size()) {
                std::size_t comma = ids.find(',', start);
                std::string id = ids.substr(
                    start, comma == std::string::npos ? std::string::npos : comma - start);
                int found = -1;
                for (int i = 0; i < s.net.player_count; ++i)
                    if (s.net.player_ids[i] == id) found = i;
                if (found < 0) throw scenario_error("--order: unknown player id '" + id + "'");
                s.config.explicit_order.push_back(found);
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
        } else {
            throw scenario_error("--order: expected 'demand' or 'explicit:<id,id,...>'");
        }
    }
    if (!opt.granularity.empty()) {
        if (opt.granularity == "player")
            s.config.granularity = pipegame::MemberGranularity::per_player;
        else if (opt.granularity == "node")
            s.config.granularity = pipegame::MemberGranularity::per_node;
        else
            throw scenario_error("--granularity: expected 'player' or 'node'");
    }
}

int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write to " << out_path << "\n";
        return kExitFile;
    }
    out << text;
    return kExitOk;
}

int write_trace(const std::string& text, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write to " << path << "\n";
        return kExitFile;
    }
    out << text;
    return kExitOk;
}

unsigned worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

int run_mode(const std::string& mode, const Options& opt) {
    using namespace pipegame;

    Scenario s;
    try {
        s = load_scenario(opt.scenario);
        apply_overrides(s, opt);
    } catch (const file_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFile;
    } catch (const scenario_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSchema;
    }

    OutputFormat format = parse_format(opt.format);
    std::vector<Diagnostic> diags = validate(s.net, s.config);

    if (mode == "validate") {
        int rc = emit(render_diagnostics(diags, format), opt.out);
        if (rc != kExitOk) return rc;
        return has_errors(diags) ? kExitValidation : kExitOk;
    }

    for (const Diagnostic& d : diags)
        if (d.severity == Diagnostic::Severity::warning)
            std::cerr << "warning: " << d.message << "\n";
    if (has_errors(diags)) {
        for (const Diagnostic& d : diags)
            if (d.severity == Diagnostic::Severity::error)
                std::cerr << "error: " << d.message << "\n";
        return kExitValidation;
    }

    try {
        if (mode == "flows") {
            Coalition everyone = Coalition::full(s.net.player_count);
            ResidualState state = ResidualState::fresh(s.net);
            CoalitionFlows flows = allocate_coalition_flows(s.net, everyone, state, s.config);
            if (!opt.trace.empty()) {
                std::string trace = flow_trace_header();
                append_trace_rows(s.net, "-", everyone, flows.members, trace);
                int rc = write_trace(trace, opt.trace);
                if (rc != kExitOk) return rc;
            }
            return emit(render_flows(s.net, flows, everyone, format), opt.out);
        }
        if (mode == "cff") {
            CffResult cff = build_cff(s.net, s.config);
            if (!opt.trace.empty()) {
                int rc = write_trace(flow_trace_csv(s.net, cff), opt.trace);
                if (rc != kExitOk) return rc;
            }
            return emit(render_game(s.net, game_rows(cff), "cff", format), opt.out);
        }
        if (mode == "pff") {
            std::vector<PartitionFlows> details;
            bool want_details = !opt.trace.empty();
            PartitionFunction pf = build_pff(s.net, s.config, worker_count(),
                                             want_details ? &details : nullptr);
            if (want_details) {
                int rc = write_trace(flow_trace_csv(s.net, pf, details), opt.trace);
                if (rc != kExitOk) return rc;
            }
            return emit(render_game(s.net, game_rows(s.net, pf), "pff", format), opt.out);
        }
        if (mode == "minimal-claim") {
            PartitionFunction pf = build_pff(s.net, s.config, worker_count());
            MinimalClaimResult mc = minimal_claim(pf, s.config.pessimistic_fallback);
            return emit(render_minimal_claim(s.net, mc, format), opt.out);
        }
        if (mode == "shapley") {
            CffResult cff = build_cff(s.net, s.config);
            PowerReport report;
            report.method = PowerReport::Method::cff_shapley;
            report.shapley = shapley(cff.v);
            return emit(render_power_reports(s.net, {report}, format), opt.out);
        }
        if (mode == "extended-shapley") {
            PartitionFunction pf = build_pff(s.net, s.config, worker_count());
            PowerReport report;
            report.method = PowerReport::Method::pff_extended_shapley;
            report.shapley = extended_shapley(pf);
            return emit(render_power_reports(s.net, {report}, format), opt.out);
        }
        if (mode == "report") {
            CffResult cff = build_cff(s.net, s.config);
            PartitionFunction pf = build_pff(s.net, s.config, worker_count());
            MinimalClaimResult mc = minimal_claim(pf, s.config.pessimistic_fallback);

            PowerReport from_cff;
            from_cff.method = PowerReport::Method::cff_shapley;
            from_cff.shapley = shapley(cff.v);

            PowerReport from_mc;
            from_mc.method = PowerReport::Method::pff_minimal_claim_shapley;
            from_mc.shapley = shapley(mc.claims);
            from_mc.stable_residuals = mc.stable_residuals;
            from_mc.notes = mc.notes;

            PowerReport from_ext;
            from_ext.method = PowerReport::Method::pff_extended_shapley;
            from_ext.shapley = extended_shapley(pf);

            return emit(render_power_reports(s.net, {from_cff, from_mc, from_ext}, format),
                        opt.out);
        }
    } catch (const infeasible_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    }
    std::cerr << "error: unknown mode " << mode << "\n";
    return kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Power analysis of gas transport networks with regulated third-party access"};
    app.require_subcommand(1);

    const std::vector<std::string> modes = {"validate",      "flows",   "cff",
                                            "pff",           "minimal-claim", "shapley",
                                            "extended-shapley", "report"};
    const std::vector<std::string> descriptions = {
        "check a scenario file and print diagnostics",
        "optimal flows of the grand coalition",
        "characteristic function (each coalition valued in isolation)",
        "partition function (every partition of the players)",
        "recursive-core minimal claims derived from the partition function",
        "Shapley power index of the characteristic function",
        "extended Shapley power index of the partition function",
        "combined power report: all of the above",
    };

    Options opt;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        CLI::App* sub = app.add_subcommand(modes[i], descriptions[i]);
        sub->add_option("scenario", opt.scenario, "scenario JSON file")->required();
        sub->add_option("--format", opt.format, "output format: table, csv or json")
            ->check(CLI::IsMember({"table", "csv", "json"}));
        sub->add_option("--order", opt.order,
                        "coalition evaluation order: demand or explicit:<id,id,...>");
        sub->add_option("--granularity", opt.granularity,
                        "member granularity: player or node");
        sub->add_option("--out", opt.out, "write the result here instead of stdout");
        sub->add_option("--trace-flows", opt.trace,
                        "write a per-member flow trace CSV here (flows, cff, pff)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        return run_mode(app.get_subcommands().front()->get_name(), opt);
    } catch (const pipegame::scenario_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
