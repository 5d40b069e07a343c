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

#ifndef PIPEGAME_SCENARIO_IO_HPP
#define PIPEGAME_SCENARIO_IO_HPP

#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pipegame/network.hpp"

namespace pipegame {

namespace detail {

using nlohmann::json;

inline const json& require(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key))
        throw scenario_error(where + ": missing required key '" + key + "'");
    return obj.at(key);
}

inline std::string require_string(const json& obj, const std::string& key,
                                  const std::string& where) {
    const json& v = require(obj, key, where);
    if (!v.is_string() || v.get<std::string>().empty())
        throw scenario_error(where + "." + key + ": expected a non-empty string");
    return v.get<std::string>();
}

inline double require_number(const json& obj, const std::string& key, const std::string& where) {
    const json& v = require(obj, key, where);
    if (!v.is_number()) throw scenario_error(where + "." + key + ": expected a number");
    return v.get<double>();
}

inline double optional_number(const json& obj, const std::string& key, double fallback,
                              const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw scenario_error(where + "." + key + ": expected a number");
    return v.get<double>();
}

inline bool optional_bool(const json& obj, const std::string& key, bool fallback,
                          const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) throw scenario_error(where + "." + key + ": expected a boolean");
    return v.get<bool>();
}

inline int lookup(const std::map<std::string, int>& ids, const std::string& id,
                  const std::string& where, const char* kind) {
    auto it = ids.find(id);
    if (it == ids.end())
        throw scenario_error(where + ": unknown " + kind + " id '" + id + "'");
    return it->second;
}

}  // namespace detail

/// Parses a scenario document. Entity references are resolved against the
/// order of appearance; every violation is reported with the offending field.
inline Scenario parse_scenario(const nlohmann::json& doc) {
    using detail::json;
    if (!doc.is_object()) throw scenario_error("scenario: expected a JSON object");

    Scenario s;
    Network& net = s.net;

    const json& players = detail::require(doc, "players", "scenario");
    if (!players.is_array() || players.empty())
        throw scenario_error("players: expected a non-empty array");
    std::map<std::string, int> player_index;
    for (std::size_t i = 0; i < players.size(); ++i) {
        std::string where = "players[" + std::to_string(i) + "]";
        std::string id = detail::require_string(players[i], "id", where);
        if (!player_index.emplace(id, static_cast<int>(i)).second)
            throw scenario_error(where + ".id: duplicate player id '" + id + "'");
        net.player_ids.push_back(id);
        net.player_names.push_back(players[i].contains("name")
                                       ? detail::require_string(players[i], "name", where)
                                       : id);
    }
    net.player_count = static_cast<int>(players.size());

    const json& nodes = detail::require(doc, "nodes", "scenario");
    if (!nodes.is_array() || nodes.empty())
        throw scenario_error("nodes: expected a non-empty array");
    std::map<std::string, int> node_index;
    net.node_count = static_cast<int>(nodes.size());
    net.node_owner = Matrix(net.node_count, net.player_count);
    net.demand.assign(static_cast<std::size_t>(net.node_count), 0.0);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        std::string where = "nodes[" + std::to_string(j) + "]";
        std::string id = detail::require_string(nodes[j], "id", where);
        if (!node_index.emplace(id, static_cast<int>(j)).second)
            throw scenario_error(where + ".id: duplicate node id '" + id + "'");
        net.node_ids.push_back(id);
        std::string owner = detail::require_string(nodes[j], "owner", where);
        net.node_owner(static_cast<int>(j),
                       detail::lookup(player_index, owner, where + ".owner", "player")) = 1.0;
        net.demand[j] = detail::optional_number(nodes[j], "demand", 0.0, where);
    }

    const json empty_array = json::array();
    const json& edges = doc.contains("edges") ? doc.at("edges") : empty_array;
    if (!edges.is_array()) throw scenario_error("edges: expected an array");
    net.edge_count = static_cast<int>(edges.size());
    net.incidence = Matrix(net.node_count, net.edge_count);
    net.transport_cost = Matrix(net.player_count, net.edge_count);
    net.transport_fee = Matrix(net.player_count, net.edge_count);
    net.capacity.assign(static_cast<std::size_t>(net.edge_count), 0.0);
    net.tpa.assign(static_cast<std::size_t>(net.edge_count), 0);
    for (std::size_t k = 0; k < edges.size(); ++k) {
        std::string where = "edges[" + std::to_string(k) + "]";
        net.edge_ids.push_back(detail::require_string(edges[k], "id", where));
        int from = detail::lookup(node_index, detail::require_string(edges[k], "from", where),
                                  where + ".from", "node");
        int to = detail::lookup(node_index, detail::require_string(edges[k], "to", where),
                                where + ".to", "node");
        if (from == to) throw scenario_error(where + ": 'from' and 'to' must differ");
        net.incidence(from, static_cast<int>(k)) = -1.0;
        net.incidence(to, static_cast<int>(k)) = 1.0;
        net.capacity[k] = detail::require_number(edges[k], "capacity", where);
        net.tpa[k] = detail::optional_bool(edges[k], "tpa", false, where) ? 1 : 0;

        const json& owners = detail::require(edges[k], "owners", where);
        if (!owners.is_object()) throw scenario_error(where + ".owners: expected an object");
        for (const auto& [pid, terms] : owners.items()) {
            std::string owner_where = where + ".owners." + pid;
            int i = detail::lookup(player_index, pid, owner_where, "player");
            if (!terms.is_object())
                throw scenario_error(owner_where + ": expected an object with cost/fee");
            double cost = detail::require_number(terms, "cost", owner_where);
            double fee = detail::optional_number(terms, "fee", cost, owner_where);
            net.transport_cost(i, static_cast<int>(k)) = cost;
            net.transport_fee(i, static_cast<int>(k)) = fee;
        }
    }

    const json& sources = doc.contains("sources") ? doc.at("sources") : empty_array;
    if (!sources.is_array()) throw scenario_error("sources: expected an array");
    net.source_count = static_cast<int>(sources.size());
    net.source_cost = Matrix(net.node_count, net.source_count);
    net.production_cap.assign(static_cast<std::size_t>(net.source_count), 0.0);
    for (std::size_t r = 0; r < sources.size(); ++r) {
        std::string where = "sources[" + std::to_string(r) + "]";
        net.source_ids.push_back(detail::require_string(sources[r], "id", where));
        int node = detail::lookup(node_index, detail::require_string(sources[r], "node", where),
                                  where + ".node", "node");
        double unit_cost = detail::require_number(sources[r], "unit_cost", where);
        if (unit_cost <= 0.0)
            throw scenario_error(where + ".unit_cost: must be positive");
        net.source_cost(node, static_cast<int>(r)) = unit_cost;
        net.production_cap[r] = detail::require_number(sources[r], "capacity", where);
    }

    if (doc.contains("config")) {
        const json& cfg = doc.at("config");
        if (!cfg.is_object()) throw scenario_error("config: expected an object");
        if (cfg.contains("order_policy")) {
            std::string policy = detail::require_string(cfg, "order_policy", "config");
            if (policy == "demand") {
                s.config.order_policy = OrderPolicy::by_total_demand_desc;
            } else if (policy == "explicit") {
                s.config.order_policy = OrderPolicy::explicit_list;
            } else {
                throw scenario_error("config.order_policy: expected 'demand' or 'explicit'");
            }
        }
        if (cfg.contains("explicit_order")) {
            const json& order = cfg.at("explicit_order");
            if (!order.is_array())
                throw scenario_error("config.explicit_order: expected an array of player ids");
            for (std::size_t i = 0; i < order.size(); ++i) {
                if (!order[i].is_string())
                    throw scenario_error("config.explicit_order[" + std::to_string(i) +
                                         "]: expected a player id string");
                s.config.explicit_order.push_back(detail::lookup(
                    player_index, order[i].get<std::string>(), "config.explicit_order", "player"));
            }
        }
        if (cfg.contains("granularity")) {
            std::string g = detail::require_string(cfg, "granularity", "config");
            if (g == "player") s.config.granularity = MemberGranularity::per_player;
            else if (g == "node") s.config.granularity = MemberGranularity::per_node;
            else throw scenario_error("config.granularity: expected 'player' or 'node'");
        }
        s.config.lp_tolerance =
            detail::optional_number(cfg, "lp_tolerance", s.config.lp_tolerance, "config");
        s.config.pessimistic_fallback = detail::optional_bool(
            cfg, "pessimistic_fallback", s.config.pessimistic_fallback, "config");
    }
    if (s.config.order_policy == OrderPolicy::explicit_list && s.config.explicit_order.empty())
        throw scenario_error("config.explicit_order: required when order_policy is 'explicit'");

    return s;
}

inline Scenario parse_scenario_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw scenario_error(std::string("scenario: invalid JSON: ") + e.what());
    }
    return parse_scenario(doc);
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw file_error("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw file_error("cannot read scenario file: " + path);
    return parse_scenario_text(buf.str());
}

/// Writes a scenario back out; parsing the result reproduces the same
/// network and configuration. Matrices are never stored raw: the document
/// carries the entity lists they are derived from.
inline nlohmann::ordered_json serialize_scenario(const Scenario& s) {
    using nlohmann::ordered_json;
    const Network& net = s.net;
    ordered_json doc;

    doc["players"] = ordered_json::array();
    for (int i = 0; i < net.player_count; ++i) {
        ordered_json p;
        p["id"] = net.player_ids[i];
        if (net.player_names[i] != net.player_ids[i]) p["name"] = net.player_names[i];
        doc["players"].push_back(std::move(p));
    }

    doc["nodes"] = ordered_json::array();
    for (int j = 0; j < net.node_count; ++j) {
        ordered_json nd;
        nd["id"] = net.node_ids[j];
        nd["owner"] = net.player_ids[owner_of_node(net, j)];
        nd["demand"] = net.demand[j];
        doc["nodes"].push_back(std::move(nd));
    }

    doc["edges"] = ordered_json::array();
    for (int k = 0; k < net.edge_count; ++k) {
        EdgeEndpoints e = edge_endpoints(net, k);
        ordered_json ed;
        ed["id"] = net.edge_ids[k];
        ed["from"] = net.node_ids[e.tail];
        ed["to"] = net.node_ids[e.head];
        ed["capacity"] = net.capacity[k];
        ed["tpa"] = static_cast<bool>(net.tpa[k]);
        ordered_json owners = ordered_json::object();
        for (int i = 0; i < net.player_count; ++i) {
            double cost = net.transport_cost(i, k), fee = net.transport_fee(i, k);
            if (cost == 0.0 && fee == 0.0) continue;
            owners[net.player_ids[i]] = ordered_json{{"cost", cost}, {"fee", fee}};
        }
        ed["owners"] = std::move(owners);
        doc["edges"].push_back(std::move(ed));
    }

    doc["sources"] = ordered_json::array();
    for (int r = 0; r < net.source_count; ++r) {
        ordered_json src;
        src["id"] = net.source_ids[r];
        src["node"] = net.node_ids[source_node(net, r)];
        src["unit_cost"] = source_unit_cost(net, r);
        src["capacity"] = net.production_cap[r];
        doc["sources"].push_back(std::move(src));
    }

    ordered_json cfg;
    cfg["order_policy"] =
        s.config.order_policy == OrderPolicy::explicit_list ? "explicit" : "demand";
    if (!s.config.explicit_order.empty()) {
        ordered_json order = ordered_json::array();
        for (int i : s.config.explicit_order) order.push_back(net.player_ids[i]);
        cfg["explicit_order"] = std::move(order);
    }
    cfg["granularity"] =
        s.config.granularity == MemberGranularity::per_node ? "node" : "player";
    cfg["lp_tolerance"] = s.config.lp_tolerance;
    cfg["pessimistic_fallback"] = s.config.pessimistic_fallback;
    doc["config"] = std::move(cfg);

    return doc;
}

}  // namespace pipegame

#endif  // PIPEGAME_SCENARIO_IO_HPP
