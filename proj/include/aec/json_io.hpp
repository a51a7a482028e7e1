#pragma once

#include <json.hpp>

#include "aec/coloring.hpp"
#include "aec/edge_color.hpp"
#include "aec/radius.hpp"
#include "aec/validation.hpp"

namespace aec {

using nlohmann::json;

inline json coloring_to_json(const Graph& g, const EdgeColoring& col) {
    json arr = json::array();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edge(e);
        arr.push_back({{"edge", {g.label(u), g.label(v)}}, {"color", col.color(e)}});
    }
    return arr;
}

inline EdgeColoring coloring_from_json(const Graph& g, const json& arr, int palette_size) {
    EdgeColoring col(g.edge_count(), palette_size);
    std::unordered_map<long, VertexId> by_label;
    for (VertexId v = 0; v < g.vertex_count(); ++v) by_label[g.label(v)] = v;
    for (const auto& item : arr) {
        long lu = item.at("edge").at(0).get<long>();
        long lv = item.at("edge").at(1).get<long>();
        auto iu = by_label.find(lu), iv = by_label.find(lv);
        if (iu == by_label.end() || iv == by_label.end())
            throw std::invalid_argument("coloring refers to unknown vertex label");
        auto e = g.find_edge(iu->second, iv->second);
        if (!e) throw std::invalid_argument("coloring refers to a missing edge");
        col.set(*e, item.at("color").get<int>());
    }
    return col;
}

inline json cycle_to_json(const Graph& g, const Cycle& c) {
    json vertices = json::array(), edges = json::array();
    for (VertexId v : c.vertices) vertices.push_back(g.label(v));
    for (EdgeId e : c.edges) edges.push_back(e);
    return {{"vertices", vertices}, {"edges", edges}};
}

inline json report_to_json(const Graph& g, const VerifyReport& rep) {
    json out{{"proper", rep.proper},
             {"four_acyclic", rep.four_acyclic},
             {"acyclic", rep.acyclic}};
    if (rep.improper_pair)
        out["witness"] = {{"kind", "adjacent_same_color"},
                          {"edges", {rep.improper_pair->first, rep.improper_pair->second}}};
    else if (rep.witness_cycle)
        out["witness"] = {{"kind", "bichromatic_cycle"},
                          {"cycle", cycle_to_json(g, *rep.witness_cycle)}};
    else
        out["witness"] = nullptr;
    return out;
}

inline json forest_to_json(const WitnessForest& forest) {
    auto node_json = [](auto&& self, const WitnessNode& node) -> json {
        json children = json::array();
        for (const auto& ch : node.children) children.push_back(self(self, ch));
        json cyc = json::array();
        for (EdgeId e : node.cycle_mark.edges) cyc.push_back(e);
        return {{"edge", node.edge_mark},
                {"cycle", cyc},
                {"leaves", node.leaf_children()},
                {"children", children}};
    };
    json roots = json::array();
    for (const auto& r : forest.roots) roots.push_back(node_json(node_json, r));
    return roots;
}

inline json run_stats_to_json(const RunStats& stats, bool include_forest = false) {
    json hist = json::object();
    for (auto [deg, count] : stats.forest.degree_histogram())
        hist[std::to_string(deg)] = count;
    json out{{"seed", stats.seed},
             {"recolor_calls", stats.recolor_calls},
             {"halted", stats.halted},
             {"forest",
              {{"n", stats.forest.node_count()},
               {"n_internal", stats.forest.internal_count()},
               {"degree_histogram", hist}}}};
    if (include_forest) out["forest"]["roots"] = forest_to_json(stats.forest);
    return out;
}

inline json validation_table_to_json(const ValidationTable& table) {
    return {{"s", table.s},
            {"k_list", table.k_list},
            {"bound_exact", to_double(table.bound_exact)},
            {"bound_exact_rational", rational_string(table.bound_exact)},
            {"bound_relaxed", static_cast<double>(table.bound_relaxed)},
            {"empirical", table.empirical},
            {"trials", table.trials},
            {"successes", table.successes},
            {"sigma", table.sigma},
            {"pass", table.pass}};
}

inline json certificate_to_json(const RadiusCertificate& cert) {
    return {{"N", cert.order},
            {"rho_lo", static_cast<double>(cert.rho_lo)},
            {"rho_hi", static_cast<double>(cert.rho_hi)},
            {"r_lower", static_cast<double>(cert.rho_lo)},
            {"s_lower", static_cast<double>(cert.s_lower)},
            {"r_upper", static_cast<double>(cert.rho_hi)},
            {"s_upper", static_cast<double>(cert.s_upper)},
            {"e", static_cast<double>(cert.e_const)},
            {"b", static_cast<double>(cert.b_const)},
            {"residuals",
             {{"lower_value", static_cast<double>(cert.resid_lower_value)},
              {"lower_slope", static_cast<double>(cert.resid_lower_slope)},
              {"upper_value", static_cast<double>(cert.resid_upper_value)},
              {"upper_slope", static_cast<double>(cert.resid_upper_slope)}}},
            {"pass", cert.ok()}};
}

} // namespace aec
