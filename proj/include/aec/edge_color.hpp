#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "aec/coloring.hpp"
#include "aec/graph.hpp"

namespace aec {

// Node of the witness forest: one Recolor(e, C) call. Only internal children
// are stored; the unmarked padding leaves are kept as a count so that every
// internal node has exactly |C|-2 children.
struct WitnessNode {
    EdgeId edge_mark = -1;
    Cycle cycle_mark;
    std::vector<WitnessNode> children; // in call order

    int outdegree() const { return cycle_mark.length() - 2; }
    int leaf_children() const { return outdegree() - static_cast<int>(children.size()); }

    long subtree_nodes() const {
        long n = 1 + leaf_children();
        for (const auto& ch : children) n += ch.subtree_nodes();
        return n;
    }
    long subtree_internal() const {
        long n = 1;
        for (const auto& ch : children) n += ch.subtree_internal();
        return n;
    }
};

struct WitnessForest {
    std::vector<WitnessNode> roots; // in call order

    long node_count() const {
        long n = 0;
        for (const auto& r : roots) n += r.subtree_nodes();
        return n;
    }
    long internal_count() const {
        long n = 0;
        for (const auto& r : roots) n += r.subtree_internal();
        return n;
    }
    std::map<int, long> degree_histogram() const {
        std::map<int, long> hist;
        auto walk = [&](auto&& self, const WitnessNode& node) -> void {
            ++hist[node.outdegree()];
            for (const auto& ch : node.children) self(self, ch);
        };
        for (const auto& r : roots) walk(walk, r);
        return hist;
    }
};

struct RunStats {
    std::uint64_t seed = 0;
    long cap = 0;
    long recolor_calls = 0;
    bool halted = false;
    WitnessForest forest;
    AssignStats assignments;
    long progress_checks = 0;
    std::vector<std::string> progress_violations;
};

namespace detail {

inline std::vector<char> edges_clear_of_bichromatic(const Graph& g, const EdgeColoring& col) {
    std::vector<char> clear(g.edge_count(), 1);
    for (const Cycle& c : bichromatic_cycles(g, col))
        for (EdgeId e : c.edges) clear[e] = 0;
    return clear;
}

struct RecolorFrame {
    WitnessNode node;
    std::vector<EdgeId> scope_edges;
    std::vector<char> entry_clear; // progress instrumentation only
};

// Iterative call tree for Recolor(e, C). Returns false when the cap on
// Recolor calls was hit; the partially built node is still attached.
inline bool recolor_tree(const Graph& g, EdgeColoring& col, EdgeId e, const Cycle& c,
                         const ColorConfig& cfg, Rng& rng, RunStats& stats, WitnessNode& out) {
    std::vector<RecolorFrame> stack;
    bool completed = true;

    auto enter = [&](EdgeId edge, const Cycle& cycle) {
        ++stats.recolor_calls;
        RecolorFrame frame;
        frame.node.edge_mark = edge;
        frame.node.cycle_mark = cycle;
        frame.scope_edges = scope(edge, cycle).edges;
        if (cfg.check_progress) frame.entry_clear = edges_clear_of_bichromatic(g, col);
        stack.push_back(std::move(frame));
        for (EdgeId se : stack.back().scope_edges)
            assign_safe_color(g, col, se, rng, &stats.assignments);
    };

    auto leave = [&](bool verify_progress) {
        RecolorFrame frame = std::move(stack.back());
        stack.pop_back();
        if (verify_progress && cfg.check_progress) {
            ++stats.progress_checks;
            auto clear = edges_clear_of_bichromatic(g, col);
            auto complain = [&](EdgeId bad, const char* where) {
                stats.progress_violations.push_back(
                    "edge " + std::to_string(bad) + " from " + where +
                    " lies on a bichromatic cycle after Recolor(" +
                    std::to_string(frame.node.edge_mark) + ") returned");
            };
            for (EdgeId eid = 0; eid < g.edge_count(); ++eid)
                if (frame.entry_clear[eid] && !clear[eid]) complain(eid, "E0");
            for (EdgeId eid : frame.scope_edges)
                if (!clear[eid]) complain(eid, "scope");
        }
        if (stack.empty())
            out = std::move(frame.node);
        else
            stack.back().node.children.push_back(std::move(frame.node));
    };

    if (stats.recolor_calls >= cfg.cap) return false;
    enter(e, c);
    while (!stack.empty()) {
        auto flaw = first_flawed(g, col, &stack.back().scope_edges);
        if (!flaw) {
            leave(true);
            continue;
        }
        if (stats.recolor_calls >= cfg.cap) {
            completed = false;
            while (!stack.empty()) leave(false);
            break;
        }
        enter(flaw->first, flaw->second);
    }
    return completed;
}

} // namespace detail

struct RecolorOutcome {
    bool completed = false;
    WitnessNode node;
};

// One Recolor(e, C) call. C must be bichromatic under col and contain e.
inline RecolorOutcome recolor(const Graph& g, EdgeColoring& col, EdgeId e, const Cycle& c,
                              const ColorConfig& cfg, Rng& rng, RunStats& stats) {
    if (!c.contains(e)) throw std::invalid_argument("edge not on the cycle");
    ColorId a = col.color(c.edges[0]), b = col.color(c.edges[1]);
    for (int i = 0; i < c.length(); ++i) {
        ColorId expect = i % 2 == 0 ? a : b;
        if (a == b || !col.is_colored(c.edges[i]) || col.color(c.edges[i]) != expect)
            throw std::invalid_argument("cycle is not bichromatic under the coloring");
    }
    RecolorOutcome out;
    out.completed = detail::recolor_tree(g, col, e, c, cfg, rng, stats, out.node);
    return out;
}

// EdgeColor: color every edge with a safe color, then recolor flawed cycles
// until none remain or the cap is reached. Deterministic for a fixed seed.
inline std::pair<EdgeColoring, RunStats> edge_color(const Graph& g, const ColorConfig& cfg) {
    Rng rng = make_rng(cfg.seed);
    EdgeColoring col(g.edge_count(), cfg.palette_for(g));
    RunStats stats;
    stats.seed = cfg.seed;
    stats.cap = cfg.cap;

    for (EdgeId e = 0; e < g.edge_count(); ++e)
        assign_safe_color(g, col, e, rng, &stats.assignments);

    stats.halted = true;
    while (auto flaw = first_flawed(g, col)) {
        if (stats.recolor_calls >= cfg.cap) {
            stats.halted = false;
            break;
        }
        WitnessNode node;
        bool completed = detail::recolor_tree(g, col, flaw->first, flaw->second, cfg, rng,
                                              stats, node);
        stats.forest.roots.push_back(std::move(node));
        if (!completed) {
            stats.halted = false;
            break;
        }
    }
    return {col, stats};
}

struct WitnessViolation {
    enum class Kind { RootScopesShare, ChildCyclesShare, ChildMarkOutsideScope, Malformed };
    Kind kind;
    std::string description;
};

// Checks the three witness-forest properties plus basic node shape; an empty
// result means the forest is consistent with some EdgeColor execution.
inline std::vector<WitnessViolation> check_witness(const WitnessForest& forest, const Graph& g) {
    std::vector<WitnessViolation> out;
    using Kind = WitnessViolation::Kind;

    auto name = [](const std::vector<int>& path) {
        std::string s = "node";
        for (int i : path) s += " " + std::to_string(i);
        return s;
    };

    auto check_node = [&](auto&& self, const WitnessNode& node, std::vector<int>& path) -> void {
        const Cycle& c = node.cycle_mark;
        if (c.length() < 6 || c.length() % 2 != 0 || !is_valid_cycle(g, c))
            out.push_back({Kind::Malformed, name(path) + ": cycle-mark must be an even cycle of length >= 6"});
        if (!c.contains(node.edge_mark))
            out.push_back({Kind::Malformed, name(path) + ": edge-mark not on its cycle-mark"});
        if (static_cast<int>(node.children.size()) > node.outdegree())
            out.push_back({Kind::Malformed, name(path) + ": more children than |C|-2"});

        std::vector<char> in_scope(g.edge_count(), 0);
        if (c.contains(node.edge_mark))
            for (EdgeId e : scope(node.edge_mark, c).edges) in_scope[e] = 1;

        for (std::size_t i = 0; i < node.children.size(); ++i) {
            const auto& child = node.children[i];
            if (child.edge_mark < 0 || child.edge_mark >= g.edge_count() ||
                !in_scope[child.edge_mark])
                out.push_back({Kind::ChildMarkOutsideScope,
                               name(path) + ": child " + std::to_string(i) +
                                   " edge-mark outside parent scope"});
            for (std::size_t j = i + 1; j < node.children.size(); ++j) {
                const auto& a = node.children[i].cycle_mark.edges;
                const auto& b = node.children[j].cycle_mark.edges;
                bool share = false;
                for (EdgeId x : a)
                    if (std::find(b.begin(), b.end(), x) != b.end()) share = true;
                if (share)
                    out.push_back({Kind::ChildCyclesShare,
                                   name(path) + ": children " + std::to_string(i) + " and " +
                                       std::to_string(j) + " have cycle-marks sharing an edge"});
            }
        }
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            path.push_back(static_cast<int>(i));
            self(self, node.children[i], path);
            path.pop_back();
        }
    };

    const auto& roots = forest.roots;
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (!roots[i].cycle_mark.contains(roots[i].edge_mark) ||
                !roots[j].cycle_mark.contains(roots[j].edge_mark))
                continue; // malformed, reported below
            auto si = scope(roots[i].edge_mark, roots[i].cycle_mark).edges;
            auto sj = scope(roots[j].edge_mark, roots[j].cycle_mark).edges;
            bool share = false;
            for (EdgeId x : si)
                if (std::find(sj.begin(), sj.end(), x) != sj.end()) share = true;
            if (share)
                out.push_back({WitnessViolation::Kind::RootScopesShare,
                               "roots " + std::to_string(i) + " and " + std::to_string(j) +
                                   " have scopes sharing an edge"});
        }
    for (std::size_t i = 0; i < roots.size(); ++i) {
        std::vector<int> path{static_cast<int>(i)};
        check_node(check_node, roots[i], path);
    }
    return out;
}

} // namespace aec
