#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "aec/graph.hpp"
#include "aec/rational.hpp"
#include "aec/rng.hpp"

namespace aec {

using ColorId = int;
inline constexpr ColorId kUncolored = -1;

// Smallest palette the analysis supports: ceil((2+gamma)(Delta-1)) + 1.
inline int min_palette_size(int max_degree, const Rational& gamma) {
    Rational product = (Rational(2) + gamma) * (max_degree - 1);
    return static_cast<int>(ceil_rational(product)) + 1;
}

struct ColorConfig {
    Rational gamma = Rational(571, 500); // 1.142
    int palette_size = 0;                // 0: derive from gamma and the graph
    std::uint64_t seed = 0;
    long cap = 1'000'000;                // max Recolor calls per run
    bool check_progress = false;         // re-verify the progress property at every
                                         // Recolor exit (slow; meant for tests)

    int palette_for(const Graph& g) const {
        if (gamma < 1) throw std::invalid_argument("gamma must be at least 1");
        int need = min_palette_size(g.max_degree(), gamma);
        if (palette_size == 0) return need;
        if (palette_size < need)
            throw std::invalid_argument("palette smaller than (2+gamma)(max_degree-1)+1");
        return palette_size;
    }
};

class EdgeColoring {
public:
    EdgeColoring(int edge_count, int palette_size)
        : colors_(edge_count, kUncolored), palette_(palette_size) {
        if (palette_size < 1) throw std::invalid_argument("empty palette");
    }

    int palette_size() const { return palette_; }
    int edge_count() const { return static_cast<int>(colors_.size()); }

    ColorId color(EdgeId e) const { return colors_[e]; }
    bool is_colored(EdgeId e) const { return colors_[e] != kUncolored; }
    void set(EdgeId e, ColorId c) {
        if (c < kUncolored || c >= palette_) throw std::invalid_argument("color outside palette");
        colors_[e] = c;
    }

    bool is_total() const {
        for (ColorId c : colors_)
            if (c == kUncolored) return false;
        return true;
    }

    const std::vector<ColorId>& raw() const { return colors_; }

private:
    std::vector<ColorId> colors_;
    int palette_;
};

// Colors e must avoid to keep the colored part proper and 4-acyclic: colors of
// colored edges adjacent to e, plus, for every homochromatic pair of colored
// edges meeting e at different endpoints, the color of the edge closing their
// 4-cycle. The current color of e itself is ignored. Never more than
// 2(max_degree - 1) colors.
inline std::vector<char> forbidden_mask(const Graph& g, const EdgeColoring& col, EdgeId e) {
    std::vector<char> mask(col.palette_size(), 0);
    auto [u, v] = g.edge(e);
    // colored edges adjacent at u / at v, with their far endpoints
    std::vector<std::pair<ColorId, VertexId>> at_u, at_v;
    for (auto [w, id] : g.neighbors(u))
        if (id != e && col.is_colored(id)) at_u.emplace_back(col.color(id), w);
    for (auto [w, id] : g.neighbors(v))
        if (id != e && col.is_colored(id)) at_v.emplace_back(col.color(id), w);
    for (auto& [c, w] : at_u) mask[c] = 1;
    for (auto& [c, w] : at_v) mask[c] = 1;
    for (auto& [c1, a] : at_u)
        for (auto& [c2, b] : at_v) {
            if (c1 != c2 || a == b) continue;
            if (auto e3 = g.find_edge(a, b); e3 && col.is_colored(*e3)) mask[col.color(*e3)] = 1;
        }
    return mask;
}

inline std::vector<ColorId> forbidden_colors(const Graph& g, const EdgeColoring& col, EdgeId e) {
    auto mask = forbidden_mask(g, col, e);
    std::vector<ColorId> out;
    for (ColorId c = 0; c < static_cast<ColorId>(mask.size()); ++c)
        if (mask[c]) out.push_back(c);
    return out;
}

struct AssignStats {
    long assignments = 0;
    int min_safe_size = INT32_MAX;
};

// Uniform choice among the safe colors of e; writes the choice into col.
inline ColorId assign_safe_color(const Graph& g, EdgeColoring& col, EdgeId e, Rng& rng,
                                 AssignStats* stats = nullptr) {
    auto mask = forbidden_mask(g, col, e);
    std::vector<ColorId> safe;
    safe.reserve(mask.size());
    for (ColorId c = 0; c < static_cast<ColorId>(mask.size()); ++c)
        if (!mask[c]) safe.push_back(c);
    if (safe.empty())
        throw std::logic_error("no safe color: palette below 2(max_degree-1)+1");
    if (stats) {
        ++stats->assignments;
        stats->min_safe_size = std::min(stats->min_safe_size, static_cast<int>(safe.size()));
    }
    ColorId chosen = safe[uniform_below(rng, safe.size())];
    col.set(e, chosen);
    return chosen;
}

// First adjacent pair of equally colored edges, if any.
inline std::optional<std::pair<EdgeId, EdgeId>> properness_violation(const Graph& g,
                                                                     const EdgeColoring& col) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const auto& adj = g.neighbors(v);
        for (std::size_t i = 0; i < adj.size(); ++i)
            for (std::size_t j = i + 1; j < adj.size(); ++j) {
                EdgeId a = adj[i].second, b = adj[j].second;
                if (col.is_colored(a) && col.color(a) == col.color(b) && col.is_colored(b))
                    return std::make_pair(std::min(a, b), std::max(a, b));
            }
    }
    return std::nullopt;
}

// Every bichromatic cycle of a total proper coloring, found color pair by
// color pair: edges of two fixed colors span a subgraph of max degree 2, so
// its cycles can be read off by walking. Each cycle is emitted once, in
// canonical traversal; all have even length.
inline std::vector<Cycle> bichromatic_cycles(const Graph& g, const EdgeColoring& col) {
    if (!col.is_total()) throw std::invalid_argument("coloring must be total");
    if (properness_violation(g, col)) throw std::invalid_argument("coloring must be proper");

    const int K = col.palette_size();
    std::vector<std::vector<EdgeId>> by_color(K);
    for (EdgeId e = 0; e < g.edge_count(); ++e) by_color[col.color(e)].push_back(e);

    std::vector<Cycle> cycles;
    std::vector<int> deg(g.vertex_count());
    std::vector<std::array<EdgeId, 2>> incident(g.vertex_count());
    std::vector<char> visited(g.edge_count());

    for (ColorId a = 0; a < K; ++a) {
        if (by_color[a].empty()) continue;
        for (ColorId b = a + 1; b < K; ++b) {
            if (by_color[b].empty()) continue;
            std::vector<EdgeId> sub = by_color[a];
            sub.insert(sub.end(), by_color[b].begin(), by_color[b].end());
            for (EdgeId e : sub) {
                auto [x, y] = g.edge(e);
                deg[x] = deg[y] = 0;
            }
            for (EdgeId e : sub) {
                auto [x, y] = g.edge(e);
                incident[x][deg[x]++] = e;
                incident[y][deg[y]++] = e;
                visited[e] = 0;
            }
            // vertices of degree 1 start paths; what remains unvisited is cycles
            for (EdgeId e : sub) {
                for (VertexId x : {g.edge(e).first, g.edge(e).second}) {
                    if (deg[x] != 1 || visited[incident[x][0]]) continue;
                    VertexId cur = x;
                    EdgeId walk = incident[x][0];
                    while (true) {
                        visited[walk] = 1;
                        cur = g.other_end(walk, cur);
                        EdgeId next = incident[cur][0] == walk ? incident[cur][1] : incident[cur][0];
                        if (deg[cur] == 1 || visited[next]) break;
                        walk = next;
                    }
                }
            }
            for (EdgeId e : sub) {
                if (visited[e]) continue;
                std::vector<VertexId> seq;
                VertexId cur = g.edge(e).first;
                EdgeId walk = e;
                while (!visited[walk]) {
                    visited[walk] = 1;
                    seq.push_back(cur);
                    cur = g.other_end(walk, cur);
                    walk = incident[cur][0] == walk ? incident[cur][1] : incident[cur][0];
                }
                cycles.push_back(canonical_positive_traversal(g, seq));
            }
        }
    }
    return cycles;
}

// "First edge in a bichromatic cycle, first cycle through it": edges in the
// predetermined order (optionally intersected with `restrict`), cycles through
// the selected edge ordered by their color pair. Properness makes the cycle
// per color pair unique.
inline std::optional<std::pair<EdgeId, Cycle>> first_flawed(
    const Graph& g, const EdgeColoring& col, const std::vector<EdgeId>* restrict_edges = nullptr) {
    auto cycles = bichromatic_cycles(g, col);
    if (cycles.empty()) return std::nullopt;

    std::vector<char> allowed;
    if (restrict_edges) {
        allowed.assign(g.edge_count(), 0);
        for (EdgeId e : *restrict_edges) allowed[e] = 1;
    }
    EdgeId best_edge = -1;
    for (const Cycle& c : cycles)
        for (EdgeId e : c.edges) {
            if (restrict_edges && !allowed[e]) continue;
            if (best_edge < 0 || e < best_edge) best_edge = e;
        }
    if (best_edge < 0) return std::nullopt;

    const Cycle* best = nullptr;
    std::pair<ColorId, ColorId> best_pair{0, 0};
    for (const Cycle& c : cycles) {
        if (!c.contains(best_edge)) continue;
        ColorId x = col.color(c.edges[0]), y = col.color(c.edges[1]);
        std::pair<ColorId, ColorId> pair{std::min(x, y), std::max(x, y)};
        if (!best || pair < best_pair) {
            best = &c;
            best_pair = pair;
        }
    }
    return std::make_pair(best_edge, *best);
}

struct VerifyReport {
    bool proper = false;
    bool four_acyclic = false;
    bool acyclic = false;
    std::optional<std::pair<EdgeId, EdgeId>> improper_pair;
    std::optional<Cycle> witness_cycle;

    bool all() const { return proper && four_acyclic && acyclic; }
};

inline VerifyReport verify(const Graph& g, const EdgeColoring& col) {
    if (!col.is_total()) throw std::invalid_argument("coloring must be total");
    VerifyReport rep;
    if (auto bad = properness_violation(g, col)) {
        rep.improper_pair = bad;
        return rep;
    }
    rep.proper = true;
    auto cycles = bichromatic_cycles(g, col);
    rep.four_acyclic = true;
    rep.acyclic = cycles.empty();
    for (const Cycle& c : cycles)
        if (c.length() == 4) {
            rep.four_acyclic = false;
            rep.witness_cycle = c;
            break;
        }
    if (rep.four_acyclic && !rep.acyclic) rep.witness_cycle = cycles.front();
    return rep;
}

} // namespace aec
