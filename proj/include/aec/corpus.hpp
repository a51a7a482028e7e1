#pragma once

#include <set>
#include <string>
#include <vector>

#include "aec/graph.hpp"
#include "aec/rng.hpp"

namespace aec {

namespace detail {

inline std::vector<std::pair<VertexId, VertexId>> complete_edges(int n) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return edges;
}

inline std::vector<std::pair<VertexId, VertexId>> hypercube_edges(int dim) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (int u = 0; u < (1 << dim); ++u)
        for (int b = 0; b < dim; ++b) {
            int v = u ^ (1 << b);
            if (u < v) edges.emplace_back(u, v);
        }
    return edges;
}

// Pairing-model random cubic graph; retries until simple. Deterministic for a
// fixed seed.
inline std::vector<std::pair<VertexId, VertexId>> random_cubic_edges(int n, std::uint64_t seed) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        Rng rng = make_rng(seed + attempt * 0x9e37ULL);
        std::vector<int> stubs;
        stubs.reserve(3 * n);
        for (int v = 0; v < n; ++v)
            for (int i = 0; i < 3; ++i) stubs.push_back(v);
        for (std::size_t i = stubs.size(); i > 1; --i)
            std::swap(stubs[i - 1], stubs[uniform_below(rng, i)]);
        std::set<std::pair<int, int>> seen;
        std::vector<std::pair<VertexId, VertexId>> edges;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
            int u = stubs[i], v = stubs[i + 1];
            if (u == v || !seen.emplace(std::min(u, v), std::max(u, v)).second) {
                ok = false;
                break;
            }
            edges.emplace_back(u, v);
        }
        if (ok) return edges;
    }
}

} // namespace detail

inline const std::vector<std::string>& corpus_names() {
    static const std::vector<std::string> names = {
        "k4",      "k5",      "k6",      "k7",        "k8",        "petersen", "q3",
        "q4",      "cubic_a", "cubic_b", "cubic_c",   "tree_path", "tree_binary"};
    return names;
}

inline Graph corpus_graph(const std::string& name) {
    using detail::complete_edges;
    using detail::hypercube_edges;
    using detail::random_cubic_edges;
    if (name == "k4") return Graph(4, complete_edges(4));
    if (name == "k5") return Graph(5, complete_edges(5));
    if (name == "k6") return Graph(6, complete_edges(6));
    if (name == "k7") return Graph(7, complete_edges(7));
    if (name == "k8") return Graph(8, complete_edges(8));
    if (name == "petersen") {
        std::vector<std::pair<VertexId, VertexId>> edges;
        for (int i = 0; i < 5; ++i) edges.emplace_back(i, (i + 1) % 5);          // outer cycle
        for (int i = 0; i < 5; ++i) edges.emplace_back(5 + i, 5 + (i + 2) % 5);  // pentagram
        for (int i = 0; i < 5; ++i) edges.emplace_back(i, 5 + i);                // spokes
        return Graph(10, edges);
    }
    if (name == "q3") return Graph(8, hypercube_edges(3));
    if (name == "q4") return Graph(16, hypercube_edges(4));
    if (name == "cubic_a") return Graph(10, random_cubic_edges(10, 101));
    if (name == "cubic_b") return Graph(12, random_cubic_edges(12, 202));
    if (name == "cubic_c") return Graph(14, random_cubic_edges(14, 303));
    if (name == "tree_path") {
        std::vector<std::pair<VertexId, VertexId>> edges;
        for (int i = 0; i < 7; ++i) edges.emplace_back(i, i + 1);
        return Graph(8, edges);
    }
    if (name == "tree_binary") {
        std::vector<std::pair<VertexId, VertexId>> edges;
        for (int v = 1; v < 15; ++v) edges.emplace_back((v - 1) / 2, v);
        return Graph(15, edges);
    }
    throw std::invalid_argument("unknown corpus graph '" + name + "'");
}

inline std::string corpus_edge_list(const std::string& name) {
    Graph g = corpus_graph(name);
    std::string out = "# " + name + "\n";
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edge(e);
        out += std::to_string(g.label(u)) + " " + std::to_string(g.label(v)) + "\n";
    }
    return out;
}

} // namespace aec
