#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace aec {

using VertexId = int;
using EdgeId = int;

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

struct NotSimpleError : std::runtime_error {
    int line;
    NotSimpleError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

// Simple undirected graph. Edge ids 0..m-1 follow input order and define the
// total edge order used by "first edge" selections everywhere else.
class Graph {
public:
    Graph(int vertex_count, const std::vector<std::pair<VertexId, VertexId>>& edge_list,
          std::vector<long> original_labels = {})
        : labels_(std::move(original_labels)) {
        if (vertex_count <= 0) throw std::invalid_argument("vertex count must be positive");
        adjacency_.resize(vertex_count);
        edges_.reserve(edge_list.size());
        for (auto [u, v] : edge_list) add_edge(u, v, -1);
        finalize();
    }

    int vertex_count() const { return static_cast<int>(adjacency_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int max_degree() const { return max_degree_; }

    std::pair<VertexId, VertexId> edge(EdgeId e) const { return edges_[e]; }

    const std::vector<std::pair<VertexId, EdgeId>>& neighbors(VertexId v) const {
        return adjacency_[v];
    }
    int degree(VertexId v) const { return static_cast<int>(adjacency_[v].size()); }

    std::optional<EdgeId> find_edge(VertexId u, VertexId v) const {
        auto it = edge_index_.find(key(u, v));
        if (it == edge_index_.end()) return std::nullopt;
        return it->second;
    }

    // Endpoint of e other than v.
    VertexId other_end(EdgeId e, VertexId v) const {
        auto [a, b] = edges_[e];
        return a == v ? b : a;
    }

    bool edge_has_vertex(EdgeId e, VertexId v) const {
        return edges_[e].first == v || edges_[e].second == v;
    }

    // Original input label for vertex v (v itself when the graph was built
    // directly from 0-based ids).
    long label(VertexId v) const {
        return labels_.empty() ? v : labels_[v];
    }

private:
    friend Graph parse_graph(std::string_view);

    Graph() = default;

    static std::uint64_t key(VertexId u, VertexId v) {
        auto a = static_cast<std::uint64_t>(std::min(u, v));
        auto b = static_cast<std::uint64_t>(std::max(u, v));
        return (a << 32) | b;
    }

    void add_edge(VertexId u, VertexId v, int line) {
        if (u == v) throw NotSimpleError(line, "self-loop on vertex");
        if (u < 0 || v < 0 || u >= static_cast<int>(adjacency_.size()) ||
            v >= static_cast<int>(adjacency_.size()))
            throw std::invalid_argument("vertex id out of range");
        if (edge_index_.count(key(u, v))) throw NotSimpleError(line, "duplicate edge");
        EdgeId id = static_cast<EdgeId>(edges_.size());
        edges_.emplace_back(u, v);
        edge_index_.emplace(key(u, v), id);
        adjacency_[u].emplace_back(v, id);
        adjacency_[v].emplace_back(u, id);
    }

    void finalize() {
        max_degree_ = 0;
        for (const auto& adj : adjacency_)
            max_degree_ = std::max(max_degree_, static_cast<int>(adj.size()));
        if (max_degree_ < 2) throw std::invalid_argument("max degree must be at least 2");
    }

    std::vector<std::pair<VertexId, VertexId>> edges_;
    std::vector<std::vector<std::pair<VertexId, EdgeId>>> adjacency_;
    std::unordered_map<std::uint64_t, EdgeId> edge_index_;
    std::vector<long> labels_;
    int max_degree_ = 0;
};

// A cycle in its positive traversal: edges[i] joins vertices[i] and
// vertices[(i+1) % s].
struct Cycle {
    std::vector<EdgeId> edges;
    std::vector<VertexId> vertices;

    int length() const { return static_cast<int>(edges.size()); }

    bool operator==(const Cycle& other) const {
        return edges == other.edges && vertices == other.vertices;
    }

    std::optional<int> position_of(EdgeId e) const {
        for (int i = 0; i < length(); ++i)
            if (edges[i] == e) return i;
        return std::nullopt;
    }

    bool contains(EdgeId e) const { return position_of(e).has_value(); }

    // Edge following e in the positive traversal.
    EdgeId successor(EdgeId e) const {
        auto pos = position_of(e);
        if (!pos) throw std::invalid_argument("edge not on cycle");
        return edges[(*pos + 1) % length()];
    }
};

inline bool is_valid_cycle(const Graph& g, const Cycle& c) {
    int s = c.length();
    if (s < 3 || static_cast<int>(c.vertices.size()) != s) return false;
    std::vector<VertexId> sorted = c.vertices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    for (int i = 0; i < s; ++i) {
        VertexId a = c.vertices[i], b = c.vertices[(i + 1) % s];
        auto id = g.find_edge(a, b);
        if (!id || *id != c.edges[i]) return false;
    }
    return true;
}

// Two edges of an even cycle have the same parity when an odd number of edges
// separates them, i.e. their positions agree mod 2.
inline bool same_parity(const Cycle& c, int i, int j) {
    if (c.length() % 2 != 0) throw std::invalid_argument("parity undefined on odd cycle");
    if (i < 0 || j < 0 || i >= c.length() || j >= c.length())
        throw std::out_of_range("cycle position");
    return (i % 2) == (j % 2);
}

// First |C|-2 edges of C's positive traversal started at e.
struct ScopeView {
    EdgeId anchor;
    std::vector<EdgeId> edges;

    bool contains(EdgeId e) const {
        return std::find(edges.begin(), edges.end(), e) != edges.end();
    }
};

inline ScopeView scope(EdgeId e, const Cycle& c) {
    auto pos = c.position_of(e);
    if (!pos) throw std::invalid_argument("edge not on cycle");
    int s = c.length();
    ScopeView view;
    view.anchor = e;
    view.edges.reserve(s - 2);
    for (int i = 0; i < s - 2; ++i) view.edges.push_back(c.edges[(*pos + i) % s]);
    return view;
}

// Deterministic orientation: begin at the smallest edge id on the cycle and
// run in the direction whose second edge id is smaller. Idempotent, and
// invariant under rotation or reversal of the input.
inline Cycle canonical_positive_traversal(const Graph& g, const std::vector<VertexId>& raw) {
    int s = static_cast<int>(raw.size());
    if (s < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
    std::vector<EdgeId> edges(s);
    for (int i = 0; i < s; ++i) {
        auto id = g.find_edge(raw[i], raw[(i + 1) % s]);
        if (!id) throw std::invalid_argument("vertex sequence is not a cycle");
        edges[i] = *id;
    }
    {
        std::vector<VertexId> sorted = raw;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("cycle repeats a vertex");
    }
    int start = static_cast<int>(std::min_element(edges.begin(), edges.end()) - edges.begin());
    bool forward = edges[(start + 1) % s] < edges[(start + s - 1) % s];

    Cycle c;
    c.edges.resize(s);
    c.vertices.resize(s);
    for (int i = 0; i < s; ++i) {
        int idx = forward ? (start + i) % s : (start - i + 2 * s) % s;
        c.edges[i] = edges[idx];
        // edges[idx] joins raw[idx] and raw[idx+1]; going backwards the edge is
        // traversed from its far endpoint.
        c.vertices[i] = forward ? raw[idx] : raw[(idx + 1) % s];
    }
    return c;
}

inline Cycle canonical_positive_traversal(const Graph& g, const Cycle& c) {
    return canonical_positive_traversal(g, c.vertices);
}

// All cycles of length exactly `len` that contain e1 and e2 as successive
// edges (e2 right after e1) in their canonical positive traversal.
inline std::vector<Cycle> cycles_through_pair(const Graph& g, EdgeId e1, EdgeId e2, int len) {
    std::vector<Cycle> found;
    if (len < 3 || e1 == e2) return found;
    auto [a1, b1] = g.edge(e1);
    auto [a2, b2] = g.edge(e2);
    // orientations of e1 as (u -> v) with e2 leaving v
    std::vector<std::pair<VertexId, VertexId>> starts;
    for (auto [u, v] : {std::pair{a1, b1}, std::pair{b1, a1}})
        if (v == a2 || v == b2) starts.emplace_back(u, v);
    std::vector<char> used(g.vertex_count(), 0);
    std::vector<VertexId> path;
    for (auto [u, v] : starts) {
        VertexId w = g.other_end(e2, v);
        if (w == u) continue;
        path = {u, v, w};
        used.assign(g.vertex_count(), 0);
        used[u] = used[v] = used[w] = 1;
        // extend path from w back to u with len-2 more edges
        auto dfs = [&](auto&& self, VertexId cur) -> void {
            if (static_cast<int>(path.size()) == len) {
                if (g.find_edge(cur, u)) {
                    Cycle c = canonical_positive_traversal(g, path);
                    if (c.successor(e1) == e2 && !std::count(found.begin(), found.end(), c))
                        found.push_back(c);
                }
                return;
            }
            for (auto [next, id] : g.neighbors(cur)) {
                (void)id;
                if (used[next]) continue;
                used[next] = 1;
                path.push_back(next);
                self(self, next);
                path.pop_back();
                used[next] = 0;
            }
        };
        dfs(dfs, w);
    }
    return found;
}

// Edge-list ("u v" per line, '#' comments) or DIMACS ("c ...", "p edge n m",
// "e u v"). Vertex labels are integers; edge order is input order.
inline Graph parse_graph(std::string_view text) {
    std::vector<std::pair<long, long>> raw_edges;
    std::vector<int> edge_lines;
    bool dimacs = false;
    long declared_vertices = -1;

    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c") continue;
        if (tok == "p") {
            std::string kind;
            long n = 0, m = 0;
            if (!(ls >> kind >> n >> m) || (kind != "edge" && kind != "col"))
                throw ParseError(lineno, "malformed DIMACS problem line");
            if (n <= 0) throw ParseError(lineno, "vertex count must be positive");
            dimacs = true;
            declared_vertices = n;
            continue;
        }
        long u, v;
        if (tok == "e") {
            if (!(ls >> u >> v)) throw ParseError(lineno, "malformed DIMACS edge line");
        } else {
            try {
                size_t used = 0;
                u = std::stol(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw ParseError(lineno, "expected integer vertex label, got '" + tok + "'");
            }
            if (!(ls >> v)) throw ParseError(lineno, "expected two vertex labels");
        }
        std::string extra;
        if (ls >> extra) throw ParseError(lineno, "trailing token '" + extra + "'");
        raw_edges.emplace_back(u, v);
        edge_lines.push_back(lineno);
    }
    if (raw_edges.empty()) throw ParseError(lineno, "no edges found");

    std::unordered_map<long, VertexId> ids;
    std::vector<long> labels;
    auto intern = [&](long label, int at_line) -> VertexId {
        if (dimacs) {
            if (label < 1 || label > declared_vertices)
                throw ParseError(at_line, "vertex label outside 1..n");
            return static_cast<VertexId>(label - 1);
        }
        auto it = ids.find(label);
        if (it != ids.end()) return it->second;
        VertexId id = static_cast<VertexId>(labels.size());
        ids.emplace(label, id);
        labels.push_back(label);
        return id;
    };

    Graph g;
    if (dimacs) {
        g.adjacency_.resize(declared_vertices);
        labels.resize(declared_vertices);
        for (long i = 0; i < declared_vertices; ++i) labels[i] = i + 1;
    } else {
        // first pass to size the adjacency
        for (std::size_t i = 0; i < raw_edges.size(); ++i) {
            intern(raw_edges[i].first, edge_lines[i]);
            intern(raw_edges[i].second, edge_lines[i]);
        }
        g.adjacency_.resize(labels.size());
    }
    for (std::size_t i = 0; i < raw_edges.size(); ++i) {
        VertexId u = intern(raw_edges[i].first, edge_lines[i]);
        VertexId v = intern(raw_edges[i].second, edge_lines[i]);
        g.add_edge(u, v, edge_lines[i]);
    }
    g.labels_ = std::move(labels);
    g.finalize();
    return g;
}

} // namespace aec
