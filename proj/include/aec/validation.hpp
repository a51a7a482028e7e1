#pragma once

#include <cmath>
#include <cstdlib>
#include <optional>
#include <thread>
#include <vector>

#include "aec/coloring.hpp"
#include "aec/edge_color.hpp"
#include "aec/graph.hpp"
#include "aec/rational.hpp"

namespace aec {

// (e1, e2, k): some cycle of length 2k >= 6 contains e1 and e2 as successive
// edges in its positive traversal started from e1. Checked at construction.
struct AdmissibleTriple {
    EdgeId e1;
    EdgeId e2;
    int k;

    AdmissibleTriple(const Graph& g, EdgeId e1_, EdgeId e2_, int k_) : e1(e1_), e2(e2_), k(k_) {
        if (k < 3) throw std::invalid_argument("half-length must be at least 3");
        if (e1 < 0 || e2 < 0 || e1 >= g.edge_count() || e2 >= g.edge_count())
            throw std::invalid_argument("edge id out of range");
        if (cycles_through_pair(g, e1, e2, 2 * k).empty())
            throw std::invalid_argument("no cycle of length " + std::to_string(2 * k) +
                                        " has edges " + std::to_string(e1) + "," +
                                        std::to_string(e2) + " in succession");
    }
};

struct AdmissibleSequence {
    std::vector<AdmissibleTriple> triples;

    std::size_t phases() const { return triples.size(); }
    std::vector<int> half_lengths() const {
        std::vector<int> ks;
        ks.reserve(triples.size());
        for (const auto& t : triples) ks.push_back(t.k);
        return ks;
    }
};

// Marks of the internal nodes in depth-first order, each turned into a triple:
// the edge-mark, its successor on the cycle-mark, and the half-length.
inline AdmissibleSequence admissible_from_forest(const WitnessForest& forest, const Graph& g) {
    AdmissibleSequence seq;
    auto walk = [&](auto&& self, const WitnessNode& node) -> void {
        if (node.edge_mark < 0 || !node.cycle_mark.contains(node.edge_mark))
            throw std::invalid_argument("malformed witness node");
        seq.triples.emplace_back(g, node.edge_mark, node.cycle_mark.successor(node.edge_mark),
                                 node.cycle_mark.length() / 2);
        for (const auto& ch : node.children) self(self, ch);
    };
    for (const auto& r : forest.roots) walk(walk, r);
    return seq;
}

namespace detail {

// The unique cycle through e in the subgraph of edges colored a or b, if any.
inline std::optional<Cycle> two_color_cycle_through(const Graph& g, const EdgeColoring& col,
                                                    EdgeId e, ColorId a, ColorId b) {
    auto [home, cur] = g.edge(e);
    std::vector<VertexId> seq{home};
    EdgeId walk = e;
    for (int guard = 0; guard <= g.edge_count(); ++guard) {
        if (cur == home) return canonical_positive_traversal(g, seq);
        seq.push_back(cur);
        EdgeId next = -1;
        for (auto [w, id] : g.neighbors(cur)) {
            (void)w;
            if (id == walk) continue;
            ColorId c = col.color(id);
            if (c == a || c == b) {
                next = id;
                break;
            }
        }
        if (next < 0) return std::nullopt;
        walk = next;
        cur = g.other_end(walk, cur);
    }
    return std::nullopt; // unreachable on a proper coloring
}

} // namespace detail

struct ValidationResult {
    bool success = false;
    std::vector<Cycle> certificate; // one cycle per completed phase
};

// EdgeValidation: fresh safe coloring, then one phase per triple. A phase
// succeeds when the cycle prescribed by (e1, e2, 2k) is bichromatic under the
// current coloring, in which case its scope is recolored.
inline ValidationResult edge_validation(const Graph& g, const AdmissibleSequence& seq,
                                        const ColorConfig& cfg, Rng& rng,
                                        AssignStats* stats = nullptr) {
    EdgeColoring col(g.edge_count(), cfg.palette_for(g));
    for (EdgeId e = 0; e < g.edge_count(); ++e) assign_safe_color(g, col, e, rng, stats);

    ValidationResult result;
    for (const auto& triple : seq.triples) {
        ColorId c1 = col.color(triple.e1), c2 = col.color(triple.e2);
        std::optional<Cycle> cycle;
        if (c1 != c2) cycle = detail::two_color_cycle_through(g, col, triple.e1, c1, c2);
        bool ok = cycle && cycle->length() == 2 * triple.k &&
                  cycle->successor(triple.e1) == triple.e2;
        if (!ok) return result; // success stays false
        result.certificate.push_back(*cycle);
        for (EdgeId e : scope(triple.e1, *cycle).edges) assign_safe_color(g, col, e, rng, stats);
    }
    result.success = true;
    return result;
}

// Exact success probability bound: (1/(g(D-1)+1))^s * prod_i (1-(1-1/(g(D-1)+1))^(D-1))^(2k_i-3).
inline Rational success_bound(const std::vector<int>& half_lengths, const Rational& gamma,
                              int max_degree) {
    if (gamma < 1 || max_degree < 2) throw std::invalid_argument("need gamma >= 1, max degree >= 2");
    Rational p = Rational(1) / (gamma * (max_degree - 1) + 1);
    Rational miss = 1 - p;
    Rational miss_all = 1;
    for (int i = 0; i < max_degree - 1; ++i) miss_all *= miss;
    Rational hit = 1 - miss_all;
    Rational bound = 1;
    for (int k : half_lengths) {
        bound *= p;
        for (int j = 0; j < 2 * k - 3; ++j) bound *= hit;
    }
    return bound;
}

inline Rational success_bound(const AdmissibleSequence& seq, const Rational& gamma,
                              int max_degree) {
    return success_bound(seq.half_lengths(), gamma, max_degree);
}

// Closed-form relaxation (1/(D-1))^s * prod_i (1/g)(1-e^(-1/g))^(2k_i-3); always
// at least the exact bound.
inline long double success_bound_relaxed(const std::vector<int>& half_lengths,
                                         const Rational& gamma, int max_degree) {
    long double g = to_long_double(gamma);
    long double base = 1.0L - std::exp(-1.0L / g);
    long double bound = 1.0L;
    for (int k : half_lengths)
        bound *= (1.0L / (max_degree - 1)) * (1.0L / g) * std::pow(base, 2 * k - 3);
    long double exact = to_long_double(success_bound(half_lengths, gamma, max_degree));
    if (bound < exact)
        throw std::logic_error("relaxed bound fell below the exact bound");
    return bound;
}

inline long double success_bound_relaxed(const AdmissibleSequence& seq, const Rational& gamma,
                                         int max_degree) {
    return success_bound_relaxed(seq.half_lengths(), gamma, max_degree);
}

// (1 - e^(-1/gamma))^(3/4); below 0.6677 from gamma = 1.142 on.
inline long double decay_threshold(long double gamma) {
    if (gamma <= 0) throw std::invalid_argument("gamma must be positive");
    return std::pow(1.0L - std::exp(-1.0L / gamma), 0.75L);
}

struct ForestEventBound {
    long double node_product;   // prod_i (1/g)(1-e^(-1/g))^(2k_i-3)
    long double relaxed;        // (1-e^(-1/g))^((3/4) n)
    long double tree_constant;  // (1-e^(-1/g))^(-(3/4) t), t = number of trees
    long node_count;            // n, leaves included
    bool redistribution_holds;  // node_product <= tree_constant * relaxed
};

// Bound for "the forest with these internal outdegrees can be marked into a
// witness forest". Redistributing each exponent 2k-3 over 2k-2 children leaves
// at least 3/4 per non-root node, so the product is at most
// (1-e^(-1/g))^((3/4)(n - t)).
inline ForestEventBound forest_event_bound(const std::vector<int>& half_lengths, int tree_count,
                                           const Rational& gamma) {
    if (tree_count < 0 || (tree_count == 0 && !half_lengths.empty()))
        throw std::invalid_argument("bad tree count");
    for (int k : half_lengths)
        if (k < 3) throw std::invalid_argument("half-length must be at least 3");
    long double g = to_long_double(gamma);
    long double base = 1.0L - std::exp(-1.0L / g);

    ForestEventBound out{};
    out.node_count = tree_count;
    out.node_product = 1.0L;
    for (int k : half_lengths) {
        out.node_count += 2 * k - 2;
        out.node_product *= (1.0L / g) * std::pow(base, 2 * k - 3);
    }
    out.relaxed = std::pow(base, 0.75L * out.node_count);
    out.tree_constant = std::pow(base, -0.75L * tree_count);
    out.redistribution_holds =
        out.node_product <= out.tree_constant * out.relaxed * (1.0L + 1e-15L);
    return out;
}

inline int worker_count() {
    if (const char* env = std::getenv("AEC_WORKERS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs `trials` independent EdgeValidation executions; returns the success
// count. Trial t draws from its own stream, so the tally does not depend on
// the worker count.
inline long run_validation_trials(const Graph& g, const AdmissibleSequence& seq,
                                  const ColorConfig& cfg, long trials, std::uint64_t seed,
                                  int workers = 0) {
    if (workers <= 0) workers = worker_count();
    workers = static_cast<int>(std::min<long>(workers, std::max<long>(trials, 1)));
    std::vector<long> tally(workers, 0);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            long mine = 0;
            for (long t = w; t < trials; t += workers) {
                Rng rng = make_trial_rng(seed, static_cast<std::uint64_t>(t));
                if (edge_validation(g, seq, cfg, rng).success) ++mine;
            }
            tally[w] = mine;
        });
    for (auto& th : pool) th.join();
    long total = 0;
    for (long v : tally) total += v;
    return total;
}

struct ValidationTable {
    std::size_t s = 0;
    std::vector<int> k_list;
    Rational bound_exact;
    long double bound_relaxed = 0;
    long trials = 0;
    long successes = 0;
    double empirical = 0;
    double sigma = 0; // binomial sd of the relaxed bound over `trials`
    bool pass = false;
};

inline ValidationTable validation_table(const Graph& g, const AdmissibleSequence& seq,
                                        const ColorConfig& cfg, long trials, std::uint64_t seed,
                                        int workers = 0) {
    ValidationTable table;
    table.s = seq.phases();
    table.k_list = seq.half_lengths();
    table.bound_exact = success_bound(seq, cfg.gamma, g.max_degree());
    table.bound_relaxed = success_bound_relaxed(seq, cfg.gamma, g.max_degree());
    table.trials = trials;
    table.successes = run_validation_trials(g, seq, cfg, trials, seed, workers);
    table.empirical = trials > 0 ? static_cast<double>(table.successes) / trials : 0.0;
    double p = std::min<double>(1.0, static_cast<double>(table.bound_relaxed));
    table.sigma = trials > 0 ? std::sqrt(p * (1.0 - p) / trials) : 0.0;
    bool exact_below = table.bound_exact <= Rational(1) &&
                       to_long_double(table.bound_exact) <= table.bound_relaxed;
    table.pass = exact_below && table.empirical <= p + 3.0 * table.sigma;
    return table;
}

} // namespace aec
