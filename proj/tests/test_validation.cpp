#include <catch2/catch_amalgamated.hpp>

#include "aec/corpus.hpp"
#include "aec/validation.hpp"
#include "oracles.hpp"

using namespace aec;

namespace {

// an admissible triple read off an actual cycle
AdmissibleTriple triple_from_cycle(const Graph& g, const Cycle& c, int at = 0) {
    EdgeId e1 = c.edges[at % c.length()];
    return AdmissibleTriple(g, e1, c.successor(e1), c.length() / 2);
}

Cycle even_cycle_of_length(const Graph& g, int len) {
    for (const Cycle& c : oracle::all_cycles(g))
        if (c.length() == len) return c;
    throw std::runtime_error("no such cycle");
}

} // namespace

TEST_CASE("admissibility is checked at construction") {
    Graph q3 = corpus_graph("q3");
    Cycle six = even_cycle_of_length(q3, 6);
    CHECK_NOTHROW(triple_from_cycle(q3, six));
    CHECK_NOTHROW(triple_from_cycle(q3, six, 3));

    // K4 has no cycle of length 6 at all
    Graph k4 = corpus_graph("k4");
    CHECK_THROWS_AS(AdmissibleTriple(k4, 0, 1, 3), std::invalid_argument);
    // half-length below 3, identical edges, out-of-range ids
    CHECK_THROWS_AS(AdmissibleTriple(q3, 0, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(AdmissibleTriple(q3, 0, 0, 3), std::invalid_argument);
    CHECK_THROWS_AS(AdmissibleTriple(q3, 0, 99, 3), std::invalid_argument);
    // edges that never appear in succession: pick a pair sharing no vertex
    EdgeId e1 = six.edges[0];
    auto [u, v] = q3.edge(e1);
    for (EdgeId far = 0; far < q3.edge_count(); ++far) {
        if (q3.edge_has_vertex(far, u) || q3.edge_has_vertex(far, v)) continue;
        CHECK_THROWS_AS(AdmissibleTriple(q3, e1, far, 3), std::invalid_argument);
        break;
    }
}

TEST_CASE("empty sequence validates trivially") {
    Graph g = corpus_graph("q3");
    ColorConfig cfg;
    Rng rng = make_rng(1);
    auto result = edge_validation(g, AdmissibleSequence{}, cfg, rng);
    CHECK(result.success);
    CHECK(result.certificate.empty());
}

TEST_CASE("successful phases produce matching certificates") {
    Graph g = parse_graph("0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n"); // single 6-ring
    Cycle ring = oracle::all_cycles(g).front();
    AdmissibleSequence seq;
    seq.triples.push_back(triple_from_cycle(g, ring));
    ColorConfig cfg;
    cfg.gamma = Rational(1); // palette 4: failures and successes both occur

    long successes = 0;
    const long trials = 4000;
    for (long t = 0; t < trials; ++t) {
        Rng rng = make_trial_rng(77, t);
        auto result = edge_validation(g, seq, cfg, rng);
        if (!result.success) {
            CHECK(result.certificate.empty());
            continue;
        }
        ++successes;
        REQUIRE(result.certificate.size() == 1);
        const Cycle& c = result.certificate[0];
        CHECK(c.length() == 6);
        CHECK(c.successor(seq.triples[0].e1) == seq.triples[0].e2);
    }
    // the exact bound at gamma=1, max degree 2 is (1/2)(1/2)^3 = 1/16
    CHECK(successes > 0);
    CHECK(static_cast<double>(successes) / trials <= 1.0 / 16 + 3 * std::sqrt((1.0 / 16) * (15.0 / 16) / trials));
}

TEST_CASE("success_bound evaluates exactly") {
    CHECK(success_bound(std::vector<int>{}, Rational(2), 3) == Rational(1));
    // s=1, k=3, max degree 3, gamma 2: (1/5)(1-(4/5)^2)^3 = 729/78125
    CHECK(success_bound(std::vector<int>{3}, Rational(2), 3) == Rational(729, 78125));
    // monotone: larger k shrinks the bound
    Rational k3 = success_bound(std::vector<int>{3}, Rational(571, 500), 3);
    Rational k4 = success_bound(std::vector<int>{4}, Rational(571, 500), 3);
    Rational k5 = success_bound(std::vector<int>{5}, Rational(571, 500), 3);
    CHECK(k4 < k3);
    CHECK(k5 < k4);
    // multiplicative across phases
    Rational two_phase = success_bound(std::vector<int>{3, 4}, Rational(2), 3);
    CHECK(two_phase == success_bound(std::vector<int>{3}, Rational(2), 3) *
                           success_bound(std::vector<int>{4}, Rational(2), 3));
}

TEST_CASE("relaxed bound dominates the exact bound") {
    // s=1, k=3, max degree 3, gamma 1.142: about 0.0870
    long double relaxed = success_bound_relaxed(std::vector<int>{3}, Rational(571, 500), 3);
    CHECK(std::fabs(static_cast<double>(relaxed) - 0.08697) < 5e-4);
    CHECK(success_bound_relaxed(std::vector<int>{}, Rational(571, 500), 3) == 1.0L);

    for (int delta : {2, 3, 4, 7}) {
        for (const auto& gamma : {Rational(1), Rational(571, 500), Rational(2), Rational(3)}) {
            for (const auto& ks :
                 {std::vector<int>{3}, std::vector<int>{4}, std::vector<int>{3, 3},
                  std::vector<int>{3, 4, 5}, std::vector<int>{6}}) {
                long double rel = success_bound_relaxed(ks, gamma, delta); // throws if below exact
                CHECK(rel <= 1.0L);
                CHECK(to_long_double(success_bound(ks, gamma, delta)) <= rel);
            }
        }
    }
}

TEST_CASE("forest event bound and the redistribution inequality") {
    // single internal node, k=3: node count 1 + 4 = 5
    auto single = forest_event_bound(std::vector<int>{3}, 1, Rational(1));
    CHECK(single.node_count == 5);
    CHECK(single.redistribution_holds);

    // exponent ratio (2k-3)/(2k-2) >= 3/4 for k >= 3
    for (int k = 3; k <= 12; ++k)
        CHECK((2.0 * k - 3) / (2.0 * k - 2) >= 0.75);

    // across a gamma grid and several forests
    for (int tenths = 10; tenths <= 30; ++tenths) {
        Rational gamma(tenths, 10);
        for (const auto& [ks, trees] :
             std::vector<std::pair<std::vector<int>, int>>{{{3}, 1},
                                                           {{3, 3}, 1},
                                                           {{3, 3}, 2},
                                                           {{4, 3, 3}, 1},
                                                           {{5, 4}, 2},
                                                           {{}, 0}}) {
            auto bound = forest_event_bound(ks, trees, gamma);
            CHECK(bound.redistribution_holds);
            long expected_nodes = trees;
            for (int k : ks) expected_nodes += 2 * k - 2;
            CHECK(bound.node_count == expected_nodes);
        }
    }

    auto empty = forest_event_bound({}, 0, Rational(571, 500));
    CHECK(empty.node_product == 1.0L);
    CHECK(empty.relaxed == 1.0L);

    CHECK_THROWS_AS(forest_event_bound(std::vector<int>{2}, 1, Rational(1)),
                    std::invalid_argument);
}

TEST_CASE("decay threshold") {
    CHECK(decay_threshold(1.142L) < 0.6677L);
    CHECK(decay_threshold(1.0L) > 0.6678L);
    CHECK(std::fabs(static_cast<double>(decay_threshold(1.0L)) - 0.70894) < 1e-4);
    long double prev = decay_threshold(0.5L);
    for (long double g = 0.6L; g <= 3.01L; g += 0.1L) {
        long double cur = decay_threshold(g);
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK_THROWS_AS(decay_threshold(0.0L), std::invalid_argument);
}

TEST_CASE("empirical success rate respects the relaxed bound") {
    Graph g = corpus_graph("q3");
    ColorConfig cfg; // gamma 1.142, palette 8
    const long trials = 20000;

    std::vector<AdmissibleSequence> suite;
    {
        Cycle six = even_cycle_of_length(g, 6);
        Cycle eight = even_cycle_of_length(g, 8);
        AdmissibleSequence a;
        a.triples.push_back(triple_from_cycle(g, six));
        suite.push_back(a);
        AdmissibleSequence b;
        b.triples.push_back(triple_from_cycle(g, eight));
        suite.push_back(b);
        AdmissibleSequence c;
        c.triples.push_back(triple_from_cycle(g, six));
        c.triples.push_back(triple_from_cycle(g, six, 2));
        suite.push_back(c);
    }
    for (std::size_t i = 0; i < suite.size(); ++i) {
        ValidationTable table = validation_table(g, suite[i], cfg, trials, 5000 + i);
        CHECK(to_long_double(table.bound_exact) <= table.bound_relaxed);
        CHECK(table.empirical <= static_cast<double>(table.bound_relaxed) + 3 * table.sigma);
        CHECK(table.pass);
        CHECK(table.trials == trials);
        CHECK(table.s == suite[i].triples.size());
    }
}

TEST_CASE("trial tally is independent of the worker count") {
    Graph g = corpus_graph("q3");
    AdmissibleSequence seq;
    seq.triples.push_back(triple_from_cycle(g, even_cycle_of_length(g, 6)));
    ColorConfig cfg;
    cfg.gamma = Rational(1);
    long one = run_validation_trials(g, seq, cfg, 4000, 42, 1);
    long four = run_validation_trials(g, seq, cfg, 4000, 42, 4);
    long again = run_validation_trials(g, seq, cfg, 4000, 42, 4);
    CHECK(one == four);
    CHECK(four == again);
}

TEST_CASE("admissible sequence from a witness forest") {
    Graph ring8 = parse_graph("0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n7 0\n");
    Cycle c8 = oracle::all_cycles(ring8).front();
    REQUIRE(c8.length() == 8);

    SECTION("single root") {
        WitnessNode root;
        root.edge_mark = c8.edges[0];
        root.cycle_mark = c8;
        WitnessForest f;
        f.roots.push_back(root);
        AdmissibleSequence seq = admissible_from_forest(f, ring8);
        REQUIRE(seq.phases() == 1);
        CHECK(seq.triples[0].e1 == c8.edges[0]);
        CHECK(seq.triples[0].e2 == c8.edges[1]);
        CHECK(seq.triples[0].k == 4);
    }
    SECTION("depth-first order over a nested forest") {
        // Q3 has 6-cycles overlapping an 8-cycle, so a child inside the scope exists
        Graph q3 = corpus_graph("q3");
        Cycle eight = even_cycle_of_length(q3, 8);
        WitnessNode root;
        root.edge_mark = eight.edges[0];
        root.cycle_mark = eight;
        // find a 6-cycle whose edge-mark lies in the root scope
        auto in_scope = scope(root.edge_mark, eight).edges;
        WitnessNode child;
        bool placed = false;
        for (const Cycle& c : oracle::all_cycles(q3)) {
            if (c.length() != 6) continue;
            for (EdgeId e : c.edges)
                if (std::count(in_scope.begin(), in_scope.end(), e)) {
                    child.edge_mark = e;
                    child.cycle_mark = c;
                    placed = true;
                    break;
                }
            if (placed) break;
        }
        REQUIRE(placed);
        root.children.push_back(child);
        WitnessNode second_root;
        // a root after the first, in call order
        second_root.edge_mark = eight.edges[2];
        second_root.cycle_mark = eight;
        WitnessForest f;
        f.roots.push_back(root);
        f.roots.push_back(second_root);
        AdmissibleSequence seq = admissible_from_forest(f, q3);
        REQUIRE(seq.phases() == 3);
        CHECK(seq.triples[0].e1 == root.edge_mark);
        CHECK(seq.triples[1].e1 == child.edge_mark);   // child before the next root
        CHECK(seq.triples[2].e1 == second_root.edge_mark);
        CHECK(seq.triples[1].k == 3);
    }
    SECTION("success certificates mark a forest that reproduces the sequence") {
        // the fixed cycles of a successful run, rooted in call order, form a
        // marked forest whose derived sequence is the original input
        Graph two_rings =
            parse_graph("0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n6 7\n7 8\n8 9\n9 10\n10 11\n11 6\n");
        auto cycles = oracle::all_cycles(two_rings);
        REQUIRE(cycles.size() == 2);
        AdmissibleSequence seq;
        for (const Cycle& c : cycles) seq.triples.push_back(triple_from_cycle(two_rings, c));
        ColorConfig cfg;
        cfg.gamma = Rational(1); // palette 4: successes happen
        int replayed = 0;
        for (long t = 0; t < 60000 && replayed < 5; ++t) {
            Rng rng = make_trial_rng(991, t);
            auto result = edge_validation(two_rings, seq, cfg, rng);
            if (!result.success) continue;
            ++replayed;
            REQUIRE(result.certificate.size() == 2);
            WitnessForest forest;
            for (std::size_t i = 0; i < result.certificate.size(); ++i) {
                WitnessNode root;
                root.edge_mark = seq.triples[i].e1;
                root.cycle_mark = result.certificate[i];
                forest.roots.push_back(root);
            }
            CHECK(check_witness(forest, two_rings).empty());
            AdmissibleSequence derived = admissible_from_forest(forest, two_rings);
            REQUIRE(derived.phases() == seq.phases());
            for (std::size_t i = 0; i < seq.phases(); ++i) {
                CHECK(derived.triples[i].e1 == seq.triples[i].e1);
                CHECK(derived.triples[i].e2 == seq.triples[i].e2);
                CHECK(derived.triples[i].k == seq.triples[i].k);
            }
        }
        CHECK(replayed == 5);
    }
    SECTION("forests from real runs convert without complaint") {
        Graph k44 = parse_graph(
            "0 4\n0 5\n0 6\n0 7\n1 4\n1 5\n1 6\n1 7\n2 4\n2 5\n2 6\n2 7\n3 4\n3 5\n3 6\n3 7\n");
        ColorConfig cfg;
        cfg.gamma = Rational(1);
        int converted = 0;
        for (std::uint64_t seed = 0; seed < 450 && converted < 8; ++seed) {
            cfg.seed = seed;
            auto [col, stats] = edge_color(k44, cfg);
            if (stats.forest.roots.empty()) continue;
            AdmissibleSequence seq = admissible_from_forest(stats.forest, k44);
            CHECK(seq.phases() == static_cast<std::size_t>(stats.forest.internal_count()));
            ++converted;
        }
        CHECK(converted >= 5);
    }
}
