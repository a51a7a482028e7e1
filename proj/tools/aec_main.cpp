// aec: acyclic edge coloring toolbox.
//
// Subcommands: color, verify, validate, census, gf, certify, experiment,
// corpus. Exit codes: 0 success, 1 failed assertion or verification, 2 usage.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "aec/corpus.hpp"
#include "aec/json_io.hpp"
#include "aec/tree_census.hpp"

using namespace aec;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// A --graph argument is a file path, or the name of a bundled graph.
Graph load_graph_arg(const std::string& arg) {
    std::ifstream probe(arg);
    if (probe) return parse_graph(slurp(arg));
    const auto& names = corpus_names();
    if (std::find(names.begin(), names.end(), arg) != names.end()) return corpus_graph(arg);
    throw std::invalid_argument("'" + arg + "' is neither a readable file nor a bundled graph");
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
        out << text << "\n";
    }
}

struct Options {
    std::string graph;
    std::string gamma = "1.142";
    int palette = 0;
    std::uint64_t seed = 0;
    long cap = 1'000'000;
    long trials = 100000;
    long seeds = 10000;
    int order = 100;
    int max_n = 25;
    std::string series = "T";
    std::string coloring_path;
    std::string out_path;
    std::vector<std::string> triples;
    std::string corpus_name;
    bool as_json = false;
    bool dump_forest = false;
    bool list = false;
};

ColorConfig make_config(const Options& opt) {
    ColorConfig cfg;
    cfg.gamma = parse_rational(opt.gamma);
    cfg.palette_size = opt.palette;
    cfg.seed = opt.seed;
    cfg.cap = opt.cap;
    return cfg;
}

int cmd_color(const Options& opt) {
    Graph g = load_graph_arg(opt.graph);
    ColorConfig cfg = make_config(opt);
    auto [col, stats] = edge_color(g, cfg);
    VerifyReport rep = stats.halted ? verify(g, col) : VerifyReport{};
    json out{{"graph", opt.graph},
             {"palette_size", col.palette_size()},
             {"coloring", coloring_to_json(g, col)},
             {"run", run_stats_to_json(stats, opt.dump_forest)},
             {"verified", report_to_json(g, rep)}};
    emit(out.dump(2), opt.out_path);
    return (stats.halted && rep.all()) ? 0 : 1;
}

int cmd_verify(const Options& opt) {
    Graph g = load_graph_arg(opt.graph);
    json parsed = json::parse(slurp(opt.coloring_path));
    if (parsed.contains("coloring")) parsed = parsed["coloring"]; // accept color output
    int palette = opt.palette;
    if (palette == 0)
        for (const auto& item : parsed) palette = std::max(palette, item.at("color").get<int>() + 1);
    EdgeColoring col = coloring_from_json(g, parsed, palette);
    if (!col.is_total()) {
        std::cerr << "coloring does not cover every edge\n";
        return 1;
    }
    VerifyReport rep = verify(g, col);
    emit(report_to_json(g, rep).dump(2), opt.out_path);
    return rep.all() ? 0 : 1;
}

int cmd_validate(const Options& opt) {
    Graph g = load_graph_arg(opt.graph);
    ColorConfig cfg = make_config(opt);
    AdmissibleSequence seq;
    for (const std::string& spec : opt.triples) {
        int e1, e2, k;
        char c1, c2;
        std::istringstream ss(spec);
        if (!(ss >> e1 >> c1 >> e2 >> c2 >> k) || c1 != ',' || c2 != ',')
            throw CLI::ValidationError("--triple expects e1,e2,k");
        seq.triples.emplace_back(g, e1, e2, k); // throws if not admissible
    }
    ValidationTable table = validation_table(g, seq, cfg, opt.trials, opt.seed);
    emit(validation_table_to_json(table).dump(2), opt.out_path);
    return table.pass ? 0 : 1;
}

int cmd_census(const Options& opt) {
    TreeCensus census(std::max(opt.max_n, 1));
    std::ostringstream out;
    out << "n\tt_n\tt_n^(1/n)\n";
    for (auto [n, growth] : census.growth_estimate(opt.max_n))
        out << n << "\t" << census.count_trees(n) << "\t" << growth << "\n";
    emit(out.str(), opt.out_path);
    return 0;
}

int cmd_gf(const Options& opt) {
    RationalSeries s = [&] {
        if (opt.series == "T") return solve_T(opt.order);
        if (opt.series == "B") return series_B(opt.order);
        if (opt.series == "C") return series_C(opt.order);
        throw CLI::ValidationError("--series must be T, B or C");
    }();
    std::ostringstream out;
    for (int n = 0; n <= s.order(); ++n) out << n << ":" << rational_string(s[n]) << "\n";
    emit(out.str(), opt.out_path);
    return 0;
}

int cmd_certify(const Options& opt) {
    RadiusCertificate cert = certify(opt.order);
    if (opt.as_json) {
        emit(certificate_to_json(cert).dump(2), opt.out_path);
    } else {
        std::ostringstream out;
        out.precision(15);
        out << "N = " << cert.order << "\n"
            << "rho_lo = " << static_cast<double>(cert.rho_lo)
            << "  (s = " << static_cast<double>(cert.s_lower) << ")\n"
            << "rho_hi = " << static_cast<double>(cert.rho_hi)
            << "  (s = " << static_cast<double>(cert.s_upper) << ")\n"
            << "e = " << static_cast<double>(cert.e_const)
            << "  b = " << static_cast<double>(cert.b_const) << "\n"
            << "residuals: lower (" << static_cast<double>(cert.resid_lower_value) << ", "
            << static_cast<double>(cert.resid_lower_slope) << "), upper ("
            << static_cast<double>(cert.resid_upper_value) << ", "
            << static_cast<double>(cert.resid_upper_slope) << ")\n"
            << "interval within [0.6677, 0.6678]: " << (cert.interval_in_paper_bounds() ? "yes" : "no");
        emit(out.str(), opt.out_path);
    }
    return cert.ok() ? 0 : 1;
}

int cmd_experiment(const Options& opt) {
    Graph g = load_graph_arg(opt.graph);
    ColorConfig cfg = make_config(opt);
    const long runs = opt.seeds;
    int workers = worker_count();
    std::vector<long> internal(runs, 0);
    std::vector<char> halted(runs, 1);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (long i = w; i < runs; i += workers) {
                ColorConfig local = cfg;
                local.seed = opt.seed + static_cast<std::uint64_t>(i);
                auto [col, stats] = edge_color(g, local);
                internal[i] = stats.forest.internal_count();
                halted[i] = stats.halted ? 1 : 0;
            }
        });
    for (auto& th : pool) th.join();

    std::map<long, long> hist;
    long failures = 0;
    for (long i = 0; i < runs; ++i) {
        ++hist[internal[i]];
        if (!halted[i]) ++failures;
    }
    if (opt.as_json) {
        json rows = json::array();
        for (auto [n, count] : hist)
            rows.push_back({{"n_internal", n},
                            {"count", count},
                            {"frequency", static_cast<double>(count) / runs}});
        emit(json{{"graph", opt.graph},
                  {"runs", runs},
                  {"unhalted", failures},
                  {"histogram", rows}}
                 .dump(2),
             opt.out_path);
    } else {
        std::ostringstream out;
        out << "n_internal\tcount\tfreq\tlog10_freq\n";
        for (auto [n, count] : hist) {
            double freq = static_cast<double>(count) / runs;
            out << n << "\t" << count << "\t" << freq << "\t" << std::log10(freq) << "\n";
        }
        if (failures) out << "# " << failures << " runs hit the recolor cap\n";
        emit(out.str(), opt.out_path);
    }
    return failures == 0 ? 0 : 1;
}

int cmd_corpus(const Options& opt) {
    if (opt.list || opt.corpus_name.empty()) {
        std::ostringstream out;
        for (const auto& name : corpus_names()) {
            Graph g = corpus_graph(name);
            out << name << "\t" << g.vertex_count() << " vertices\t" << g.edge_count()
                << " edges\tmax degree " << g.max_degree() << "\n";
        }
        emit(out.str(), opt.out_path);
        return 0;
    }
    emit(corpus_edge_list(opt.corpus_name), opt.out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"acyclic edge coloring: randomized coloring, validation bounds, tree counts, "
                 "and the growth-rate certificate"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool with_graph) {
        if (with_graph)
            cmd->add_option("--graph", opt.graph, "edge-list/DIMACS file or bundled graph name")
                ->required();
        cmd->add_option("--gamma", opt.gamma, "palette slack (rational or decimal)");
        cmd->add_option("--palette", opt.palette, "palette size override");
        cmd->add_option("--seed", opt.seed, "RNG seed");
        cmd->add_option("-o,--out", opt.out_path, "write output to a file");
    };

    auto* color = app.add_subcommand("color", "run the randomized acyclic edge coloring");
    add_common(color, true);
    color->add_option("--cap", opt.cap, "max Recolor calls");
    color->add_flag("--dump-forest", opt.dump_forest, "include the full witness forest");

    auto* verify_cmd = app.add_subcommand("verify", "check a coloring file against a graph");
    add_common(verify_cmd, true);
    verify_cmd->add_option("--coloring", opt.coloring_path, "coloring JSON")->required();

    auto* validate = app.add_subcommand("validate", "Monte Carlo check of the validation bound");
    add_common(validate, true);
    validate->add_option("--triple", opt.triples, "admissible triple e1,e2,k (repeatable)")
        ->required();
    validate->add_option("--trials", opt.trials, "number of trials");

    auto* census = app.add_subcommand("census", "count unordered trees by brute force");
    census->add_option("--max-n", opt.max_n, "largest node count");
    census->add_option("-o,--out", opt.out_path, "write output to a file");

    auto* gf = app.add_subcommand("gf", "print exact series coefficients");
    gf->add_option("--series", opt.series, "T, B or C");
    gf->add_option("--order", opt.order, "truncation order");
    gf->add_option("-o,--out", opt.out_path, "write output to a file");

    auto* certify_cmd = app.add_subcommand("certify", "certify the tree growth radius interval");
    certify_cmd->add_option("--order", opt.order, "truncation order N (even, >= 20)");
    certify_cmd->add_flag("--json", opt.as_json, "emit the JSON certificate");
    certify_cmd->add_option("-o,--out", opt.out_path, "write output to a file");

    auto* experiment = app.add_subcommand("experiment", "histogram of Recolor counts over seeds");
    add_common(experiment, true);
    experiment->add_option("--seeds", opt.seeds, "number of runs");
    experiment->add_option("--cap", opt.cap, "max Recolor calls per run");
    experiment->add_flag("--json", opt.as_json, "emit JSON instead of TSV");

    auto* corpus_cmd = app.add_subcommand("corpus", "list or dump the bundled graphs");
    corpus_cmd->add_flag("--list", opt.list, "list bundled graph names");
    corpus_cmd->add_option("--name", opt.corpus_name, "dump one graph as an edge list");
    corpus_cmd->add_option("-o,--out", opt.out_path, "write output to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage problems exit 2; --help stays 0
    }

    try {
        if (color->parsed()) return cmd_color(opt);
        if (verify_cmd->parsed()) return cmd_verify(opt);
        if (validate->parsed()) return cmd_validate(opt);
        if (census->parsed()) return cmd_census(opt);
        if (gf->parsed()) return cmd_gf(opt);
        if (certify_cmd->parsed()) return cmd_certify(opt);
        if (experiment->parsed()) return cmd_experiment(opt);
        if (corpus_cmd->parsed()) return cmd_corpus(opt);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
