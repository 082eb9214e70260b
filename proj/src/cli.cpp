#include "sirank/cli.hpp"

#include "sirank/centrality.hpp"
#include "sirank/eve.hpp"
#include "sirank/experiment.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace sirank {

namespace {

namespace fs = std::filesystem;

// Thrown for flag combinations CLI11 cannot express on its own.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Measure require_measure(const std::string& text) {
    auto m = parse_measure(text);
    if (!m) throw UsageError("unknown measure '" + text + "'");
    return *m;
}

// Writes to `path`, or to `out` when the path is empty.
template <typename Emit>
void emit_to(const std::string& path, std::ostream& out, Emit&& emit) {
    if (path.empty()) {
        emit(out);
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot write '" + path + "'");
    emit(file);
}

Graph load_graph(const std::string& path, std::ostream& err) {
    ParsedGraph parsed = load_edge_list(path);
    const auto& s = parsed.summary;
    if (s.self_loops_dropped || s.duplicate_edges || s.extra_token_lines) {
        err << "note: " << path << ": dropped " << s.self_loops_dropped << " self-loop(s), collapsed "
            << s.duplicate_edges << " duplicate edge(s), ignored extra tokens on "
            << s.extra_token_lines << " line(s)\n";
    }
    return std::move(parsed.graph);
}

EveParams eve_params(const std::optional<double>& beta, const std::optional<double>& gamma,
                     std::ostream& err) {
    if (!beta || !gamma) throw UsageError("EVE requires --beta and --gamma");
    std::optional<EveParams> params;
    try {
        params.emplace(*beta, *gamma);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const EveParams& p = *params;
    if (p.ratio_exceeds_one()) err << "warning: beta > gamma, per-hop contributions exceed 1\n";
    return p;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Node influence ranking under the SIR model", "sirank"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    std::string graph_path;
    std::string output;
    std::optional<double> beta;
    std::optional<double> gamma;

    auto* rank = app.add_subcommand("rank", "Score and rank nodes by one measure");
    std::string rank_measure;
    rank->add_option("--graph", graph_path, "Edge-list file")->required();
    rank->add_option("--measure", rank_measure, "dc, ec, cc, bc, gc or eve")->required();
    rank->add_option("--beta", beta, "Infection probability (EVE only)");
    rank->add_option("--gamma", gamma, "Recovery probability (EVE only)");
    rank->add_option("--output", output, "Output CSV (default: stdout)");

    auto* sir = app.add_subcommand("sir", "Monte Carlo SIR influence of every node");
    std::uint32_t runs = 1000;
    std::uint64_t seed = 1;
    sir->add_option("--graph", graph_path, "Edge-list file")->required();
    sir->add_option("--beta", beta, "Infection probability")->required();
    sir->add_option("--gamma", gamma, "Recovery probability")->required();
    sir->add_option("--runs", runs, "Simulations per node")->capture_default_str();
    sir->add_option("--seed", seed, "Base random seed")->capture_default_str();
    sir->add_option("--output", output, "Output CSV (default: stdout)");

    auto* eval = app.add_subcommand("eval", "Evaluate measures against a SIR table");
    std::string sir_csv;
    std::vector<std::string> eval_measures;
    double top_fraction = 0.05;
    eval->add_option("--graph", graph_path, "Edge-list file")->required();
    eval->add_option("--sir-csv", sir_csv, "SIR table written by `sirank sir`")->required();
    eval->add_option("--measure", eval_measures, "Measures to evaluate (comma separated; sir = sanity row)")
        ->delimiter(',')
        ->required();
    eval->add_option("--beta", beta, "Infection probability (EVE only)");
    eval->add_option("--gamma", gamma, "Recovery probability (EVE only)");
    eval->add_option("--top-fraction", top_fraction, "Top share compared for overlap")->capture_default_str();
    eval->add_option("--output", output, "Directory for eval.csv and figure_data.csv")->required();

    auto* pipeline = app.add_subcommand("pipeline", "Run a full experiment from a config file");
    std::string config_path;
    pipeline->add_option("--config", config_path, "Experiment config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*rank) {
            const Measure m = require_measure(rank_measure);
            if (m == Measure::SIR) throw UsageError("use the sir subcommand for SIR scores");
            if (m != Measure::EVE && (beta || gamma)) {
                throw UsageError("--beta/--gamma apply only to --measure eve");
            }
            std::optional<EveParams> params;
            if (m == Measure::EVE) params = eve_params(beta, gamma, err);
            const Graph g = load_graph(graph_path, err);
            const ScoreTable t = params ? eve_scores(g, *params) : compute_centrality(g, m);
            emit_to(output, out, [&](std::ostream& o) { write_scores_csv(o, t, g); });
        } else if (*sir) {
            const SirConfig cfg{*beta, *gamma, runs, seed};
            try {
                cfg.validate();
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            const Graph g = load_graph(graph_path, err);
            const auto results = sir_results(g, cfg);
            emit_to(output, out, [&](std::ostream& o) { write_sir_csv(o, results, g); });
        } else if (*eval) {
            std::vector<Measure> measures;
            for (const auto& text : eval_measures) measures.push_back(require_measure(text));
            const bool wants_eve = std::find(measures.begin(), measures.end(), Measure::EVE) != measures.end();
            std::optional<RateParams> rates;
            if (wants_eve) rates = eve_params(beta, gamma, err).rates();
            if (!(top_fraction > 0.0 && top_fraction <= 1.0)) throw UsageError("--top-fraction must lie in (0, 1]");

            const Graph g = load_graph(graph_path, err);
            std::ifstream in(sir_csv);
            if (!in) throw std::runtime_error("cannot open SIR table '" + sir_csv + "'");
            const auto results = read_sir_csv(in, g);
            ScoreTable sir_table{Measure::SIR, std::nullopt, {}};
            for (const auto& r : results) sir_table.scores.push_back(r.mean_influence);

            const Evaluation ev = evaluate_measures(g, sir_table, measures, rates, top_fraction);
            fs::create_directories(output);
            emit_to((fs::path(output) / "eval.csv").string(), out,
                    [&](std::ostream& o) { write_eval_csv(o, ev.reports); });
            emit_to((fs::path(output) / "figure_data.csv").string(), out,
                    [&](std::ostream& o) { write_figure_csv(o, ev.series); });
            write_eval_csv(out, ev.reports);
        } else if (*pipeline) {
            const ExperimentConfig cfg = load_config(config_path);
            const PipelineSummary s = run_pipeline(cfg, err);
            out << "wrote " << s.eval_files.size() << " evaluation table(s) to " << cfg.output_dir.string()
                << " (SIR computed " << s.sir_computed << ", cached " << s.sir_cached << ")\n";
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SimulationError& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    } catch (const ConvergenceError& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    } catch (const std::exception& e) {
        // Parse, data, validation and I/O failures.
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitOk;
}

} // namespace sirank
