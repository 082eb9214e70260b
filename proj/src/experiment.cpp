#include "sirank/experiment.hpp"

#include "sirank/centrality.hpp"
#include "sirank/eve.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace sirank {

namespace fs = std::filesystem;

namespace {

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
    text = trim(text);
    if (text.empty()) return false;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << contents;
}

// Reads a CSV whose first line must equal `header`; returns the data rows
// split on commas.
std::vector<std::vector<std::string>> read_csv(std::istream& in, std::string_view header,
                                               std::size_t columns) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != header) {
        throw DataError("expected CSV header '" + std::string(header) + "'");
    }
    std::vector<std::vector<std::string>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split(line, ',');
        if (fields.size() != columns) {
            throw DataError("CSV line " + std::to_string(line_no) + ": expected " +
                            std::to_string(columns) + " fields");
        }
        rows.emplace_back(fields.begin(), fields.end());
    }
    return rows;
}

NodeId require_node(const Graph& g, const std::string& label) {
    auto id = g.find(label);
    if (!id) throw DataError("CSV names node '" + label + "' which is not in the graph");
    return *id;
}

double require_double(const std::string& text) {
    double v = 0.0;
    if (!parse_number(text, v)) throw DataError("malformed number '" + text + "'");
    return v;
}

std::string missing_nodes_message(const Graph& g, const std::vector<bool>& seen) {
    std::vector<std::string> missing;
    std::size_t count = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (seen[u]) continue;
        if (missing.size() < 10) missing.push_back(g.label(u));
        ++count;
    }
    std::string msg = "SIR table is missing " + std::to_string(count) + " node(s): " + join(missing, ", ");
    if (count > missing.size()) msg += ", ...";
    return msg;
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error("invalid configuration: " + join(problems, "; ")),
      problems_(std::move(problems)) {}

// -----------------------------------------------------------------------------

std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

void write_scores_csv(std::ostream& out, const ScoreTable& scores, const Graph& g) {
    RankList r = score_to_ranklist(scores, g.labels());
    out << "node,score\n";
    for (NodeId u : r.order) out << g.label(u) << ',' << format_double(scores[u]) << '\n';
}

ScoreTable read_scores_csv(std::istream& in, const Graph& g, Measure measure) {
    ScoreTable t{measure, std::nullopt, std::vector<double>(g.node_count(), 0.0)};
    std::vector<bool> seen(g.node_count(), false);
    for (const auto& row : read_csv(in, "node,score", 2)) {
        NodeId u = require_node(g, row[0]);
        t.scores[u] = require_double(row[1]);
        seen[u] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw DataError("score table does not cover every node");
    }
    return t;
}

void write_sir_csv(std::ostream& out, const std::vector<SirResult>& results, const Graph& g) {
    out << "node,mean_influence,std_influence,runs\n";
    for (const auto& r : results) {
        out << g.label(r.seed_node) << ',' << format_double(r.mean_influence) << ','
            << format_double(r.std_influence) << ',' << r.runs << '\n';
    }
}

std::vector<SirResult> read_sir_csv(std::istream& in, const Graph& g) {
    std::vector<SirResult> results(g.node_count());
    std::vector<bool> seen(g.node_count(), false);
    for (const auto& row : read_csv(in, "node,mean_influence,std_influence,runs", 4)) {
        NodeId u = require_node(g, row[0]);
        if (seen[u]) throw DataError("SIR table lists node '" + row[0] + "' twice");
        std::uint32_t runs = 0;
        if (!parse_number(row[3], runs)) throw DataError("malformed run count '" + row[3] + "'");
        results[u] = {u, require_double(row[1]), require_double(row[2]), runs};
        seen[u] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw DataError(missing_nodes_message(g, seen));
    }
    return results;
}

void write_eval_csv(std::ostream& out, const std::vector<EvalReport>& reports) {
    out << "measure,tau,monotonicity,top_k_overlap,k\n";
    for (const auto& r : reports) {
        out << to_string(r.measure) << ',' << format_double(r.tau) << ','
            << format_double(r.monotonicity) << ',' << r.top_k_overlap << ',' << r.k << '\n';
    }
}

void write_figure_csv(std::ostream& out, const std::vector<FigureSeries>& series) {
    out << "measure,rank_index,sir_score\n";
    for (const auto& s : series) {
        for (auto [index, score] : s.points) {
            out << to_string(s.measure) << ',' << index << ',' << format_double(score) << '\n';
        }
    }
}

std::uint64_t content_hash(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    std::ostringstream s;
    s << std::hex << std::setw(16) << std::setfill('0') << value;
    return s.str();
}

// -----------------------------------------------------------------------------

void ExperimentConfig::validate() const {
    std::vector<std::string> problems;
    if (graph_paths.empty()) problems.emplace_back("graph: at least one graph file is required");
    if (settings.empty()) problems.emplace_back("setting: at least one (beta, gamma) pair is required");
    for (const auto& s : settings) {
        if (!(s.beta >= 0.0 && s.beta <= 1.0)) {
            problems.push_back("setting: beta " + format_double(s.beta) + " outside [0, 1]");
        }
        if (!(s.gamma > 0.0 && s.gamma <= 1.0)) {
            problems.push_back("setting: gamma " + format_double(s.gamma) + " outside (0, 1]");
        }
    }
    if (runs < 1) problems.emplace_back("runs: must be at least 1");
    if (measures.empty()) problems.emplace_back("measures: at least one measure is required");
    for (Measure m : measures) {
        if (m == Measure::SIR) problems.emplace_back("measures: SIR is the ground truth, not a measure");
    }
    if (!(top_fraction > 0.0 && top_fraction <= 1.0)) {
        problems.emplace_back("top_fraction: must lie in (0, 1]");
    }
    if (output_dir.empty()) problems.emplace_back("output_dir: required");
    if (!problems.empty()) throw ConfigError(std::move(problems));
}

ExperimentConfig parse_config(std::istream& in, const fs::path& base_dir) {
    ExperimentConfig cfg;
    std::vector<std::string> problems;
    bool measures_set = false;
    bool settings_set = false;

    auto resolve = [&](std::string_view value) {
        fs::path p{std::string(value)};
        return p.is_absolute() ? p : base_dir / p;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') continue;
        const auto eq = view.find('=');
        const std::string where = "line " + std::to_string(line_no);
        if (eq == std::string_view::npos) {
            problems.push_back(where + ": expected 'key = value'");
            continue;
        }
        const std::string key(trim(view.substr(0, eq)));
        const std::string_view value = trim(view.substr(eq + 1));

        if (key == "graph") {
            cfg.graph_paths.push_back(resolve(value));
        } else if (key == "setting") {
            std::string text(value);
            std::replace(text.begin(), text.end(), ',', ' ');
            std::istringstream fields(text);
            std::string b, g, extra;
            RateParams s;
            if (!(fields >> b >> g) || (fields >> extra) || !parse_number(b, s.beta) ||
                !parse_number(g, s.gamma)) {
                problems.push_back(where + ": setting expects 'beta gamma'");
                continue;
            }
            if (!settings_set) cfg.settings.clear();
            settings_set = true;
            cfg.settings.push_back(s);
        } else if (key == "runs") {
            if (!parse_number(value, cfg.runs)) problems.push_back(where + ": runs must be a positive integer");
        } else if (key == "seed") {
            if (!parse_number(value, cfg.base_seed)) problems.push_back(where + ": seed must be an unsigned integer");
        } else if (key == "measures") {
            measures_set = true;
            cfg.measures.clear();
            for (auto token : split(value, ',')) {
                if (auto m = parse_measure(token)) {
                    cfg.measures.push_back(*m);
                } else {
                    problems.push_back(where + ": unknown measure '" + std::string(token) + "'");
                }
            }
        } else if (key == "top_fraction") {
            if (!parse_number(value, cfg.top_fraction)) problems.push_back(where + ": top_fraction must be a number");
        } else if (key == "output_dir") {
            cfg.output_dir = resolve(value);
        } else if (key == "record_timestamps") {
            if (value == "true") cfg.record_timestamps = true;
            else if (value == "false") cfg.record_timestamps = false;
            else problems.push_back(where + ": record_timestamps must be true or false");
        } else {
            problems.push_back(where + ": unknown key '" + key + "'");
        }
    }

    if (!settings_set) cfg.settings = {{0.1, 1.0}, {0.05, 1.0}, {0.05, 0.25}};
    if (!measures_set) {
        cfg.measures = {Measure::DC, Measure::EC, Measure::CC, Measure::BC, Measure::GC, Measure::EVE};
    }
    if (!problems.empty()) throw ConfigError(std::move(problems));
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path.string() + "'");
    return parse_config(in, path.parent_path());
}

// -----------------------------------------------------------------------------

Evaluation evaluate_measures(const Graph& g, const ScoreTable& sir, const std::vector<Measure>& measures,
                             const std::optional<RateParams>& rates, double top_fraction) {
    Evaluation ev;
    for (Measure m : measures) {
        ScoreTable table;
        if (m == Measure::EVE) {
            if (!rates) throw std::invalid_argument("EVE needs beta and gamma");
            table = eve_scores(g, EveParams(rates->beta, rates->gamma));
        } else if (m == Measure::SIR) {
            table = sir;
        } else {
            table = compute_centrality(g, m);
        }
        ev.reports.push_back(evaluate(table, sir, g.labels(), top_fraction));
        ev.series.push_back({m, rank_index_series(score_to_ranklist(table, g.labels()), sir)});
        ev.tables.push_back(std::move(table));
    }
    return ev;
}

namespace {

std::string setting_name(const RateParams& s) {
    return "beta" + format_double(s.beta) + "_gamma" + format_double(s.gamma);
}

std::string cache_key(std::uint64_t graph_hash, const RateParams& s, std::uint32_t runs, std::uint64_t seed) {
    std::ostringstream k;
    k << "graph_hash=" << hex64(graph_hash) << '\n'
      << "beta=" << format_double(s.beta) << '\n'
      << "gamma=" << format_double(s.gamma) << '\n'
      << "runs=" << runs << '\n'
      << "seed=" << seed << '\n';
    return k.str();
}

std::string timestamp_now() {
    auto now = std::chrono::system_clock::now();
    auto t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

} // namespace

PipelineSummary run_pipeline(const ExperimentConfig& cfg, std::ostream& log) {
    cfg.validate();
    PipelineSummary summary;
    nlohmann::ordered_json manifest;
    manifest["toolkit"] = "sirank";
    manifest["version"] = std::string(kVersion);
    if (cfg.record_timestamps) manifest["started_at"] = timestamp_now();

    auto& echo = manifest["config"];
    for (const auto& p : cfg.graph_paths) echo["graph"].push_back(p.string());
    for (const auto& s : cfg.settings) echo["settings"].push_back({s.beta, s.gamma});
    echo["runs"] = cfg.runs;
    echo["seed"] = cfg.base_seed;
    for (Measure m : cfg.measures) echo["measures"].push_back(std::string(to_string(m)));
    echo["top_fraction"] = cfg.top_fraction;
    echo["output_dir"] = cfg.output_dir.string();

    fs::create_directories(cfg.output_dir);
    std::set<std::string> used_names;
    for (const auto& path : cfg.graph_paths) {
        const std::string bytes = read_file(path);
        const std::uint64_t hash = content_hash(bytes);
        ParsedGraph parsed = parse_edge_list(std::string_view(bytes));
        const Graph& g = parsed.graph;
        const GraphStats stats = graph_stats(g);

        std::string name = path.stem().string();
        for (int i = 2; !used_names.insert(name).second; ++i) name = path.stem().string() + "_" + std::to_string(i);
        const fs::path dataset_dir = cfg.output_dir / name;
        fs::create_directories(dataset_dir);
        log << name << ": n=" << stats.n << " m=" << stats.m << '\n';

        nlohmann::ordered_json entry;
        entry["name"] = name;
        entry["path"] = path.string();
        entry["content_hash"] = hex64(hash);
        entry["n"] = stats.n;
        entry["m"] = stats.m;
        entry["mean_degree"] = stats.mean_degree;
        entry["max_degree"] = stats.max_degree;
        entry["density"] = stats.density;
        entry["self_loops_dropped"] = parsed.summary.self_loops_dropped;
        entry["duplicate_edges"] = parsed.summary.duplicate_edges;
        entry["extra_token_lines"] = parsed.summary.extra_token_lines;

        for (const auto& setting : cfg.settings) {
            const fs::path dir = dataset_dir / setting_name(setting);
            fs::create_directories(dir);
            const SirConfig sir_cfg{setting.beta, setting.gamma, cfg.runs, cfg.base_seed};
            const std::string key = cache_key(hash, setting, cfg.runs, cfg.base_seed);
            const fs::path sir_path = dir / "sir.csv";
            const fs::path key_path = dir / "sir.key";

            std::vector<SirResult> results;
            bool cached = false;
            if (fs::exists(sir_path) && fs::exists(key_path) && read_file(key_path) == key) {
                try {
                    std::ifstream in(sir_path);
                    results = read_sir_csv(in, g);
                    cached = true;
                } catch (const DataError&) {
                    cached = false;
                }
            }
            if (cached) {
                ++summary.sir_cached;
                log << "  " << setting_name(setting) << ": reusing cached SIR table\n";
            } else {
                log << "  " << setting_name(setting) << ": simulating " << cfg.runs << " runs per node\n";
                results = sir_results(g, sir_cfg);
                std::ostringstream csv;
                write_sir_csv(csv, results, g);
                write_file(sir_path, csv.str());
                write_file(key_path, key);
                ++summary.sir_computed;
            }

            const ScoreTable sir = to_score_table(results, sir_cfg);
            Evaluation ev = evaluate_measures(g, sir, cfg.measures, setting, cfg.top_fraction);
            for (const auto& table : ev.tables) {
                std::ostringstream csv;
                write_scores_csv(csv, table, g);
                write_file(dir / ("scores_" + std::string(to_string(table.measure)) + ".csv"), csv.str());
            }
            std::ostringstream eval_csv;
            write_eval_csv(eval_csv, ev.reports);
            write_file(dir / "eval.csv", eval_csv.str());
            std::ostringstream fig_csv;
            write_figure_csv(fig_csv, ev.series);
            write_file(dir / "figure_data.csv", fig_csv.str());
            summary.eval_files.push_back(dir / "eval.csv");
        }
        manifest["datasets"].push_back(std::move(entry));
    }

    if (cfg.record_timestamps) manifest["finished_at"] = timestamp_now();
    write_file(cfg.output_dir / "manifest.json", manifest.dump(2) + "\n");
    return summary;
}

} // namespace sirank
