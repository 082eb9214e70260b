#pragma once

#include "sirank/graph.hpp"
#include "sirank/ranking.hpp"
#include "sirank/score_table.hpp"
#include "sirank/sir.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sirank {

inline constexpr std::string_view kVersion = "0.1.0";

/// Input data that is well-formed text but inconsistent (e.g. a SIR table
/// that does not cover the graph).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Configuration failed validation. what() lists every offending field.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    std::vector<std::string> problems_;
};

// -----------------------------------------------------------------------------
// CSV
// -----------------------------------------------------------------------------

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// `node,score`, best first (score_to_ranklist order).
void write_scores_csv(std::ostream& out, const ScoreTable& scores, const Graph& g);
/// Inverse of write_scores_csv; rows may appear in any order.
ScoreTable read_scores_csv(std::istream& in, const Graph& g, Measure measure);

/// `node,mean_influence,std_influence,runs`, in node index order.
void write_sir_csv(std::ostream& out, const std::vector<SirResult>& results, const Graph& g);
/// Throws DataError if any graph node is missing from the file or the file
/// names a node the graph does not have.
std::vector<SirResult> read_sir_csv(std::istream& in, const Graph& g);

/// `measure,tau,monotonicity,top_k_overlap,k`.
void write_eval_csv(std::ostream& out, const std::vector<EvalReport>& reports);

struct FigureSeries {
    Measure measure;
    std::vector<std::pair<std::size_t, double>> points;
};

/// `measure,rank_index,sir_score`.
void write_figure_csv(std::ostream& out, const std::vector<FigureSeries>& series);

/// 64-bit FNV-1a over a byte string; used as the graph content hash.
std::uint64_t content_hash(std::string_view bytes);
std::string hex64(std::uint64_t value);

// -----------------------------------------------------------------------------
// Pipeline
// -----------------------------------------------------------------------------

struct ExperimentConfig {
    std::vector<std::filesystem::path> graph_paths;
    std::vector<RateParams> settings;
    std::uint32_t runs = 1000;
    std::uint64_t base_seed = 1;
    std::vector<Measure> measures;
    double top_fraction = 0.05;
    std::filesystem::path output_dir;
    /// Wall-clock times make the manifest differ between runs, so they are
    /// opt-in.
    bool record_timestamps = false;

    /// Throws ConfigError naming each invalid field.
    void validate() const;
};

/// Parses the flat `key = value` config format (see README). Relative graph
/// and output paths resolve against `base_dir`. Throws ConfigError.
ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Computes every measure, evaluation and figure series for one graph and
/// SIR table. Measures needing spreading parameters use `rates`.
struct Evaluation {
    std::vector<ScoreTable> tables;
    std::vector<EvalReport> reports;
    std::vector<FigureSeries> series;
};
Evaluation evaluate_measures(const Graph& g, const ScoreTable& sir, const std::vector<Measure>& measures,
                             const std::optional<RateParams>& rates, double top_fraction);

struct PipelineSummary {
    std::size_t sir_computed = 0;
    std::size_t sir_cached = 0;
    std::vector<std::filesystem::path> eval_files;
};

/// Runs every (dataset, setting) pair and writes the output tree. Progress
/// lines go to `log`.
PipelineSummary run_pipeline(const ExperimentConfig& cfg, std::ostream& log);

} // namespace sirank
