#pragma once

#include "sirank/graph.hpp"
#include "sirank/random.hpp"
#include "sirank/score_table.hpp"

#include <cstdint>
#include <stdexcept>

namespace sirank {

/// A run exceeded the step cap (100 * n steps). Indicates a simulator bug
/// rather than bad input.
class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SirConfig {
    double beta = 0.1;
    double gamma = 1.0;
    std::uint32_t runs = 1000;
    std::uint64_t base_seed = 0;

    /// Throws std::invalid_argument unless 0 <= beta <= 1, 0 < gamma <= 1 and
    /// runs >= 1.
    void validate() const;
};

struct SirResult {
    NodeId seed_node = 0;
    double mean_influence = 0.0;
    /// Sample standard deviation (n - 1 denominator); 0 for a single run.
    double std_influence = 0.0;
    std::uint32_t runs = 0;
};

/// One synchronous discrete-time SIR outbreak from a single infected seed.
///
/// Each step, every node infected at the start of the step tries each
/// still-susceptible neighbour once (success if a uniform draw < beta), then
/// recovers if a further draw < gamma. Nodes infected during a step act from
/// the next step on. Returns the number of recovered nodes once no infected
/// node remains, the seed included.
std::uint32_t sir_single_run(const Graph& g, NodeId seed_node, double beta, double gamma,
                             RandomStream& rng);

/// Mean and spread of `cfg.runs` outbreaks seeded at `seed_node`; run r uses
/// RandomStream::for_run(cfg.base_seed, seed_node, r).
SirResult sir_influence(const Graph& g, NodeId seed_node, const SirConfig& cfg);

/// sir_influence for every node.
std::vector<SirResult> sir_results(const Graph& g, const SirConfig& cfg);

/// Mean influences as a ScoreTable (measure = SIR).
ScoreTable sir_score_table(const Graph& g, const SirConfig& cfg);
ScoreTable to_score_table(const std::vector<SirResult>& results, const SirConfig& cfg);

} // namespace sirank
