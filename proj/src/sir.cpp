#include "sirank/sir.hpp"

#include "sirank/detail/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sirank {

void SirConfig::validate() const {
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw std::invalid_argument("beta must lie in [0, 1], got " + std::to_string(beta));
    }
    if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("gamma must lie in (0, 1], got " + std::to_string(gamma));
    }
    if (runs < 1) throw std::invalid_argument("runs must be at least 1");
}

namespace {

enum class State : std::uint8_t { Susceptible, Infected, Recovered };

// Scratch buffers reused across runs on one thread.
struct Workspace {
    std::vector<State> state;
    std::vector<NodeId> infected;
    std::vector<NodeId> next;
    std::vector<NodeId> newly;
    std::vector<NodeId> touched;

    void reset() {
        for (NodeId v : touched) state[v] = State::Susceptible;
        touched.clear();
        infected.clear();
        next.clear();
    }
};

std::uint32_t run_outbreak(const Graph& g, NodeId seed_node, double beta, double gamma,
                           RandomStream& rng, Workspace& ws) {
    const std::size_t step_cap = 100 * g.node_count();
    ws.reset();
    ws.state[seed_node] = State::Infected;
    ws.touched.push_back(seed_node);
    ws.infected.push_back(seed_node);

    std::uint32_t recovered = 0;
    std::size_t steps = 0;
    while (!ws.infected.empty()) {
        if (++steps > step_cap) {
            throw SimulationError("SIR run from node " + std::to_string(seed_node) +
                                  " exceeded the step cap of " + std::to_string(step_cap));
        }
        ws.next.clear();
        ws.newly.clear();
        for (NodeId u : ws.infected) {
            for (NodeId v : g.neighbors(u)) {
                if (ws.state[v] != State::Susceptible) continue;
                if (rng.uniform() < beta) {
                    ws.state[v] = State::Infected;
                    ws.touched.push_back(v);
                    ws.newly.push_back(v);
                }
            }
            if (rng.uniform() < gamma) {
                ws.state[u] = State::Recovered;
                ++recovered;
            } else {
                ws.next.push_back(u);
            }
        }
        ws.next.insert(ws.next.end(), ws.newly.begin(), ws.newly.end());
        ws.infected.swap(ws.next);
    }
    return recovered;
}

SirResult influence_with(const Graph& g, NodeId seed_node, const SirConfig& cfg, Workspace& ws) {
    // Influences are integers, so exact integer sums make the moments
    // independent of accumulation order.
    std::uint64_t sum = 0;
    std::uint64_t sum_sq = 0;
    for (std::uint32_t r = 0; r < cfg.runs; ++r) {
        RandomStream rng = RandomStream::for_run(cfg.base_seed, seed_node, r);
        const std::uint64_t x = run_outbreak(g, seed_node, cfg.beta, cfg.gamma, rng, ws);
        sum += x;
        sum_sq += x * x;
    }
    const double runs = cfg.runs;
    const double mean = static_cast<double>(sum) / runs;
    double var = 0.0;
    if (cfg.runs > 1) {
        const double centered = static_cast<double>(sum_sq) - static_cast<double>(sum) * mean;
        var = std::max(0.0, centered / (runs - 1.0));
    }
    return {seed_node, mean, std::sqrt(var), cfg.runs};
}

Workspace make_workspace(const Graph& g) {
    Workspace ws;
    ws.state.assign(g.node_count(), State::Susceptible);
    return ws;
}

} // namespace

std::uint32_t sir_single_run(const Graph& g, NodeId seed_node, double beta, double gamma,
                             RandomStream& rng) {
    if (seed_node >= g.node_count()) throw std::out_of_range("seed node not in graph");
    Workspace ws = make_workspace(g);
    return run_outbreak(g, seed_node, beta, gamma, rng, ws);
}

SirResult sir_influence(const Graph& g, NodeId seed_node, const SirConfig& cfg) {
    cfg.validate();
    if (seed_node >= g.node_count()) throw std::out_of_range("seed node not in graph");
    Workspace ws = make_workspace(g);
    return influence_with(g, seed_node, cfg, ws);
}

std::vector<SirResult> sir_results(const Graph& g, const SirConfig& cfg) {
    cfg.validate();
    std::vector<SirResult> results(g.node_count());
    detail::parallel_for(results.size(), [&](std::size_t u) {
        Workspace ws = make_workspace(g);
        results[u] = influence_with(g, static_cast<NodeId>(u), cfg, ws);
    });
    return results;
}

ScoreTable to_score_table(const std::vector<SirResult>& results, const SirConfig& cfg) {
    ScoreTable t{Measure::SIR, RateParams{cfg.beta, cfg.gamma}, {}};
    t.scores.reserve(results.size());
    for (const auto& r : results) t.scores.push_back(r.mean_influence);
    return t;
}

ScoreTable sir_score_table(const Graph& g, const SirConfig& cfg) {
    return to_score_table(sir_results(g, cfg), cfg);
}

} // namespace sirank
