#include "sirank/eve.hpp"

#include "sirank/detail/parallel.hpp"
#include "sirank/ranking.hpp"

#include <cmath>
#include <string>

namespace sirank {

EveParams::EveParams(double beta, double gamma) : beta_(beta), gamma_(gamma) {
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw std::invalid_argument("beta must lie in [0, 1], got " + std::to_string(beta));
    }
    if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("gamma must lie in (0, 1], got " + std::to_string(gamma));
    }
}

double eve_score(std::span<const std::int32_t> hops, const EveParams& p) {
    std::vector<std::size_t> shell_sizes;
    for (auto d : hops) {
        if (d == DistanceRow::kUnreachable) continue;
        if (static_cast<std::size_t>(d) >= shell_sizes.size()) shell_sizes.resize(d + 1, 0);
        ++shell_sizes[d];
    }
    // Every node at distance h contributes the same term, so adding it
    // count-many times is the (distance, index) order term by term.
    const double r = p.ratio();
    double score = 0.0;
    for (std::size_t h = 0; h < shell_sizes.size(); ++h) {
        const double term = std::pow(r, static_cast<double>(h));
        for (std::size_t k = 0; k < shell_sizes[h]; ++k) score += term;
    }
    return score;
}

double eve_score(const DistanceRow& row, const EveParams& p) { return eve_score(row.hops(), p); }

ScoreTable eve_scores(const Graph& g, const EveParams& p) {
    ScoreTable t{Measure::EVE, p.rates(), std::vector<double>(g.node_count())};
    detail::parallel_for(g.node_count(), [&](std::size_t u) {
        t.scores[u] = eve_score(bfs_distances(g, static_cast<NodeId>(u)), p);
    });
    return t;
}

std::vector<NodeId> eve_rank(const Graph& g, const EveParams& p) {
    return score_to_ranklist(eve_scores(g, p), g.labels()).order;
}

} // namespace sirank
