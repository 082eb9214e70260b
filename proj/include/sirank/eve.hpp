#pragma once

#include "sirank/graph.hpp"
#include "sirank/score_table.hpp"

#include <vector>

namespace sirank {

/// Spreading parameters accepted by the expected-influence estimator.
/// Invariants: 0 <= beta <= 1, 0 < gamma <= 1.
class EveParams {
public:
    /// Throws std::invalid_argument when either probability is out of range.
    EveParams(double beta, double gamma);

    double beta() const noexcept { return beta_; }
    double gamma() const noexcept { return gamma_; }
    /// Expected transmissions along one edge, beta / gamma.
    double ratio() const noexcept { return beta_ / gamma_; }
    /// beta > gamma: per-hop contribution exceeds one. Still computed as-is.
    bool ratio_exceeds_one() const noexcept { return beta_ > gamma_; }

    RateParams rates() const noexcept { return {beta_, gamma_}; }

private:
    double beta_;
    double gamma_;
};

/// Expected influence of `row.source()` from its hop distances:
/// sum over reachable v (the source included) of ratio^d(source, v).
///
/// Terms are added in ascending distance, then ascending node index, so two
/// rows holding the same distances give bit-identical results.
double eve_score(const DistanceRow& row, const EveParams& p);

/// Same accumulation over a bare distance vector, kUnreachable marking
/// unreachable nodes. Lets independent distance sources feed the estimator.
double eve_score(std::span<const std::int32_t> hops, const EveParams& p);

/// Score of every node. Rows are computed one source at a time, so memory
/// stays O(n + m).
ScoreTable eve_scores(const Graph& g, const EveParams& p);

/// All nodes, descending by score; ties in ascending label order.
std::vector<NodeId> eve_rank(const Graph& g, const EveParams& p);

} // namespace sirank
