#pragma once

#include "sirank/graph.hpp"
#include "sirank/score_table.hpp"

#include <stdexcept>

namespace sirank {

/// Power iteration did not settle within the iteration budget.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(std::size_t iterations, double residual);

    std::size_t iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    std::size_t iterations_;
    double residual_;
};

/// deg(u) / (n - 1). Requires n >= 2.
ScoreTable degree_centrality(const Graph& g);

struct EigenvectorOptions {
    double tolerance = 1e-8;
    std::size_t max_iterations = 10'000;
};

/// Principal eigenvector of the adjacency matrix, unit Euclidean norm.
///
/// Iterates x <- (A + I) x / |(A + I) x| from the uniform vector. The shift
/// leaves the eigenvectors unchanged and makes the leading eigenvalue strictly
/// dominant on bipartite graphs, where plain A-iteration oscillates. Stops when
/// successive iterates differ by less than `tolerance` in max-norm.
ScoreTable eigenvector_centrality(const Graph& g, EigenvectorOptions options = {});

/// Component-scaled closeness: ((r-1)/(n-1)) * ((r-1)/sum of distances to the
/// r-1 other reachable nodes). Isolated nodes score 0.
ScoreTable closeness_centrality(const Graph& g);

/// Exact shortest-path betweenness (Brandes accumulation) normalised by
/// (n-1)(n-2)/2 unordered pairs. All zeros when n < 3.
ScoreTable betweenness_centrality(const Graph& g);

/// Gravity score: sum over nodes j within three hops of
/// ks(i) * ks(j) / d(i, j)^2, ks being the k-shell index.
ScoreTable gravity_centrality(const Graph& g);

/// Dispatches on `m` for the five structural measures. Throws
/// std::invalid_argument for EVE and SIR, which need spreading parameters.
ScoreTable compute_centrality(const Graph& g, Measure m);

} // namespace sirank
