#include "sirank/centrality.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace sirank {

std::string_view to_string(Measure m) {
    switch (m) {
    case Measure::DC: return "DC";
    case Measure::EC: return "EC";
    case Measure::CC: return "CC";
    case Measure::BC: return "BC";
    case Measure::GC: return "GC";
    case Measure::EVE: return "EVE";
    case Measure::SIR: return "SIR";
    }
    return "?";
}

std::optional<Measure> parse_measure(std::string_view text) {
    std::string upper(text);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (Measure m : {Measure::DC, Measure::EC, Measure::CC, Measure::BC, Measure::GC,
                      Measure::EVE, Measure::SIR}) {
        if (upper == to_string(m)) return m;
    }
    return std::nullopt;
}

ConvergenceError::ConvergenceError(std::size_t iterations, double residual)
    : std::runtime_error("eigenvector power iteration did not converge after " +
                         std::to_string(iterations) + " iterations (residual " +
                         std::to_string(residual) + ")"),
      iterations_(iterations), residual_(residual) {}

ScoreTable degree_centrality(const Graph& g) {
    const std::size_t n = g.node_count();
    if (n < 2) throw std::invalid_argument("degree centrality needs at least two nodes");
    ScoreTable t{Measure::DC, std::nullopt, std::vector<double>(n)};
    const double scale = 1.0 / static_cast<double>(n - 1);
    for (NodeId u = 0; u < n; ++u) t.scores[u] = static_cast<double>(g.degree(u)) * scale;
    return t;
}

ScoreTable eigenvector_centrality(const Graph& g, EigenvectorOptions options) {
    const std::size_t n = g.node_count();
    if (g.edge_count() == 0) throw std::invalid_argument("eigenvector centrality needs an edge");

    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> next(n);
    double residual = 0.0;
    for (std::size_t iter = 1; iter <= options.max_iterations; ++iter) {
        double norm2 = 0.0;
        for (NodeId u = 0; u < n; ++u) {
            double s = x[u];
            for (NodeId v : g.neighbors(u)) s += x[v];
            next[u] = s;
            norm2 += s * s;
        }
        const double inv = 1.0 / std::sqrt(norm2);
        residual = 0.0;
        for (NodeId u = 0; u < n; ++u) {
            next[u] *= inv;
            residual = std::max(residual, std::abs(next[u] - x[u]));
        }
        x.swap(next);
        if (residual < options.tolerance) {
            return {Measure::EC, std::nullopt, std::move(x)};
        }
    }
    throw ConvergenceError(options.max_iterations, residual);
}

ScoreTable closeness_centrality(const Graph& g) {
    const std::size_t n = g.node_count();
    ScoreTable t{Measure::CC, std::nullopt, std::vector<double>(n, 0.0)};
    if (n < 2) return t;
    for (NodeId u = 0; u < n; ++u) {
        DistanceRow row = bfs_distances(g, u);
        std::size_t reached = 0;
        std::uint64_t total = 0;
        for (NodeId v = 0; v < n; ++v) {
            if (auto d = row[v]) {
                ++reached;
                total += *d;
            }
        }
        if (total == 0) continue;
        const double others = static_cast<double>(reached - 1);
        t.scores[u] = (others / static_cast<double>(n - 1)) * (others / static_cast<double>(total));
    }
    return t;
}

ScoreTable betweenness_centrality(const Graph& g) {
    const std::size_t n = g.node_count();
    ScoreTable t{Measure::BC, std::nullopt, std::vector<double>(n, 0.0)};
    if (n < 3) return t;

    std::vector<NodeId> stack;
    std::vector<std::int64_t> dist(n);
    std::vector<double> sigma(n);
    std::vector<double> delta(n);
    stack.reserve(n);

    for (NodeId s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        stack.clear();

        dist[s] = 0;
        sigma[s] = 1.0;
        stack.push_back(s);
        for (std::size_t head = 0; head < stack.size(); ++head) {
            NodeId v = stack[head];
            for (NodeId w : g.neighbors(v)) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    stack.push_back(w);
                }
                if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
            }
        }
        // BFS order doubles as the stack; predecessors are recovered from
        // distances instead of being stored.
        for (std::size_t i = stack.size(); i-- > 1;) {
            NodeId w = stack[i];
            for (NodeId v : g.neighbors(w)) {
                if (dist[v] == dist[w] - 1) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            t.scores[w] += delta[w];
        }
    }

    // Each unordered pair was counted from both ends.
    const double scale = 1.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
    for (auto& s : t.scores) s *= scale;
    return t;
}

ScoreTable gravity_centrality(const Graph& g) {
    constexpr std::int32_t kRadius = 3;
    const std::size_t n = g.node_count();
    const auto shells = k_shell(g);
    ScoreTable t{Measure::GC, std::nullopt, std::vector<double>(n, 0.0)};

    std::vector<std::int32_t> dist(n, -1);
    std::vector<NodeId> visited;
    for (NodeId i = 0; i < n; ++i) {
        visited.clear();
        dist[i] = 0;
        visited.push_back(i);
        double sum = 0.0;
        for (std::size_t head = 0; head < visited.size(); ++head) {
            NodeId u = visited[head];
            if (dist[u] == kRadius) continue;
            for (NodeId v : g.neighbors(u)) {
                if (dist[v] >= 0) continue;
                dist[v] = dist[u] + 1;
                visited.push_back(v);
            }
        }
        // visited is in BFS order: ascending distance, then discovery.
        for (std::size_t k = 1; k < visited.size(); ++k) {
            NodeId j = visited[k];
            const double d = dist[j];
            sum += static_cast<double>(shells[i]) * static_cast<double>(shells[j]) / (d * d);
        }
        t.scores[i] = sum;
        for (NodeId v : visited) dist[v] = -1;
    }
    return t;
}

ScoreTable compute_centrality(const Graph& g, Measure m) {
    switch (m) {
    case Measure::DC: return degree_centrality(g);
    case Measure::EC: return eigenvector_centrality(g);
    case Measure::CC: return closeness_centrality(g);
    case Measure::BC: return betweenness_centrality(g);
    case Measure::GC: return gravity_centrality(g);
    case Measure::EVE:
    case Measure::SIR: break;
    }
    throw std::invalid_argument(std::string(to_string(m)) + " is not a structural centrality");
}

} // namespace sirank
