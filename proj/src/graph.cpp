#include "sirank/graph.hpp"

#include "sirank/detail/parallel.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

namespace sirank {

Graph::Graph(std::vector<std::string> labels, std::span<const std::pair<NodeId, NodeId>> edges)
    : labels_(std::move(labels)) {
    const std::size_t n = labels_.size();
    index_.reserve(n);
    for (NodeId u = 0; u < n; ++u) {
        if (!index_.emplace(labels_[u], u).second) {
            throw std::invalid_argument("duplicate node label '" + labels_[u] + "'");
        }
    }

    std::vector<std::vector<NodeId>> adj(n);
    for (auto [u, v] : edges) {
        if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
        if (u == v) continue;
        adj[u].push_back(v);
        adj[v].push_back(u);
    }

    offsets_.assign(n + 1, 0);
    for (NodeId u = 0; u < n; ++u) {
        auto& list = adj[u];
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        offsets_[u + 1] = offsets_[u] + list.size();
    }
    targets_.reserve(offsets_[n]);
    for (auto& list : adj) targets_.insert(targets_.end(), list.begin(), list.end());
}

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges) {
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
    return Graph(std::move(labels), edges);
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<NodeId> Graph::find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(edge_count());
    for (NodeId u = 0; u < node_count(); ++u) {
        for (NodeId v : neighbors(u)) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

// -----------------------------------------------------------------------------

namespace {

bool is_delimiter(char c) {
    return c == ',' || c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

// Splits on runs of whitespace/commas; stops after three tokens since
// anything past the endpoints is ignored.
std::size_t tokenize(std::string_view line, std::string_view (&tokens)[3]) {
    std::size_t count = 0;
    std::size_t i = 0;
    while (i < line.size() && count < 3) {
        while (i < line.size() && is_delimiter(line[i])) ++i;
        if (i == line.size()) break;
        std::size_t start = i;
        while (i < line.size() && !is_delimiter(line[i])) ++i;
        tokens[count++] = line.substr(start, i - start);
    }
    return count;
}

} // namespace

ParsedGraph parse_edge_list(std::istream& in) {
    IngestSummary summary;
    std::vector<std::string> labels;
    std::unordered_map<std::string, NodeId> index;
    std::vector<std::pair<NodeId, NodeId>> edges;

    auto intern = [&](std::string_view token) {
        auto [it, inserted] = index.try_emplace(std::string(token), static_cast<NodeId>(labels.size()));
        if (inserted) labels.emplace_back(token);
        return it->second;
    };

    std::string line;
    while (std::getline(in, line)) {
        ++summary.lines;
        std::string_view view(line);
        std::size_t first = 0;
        while (first < view.size() && is_delimiter(view[first])) ++first;
        if (first == view.size()) continue;
        if (view[first] == '%' || view[first] == '#') {
            ++summary.comment_lines;
            continue;
        }

        std::string_view tokens[3];
        std::size_t count = tokenize(view, tokens);
        if (count < 2) throw ParseError(summary.lines, "expected two endpoints, found one");
        if (count > 2) ++summary.extra_token_lines;

        NodeId u = intern(tokens[0]);
        NodeId v = intern(tokens[1]);
        if (u == v) {
            ++summary.self_loops_dropped;
            continue;
        }
        edges.emplace_back(std::min(u, v), std::max(u, v));
    }

    std::size_t raw = edges.size();
    Graph graph(std::move(labels), edges);
    summary.duplicate_edges = raw - graph.edge_count();
    return {std::move(graph), summary};
}

ParsedGraph parse_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_edge_list(in);
}

ParsedGraph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
    return parse_edge_list(in);
}

// -----------------------------------------------------------------------------

DistanceRow bfs_distances(const Graph& g, NodeId source) {
    const std::size_t n = g.node_count();
    if (source >= n) {
        throw std::out_of_range("source " + std::to_string(source) + " not in graph of " +
                                std::to_string(n) + " nodes");
    }
    std::vector<std::int32_t> hops(n, DistanceRow::kUnreachable);
    std::vector<NodeId> frontier;
    frontier.reserve(n);
    hops[source] = 0;
    frontier.push_back(source);
    for (std::size_t head = 0; head < frontier.size(); ++head) {
        NodeId u = frontier[head];
        for (NodeId v : g.neighbors(u)) {
            if (hops[v] == DistanceRow::kUnreachable) {
                hops[v] = hops[u] + 1;
                frontier.push_back(v);
            }
        }
    }
    return {source, std::move(hops)};
}

std::vector<DistanceRow> all_pairs_distances(const Graph& g) {
    std::vector<DistanceRow> rows(g.node_count());
    detail::parallel_for(rows.size(), [&](std::size_t s) {
        rows[s] = bfs_distances(g, static_cast<NodeId>(s));
    });
    return rows;
}

// -----------------------------------------------------------------------------

std::vector<std::uint32_t> k_shell(const Graph& g) {
    // Bucket-sorted peeling (Batagelj-Zaversnik); yields the same shells as
    // repeatedly deleting every node with remaining degree <= k.
    const std::size_t n = g.node_count();
    std::vector<std::uint32_t> deg(n);
    std::size_t max_deg = 0;
    for (NodeId u = 0; u < n; ++u) {
        deg[u] = static_cast<std::uint32_t>(g.degree(u));
        max_deg = std::max<std::size_t>(max_deg, deg[u]);
    }

    std::vector<std::size_t> bin(max_deg + 1, 0);
    for (auto d : deg) ++bin[d];
    std::size_t start = 0;
    for (auto& b : bin) {
        std::size_t count = b;
        b = start;
        start += count;
    }

    std::vector<NodeId> order(n);
    std::vector<std::size_t> pos(n);
    for (NodeId u = 0; u < n; ++u) {
        pos[u] = bin[deg[u]]++;
        order[pos[u]] = u;
    }
    for (std::size_t d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
    if (!bin.empty()) bin[0] = 0;

    for (std::size_t i = 0; i < n; ++i) {
        NodeId u = order[i];
        for (NodeId v : g.neighbors(u)) {
            if (deg[v] > deg[u]) {
                std::size_t dv = deg[v];
                std::size_t pw = bin[dv];
                NodeId w = order[pw];
                if (w != v) {
                    std::swap(order[pos[v]], order[pw]);
                    std::swap(pos[v], pos[w]);
                }
                ++bin[dv];
                --deg[v];
            }
        }
    }
    return deg;
}

GraphStats graph_stats(const Graph& g) {
    GraphStats s;
    s.n = g.node_count();
    s.m = g.edge_count();
    for (NodeId u = 0; u < s.n; ++u) s.max_degree = std::max(s.max_degree, g.degree(u));
    if (s.n > 0) s.mean_degree = 2.0 * static_cast<double>(s.m) / static_cast<double>(s.n);
    if (s.n > 1) {
        s.density = 2.0 * static_cast<double>(s.m) /
                    (static_cast<double>(s.n) * static_cast<double>(s.n - 1));
    }
    return s;
}

} // namespace sirank
