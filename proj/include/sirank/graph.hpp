#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sirank {

using NodeId = std::uint32_t;

/// Raised by edge-list ingestion. Carries the 1-based line number of the
/// offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Immutable undirected, unweighted simple graph in CSR form.
///
/// Nodes carry an opaque external label; internal indices are 0..n-1 in
/// first-appearance order. Adjacency lists are sorted, symmetric, and free of
/// self-loops and duplicates.
class Graph {
public:
    Graph() = default;

    /// Builds a graph over `labels.size()` nodes. Self-loops are dropped and
    /// duplicate edges collapsed. Throws std::invalid_argument on an endpoint
    /// out of range or a repeated label.
    Graph(std::vector<std::string> labels, std::span<const std::pair<NodeId, NodeId>> edges);

    /// Nodes labelled "0".."n-1".
    static Graph from_edges(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges);

    std::size_t node_count() const noexcept { return labels_.size(); }
    std::size_t edge_count() const noexcept { return targets_.size() / 2; }

    std::span<const NodeId> neighbors(NodeId u) const {
        return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
    }
    std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
    bool has_edge(NodeId u, NodeId v) const;

    const std::string& label(NodeId u) const { return labels_[u]; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::optional<NodeId> find(std::string_view label) const;

    /// Each undirected edge once, as (u, v) with u < v, in ascending order.
    std::vector<std::pair<NodeId, NodeId>> edges() const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.labels_ == b.labels_ && a.offsets_ == b.offsets_ && a.targets_ == b.targets_;
    }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> index_;
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> targets_;
};

// -----------------------------------------------------------------------------
// Ingestion
// -----------------------------------------------------------------------------

struct IngestSummary {
    std::size_t lines = 0;
    std::size_t comment_lines = 0;
    std::size_t self_loops_dropped = 0;
    std::size_t duplicate_edges = 0;
    /// Lines with a third (weight/timestamp) token that was ignored.
    std::size_t extra_token_lines = 0;
};

struct ParsedGraph {
    Graph graph;
    IngestSummary summary;
};

/// Reads a plain edge list: one edge per line, endpoints separated by any run
/// of whitespace and/or commas. Lines starting with '%' or '#' are comments.
ParsedGraph parse_edge_list(std::istream& in);
ParsedGraph parse_edge_list(std::string_view text);

/// Throws std::runtime_error if the file cannot be opened.
ParsedGraph load_edge_list(const std::string& path);

// -----------------------------------------------------------------------------
// Shortest paths
// -----------------------------------------------------------------------------

/// Hop distances from one source. Unreachable nodes have no distance; the
/// accessor returns std::nullopt for them rather than a large number.
class DistanceRow {
public:
    DistanceRow() = default;
    DistanceRow(NodeId source, std::vector<std::int32_t> hops)
        : source_(source), hops_(std::move(hops)) {}

    NodeId source() const noexcept { return source_; }
    std::size_t size() const noexcept { return hops_.size(); }

    bool reachable(NodeId v) const { return hops_[v] != kUnreachable; }
    std::optional<std::uint32_t> operator[](NodeId v) const {
        if (hops_[v] == kUnreachable) return std::nullopt;
        return static_cast<std::uint32_t>(hops_[v]);
    }

    /// Raw hop counts; kUnreachable marks unreachable nodes.
    std::span<const std::int32_t> hops() const noexcept { return hops_; }

    friend bool operator==(const DistanceRow&, const DistanceRow&) = default;

    static constexpr std::int32_t kUnreachable = -1;

private:
    NodeId source_ = 0;
    std::vector<std::int32_t> hops_;
};

/// Breadth-first hop distances from `source`. Throws std::out_of_range for
/// a source outside 0..n-1.
DistanceRow bfs_distances(const Graph& g, NodeId source);

/// One row per node, ordered by source index.
std::vector<DistanceRow> all_pairs_distances(const Graph& g);

// -----------------------------------------------------------------------------
// Structure
// -----------------------------------------------------------------------------

/// k-shell (core) index of every node, by iterated removal of nodes whose
/// remaining degree is <= k for k = 0, 1, 2, ...
std::vector<std::uint32_t> k_shell(const Graph& g);

struct GraphStats {
    std::size_t n = 0;
    std::size_t m = 0;
    double mean_degree = 0.0;
    std::size_t max_degree = 0;
    double density = 0.0;
};

GraphStats graph_stats(const Graph& g);

} // namespace sirank
