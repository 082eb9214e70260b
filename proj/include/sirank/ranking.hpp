#pragma once

#include "sirank/graph.hpp"
#include "sirank/score_table.hpp"

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sirank {

/// Label order used to break score ties: labels that both parse as integers
/// compare numerically, integers sort before non-integers, everything else
/// compares lexicographically.
bool label_less(std::string_view a, std::string_view b);

/// Scores are grouped into one rank level when they agree to this many
/// significant decimal digits.
inline constexpr int kTieDigits = 9;

/// `value` rounded to kTieDigits significant digits.
double tie_key(double value);

struct RankList {
    /// Node ids, best first.
    std::vector<NodeId> order;
    /// Dense rank level per node id (1 = best); equal scores share a level.
    std::vector<std::uint32_t> rank_level;

    std::size_t size() const noexcept { return order.size(); }
};

/// Orders nodes by descending tie_key(score), breaking ties with label_less.
/// `labels` is indexed by node id and must match the table size.
RankList score_to_ranklist(const ScoreTable& s, std::span<const std::string> labels);

/// Kendall tau-a over all node pairs:
/// (concordant - discordant) / (n(n-1)/2), pairs tied in either table
/// counting as neither. Throws std::invalid_argument on a size mismatch or
/// n < 2.
double kendall_tau(const ScoreTable& a, const ScoreTable& b);

/// Ranking monotonicity (1 - sum_r n_r(n_r - 1) / (n(n - 1)))^2 over the
/// rank levels of `r`. Requires n >= 2.
double monotonicity(const RankList& r);

struct TopKOverlap {
    std::size_t overlap = 0;
    std::size_t k = 0;
};

/// Size of the intersection of the first k entries of both orders, with
/// k = max(1, floor(fraction * n)). Requires 0 < fraction <= 1.
TopKOverlap top_k_overlap(const RankList& a, const RankList& b, double fraction);

/// Cut-off used by top_k_overlap.
std::size_t top_k_size(std::size_t n, double fraction);

/// (position, SIR score of the node at that position) for every position of
/// `measure_rank`.
std::vector<std::pair<std::size_t, double>> rank_index_series(const RankList& measure_rank,
                                                              const ScoreTable& sir);

struct EvalReport {
    Measure measure = Measure::DC;
    double tau = 0.0;
    double monotonicity = 0.0;
    std::size_t top_k_overlap = 0;
    std::size_t k = 1;
};

/// All three instruments for one measure against SIR ground truth.
EvalReport evaluate(const ScoreTable& measure, const ScoreTable& sir,
                    std::span<const std::string> labels, double top_fraction);

} // namespace sirank
