#include "sirank/ranking.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace sirank {

namespace {

// Optional sign followed by digits only.
bool is_integer(std::string_view s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
}

// Numeric comparison of two integer strings of arbitrary length.
int compare_integers(std::string_view a, std::string_view b) {
    bool neg_a = a[0] == '-';
    bool neg_b = b[0] == '-';
    auto magnitude = [](std::string_view s) {
        if (s[0] == '-' || s[0] == '+') s.remove_prefix(1);
        auto first = s.find_first_not_of('0');
        return first == std::string_view::npos ? std::string_view{} : s.substr(first);
    };
    auto ma = magnitude(a);
    auto mb = magnitude(b);
    if (ma.empty()) neg_a = false;
    if (mb.empty()) neg_b = false;
    if (neg_a != neg_b) return neg_a ? -1 : 1;
    int cmp = ma.size() != mb.size() ? (ma.size() < mb.size() ? -1 : 1) : ma.compare(mb);
    if (cmp > 0) cmp = 1;
    if (cmp < 0) cmp = -1;
    return neg_a ? -cmp : cmp;
}

int sign(double x) { return (x > 0.0) - (x < 0.0); }

} // namespace

bool label_less(std::string_view a, std::string_view b) {
    const bool ia = is_integer(a);
    const bool ib = is_integer(b);
    if (ia && ib) {
        int cmp = compare_integers(a, b);
        return cmp != 0 ? cmp < 0 : a < b;
    }
    if (ia != ib) return ia;
    return a < b;
}

double tie_key(double value) {
    if (!std::isfinite(value) || value == 0.0) return value;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*e", kTieDigits - 1, value);
    return std::strtod(buf, nullptr);
}

RankList score_to_ranklist(const ScoreTable& s, std::span<const std::string> labels) {
    const std::size_t n = s.size();
    if (labels.size() != n) throw std::invalid_argument("label count does not match score table");

    std::vector<double> keys(n);
    for (std::size_t i = 0; i < n; ++i) keys[i] = tie_key(s.scores[i]);

    RankList r;
    r.order.resize(n);
    std::iota(r.order.begin(), r.order.end(), NodeId{0});
    std::sort(r.order.begin(), r.order.end(), [&](NodeId a, NodeId b) {
        if (keys[a] != keys[b]) return keys[a] > keys[b];
        return label_less(labels[a], labels[b]);
    });

    r.rank_level.assign(n, 0);
    std::uint32_t level = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0 || keys[r.order[i]] != keys[r.order[i - 1]]) ++level;
        r.rank_level[r.order[i]] = level;
    }
    return r;
}

double kendall_tau(const ScoreTable& a, const ScoreTable& b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw std::invalid_argument("score tables cover different node sets");
    if (n < 2) throw std::invalid_argument("kendall tau needs at least two nodes");

    std::int64_t concordant = 0;
    std::int64_t discordant = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            int product = sign(a[i] - a[j]) * sign(b[i] - b[j]);
            if (product > 0) ++concordant;
            else if (product < 0) ++discordant;
        }
    }
    const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    return static_cast<double>(concordant - discordant) / pairs;
}

double monotonicity(const RankList& r) {
    const std::size_t n = r.size();
    if (n < 2) throw std::invalid_argument("monotonicity needs at least two nodes");
    std::vector<std::uint64_t> level_sizes(n + 1, 0);
    for (auto level : r.rank_level) ++level_sizes[level];
    std::uint64_t tied = 0;
    for (auto c : level_sizes) tied += c * (c > 0 ? c - 1 : 0);
    const double frac = static_cast<double>(tied) / (static_cast<double>(n) * static_cast<double>(n - 1));
    return (1.0 - frac) * (1.0 - frac);
}

std::size_t top_k_size(std::size_t n, double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw std::invalid_argument("top fraction must lie in (0, 1]");
    }
    // The epsilon keeps products like 0.29 * 100 from flooring to 28.
    auto k = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 1e-9));
    return std::max<std::size_t>(1, std::min(k, n));
}

TopKOverlap top_k_overlap(const RankList& a, const RankList& b, double fraction) {
    if (a.size() != b.size()) throw std::invalid_argument("rankings cover different node sets");
    const std::size_t k = std::min(top_k_size(a.size(), fraction), a.size());
    std::unordered_set<NodeId> head(a.order.begin(), a.order.begin() + static_cast<std::ptrdiff_t>(k));
    std::size_t overlap = 0;
    for (std::size_t i = 0; i < k; ++i) overlap += head.count(b.order[i]);
    return {overlap, k};
}

std::vector<std::pair<std::size_t, double>> rank_index_series(const RankList& measure_rank,
                                                              const ScoreTable& sir) {
    if (measure_rank.size() != sir.size()) {
        throw std::invalid_argument("ranking and SIR table cover different node sets");
    }
    std::vector<std::pair<std::size_t, double>> series;
    series.reserve(measure_rank.size());
    for (std::size_t i = 0; i < measure_rank.size(); ++i) {
        series.emplace_back(i, sir[measure_rank.order[i]]);
    }
    return series;
}

EvalReport evaluate(const ScoreTable& measure, const ScoreTable& sir,
                    std::span<const std::string> labels, double top_fraction) {
    RankList measure_rank = score_to_ranklist(measure, labels);
    RankList sir_rank = score_to_ranklist(sir, labels);
    auto [overlap, k] = top_k_overlap(measure_rank, sir_rank, top_fraction);
    return {measure.measure, kendall_tau(measure, sir), monotonicity(measure_rank), overlap, k};
}

} // namespace sirank
