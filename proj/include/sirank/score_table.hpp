#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace sirank {

enum class Measure { DC, EC, CC, BC, GC, EVE, SIR };

std::string_view to_string(Measure m);

/// Case-insensitive; returns std::nullopt for an unknown tag.
std::optional<Measure> parse_measure(std::string_view text);

/// Spreading parameters: per-contact infection probability and per-step
/// recovery probability.
struct RateParams {
    double beta = 0.0;
    double gamma = 1.0;

    friend bool operator==(const RateParams&, const RateParams&) = default;
};

/// Per-node scores of one measure, indexed by internal node id.
struct ScoreTable {
    Measure measure = Measure::DC;
    std::optional<RateParams> params;
    std::vector<double> scores;

    std::size_t size() const noexcept { return scores.size(); }
    double operator[](std::size_t i) const { return scores[i]; }
};

} // namespace sirank
