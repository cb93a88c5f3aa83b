#pragma once

#include "cfa/diversity.hpp"
#include "cfa/scoring.hpp"

#include <optional>
#include <span>

namespace cfa {

// AC = plain average, WCDS = weighted by diversity strength,
// WCP = weighted by performance.
enum class WeightKind { average, diversity_strength, performance };

struct WeightScheme {
    WeightKind kind = WeightKind::average;
    std::optional<StrengthVector> weights; // required for WCDS / WCP

    static WeightScheme ac() { return {}; }
    static WeightScheme wcds(StrengthVector v) {
        return {WeightKind::diversity_strength, std::move(v)};
    }
    static WeightScheme wcp(StrengthVector v) { return {WeightKind::performance, std::move(v)}; }
};

enum class CombineBasis { score, rank };
enum class SelectionDirection { maximize, minimize };

// Item-wise fusion of t systems. Score basis keeps values in [0,1] and
// selects by maximum; rank basis keeps mean ranks in [1,n] and selects by
// minimum.
struct CombinedSystem {
    ItemSetPtr item_set;
    std::vector<double> values;
    CombineBasis basis = CombineBasis::score;
    SelectionDirection direction = SelectionDirection::maximize;
};

// Weighted arithmetic mean of the systems' scores per item.
CombinedSystem combine_scores(std::span<const ScoringSystem> systems,
                              const WeightScheme& scheme);

// Reciprocal-weighted mean of the systems' ranks per item; ranks are derived
// with rank_from_scores.
CombinedSystem combine_ranks(std::span<const ScoringSystem> systems,
                             const WeightScheme& scheme);

} // namespace cfa
