#include "cfa/combination.hpp"

#include "cfa/warnings.hpp"

#include <algorithm>
#include <stdexcept>

namespace cfa {

namespace {

void validate_systems(std::span<const ScoringSystem> systems) {
    if (systems.size() < 2) {
        throw std::invalid_argument("combination needs at least two scoring systems, got " +
                                    std::to_string(systems.size()));
    }
    for (const auto& system : systems) {
        if (!same_item_set(systems.front(), system)) {
            throw std::invalid_argument("combination: systems '" + systems.front().label() +
                                        "' and '" + system.label() +
                                        "' score different item sets");
        }
    }
}

// Resolves the effective per-system weights. Returns an empty vector when
// the scheme degenerates to AC (all diversity strengths zero, meaning all
// systems are identical).
std::vector<double> effective_weights(std::span<const ScoringSystem> systems,
                                      const WeightScheme& scheme) {
    if (scheme.kind == WeightKind::average) {
        return {};
    }
    const char* scheme_name =
        scheme.kind == WeightKind::diversity_strength ? "WCDS" : "WCP";
    if (!scheme.weights.has_value()) {
        throw std::invalid_argument(std::string(scheme_name) + " combination requires weights");
    }
    const auto& weights = scheme.weights->values;
    if (weights.size() != systems.size()) {
        throw std::invalid_argument(std::string(scheme_name) + " combination: " +
                                    std::to_string(weights.size()) + " weights for " +
                                    std::to_string(systems.size()) + " systems");
    }
    bool all_zero = std::all_of(weights.begin(), weights.end(),
                                [](double w) { return w == 0.0; });
    if (scheme.kind == WeightKind::diversity_strength && all_zero) {
        // All systems identical: zero diversity strengths would divide by
        // zero, so the combination degenerates to a plain average.
        warn("WCDS weights are all zero (identical systems); falling back to average combination");
        return {};
    }
    for (std::size_t j = 0; j < weights.size(); ++j) {
        if (!(weights[j] > 0.0)) {
            throw std::invalid_argument(std::string(scheme_name) +
                                        " combination: non-positive weight at index " +
                                        std::to_string(j));
        }
    }
    return weights;
}

} // namespace

CombinedSystem combine_scores(std::span<const ScoringSystem> systems,
                              const WeightScheme& scheme) {
    validate_systems(systems);
    std::vector<double> weights = effective_weights(systems, scheme);
    std::size_t n = systems.front().size();
    std::size_t t = systems.size();

    CombinedSystem combined;
    combined.item_set = systems.front().items_ptr();
    combined.basis = CombineBasis::score;
    combined.direction = SelectionDirection::maximize;
    combined.values.assign(n, 0.0);

    if (weights.empty()) {
        for (const auto& system : systems) {
            for (std::size_t i = 0; i < n; ++i) {
                combined.values[i] += system.scores()[i];
            }
        }
        for (double& v : combined.values) {
            v /= static_cast<double>(t);
        }
    } else {
        double weight_sum = 0.0;
        for (double w : weights) {
            weight_sum += w;
        }
        for (std::size_t j = 0; j < t; ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                combined.values[i] += weights[j] * systems[j].scores()[i];
            }
        }
        for (double& v : combined.values) {
            v /= weight_sum;
        }
    }
    return combined;
}

CombinedSystem combine_ranks(std::span<const ScoringSystem> systems,
                             const WeightScheme& scheme) {
    validate_systems(systems);
    std::vector<double> weights = effective_weights(systems, scheme);
    std::size_t n = systems.front().size();
    std::size_t t = systems.size();

    CombinedSystem combined;
    combined.item_set = systems.front().items_ptr();
    combined.basis = CombineBasis::rank;
    combined.direction = SelectionDirection::minimize;
    combined.values.assign(n, 0.0);

    // Rank weights are reciprocal: s_RC = sum (1/w_j) r_j / sum (1/w_j).
    double coeff_sum = 0.0;
    for (std::size_t j = 0; j < t; ++j) {
        double coeff = weights.empty() ? 1.0 : 1.0 / weights[j];
        coeff_sum += coeff;
        RankAssignment ranks = rank_from_scores(systems[j]);
        for (std::size_t i = 0; i < n; ++i) {
            combined.values[i] += coeff * static_cast<double>(ranks.ranks[i]);
        }
    }
    for (double& v : combined.values) {
        v /= coeff_sum;
    }
    return combined;
}

} // namespace cfa
