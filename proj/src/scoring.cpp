#include "cfa/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace cfa {

ItemSet::ItemSet(std::size_t count) : size_(count) {
    if (count == 0) {
        throw std::invalid_argument("ItemSet needs at least one item");
    }
}

ItemSet::ItemSet(std::vector<std::string> labels)
    : size_(labels.size()), labels_(std::move(labels)) {
    if (size_ == 0) {
        throw std::invalid_argument("ItemSet needs at least one item");
    }
    std::unordered_set<std::string> seen;
    for (const auto& label : labels_) {
        if (!seen.insert(label).second) {
            throw std::invalid_argument("duplicate item identifier '" + label + "'");
        }
    }
}

std::vector<double> normalize_scores(std::span<const double> raw) {
    if (raw.empty()) {
        throw std::invalid_argument("normalize_scores: empty input");
    }
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!std::isfinite(raw[i])) {
            throw std::invalid_argument("normalize_scores: non-finite value at index " +
                                        std::to_string(i));
        }
    }
    auto [min_it, max_it] = std::minmax_element(raw.begin(), raw.end());
    double lo = *min_it;
    double hi = *max_it;
    std::vector<double> out(raw.size());
    if (lo == hi) {
        // Degenerate constant input: every item is equally top.
        std::fill(out.begin(), out.end(), 1.0);
        return out;
    }
    double range = hi - lo;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        out[i] = (raw[i] - lo) / range;
    }
    return out;
}

ScoringSystem::ScoringSystem(ItemSetPtr items, std::vector<double> scores, std::string label)
    : items_(std::move(items)), scores_(std::move(scores)), label_(std::move(label)) {
    if (!items_) {
        throw std::invalid_argument("ScoringSystem '" + label_ + "': null item set");
    }
    if (scores_.size() != items_->size()) {
        throw std::invalid_argument("ScoringSystem '" + label_ + "': " +
                                    std::to_string(scores_.size()) + " scores for " +
                                    std::to_string(items_->size()) + " items");
    }
    for (std::size_t i = 0; i < scores_.size(); ++i) {
        double s = scores_[i];
        if (!std::isfinite(s) || s < 0.0 || s > 1.0) {
            throw std::invalid_argument("ScoringSystem '" + label_ + "': score at index " +
                                        std::to_string(i) + " outside [0,1]");
        }
    }
}

ScoringSystem ScoringSystem::from_raw(ItemSetPtr items, std::span<const double> raw,
                                      std::string label) {
    return ScoringSystem(std::move(items), normalize_scores(raw), std::move(label));
}

bool same_item_set(const ScoringSystem& a, const ScoringSystem& b) {
    if (a.items_ptr() == b.items_ptr()) {
        return true;
    }
    return a.items() == b.items();
}

RankAssignment rank_from_scores(std::span<const double> scores) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Descending score; ties keep ascending item position (stable).
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    RankAssignment result;
    result.ranks.resize(scores.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        result.ranks[order[pos]] = pos + 1;
    }
    return result;
}

RankAssignment rank_from_scores(const ScoringSystem& system) {
    return rank_from_scores(std::span<const double>(system.scores()));
}

RSCFunction rsc_function(std::span<const double> scores) {
    RSCFunction f;
    f.values.assign(scores.begin(), scores.end());
    std::sort(f.values.begin(), f.values.end(), std::greater<>());
    return f;
}

RSCFunction rsc_function(const ScoringSystem& system) {
    return rsc_function(std::span<const double>(system.scores()));
}

} // namespace cfa
