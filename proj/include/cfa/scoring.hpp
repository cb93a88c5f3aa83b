#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace cfa {

// Ordered collection of item identifiers shared by every scoring system
// ranking the same candidates. Items may be anonymous (identified by
// position), which is how price-grid systems use it.
class ItemSet {
public:
    explicit ItemSet(std::size_t count);
    explicit ItemSet(std::vector<std::string> labels);

    std::size_t size() const noexcept { return size_; }
    bool labeled() const noexcept { return !labels_.empty(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    bool operator==(const ItemSet&) const = default;

private:
    std::size_t size_ = 0;
    std::vector<std::string> labels_;
};

using ItemSetPtr = std::shared_ptr<const ItemSet>;

// Min-max normalization onto [0,1]. A constant vector maps to all ones
// (every item equally top). Rejects empty or non-finite input.
std::vector<double> normalize_scores(std::span<const double> raw);

// A model viewed abstractly: one score in [0,1] per item of a shared set.
class ScoringSystem {
public:
    ScoringSystem(ItemSetPtr items, std::vector<double> scores, std::string label);

    // Normalizes raw values first; accepts any finite input.
    static ScoringSystem from_raw(ItemSetPtr items, std::span<const double> raw,
                                  std::string label);

    const ItemSet& items() const noexcept { return *items_; }
    const ItemSetPtr& items_ptr() const noexcept { return items_; }
    const std::vector<double>& scores() const noexcept { return scores_; }
    const std::string& label() const noexcept { return label_; }
    std::size_t size() const noexcept { return scores_.size(); }

private:
    ItemSetPtr items_;
    std::vector<double> scores_;
    std::string label_;
};

bool same_item_set(const ScoringSystem& a, const ScoringSystem& b);

// Per-item rank in 1..n, always a full permutation. Higher score means a
// lower rank number; exact score ties keep item order, so the earlier item
// takes the lower rank.
struct RankAssignment {
    std::vector<std::size_t> ranks;
};

// Scores reindexed by rank position: values[i-1] is the score of the item
// holding rank i. Non-increasing by construction.
struct RSCFunction {
    std::vector<double> values;
};

RankAssignment rank_from_scores(const ScoringSystem& system);
RankAssignment rank_from_scores(std::span<const double> scores);

RSCFunction rsc_function(const ScoringSystem& system);
RSCFunction rsc_function(std::span<const double> scores);

} // namespace cfa
