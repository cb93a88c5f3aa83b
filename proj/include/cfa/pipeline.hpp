#pragma once

#include "cfa/combination.hpp"
#include "cfa/distribution.hpp"

#include <iosfwd>
#include <optional>
#include <span>

namespace cfa {

// Strategy = combination input (scores or ranks) x weighting. The default
// plan is the first four; the WCP pair needs caller-supplied performance
// weights.
enum class Strategy { sc_ac, rc_ac, sc_wcds, rc_wcds, sc_wcp, rc_wcp };

std::string strategy_name(Strategy s); // "sc-ac", ...
std::string strategy_slug(Strategy s); // "sc_ac", used in file names
Strategy parse_strategy(const std::string& name);
std::vector<Strategy> default_strategies(); // {sc-ac, rc-ac, sc-wcds, rc-wcds}

// Which systems a WCDS weight is averaged over: the group being combined,
// or the full model set.
enum class WcdsScope { group, full_set };

// All subsets of {0..t-1} with at least two members, ordered by size then
// lexicographically. t = 5 yields 26 groups.
std::vector<std::vector<std::size_t>> enumerate_groups(std::size_t t);

// Model-group / strategy enumeration for one run.
struct FusionPlan {
    std::vector<std::string> model_labels;
    std::vector<std::vector<std::size_t>> groups;
    std::vector<Strategy> strategies;

    static FusionPlan build(std::vector<std::string> labels, std::vector<Strategy> strategies);

    std::size_t combination_count() const { return groups.size() * strategies.size(); }
    // Member labels sorted and joined with '+'.
    std::string group_label(std::size_t g) const;
};

struct FusionOptions {
    WcdsScope wcds_scope = WcdsScope::group;
    // Performance strengths per model, required for sc-wcp / rc-wcp.
    std::optional<StrengthVector> performance_weights;
};

struct DayFusionResult {
    Date day;
    std::vector<double> individual_prices;         // mu snapped to the grid, per model
    std::vector<std::vector<double>> group_prices; // [strategy][group]
    StrengthVector full_set_strengths;             // ds over all t systems
    DiversityMatrix diversity;                     // pairwise CDs that produced them
};

struct ImprovementRecord {
    Date day;
    Strategy strategy = Strategy::sc_ac;
    std::string best_label;
    double best_price = 0.0;
    double best_distance = 0.0;
    bool improved = false;              // best column is a group, not an individual
    std::vector<double> distances;      // individuals then groups, plan order
};

// Index of the winning item: argmax for score basis, argmin for rank basis.
// Ties break to the lowest index (the lowest price on an ascending grid).
std::size_t select_index(const CombinedSystem& combined);
double select_price(const CombinedSystem& combined, const PriceGrid& grid);

// Applies every (group, strategy) pair of the plan to one day's
// distributions, which must share a single grid.
DayFusionResult fuse_day(std::span<const DayDistribution> distributions, const FusionPlan& plan,
                         const FusionOptions& options = {});

// Per day and strategy, absolute distances for every individual and group
// column. The best column wins; a tie between an individual and a group
// counts as no improvement.
std::vector<ImprovementRecord> improvement_analysis(std::span<const DayFusionResult> results,
                                                    const FusionPlan& plan,
                                                    std::span<const double> actual_prices);

// Per-strategy prediction table: date, individual columns, then group
// columns; prices with two decimals.
void write_strategy_table(std::ostream& out, const FusionPlan& plan,
                          std::span<const DayFusionResult> results, Strategy strategy);

// Same layout, absolute distances instead of prices.
void write_distance_table(std::ostream& out, const FusionPlan& plan,
                          std::span<const ImprovementRecord> records, Strategy strategy);

// date,best_label,best_distance,improved rows for one strategy.
void write_improvement_csv(std::ostream& out, std::span<const ImprovementRecord> records,
                           Strategy strategy);

} // namespace cfa
