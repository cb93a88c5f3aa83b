#include "cfa/pipeline.hpp"

#include "cfa/csv.hpp"
#include "cfa/warnings.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace cfa {

namespace {

bool uses_wcds(std::span<const Strategy> strategies) {
    return std::any_of(strategies.begin(), strategies.end(), [](Strategy s) {
        return s == Strategy::sc_wcds || s == Strategy::rc_wcds;
    });
}

bool uses_wcp(std::span<const Strategy> strategies) {
    return std::any_of(strategies.begin(), strategies.end(), [](Strategy s) {
        return s == Strategy::sc_wcp || s == Strategy::rc_wcp;
    });
}

bool is_score_basis(Strategy s) {
    return s == Strategy::sc_ac || s == Strategy::sc_wcds || s == Strategy::sc_wcp;
}

StrengthVector restrict_to(const StrengthVector& full, std::span<const std::size_t> members) {
    StrengthVector out;
    out.kind = full.kind;
    out.values.reserve(members.size());
    for (std::size_t m : members) {
        out.values.push_back(full.values[m]);
    }
    return out;
}

} // namespace

std::string strategy_name(Strategy s) {
    switch (s) {
    case Strategy::sc_ac:
        return "sc-ac";
    case Strategy::rc_ac:
        return "rc-ac";
    case Strategy::sc_wcds:
        return "sc-wcds";
    case Strategy::rc_wcds:
        return "rc-wcds";
    case Strategy::sc_wcp:
        return "sc-wcp";
    case Strategy::rc_wcp:
        return "rc-wcp";
    }
    throw std::logic_error("unknown strategy");
}

std::string strategy_slug(Strategy s) {
    std::string slug = strategy_name(s);
    std::replace(slug.begin(), slug.end(), '-', '_');
    return slug;
}

Strategy parse_strategy(const std::string& name) {
    for (Strategy s : {Strategy::sc_ac, Strategy::rc_ac, Strategy::sc_wcds, Strategy::rc_wcds,
                       Strategy::sc_wcp, Strategy::rc_wcp}) {
        if (name == strategy_name(s) || name == strategy_slug(s)) {
            return s;
        }
    }
    throw std::invalid_argument("unknown strategy '" + name +
                                "' (expected sc-ac, rc-ac, sc-wcds, rc-wcds, sc-wcp, rc-wcp)");
}

std::vector<Strategy> default_strategies() {
    return {Strategy::sc_ac, Strategy::rc_ac, Strategy::sc_wcds, Strategy::rc_wcds};
}

std::vector<std::vector<std::size_t>> enumerate_groups(std::size_t t) {
    if (t < 2) {
        throw std::invalid_argument("enumerate_groups: need at least 2 systems, got " +
                                    std::to_string(t));
    }
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t size = 2; size <= t; ++size) {
        // Lexicographic combinations of the given size.
        std::vector<std::size_t> combo(size);
        std::iota(combo.begin(), combo.end(), std::size_t{0});
        while (true) {
            groups.push_back(combo);
            // Rightmost position that can still be incremented.
            std::size_t i = size;
            while (i > 0 && combo[i - 1] == (i - 1) + t - size) {
                --i;
            }
            if (i == 0) {
                break;
            }
            ++combo[i - 1];
            for (std::size_t k = i; k < size; ++k) {
                combo[k] = combo[k - 1] + 1;
            }
        }
    }
    return groups;
}

FusionPlan FusionPlan::build(std::vector<std::string> labels, std::vector<Strategy> strategies) {
    if (labels.size() < 2) {
        throw std::invalid_argument("FusionPlan: need at least 2 models, got " +
                                    std::to_string(labels.size()));
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t j = i + 1; j < labels.size(); ++j) {
            if (labels[i] == labels[j]) {
                throw std::invalid_argument("FusionPlan: duplicate model label '" + labels[i] +
                                            "'");
            }
        }
    }
    if (strategies.empty()) {
        throw std::invalid_argument("FusionPlan: no strategies selected");
    }

    FusionPlan plan;
    plan.model_labels = std::move(labels);
    plan.groups = enumerate_groups(plan.model_labels.size());
    plan.strategies = std::move(strategies);

    if (uses_wcds(plan.strategies)) {
        bool has_pair = std::any_of(plan.groups.begin(), plan.groups.end(),
                                    [](const auto& g) { return g.size() == 2; });
        if (has_pair) {
            warn("size-2 groups under WCDS carry equal weights, so their WCDS "
                 "combination coincides with AC");
        }
    }
    return plan;
}

std::string FusionPlan::group_label(std::size_t g) const {
    std::vector<std::string> members;
    members.reserve(groups[g].size());
    for (std::size_t m : groups[g]) {
        members.push_back(model_labels[m]);
    }
    std::sort(members.begin(), members.end());
    std::string label;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i > 0) {
            label += '+';
        }
        label += members[i];
    }
    return label;
}

std::size_t select_index(const CombinedSystem& combined) {
    if (combined.values.empty()) {
        throw std::invalid_argument("select_index: empty combined system");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < combined.values.size(); ++i) {
        if (combined.direction == SelectionDirection::maximize
                ? combined.values[i] > combined.values[best]
                : combined.values[i] < combined.values[best]) {
            best = i;
        }
    }
    return best;
}

double select_price(const CombinedSystem& combined, const PriceGrid& grid) {
    if (combined.values.size() != grid.size()) {
        throw std::invalid_argument("select_price: combined system of " +
                                    std::to_string(combined.values.size()) +
                                    " values does not match grid of " +
                                    std::to_string(grid.size()) + " points");
    }
    return grid.price(select_index(combined));
}

DayFusionResult fuse_day(std::span<const DayDistribution> distributions, const FusionPlan& plan,
                         const FusionOptions& options) {
    std::size_t t = plan.model_labels.size();
    if (distributions.size() != t) {
        throw std::invalid_argument("fuse_day: " + std::to_string(distributions.size()) +
                                    " distributions for a plan of " + std::to_string(t) +
                                    " models");
    }
    const PriceGridPtr& grid = distributions.front().grid;
    for (std::size_t j = 0; j < t; ++j) {
        if (!distributions[j].grid) {
            throw std::invalid_argument("fuse_day: model '" + distributions[j].model_label +
                                        "' has no price grid");
        }
        if (distributions[j].model_label != plan.model_labels[j]) {
            throw std::invalid_argument("fuse_day: distribution label '" +
                                        distributions[j].model_label +
                                        "' does not match plan label '" + plan.model_labels[j] +
                                        "'");
        }
        if (distributions[j].grid != grid && !(*distributions[j].grid == *grid)) {
            throw std::invalid_argument("fuse_day: model '" + distributions[j].model_label +
                                        "' uses a different price grid");
        }
    }
    if (uses_wcp(plan.strategies)) {
        if (!options.performance_weights.has_value() ||
            options.performance_weights->values.size() != t) {
            throw std::invalid_argument(
                "fuse_day: WCP strategies need one performance weight per model");
        }
    }

    auto items = std::make_shared<ItemSet>(grid->size());
    std::vector<ScoringSystem> systems;
    systems.reserve(t);
    for (const auto& dist : distributions) {
        systems.emplace_back(items, dist.scores, dist.model_label);
    }

    DayFusionResult result;
    result.day = distributions.front().day;
    result.diversity = diversity_matrix(systems);
    result.full_set_strengths.kind = StrengthKind::diversity;
    result.full_set_strengths.values.reserve(t);
    for (std::size_t j = 0; j < t; ++j) {
        double sum = 0.0;
        for (std::size_t k = 0; k < t; ++k) {
            sum += result.diversity.values[j][k];
        }
        result.full_set_strengths.values.push_back(sum / static_cast<double>(t - 1));
    }

    result.individual_prices.reserve(t);
    for (const auto& dist : distributions) {
        result.individual_prices.push_back(grid->price(grid->nearest_index(dist.mu)));
    }

    result.group_prices.assign(plan.strategies.size(),
                               std::vector<double>(plan.groups.size(), 0.0));
    for (std::size_t g = 0; g < plan.groups.size(); ++g) {
        const auto& members = plan.groups[g];
        std::vector<ScoringSystem> subset;
        subset.reserve(members.size());
        for (std::size_t m : members) {
            subset.push_back(systems[m]);
        }

        for (std::size_t s = 0; s < plan.strategies.size(); ++s) {
            Strategy strategy = plan.strategies[s];
            WeightScheme scheme;
            switch (strategy) {
            case Strategy::sc_ac:
            case Strategy::rc_ac:
                scheme = WeightScheme::ac();
                break;
            case Strategy::sc_wcds:
            case Strategy::rc_wcds:
                scheme = WeightScheme::wcds(
                    options.wcds_scope == WcdsScope::group
                        ? diversity_strengths_within(result.diversity, members)
                        : restrict_to(result.full_set_strengths, members));
                break;
            case Strategy::sc_wcp:
            case Strategy::rc_wcp:
                scheme = WeightScheme::wcp(restrict_to(*options.performance_weights, members));
                break;
            }
            CombinedSystem combined = is_score_basis(strategy) ? combine_scores(subset, scheme)
                                                               : combine_ranks(subset, scheme);
            result.group_prices[s][g] = select_price(combined, *grid);
        }
    }
    return result;
}

std::vector<ImprovementRecord> improvement_analysis(std::span<const DayFusionResult> results,
                                                    const FusionPlan& plan,
                                                    std::span<const double> actual_prices) {
    if (results.size() != actual_prices.size()) {
        throw std::invalid_argument("improvement_analysis: " + std::to_string(results.size()) +
                                    " fused days but " + std::to_string(actual_prices.size()) +
                                    " actual prices");
    }
    std::size_t t = plan.model_labels.size();

    std::vector<ImprovementRecord> records;
    records.reserve(results.size() * plan.strategies.size());
    for (std::size_t d = 0; d < results.size(); ++d) {
        const DayFusionResult& day = results[d];
        double actual = actual_prices[d];
        for (std::size_t s = 0; s < plan.strategies.size(); ++s) {
            ImprovementRecord record;
            record.day = day.day;
            record.strategy = plan.strategies[s];
            record.distances.reserve(t + plan.groups.size());

            // Individuals first: on exact ties the earlier column wins, so a
            // group must be strictly better to count as an improvement.
            std::size_t best_col = 0;
            double best_distance = std::abs(actual - day.individual_prices[0]);
            double best_price = day.individual_prices[0];
            record.distances.push_back(best_distance);
            for (std::size_t j = 1; j < t; ++j) {
                double distance = std::abs(actual - day.individual_prices[j]);
                record.distances.push_back(distance);
                if (distance < best_distance) {
                    best_distance = distance;
                    best_price = day.individual_prices[j];
                    best_col = j;
                }
            }
            for (std::size_t g = 0; g < plan.groups.size(); ++g) {
                double price = day.group_prices[s][g];
                double distance = std::abs(actual - price);
                record.distances.push_back(distance);
                if (distance < best_distance) {
                    best_distance = distance;
                    best_price = price;
                    best_col = t + g;
                }
            }

            record.best_distance = best_distance;
            record.best_price = best_price;
            record.improved = best_col >= t;
            record.best_label = record.improved ? plan.group_label(best_col - t)
                                                : plan.model_labels[best_col];
            records.push_back(std::move(record));
        }
    }
    return records;
}

namespace {

std::size_t strategy_index(const FusionPlan& plan, Strategy strategy) {
    for (std::size_t s = 0; s < plan.strategies.size(); ++s) {
        if (plan.strategies[s] == strategy) {
            return s;
        }
    }
    throw std::invalid_argument("strategy " + strategy_name(strategy) + " is not in the plan");
}

void write_table_header(std::ostream& out, const FusionPlan& plan) {
    std::vector<std::string> header;
    header.reserve(1 + plan.model_labels.size() + plan.groups.size());
    header.push_back("date");
    header.insert(header.end(), plan.model_labels.begin(), plan.model_labels.end());
    for (std::size_t g = 0; g < plan.groups.size(); ++g) {
        header.push_back(plan.group_label(g));
    }
    out << csv::join_line(header) << '\n';
}

} // namespace

void write_strategy_table(std::ostream& out, const FusionPlan& plan,
                          std::span<const DayFusionResult> results, Strategy strategy) {
    std::size_t s = strategy_index(plan, strategy);
    write_table_header(out, plan);
    std::vector<std::string> row;
    for (const auto& day : results) {
        row.clear();
        row.push_back(day.day.to_string());
        for (double price : day.individual_prices) {
            row.push_back(csv::format_fixed(price, 2));
        }
        for (double price : day.group_prices[s]) {
            row.push_back(csv::format_fixed(price, 2));
        }
        out << csv::join_line(row) << '\n';
    }
}

void write_distance_table(std::ostream& out, const FusionPlan& plan,
                          std::span<const ImprovementRecord> records, Strategy strategy) {
    write_table_header(out, plan);
    std::vector<std::string> row;
    for (const auto& record : records) {
        if (record.strategy != strategy) {
            continue;
        }
        row.clear();
        row.push_back(record.day.to_string());
        for (double distance : record.distances) {
            row.push_back(csv::format_fixed(distance, 6));
        }
        out << csv::join_line(row) << '\n';
    }
}

void write_improvement_csv(std::ostream& out, std::span<const ImprovementRecord> records,
                           Strategy strategy) {
    out << "date,best_label,best_distance,improved\n";
    std::vector<std::string> row;
    for (const auto& record : records) {
        if (record.strategy != strategy) {
            continue;
        }
        row.clear();
        row.push_back(record.day.to_string());
        row.push_back(record.best_label);
        row.push_back(csv::format_fixed(record.best_distance, 6));
        row.push_back(record.improved ? "1" : "0");
        out << csv::join_line(row) << '\n';
    }
}

} // namespace cfa
