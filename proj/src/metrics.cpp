#include "cfa/metrics.hpp"

#include "cfa/csv.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace cfa {

namespace {

void validate_series(std::span<const double> predicted, std::span<const double> actual,
                     const char* op) {
    if (predicted.empty() || actual.empty()) {
        throw std::invalid_argument(std::string(op) + ": empty series");
    }
    if (predicted.size() != actual.size()) {
        throw std::invalid_argument(std::string(op) + ": length mismatch (" +
                                    std::to_string(predicted.size()) + " vs " +
                                    std::to_string(actual.size()) + ")");
    }
}

} // namespace

double rmse(std::span<const double> predicted, std::span<const double> actual) {
    validate_series(predicted, actual, "rmse");
    double sum = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        double diff = actual[i] - predicted[i];
        sum += diff * diff;
    }
    return std::sqrt(sum / static_cast<double>(predicted.size()));
}

double mape(std::span<const double> predicted, std::span<const double> actual) {
    validate_series(predicted, actual, "mape");
    double sum = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (actual[i] == 0.0) {
            throw std::invalid_argument("mape: actual value at index " + std::to_string(i) +
                                        " is zero");
        }
        sum += std::abs((actual[i] - predicted[i]) / actual[i]);
    }
    return sum / static_cast<double>(predicted.size()) * 100.0;
}

std::size_t days_improved(std::span<const ImprovementRecord> records, Strategy strategy) {
    if (records.empty()) {
        throw std::invalid_argument("days_improved: no improvement records");
    }
    bool seen = false;
    std::size_t count = 0;
    for (const auto& record : records) {
        if (record.strategy != strategy) {
            continue;
        }
        seen = true;
        if (record.improved) {
            ++count;
        }
    }
    if (!seen) {
        throw std::invalid_argument("days_improved: no records for strategy " +
                                    strategy_name(strategy));
    }
    return count;
}

void EvaluationReport::write_csv(std::ostream& out) const {
    out << "label,rmse,mape_percent,days_improved,total_days\n";
    std::vector<std::string> row;
    for (const auto& system : systems) {
        row.clear();
        row.push_back(system.label);
        row.push_back(csv::format_full(system.rmse));
        row.push_back(csv::format_full(system.mape_percent));
        row.push_back(system.days_improved ? std::to_string(*system.days_improved) : "");
        row.push_back(std::to_string(total_days));
        out << csv::join_line(row) << '\n';
    }
}

void EvaluationReport::write_text(std::ostream& out) const {
    std::vector<std::string> labels{"metric"};
    std::vector<std::string> days{"days_improved"};
    std::vector<std::string> rmse_row{"rmse"};
    std::vector<std::string> mape_row{"mape_percent"};
    for (const auto& system : systems) {
        labels.push_back(system.label);
        days.push_back(system.days_improved ? std::to_string(*system.days_improved) : "-");
        rmse_row.push_back(csv::format_fixed(system.rmse, 2));
        mape_row.push_back(csv::format_fixed(system.mape_percent, 2));
    }

    std::vector<std::size_t> widths(labels.size());
    auto widen = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            widths[i] = std::max(widths[i], row[i].size());
        }
    };
    widen(labels);
    widen(days);
    widen(rmse_row);
    widen(mape_row);

    auto print = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i == 0 ? "" : "  ") << row[i]
                << std::string(widths[i] - row[i].size(), ' ');
        }
        out << '\n';
    };
    print(labels);
    print(days);
    print(rmse_row);
    print(mape_row);
    out << "days improved are out of " << total_days << " test days\n";
}

EvaluationReport build_report(const FusionPlan& plan, std::span<const DayFusionResult> results,
                              std::span<const ImprovementRecord> records,
                              std::span<const double> actual_prices) {
    if (results.size() != actual_prices.size()) {
        throw std::invalid_argument("build_report: " + std::to_string(results.size()) +
                                    " fused days but " + std::to_string(actual_prices.size()) +
                                    " actual prices");
    }
    if (results.empty()) {
        throw std::invalid_argument("build_report: no fused days");
    }

    EvaluationReport report;
    report.total_days = results.size();

    std::vector<double> series(results.size());
    for (std::size_t j = 0; j < plan.model_labels.size(); ++j) {
        for (std::size_t d = 0; d < results.size(); ++d) {
            series[d] = results[d].individual_prices[j];
        }
        SystemScore score;
        score.label = plan.model_labels[j];
        score.rmse = rmse(series, actual_prices);
        score.mape_percent = mape(series, actual_prices);
        report.systems.push_back(std::move(score));
    }

    for (Strategy strategy : plan.strategies) {
        series.clear();
        for (const auto& record : records) {
            if (record.strategy == strategy) {
                series.push_back(record.best_price);
            }
        }
        SystemScore score;
        score.label = strategy_name(strategy);
        score.rmse = rmse(series, actual_prices);
        score.mape_percent = mape(series, actual_prices);
        score.days_improved = days_improved(records, strategy);
        report.systems.push_back(std::move(score));
    }
    return report;
}

} // namespace cfa
