#pragma once

#include "cfa/pipeline.hpp"

#include <iosfwd>
#include <optional>
#include <span>

namespace cfa {

// sqrt(mean((y - yhat)^2))
double rmse(std::span<const double> predicted, std::span<const double> actual);

// mean(|(y - yhat) / y|) in percent. Zero actuals are rejected with the
// offending index, since the formula divides by them.
double mape(std::span<const double> predicted, std::span<const double> actual);

std::size_t days_improved(std::span<const ImprovementRecord> records, Strategy strategy);

struct SystemScore {
    std::string label;
    double rmse = 0.0;
    double mape_percent = 0.0;
    std::optional<std::size_t> days_improved; // combination strategies only
};

// Evaluation summary: base models first, then one column per combination
// strategy (each strategy scored on its per-day best column).
struct EvaluationReport {
    std::size_t total_days = 0;
    std::vector<SystemScore> systems;

    void write_csv(std::ostream& out) const;  // full precision
    void write_text(std::ostream& out) const; // 2-decimal table
};

EvaluationReport build_report(const FusionPlan& plan, std::span<const DayFusionResult> results,
                              std::span<const ImprovementRecord> records,
                              std::span<const double> actual_prices);

} // namespace cfa
