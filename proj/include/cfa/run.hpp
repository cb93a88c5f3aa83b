#pragma once

#include "cfa/ingestion.hpp"
#include "cfa/metrics.hpp"
#include "cfa/predictors.hpp"

#include <cstdint>
#include <optional>

namespace cfa {

enum class NormalizationMode { train, global };

// Knobs shared by the CLI subcommands. The defaults here are the single
// source of truth; config-file values override them and command-line flags
// override the config file.
struct RunConfig {
    // inputs
    std::string input_path;       // price history (predict)
    std::string market_path;      // optional feature table (predict)
    std::string predictions_path; // model predictions (fuse, diversity, eval)
    std::string actuals_path;     // actual prices (fuse, diversity, eval)
    std::string price_column = "price";

    // behavior
    double train_fraction = 0.8;
    std::size_t grid_points = 2001;
    std::vector<Strategy> strategies = default_strategies();
    WcdsScope wcds_scope = WcdsScope::group;
    NormalizationMode normalization = NormalizationMode::train;
    std::vector<double> wcp_weights; // required when a *-wcp strategy is chosen
    std::vector<ForecastConfig> baselines = default_baselines();
    bool emit_diversity = false;

    // outputs
    std::string out_dir = "cfa-out";

    // Reserved for future stochastic components; the pipeline itself is
    // deterministic and ignores it.
    std::optional<std::uint64_t> seed;
};

// predict: expanding-window baseline forecasts over the test partition.
// Writes predictions.csv and, when market data is given,
// features_normalized.csv.
void run_predict(const RunConfig& config);

// fuse: distribution expansion, group fusion, and improvement analysis end
// to end. Writes per-strategy prediction tables, distance tables,
// improvement logs, per-day diversity matrices (optional), and the summary;
// partial outputs are removed if any step fails.
EvaluationReport run_pipeline(const RunConfig& config);

// diversity: per-day cognitive-diversity matrices plus a strengths table.
void run_diversity(const RunConfig& config);

// eval: RMSE/MAPE of arbitrary prediction columns against actuals. Writes
// eval_summary.{csv,txt} when out_dir is non-empty.
EvaluationReport run_eval(const RunConfig& config);

} // namespace cfa
