#pragma once

#include <span>
#include <string>
#include <vector>

namespace cfa {

enum class BaselineKind { naive, ema, ar_ols };

struct ForecastConfig {
    BaselineKind kind = BaselineKind::naive;
    double alpha = 0.3; // ema smoothing factor, in (0,1]
    int lag_order = 1;  // ar_ols lag count, >= 1

    // "naive", "ema0.3", "ar2", ...
    std::string label() const;

    // Accepts "naive", "ema:<alpha>", "ar:<p>".
    static ForecastConfig parse(const std::string& text);
};

struct ForecastSeries {
    std::string model_label;
    std::vector<double> predictions; // one per test day
};

// One-step-ahead prediction from everything observed so far.
//   naive  - last observed value
//   ema    - exponentially weighted mean, seeded at the first observation
//   ar_ols - least-squares fit on lag-p regressors, evaluated at the latest lags
double predict_next(std::span<const double> observed, const ForecastConfig& config);

// Expanding-window backtest over the trailing `test_days` entries of
// `series`. The window is anchored at the first day: the prediction for each
// test day sees every value strictly before it and nothing after.
ForecastSeries baseline_predict(std::span<const double> series, const ForecastConfig& config,
                                std::size_t test_days);

// {naive, ema(0.3), ema(0.7), ar_ols(1), ar_ols(3)}: structurally different
// baselines so the fused systems have genuine diversity.
std::vector<ForecastConfig> default_baselines();

} // namespace cfa
