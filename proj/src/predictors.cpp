#include "cfa/predictors.hpp"

#include "cfa/csv.hpp"
#include "cfa/warnings.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cfa {

namespace {

constexpr double kRidge = 1e-9; // keeps near-singular normal equations solvable

double predict_naive(std::span<const double> observed) {
    return observed.back();
}

double predict_ema(std::span<const double> observed, double alpha) {
    double smoothed = observed.front();
    for (std::size_t i = 1; i < observed.size(); ++i) {
        smoothed = alpha * observed[i] + (1.0 - alpha) * smoothed;
    }
    return smoothed;
}

// Solves a small symmetric system in place with partial pivoting. Returns
// false when a pivot collapses despite the ridge term.
bool solve_in_place(std::vector<std::vector<double>>& a, std::vector<double>& b) {
    std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row) {
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) {
                pivot = row;
            }
        }
        if (std::abs(a[pivot][col]) < 1e-12) {
            return false;
        }
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t row = col + 1; row < n; ++row) {
            double factor = a[row][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    for (std::size_t col = n; col-- > 0;) {
        for (std::size_t k = col + 1; k < n; ++k) {
            b[col] -= a[col][k] * b[k];
        }
        b[col] /= a[col][col];
    }
    return true;
}

double predict_ar_ols(std::span<const double> observed, int lag_order) {
    auto p = static_cast<std::size_t>(lag_order);
    std::size_t len = observed.size();
    if (len < p + 1) {
        throw std::invalid_argument("ar_ols: need at least " + std::to_string(p + 1) +
                                    " observations for lag order " + std::to_string(lag_order));
    }

    // A constant window has nothing to regress on; its continuation is the
    // constant itself.
    bool constant = true;
    for (double v : observed) {
        if (v != observed.front()) {
            constant = false;
            break;
        }
    }
    if (constant) {
        warn("ar_ols: constant history, falling back to naive prediction");
        return predict_naive(observed);
    }

    // Normal equations for y_k = c + sum_i beta_i * y_{k-i}.
    std::size_t dim = p + 1;
    std::vector<std::vector<double>> gram(dim, std::vector<double>(dim, 0.0));
    std::vector<double> rhs(dim, 0.0);
    std::vector<double> row(dim, 1.0);
    for (std::size_t k = p; k < len; ++k) {
        for (std::size_t i = 0; i < p; ++i) {
            row[i + 1] = observed[k - 1 - i];
        }
        double target = observed[k];
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                gram[i][j] += row[i] * row[j];
            }
            rhs[i] += row[i] * target;
        }
    }
    for (std::size_t i = 0; i < dim; ++i) {
        gram[i][i] += kRidge;
    }

    if (!solve_in_place(gram, rhs)) {
        warn("ar_ols: singular normal equations, falling back to naive prediction");
        return predict_naive(observed);
    }

    double prediction = rhs[0];
    for (std::size_t i = 0; i < p; ++i) {
        prediction += rhs[i + 1] * observed[len - 1 - i];
    }
    return prediction;
}

void validate(const ForecastConfig& config) {
    switch (config.kind) {
    case BaselineKind::naive:
        return;
    case BaselineKind::ema:
        if (!(config.alpha > 0.0) || config.alpha > 1.0) {
            throw std::invalid_argument("ema: smoothing factor must be in (0,1], got " +
                                        csv::format_full(config.alpha));
        }
        return;
    case BaselineKind::ar_ols:
        if (config.lag_order < 1) {
            throw std::invalid_argument("ar_ols: lag order must be >= 1, got " +
                                        std::to_string(config.lag_order));
        }
        return;
    }
    throw std::logic_error("unknown baseline kind");
}

} // namespace

std::string ForecastConfig::label() const {
    switch (kind) {
    case BaselineKind::naive:
        return "naive";
    case BaselineKind::ema:
        return "ema" + csv::format_full(alpha);
    case BaselineKind::ar_ols:
        return "ar" + std::to_string(lag_order);
    }
    throw std::logic_error("unknown baseline kind");
}

ForecastConfig ForecastConfig::parse(const std::string& text) {
    ForecastConfig config;
    auto colon = text.find(':');
    std::string name = text.substr(0, colon);
    bool has_param = colon != std::string::npos;
    std::string param = has_param ? text.substr(colon + 1) : "";
    if (has_param && param.empty()) {
        throw std::invalid_argument("baseline '" + text + "' has an empty parameter");
    }
    if (name == "naive") {
        if (has_param) {
            throw std::invalid_argument("baseline 'naive' takes no parameter");
        }
        config.kind = BaselineKind::naive;
    } else if (name == "ema") {
        config.kind = BaselineKind::ema;
        if (has_param) {
            config.alpha = csv::parse_number(param);
        }
    } else if (name == "ar") {
        config.kind = BaselineKind::ar_ols;
        if (has_param) {
            double lag = csv::parse_number(param);
            if (lag != std::floor(lag)) {
                throw std::invalid_argument("ar lag order must be an integer, got '" + param +
                                            "'");
            }
            config.lag_order = static_cast<int>(lag);
        }
    } else {
        throw std::invalid_argument("unknown baseline '" + text +
                                    "' (expected naive, ema:<alpha>, or ar:<p>)");
    }
    validate(config);
    return config;
}

double predict_next(std::span<const double> observed, const ForecastConfig& config) {
    validate(config);
    if (observed.empty()) {
        throw std::invalid_argument("predict_next: empty history");
    }
    switch (config.kind) {
    case BaselineKind::naive:
        return predict_naive(observed);
    case BaselineKind::ema:
        return predict_ema(observed, config.alpha);
    case BaselineKind::ar_ols:
        return predict_ar_ols(observed, config.lag_order);
    }
    throw std::logic_error("unknown baseline kind");
}

ForecastSeries baseline_predict(std::span<const double> series, const ForecastConfig& config,
                                std::size_t test_days) {
    validate(config);
    if (test_days == 0) {
        throw std::invalid_argument("baseline_predict: test_days must be >= 1");
    }
    if (series.size() <= test_days) {
        throw std::invalid_argument("baseline_predict: series of " +
                                    std::to_string(series.size()) +
                                    " values leaves no history before " +
                                    std::to_string(test_days) + " test days");
    }
    std::size_t train_len = series.size() - test_days;
    std::size_t min_history =
        config.kind == BaselineKind::ar_ols
            ? std::max<std::size_t>(2, static_cast<std::size_t>(config.lag_order) + 1)
            : 2;
    if (train_len < min_history) {
        throw std::invalid_argument("baseline_predict: " + config.label() + " needs at least " +
                                    std::to_string(min_history) + " training days, got " +
                                    std::to_string(train_len));
    }

    ForecastSeries result;
    result.model_label = config.label();
    result.predictions.reserve(test_days);
    for (std::size_t d = 0; d < test_days; ++d) {
        result.predictions.push_back(predict_next(series.first(train_len + d), config));
    }
    return result;
}

std::vector<ForecastConfig> default_baselines() {
    return {
        {BaselineKind::naive, 0.3, 1},
        {BaselineKind::ema, 0.3, 1},
        {BaselineKind::ema, 0.7, 1},
        {BaselineKind::ar_ols, 0.3, 1},
        {BaselineKind::ar_ols, 0.3, 3},
    };
}

} // namespace cfa
