#include "cfa/distribution.hpp"

#include "cfa/csv.hpp"
#include "cfa/warnings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace cfa {

PriceGrid::PriceGrid(double lower, double upper, std::size_t resolution)
    : lower_(lower), upper_(upper) {
    if (!std::isfinite(lower) || !std::isfinite(upper)) {
        throw std::invalid_argument("PriceGrid: non-finite bounds");
    }
    if (lower < 0.0) {
        throw std::invalid_argument("PriceGrid: lower bound must be >= 0");
    }
    if (!(upper > lower)) {
        throw std::invalid_argument("PriceGrid: upper bound " + csv::format_full(upper) +
                                    " must exceed lower bound " + csv::format_full(lower));
    }
    if (resolution < 2) {
        throw std::invalid_argument("PriceGrid: resolution must be at least 2");
    }
    spacing_ = (upper - lower) / static_cast<double>(resolution - 1);
    points_.resize(resolution);
    for (std::size_t i = 0; i < resolution; ++i) {
        points_[i] = lower + spacing_ * static_cast<double>(i);
    }
    points_.back() = upper; // exact endpoint, no fp drift
}

std::size_t PriceGrid::nearest_index(double price) const {
    if (price <= lower_) {
        return 0;
    }
    if (price >= upper_) {
        return points_.size() - 1;
    }
    auto i = static_cast<std::size_t>(std::llround((price - lower_) / spacing_));
    return std::min(i, points_.size() - 1);
}

void DayDistribution::write_csv(std::ostream& out) const {
    out << "price,score\n";
    for (std::size_t i = 0; i < scores.size(); ++i) {
        out << csv::format_full(grid->price(i)) << ',' << csv::format_full(scores[i]) << '\n';
    }
}

double residual_stddev(std::span<const double> predicted, std::span<const double> actual) {
    if (predicted.empty() || actual.empty()) {
        throw std::invalid_argument("residual_stddev: empty series");
    }
    if (predicted.size() != actual.size()) {
        throw std::invalid_argument("residual_stddev: length mismatch (" +
                                    std::to_string(predicted.size()) + " vs " +
                                    std::to_string(actual.size()) + ")");
    }
    std::size_t n = predicted.size();
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean += actual[i] - predicted[i];
    }
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = (actual[i] - predicted[i]) - mean;
        var += d * d;
    }
    return std::sqrt(var / static_cast<double>(n));
}

PriceGrid build_price_grid(std::span<const PredictionPoint> points, std::size_t resolution) {
    if (points.empty()) {
        throw std::invalid_argument("build_price_grid: no prediction points");
    }
    double lower = std::numeric_limits<double>::infinity();
    double upper = -std::numeric_limits<double>::infinity();
    for (const auto& point : points) {
        if (!std::isfinite(point.mu)) {
            throw std::invalid_argument("build_price_grid: non-finite mean for model '" +
                                        point.model_label + "'");
        }
        if (!(point.sigma > 0.0)) {
            throw std::invalid_argument("build_price_grid: sigma must be > 0 for model '" +
                                        point.model_label + "'");
        }
        lower = std::min(lower, point.mu - kTruncationSigmas * point.sigma);
        upper = std::max(upper, point.mu + kTruncationSigmas * point.sigma);
    }
    lower = std::max(lower, 0.0); // negative prices are not meaningful
    if (!(upper > lower)) {
        throw std::invalid_argument("build_price_grid: degenerate range, upper " +
                                    csv::format_full(upper) + " <= lower " +
                                    csv::format_full(lower));
    }
    return PriceGrid(lower, upper, resolution);
}

DayDistribution expand_to_distribution(const PredictionPoint& point, PriceGridPtr grid) {
    if (!grid) {
        throw std::invalid_argument("expand_to_distribution: null grid");
    }
    if (!std::isfinite(point.mu)) {
        throw std::invalid_argument("expand_to_distribution: non-finite mean for model '" +
                                    point.model_label + "'");
    }
    if (!(point.sigma > 0.0)) {
        throw std::invalid_argument("expand_to_distribution: sigma must be > 0 for model '" +
                                    point.model_label + "'");
    }

    DayDistribution dist;
    dist.model_label = point.model_label;
    dist.day = point.day;
    dist.grid = std::move(grid);
    dist.mu = point.mu;
    dist.sigma = point.sigma;

    const auto& prices = dist.grid->points();
    dist.scores.assign(prices.size(), 0.0);
    double window = kTruncationSigmas * point.sigma;
    double max_raw = 0.0;
    for (std::size_t i = 0; i < prices.size(); ++i) {
        double d = prices[i] - point.mu;
        if (std::abs(d) <= window) {
            double raw = std::exp(-(d * d) / (2.0 * point.sigma * point.sigma));
            dist.scores[i] = raw;
            max_raw = std::max(max_raw, raw);
        }
    }
    if (max_raw == 0.0) {
        warn("model '" + point.model_label + "' on day " + point.day.to_string() +
             ": no grid point within " + csv::format_full(window) +
             " of mean; all scores are zero");
        return dist;
    }
    for (double& s : dist.scores) {
        s /= max_raw; // peak-normalize so the best price scores exactly 1
    }
    return dist;
}

} // namespace cfa
