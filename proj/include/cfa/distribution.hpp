#pragma once

#include "cfa/date.hpp"

#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace cfa {

// Distributions are truncated at two standard deviations from the mean,
// covering roughly 95% of the plausible price range.
inline constexpr double kTruncationSigmas = 2.0;

// One model's point forecast for one day.
struct PredictionPoint {
    std::string model_label;
    Date day;
    double mu = 0.0;    // predicted price, the mean of the expanded distribution
    double sigma = 0.0; // model residual spread, must be > 0
};

// Uniform candidate-price axis shared by every model on a given day.
class PriceGrid {
public:
    PriceGrid(double lower, double upper, std::size_t resolution);

    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }
    double spacing() const noexcept { return spacing_; }
    std::size_t size() const noexcept { return points_.size(); }
    const std::vector<double>& points() const noexcept { return points_; }
    double price(std::size_t i) const { return points_[i]; }

    // Index of the grid point closest to `price`; clamps beyond the ends.
    std::size_t nearest_index(double price) const;

    bool operator==(const PriceGrid&) const = default;

private:
    double lower_ = 0.0;
    double upper_ = 0.0;
    double spacing_ = 0.0;
    std::vector<double> points_;
};

using PriceGridPtr = std::shared_ptr<const PriceGrid>;

// A truncated, peak-normalized normal over the day's grid. The scores double
// as the model's scoring system for that day.
struct DayDistribution {
    std::string model_label;
    Date day;
    PriceGridPtr grid;
    double mu = 0.0;
    double sigma = 0.0;
    std::vector<double> scores; // in [0,1], zero outside [mu-2s, mu+2s]

    // Columns: price,score.
    void write_csv(std::ostream& out) const;
};

// Population (divisor N) standard deviation of residuals (actual - predicted).
double residual_stddev(std::span<const double> predicted, std::span<const double> actual);

// Grid spanning [max(0, min_j(mu_j - 2 sigma_j)), max_j(mu_j + 2 sigma_j)]
// with `resolution` uniform points. Negative lower bounds clamp to zero.
PriceGrid build_price_grid(std::span<const PredictionPoint> points, std::size_t resolution);

// Normal density with mean mu, truncated at 2 sigma, scaled so the peak
// score is exactly 1. If no grid point falls inside the window, every score
// is zero and a warning is recorded.
DayDistribution expand_to_distribution(const PredictionPoint& point, PriceGridPtr grid);

} // namespace cfa
