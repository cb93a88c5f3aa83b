#include "cfa/distribution.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace cfa;

namespace {

PredictionPoint point(double mu, double sigma, const std::string& label = "m") {
    return PredictionPoint{label, Date(2024, 1, 2), mu, sigma};
}

} // namespace

TEST_CASE("residual_stddev of perfect predictions is zero") {
    std::vector<double> series{3.0, 4.0, 5.0};
    CHECK(residual_stddev(series, series) == 0.0);
}

TEST_CASE("residual_stddev uses the population divisor") {
    std::vector<double> predicted{0.0, 0.0};
    std::vector<double> actual{1.0, -1.0}; // residuals [1, -1], mean 0, var 1
    CHECK(residual_stddev(predicted, actual) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("residual_stddev of constant residuals is zero") {
    std::vector<double> predicted{1.0, 2.0, 3.0};
    std::vector<double> actual{3.0, 4.0, 5.0}; // residuals [2, 2, 2]
    CHECK(residual_stddev(predicted, actual) == 0.0);
}

TEST_CASE("residual_stddev validates lengths") {
    std::vector<double> a{1.0};
    std::vector<double> b{1.0, 2.0};
    CHECK_THROWS_AS(residual_stddev(a, b), std::invalid_argument);
    CHECK_THROWS_AS(residual_stddev({}, {}), std::invalid_argument);
}

TEST_CASE("build_price_grid spans mu +/- 2 sigma") {
    std::vector<PredictionPoint> points{point(100.0, 10.0)};
    auto grid = build_price_grid(points, 41);
    CHECK(grid.lower() == doctest::Approx(80.0));
    CHECK(grid.upper() == doctest::Approx(120.0));
    CHECK(grid.size() == 41);
}

TEST_CASE("build_price_grid clamps negative lower bounds to zero") {
    std::vector<PredictionPoint> points{point(5.0, 10.0)};
    auto grid = build_price_grid(points, 11);
    CHECK(grid.lower() == 0.0);
    CHECK(grid.upper() == doctest::Approx(25.0));
}

TEST_CASE("build_price_grid takes the union of per-model ranges") {
    std::vector<PredictionPoint> points{point(100.0, 10.0, "a"), point(110.0, 5.0, "b")};
    auto grid = build_price_grid(points, 5);
    CHECK(grid.lower() == doctest::Approx(80.0));
    CHECK(grid.upper() == doctest::Approx(120.0));
}

TEST_CASE("build_price_grid rejects bad inputs") {
    CHECK_THROWS_AS(build_price_grid({}, 5), std::invalid_argument);
    std::vector<PredictionPoint> zero_sigma{point(10.0, 0.0)};
    CHECK_THROWS_AS(build_price_grid(zero_sigma, 5), std::invalid_argument);
    // all mass below zero: upper <= 0 == lower after the clamp
    std::vector<PredictionPoint> negative{point(-50.0, 10.0)};
    CHECK_THROWS_AS(build_price_grid(negative, 5), std::invalid_argument);
    std::vector<PredictionPoint> ok{point(100.0, 10.0)};
    CHECK_THROWS_AS(build_price_grid(ok, 1), std::invalid_argument);
}

TEST_CASE("PriceGrid points are uniform and hit both endpoints") {
    PriceGrid grid(80.0, 120.0, 41);
    CHECK(grid.points().front() == 80.0);
    CHECK(grid.points().back() == 120.0);
    CHECK(grid.spacing() == doctest::Approx(1.0));
    for (std::size_t i = 1; i < grid.size(); ++i) {
        CHECK(grid.price(i) - grid.price(i - 1) ==
              doctest::Approx(grid.spacing()).epsilon(1e-9));
    }
    CHECK(grid.nearest_index(99.4) == 19);
    CHECK(grid.nearest_index(99.6) == 20);
    CHECK(grid.nearest_index(-5.0) == 0);
    CHECK(grid.nearest_index(500.0) == 40);
}

TEST_CASE("expand_to_distribution peaks at mu and decays symmetrically") {
    auto grid = std::make_shared<const PriceGrid>(80.0, 120.0, 41);
    auto dist = expand_to_distribution(point(100.0, 10.0), grid);
    CHECK(dist.scores[20] == 1.0); // grid point exactly at mu
    for (std::size_t delta = 1; delta <= 20; ++delta) {
        CHECK(dist.scores[20 + delta] ==
              doctest::Approx(dist.scores[20 - delta]).epsilon(1e-12));
        CHECK(dist.scores[20 + delta] < dist.scores[20 + delta - 1]);
    }
}

TEST_CASE("expand_to_distribution hits exp(-2) at the truncation boundary") {
    auto grid = std::make_shared<const PriceGrid>(80.0, 120.0, 41);
    auto dist = expand_to_distribution(point(100.0, 10.0), grid);
    CHECK(dist.scores.front() == doctest::Approx(std::exp(-2.0)).epsilon(1e-9));
    CHECK(dist.scores.back() == doctest::Approx(std::exp(-2.0)).epsilon(1e-9));
}

TEST_CASE("expand_to_distribution zeroes scores beyond two sigma") {
    // grid reaches out to mu + 4 sigma; everything past 2 sigma must be 0
    auto grid = std::make_shared<const PriceGrid>(60.0, 140.0, 81);
    auto dist = expand_to_distribution(point(100.0, 10.0), grid);
    CHECK(dist.scores[grid->nearest_index(130.0)] == 0.0); // mu + 3 sigma
    CHECK(dist.scores[grid->nearest_index(70.0)] == 0.0);  // mu - 3 sigma
    CHECK(dist.scores[grid->nearest_index(120.0)] > 0.0);  // boundary included
}

TEST_CASE("expand_to_distribution warns when the window misses the grid") {
    auto grid = std::make_shared<const PriceGrid>(10.0, 20.0, 11);
    cfa::test::WarningCapture capture;
    auto dist = expand_to_distribution(point(100.0, 1.0), grid);
    for (double s : dist.scores) {
        CHECK(s == 0.0);
    }
    CHECK(capture.contains("no grid point"));
}

TEST_CASE("expand_to_distribution rejects non-positive sigma") {
    auto grid = std::make_shared<const PriceGrid>(10.0, 20.0, 11);
    CHECK_THROWS_AS(expand_to_distribution(point(15.0, 0.0), grid), std::invalid_argument);
    CHECK_THROWS_AS(expand_to_distribution(point(15.0, -1.0), grid), std::invalid_argument);
}

TEST_CASE("refining the grid moves the peak by at most one spacing") {
    double mu = 103.37;
    for (std::size_t coarse_n : {21, 41, 81}) {
        auto coarse = std::make_shared<const PriceGrid>(80.0, 120.0, coarse_n);
        auto fine = std::make_shared<const PriceGrid>(80.0, 120.0, 2 * coarse_n - 1);
        auto coarse_dist = expand_to_distribution(point(mu, 9.0), coarse);
        auto fine_dist = expand_to_distribution(point(mu, 9.0), fine);
        auto argmax = [](const std::vector<double>& v) {
            std::size_t best = 0;
            for (std::size_t i = 1; i < v.size(); ++i) {
                if (v[i] > v[best]) {
                    best = i;
                }
            }
            return best;
        };
        double coarse_peak = coarse->price(argmax(coarse_dist.scores));
        double fine_peak = fine->price(argmax(fine_dist.scores));
        CHECK(std::abs(coarse_peak - fine_peak) <= coarse->spacing() + 1e-12);
    }
}

TEST_CASE("DayDistribution CSV export lists price,score rows") {
    auto grid = std::make_shared<const PriceGrid>(0.0, 2.0, 3);
    auto dist = expand_to_distribution(point(1.0, 1.0), grid);
    std::ostringstream out;
    dist.write_csv(out);
    CHECK(out.str().substr(0, 12) == "price,score\n");
    CHECK(out.str().find("\n1,1\n") != std::string::npos);
}
