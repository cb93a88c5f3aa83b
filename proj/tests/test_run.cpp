#include "cfa/run.hpp"

#include "cfa/csv.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cfa;
using cfa::test::TempDir;
using cfa::test::write_text;

namespace fs = std::filesystem;

namespace {

// 40 deterministic daily prices around 100.
std::string synthetic_prices(int days = 40) {
    std::ostringstream out;
    out << "date,price\n";
    Date day(2024, 1, 1);
    double price = 100.0;
    for (int i = 0; i < days; ++i) {
        out << day.to_string() << ',' << csv::format_full(price) << '\n';
        price += (i % 7 < 3 ? 1.7 : -1.1) + 0.13 * (i % 5);
        day = day.next_day();
    }
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::size_t count_lines(const std::string& text) {
    std::size_t lines = 0;
    for (char c : text) {
        if (c == '\n') {
            ++lines;
        }
    }
    return lines;
}

} // namespace

TEST_CASE("run_predict emits one prediction column per baseline over the test split") {
    TempDir dir("run_predict");
    write_text(dir.file("prices.csv"), synthetic_prices());

    RunConfig config;
    config.input_path = dir.file("prices.csv");
    config.out_dir = dir.file("out");
    run_predict(config);

    auto table = load_price_table(dir.file("out/predictions.csv"));
    CHECK(table.column_names ==
          std::vector<std::string>{"naive", "ema0.3", "ema0.7", "ar1", "ar3"});
    CHECK(table.rows() == 8); // 40 days at 0.8 -> 8 test days
    CHECK(table.dates.front().to_string() == "2024-02-02");
}

TEST_CASE("run_predict normalizes market features when given") {
    TempDir dir("run_predict_market");
    write_text(dir.file("prices.csv"), synthetic_prices());
    write_text(dir.file("market.csv"), "date,eth,gold\n"
                                       "2024-01-01,10,3\n"
                                       "2024-01-02,20,\n"
                                       "2024-01-03,15,5\n"
                                       "2024-01-04,30,4\n"
                                       "2024-01-05,25,6\n");

    RunConfig config;
    config.input_path = dir.file("prices.csv");
    config.market_path = dir.file("market.csv");
    config.out_dir = dir.file("out");

    SUBCASE("training statistics by default") {
        run_predict(config);
        auto features = load_price_table(dir.file("out/features_normalized.csv"));
        // train rows = 4 of 5; eth train min 10 max 30
        CHECK(features.column("eth") == std::vector<double>{0.0, 0.5, 0.25, 1.0, 0.75});
    }
    SUBCASE("global statistics on request") {
        config.normalization = NormalizationMode::global;
        run_predict(config);
        auto features = load_price_table(dir.file("out/features_normalized.csv"));
        const auto& gold = features.column("gold");
        CHECK(gold == std::vector<double>{0.0, 0.0, 2.0 / 3.0, 1.0 / 3.0, 1.0});
    }
}

TEST_CASE("run_pipeline emits tables, improvements, and summaries") {
    TempDir dir("run_fuse");
    write_text(dir.file("prices.csv"), synthetic_prices());

    RunConfig config;
    config.input_path = dir.file("prices.csv");
    config.out_dir = dir.file("pred");
    run_predict(config);

    config.predictions_path = dir.file("pred/predictions.csv");
    config.actuals_path = dir.file("prices.csv");
    config.out_dir = dir.file("out");
    config.grid_points = 301;
    config.emit_diversity = true;
    auto report = run_pipeline(config);

    REQUIRE(report.systems.size() == 9); // 5 baselines + 4 strategies
    CHECK(report.total_days == 8);
    for (const auto& system : report.systems) {
        CHECK(system.rmse >= 0.0);
        CHECK(system.mape_percent >= 0.0);
    }

    for (const char* slug : {"sc_ac", "rc_ac", "sc_wcds", "rc_wcds"}) {
        auto table = load_price_table(dir.file(std::string("out/strategy_") + slug + ".csv"));
        CHECK(table.rows() == 8);
        CHECK(table.column_names.size() == 31); // 5 individuals + 26 groups

        std::string improvement =
            read_file(dir.file(std::string("out/improvement_") + slug + ".csv"));
        CHECK(count_lines(improvement) == 9); // header + 8 days

        auto distances = load_price_table(dir.file(std::string("out/distances_") + slug + ".csv"));
        CHECK(distances.column_names.size() == 31);
    }
    CHECK(fs::exists(dir.file("out/summary.csv")));
    CHECK(fs::exists(dir.file("out/summary.txt")));
    CHECK(fs::exists(dir.file("out/diversity/2024-02-02.csv")));

    // oracle-best selection can never trail the best individual
    double best_individual = report.systems[0].rmse;
    for (std::size_t j = 1; j < 5; ++j) {
        best_individual = std::min(best_individual, report.systems[j].rmse);
    }
    for (std::size_t s = 5; s < report.systems.size(); ++s) {
        CHECK(report.systems[s].rmse <= best_individual + 1e-9);
    }
}

TEST_CASE("run_pipeline is byte-deterministic") {
    TempDir dir("run_det");
    write_text(dir.file("prices.csv"), synthetic_prices());

    RunConfig config;
    config.input_path = dir.file("prices.csv");
    config.out_dir = dir.file("pred");
    run_predict(config);

    config.predictions_path = dir.file("pred/predictions.csv");
    config.actuals_path = dir.file("prices.csv");
    config.grid_points = 201;

    config.out_dir = dir.file("a");
    run_pipeline(config);
    config.out_dir = dir.file("b");
    run_pipeline(config);

    for (const auto& entry : fs::directory_iterator(dir.file("a"))) {
        auto name = entry.path().filename().string();
        CHECK(read_file(entry.path().string()) == read_file(dir.file("b/" + name)));
    }
}

TEST_CASE("run_pipeline wcds scope changes WCDS tables only") {
    TempDir dir("run_scope");
    write_text(dir.file("prices.csv"), synthetic_prices());

    RunConfig config;
    config.input_path = dir.file("prices.csv");
    config.out_dir = dir.file("pred");
    run_predict(config);

    config.predictions_path = dir.file("pred/predictions.csv");
    config.actuals_path = dir.file("prices.csv");
    config.grid_points = 301;

    config.wcds_scope = WcdsScope::group;
    config.out_dir = dir.file("g");
    run_pipeline(config);
    config.wcds_scope = WcdsScope::full_set;
    config.out_dir = dir.file("f");
    run_pipeline(config);

    // AC does not involve diversity strengths, so its tables are identical;
    // WCDS weights change with the scope, so its tables differ.
    CHECK(read_file(dir.file("g/strategy_sc_ac.csv")) ==
          read_file(dir.file("f/strategy_sc_ac.csv")));
    CHECK(read_file(dir.file("g/strategy_rc_ac.csv")) ==
          read_file(dir.file("f/strategy_rc_ac.csv")));
    CHECK(read_file(dir.file("g/strategy_rc_wcds.csv")) !=
          read_file(dir.file("f/strategy_rc_wcds.csv")));
}

TEST_CASE("run_pipeline cleans up partial outputs on failure") {
    TempDir dir("run_cleanup");
    write_text(dir.file("prices.csv"), synthetic_prices());

    RunConfig config;
    config.input_path = dir.file("prices.csv");
    config.out_dir = dir.file("pred");
    run_predict(config);

    config.predictions_path = dir.file("pred/predictions.csv");
    config.actuals_path = dir.file("prices.csv");
    config.grid_points = 101;
    config.out_dir = dir.file("out");

    // summary.csv exists as a directory, so the very last write fails after
    // the strategy tables have been written
    fs::create_directories(dir.file("out/summary.csv"));
    CHECK_THROWS(run_pipeline(config));
    CHECK_FALSE(fs::exists(dir.file("out/strategy_sc_ac.csv")));
    CHECK_FALSE(fs::exists(dir.file("out/improvement_rc_wcds.csv")));
}

TEST_CASE("run_pipeline rejects unusable inputs with context") {
    TempDir dir("run_reject");
    write_text(dir.file("prices.csv"), synthetic_prices());
    RunConfig config;
    config.actuals_path = dir.file("prices.csv");
    config.out_dir = dir.file("out");

    SUBCASE("predictions with zero residual spread are rejected") {
        // predictions equal to the actuals give zero residual spread
        std::ostringstream perfect;
        perfect << "date,perfect,naive\n";
        auto actuals = load_price_table(dir.file("prices.csv"));
        for (std::size_t r = 36; r < 38; ++r) {
            perfect << actuals.dates[r].to_string() << ','
                    << csv::format_full(actuals.columns[0][r]) << ",17\n";
        }
        write_text(dir.file("perfect.csv"), perfect.str());
        config.predictions_path = dir.file("perfect.csv");
        CHECK_THROWS_WITH_AS(run_pipeline(config), doctest::Contains("perfect"),
                             std::invalid_argument);
    }
    SUBCASE("prediction dates missing from actuals") {
        write_text(dir.file("pred.csv"), "date,a,b\n"
                                         "2030-01-01,100,101\n"
                                         "2030-01-02,100,102\n");
        config.predictions_path = dir.file("pred.csv");
        CHECK_THROWS_WITH_AS(run_pipeline(config), doctest::Contains("2030-01-01"),
                             std::invalid_argument);
    }
    SUBCASE("zero actual price") {
        write_text(dir.file("zero.csv"), "date,price\n"
                                         "2024-01-01,100\n"
                                         "2024-01-02,0\n");
        write_text(dir.file("pred.csv"), "date,a,b\n"
                                         "2024-01-01,100,101\n"
                                         "2024-01-02,99,102\n");
        config.predictions_path = dir.file("pred.csv");
        config.actuals_path = dir.file("zero.csv");
        CHECK_THROWS_WITH_AS(run_pipeline(config), doctest::Contains("2024-01-02"),
                             std::invalid_argument);
    }
    SUBCASE("single prediction column cannot be fused") {
        write_text(dir.file("pred.csv"), "date,a\n2024-02-02,100\n");
        config.predictions_path = dir.file("pred.csv");
        CHECK_THROWS_AS(run_pipeline(config), std::invalid_argument);
    }
}

TEST_CASE("run_pipeline honors the strategy selection and WCP weights") {
    TempDir dir("run_wcp");
    write_text(dir.file("prices.csv"), synthetic_prices());

    RunConfig config;
    config.input_path = dir.file("prices.csv");
    config.out_dir = dir.file("pred");
    run_predict(config);

    config.predictions_path = dir.file("pred/predictions.csv");
    config.actuals_path = dir.file("prices.csv");
    config.grid_points = 101;
    config.out_dir = dir.file("out");
    config.strategies = {Strategy::sc_wcp, Strategy::rc_wcp};

    CHECK_THROWS_WITH_AS(run_pipeline(config), doctest::Contains("performance weights"),
                         std::invalid_argument);

    config.wcp_weights = {1.0, 2.0, 3.0, 4.0, 5.0};
    auto report = run_pipeline(config);
    CHECK(report.systems.size() == 7); // 5 + 2 strategies
    CHECK(fs::exists(dir.file("out/strategy_sc_wcp.csv")));
    CHECK(fs::exists(dir.file("out/strategy_rc_wcp.csv")));
}

TEST_CASE("run_diversity writes per-day matrices and strengths") {
    TempDir dir("run_div");
    write_text(dir.file("prices.csv"), synthetic_prices());

    RunConfig config;
    config.input_path = dir.file("prices.csv");
    config.out_dir = dir.file("pred");
    run_predict(config);

    config.predictions_path = dir.file("pred/predictions.csv");
    config.actuals_path = dir.file("prices.csv");
    config.grid_points = 101;
    config.out_dir = dir.file("out");
    run_diversity(config);

    CHECK(fs::exists(dir.file("out/diversity/2024-02-02.csv")));
    auto strengths = load_price_table(dir.file("out/diversity_strengths.csv"));
    CHECK(strengths.rows() == 8);
    CHECK(strengths.column_names.size() == 5);
    for (const auto& column : strengths.columns) {
        for (double v : column) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }

    // per-day RSC export: one row per rank, columns per model, non-increasing
    auto rsc = csv::read_file(dir.file("out/rsc/2024-02-02.csv"));
    REQUIRE(rsc.header.size() == 6);
    CHECK(rsc.header[0] == "rank");
    CHECK(rsc.rows.size() == 101); // one row per grid point
    for (std::size_t c = 1; c < rsc.header.size(); ++c) {
        double previous = csv::parse_number(rsc.rows[0][c]);
        CHECK(previous == 1.0); // rank 1 holds the peak score
        for (const auto& row : rsc.rows) {
            double value = csv::parse_number(row[c]);
            CHECK(value <= previous + 1e-12);
            previous = value;
        }
    }
}

TEST_CASE("run_eval reports per-column metrics") {
    TempDir dir("run_eval");
    write_text(dir.file("actuals.csv"), "date,price\n"
                                        "2024-01-01,100\n"
                                        "2024-01-02,200\n");
    write_text(dir.file("pred.csv"), "date,good,off\n"
                                     "2024-01-01,99,90\n"
                                     "2024-01-02,202,210\n");

    RunConfig config;
    config.predictions_path = dir.file("pred.csv");
    config.actuals_path = dir.file("actuals.csv");
    config.out_dir = dir.file("out");
    auto report = run_eval(config);

    REQUIRE(report.systems.size() == 2);
    CHECK(report.systems[0].label == "good");
    CHECK(report.systems[0].mape_percent == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fs::exists(dir.file("out/eval_summary.csv")));
    CHECK(fs::exists(dir.file("out/eval_summary.txt")));
}
