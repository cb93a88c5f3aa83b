#include "cfa/run.hpp"

#include "cfa/csv.hpp"
#include "cfa/distribution.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace cfa {

namespace fs = std::filesystem;

namespace {

// Records everything written so a failed run leaves no partial outputs.
class OutputTracker {
public:
    ~OutputTracker() {
        if (committed_) {
            return;
        }
        std::error_code ec;
        for (auto it = files_.rbegin(); it != files_.rend(); ++it) {
            fs::remove(*it, ec);
        }
        for (auto it = dirs_.rbegin(); it != dirs_.rend(); ++it) {
            fs::remove(*it, ec); // only succeeds when empty
        }
    }

    void ensure_dir(const fs::path& dir) {
        if (dir.empty() || fs::exists(dir)) {
            return;
        }
        ensure_dir(dir.parent_path());
        fs::create_directory(dir);
        dirs_.push_back(dir);
    }

    template <typename Writer>
    void write_file(const fs::path& path, Writer&& writer) {
        std::ofstream out(path);
        if (!out) {
            throw std::runtime_error("cannot write file: " + path.string());
        }
        files_.push_back(path);
        writer(out);
        out.flush();
        if (!out.good()) {
            throw std::runtime_error("write failed: " + path.string());
        }
    }

    void commit() { committed_ = true; }

private:
    std::vector<fs::path> files_;
    std::vector<fs::path> dirs_;
    bool committed_ = false;
};

std::vector<double> align_actuals(const AlignedTable& predictions, const AlignedTable& actuals,
                                  const std::string& price_column) {
    const auto& prices = actuals.column(price_column);
    std::vector<double> aligned;
    aligned.reserve(predictions.rows());
    for (const Date& day : predictions.dates) {
        auto it = std::lower_bound(actuals.dates.begin(), actuals.dates.end(), day);
        if (it == actuals.dates.end() || !(*it == day)) {
            throw std::invalid_argument("no actual price for prediction date " + day.to_string());
        }
        aligned.push_back(prices[static_cast<std::size_t>(it - actuals.dates.begin())]);
    }
    return aligned;
}

struct FusedDays {
    std::vector<std::string> labels;
    std::vector<double> sigmas;
    std::vector<DayFusionResult> results;
};

// Expansion + fusion over every prediction day: fixed per-model sigma from
// the test-set residuals, a fresh shared grid per day, fused via the plan.
FusedDays fuse_all_days(const AlignedTable& predictions, std::span<const double> actuals,
                        const RunConfig& config, const FusionPlan& plan,
                        const FusionOptions& options) {
    FusedDays fused;
    fused.labels = predictions.column_names;

    for (std::size_t j = 0; j < predictions.columns.size(); ++j) {
        double sigma = residual_stddev(predictions.columns[j], actuals);
        if (!(sigma > 0.0)) {
            throw std::invalid_argument("model '" + fused.labels[j] +
                                        "' has zero residual spread on the test set; its "
                                        "predictions cannot be expanded into a distribution");
        }
        fused.sigmas.push_back(sigma);
    }

    fused.results.reserve(predictions.rows());
    std::vector<PredictionPoint> points(fused.labels.size());
    for (std::size_t d = 0; d < predictions.rows(); ++d) {
        for (std::size_t j = 0; j < fused.labels.size(); ++j) {
            points[j] = {fused.labels[j], predictions.dates[d], predictions.columns[j][d],
                         fused.sigmas[j]};
        }
        auto grid = std::make_shared<const PriceGrid>(build_price_grid(points, config.grid_points));
        std::vector<DayDistribution> distributions;
        distributions.reserve(points.size());
        for (const auto& point : points) {
            distributions.push_back(expand_to_distribution(point, grid));
        }
        fused.results.push_back(fuse_day(distributions, plan, options));
    }
    return fused;
}

void validate_actuals_nonzero(const AlignedTable& predictions, std::span<const double> actuals) {
    for (std::size_t d = 0; d < actuals.size(); ++d) {
        if (actuals[d] == 0.0) {
            throw std::invalid_argument("actual price on " + predictions.dates[d].to_string() +
                                        " is zero; MAPE is undefined");
        }
    }
}

FusionOptions make_fusion_options(const RunConfig& config, std::size_t model_count) {
    FusionOptions options;
    options.wcds_scope = config.wcds_scope;
    bool wcp = std::any_of(config.strategies.begin(), config.strategies.end(), [](Strategy s) {
        return s == Strategy::sc_wcp || s == Strategy::rc_wcp;
    });
    if (wcp) {
        if (config.wcp_weights.size() != model_count) {
            throw std::invalid_argument("WCP strategies need " + std::to_string(model_count) +
                                        " performance weights, got " +
                                        std::to_string(config.wcp_weights.size()));
        }
        options.performance_weights =
            StrengthVector{StrengthKind::performance, config.wcp_weights};
    }
    return options;
}

} // namespace

void run_predict(const RunConfig& config) {
    AlignedTable table =
        load_price_table(config.input_path, "date", {config.price_column});
    SplitSpec split = make_split(table.rows(), config.train_fraction);
    std::size_t test_days = table.rows() - split.boundary;
    const auto& prices = table.columns[0];

    AlignedTable predictions;
    predictions.dates.assign(table.dates.begin() + static_cast<std::ptrdiff_t>(split.boundary),
                             table.dates.end());
    for (const auto& baseline : config.baselines) {
        ForecastSeries series = baseline_predict(prices, baseline, test_days);
        if (std::find(predictions.column_names.begin(), predictions.column_names.end(),
                      series.model_label) != predictions.column_names.end()) {
            throw std::invalid_argument("duplicate baseline '" + series.model_label + "'");
        }
        predictions.column_names.push_back(series.model_label);
        predictions.columns.push_back(std::move(series.predictions));
    }

    OutputTracker tracker;
    tracker.ensure_dir(config.out_dir);
    fs::path out_dir(config.out_dir);
    tracker.write_file(out_dir / "predictions.csv",
                       [&](std::ostream& out) { predictions.write_csv(out); });

    if (!config.market_path.empty()) {
        AlignedTable market = load_price_table(config.market_path);
        std::optional<SplitSpec> market_split;
        if (config.normalization == NormalizationMode::train) {
            market_split = make_split(market.rows(), config.train_fraction);
        }
        AlignedTable normalized = normalize_features(market, market_split);
        tracker.write_file(out_dir / "features_normalized.csv",
                           [&](std::ostream& out) { normalized.write_csv(out); });
    }
    tracker.commit();
}

EvaluationReport run_pipeline(const RunConfig& config) {
    AlignedTable predictions = load_price_table(config.predictions_path);
    AlignedTable actuals_table =
        load_price_table(config.actuals_path, "date", {config.price_column});
    std::vector<double> actuals = align_actuals(predictions, actuals_table, config.price_column);
    validate_actuals_nonzero(predictions, actuals);

    FusionPlan plan = FusionPlan::build(predictions.column_names, config.strategies);
    FusionOptions options = make_fusion_options(config, plan.model_labels.size());
    FusedDays fused = fuse_all_days(predictions, actuals, config, plan, options);

    std::vector<ImprovementRecord> records =
        improvement_analysis(fused.results, plan, actuals);
    EvaluationReport report = build_report(plan, fused.results, records, actuals);

    OutputTracker tracker;
    tracker.ensure_dir(config.out_dir);
    fs::path out_dir(config.out_dir);
    for (Strategy strategy : plan.strategies) {
        std::string slug = strategy_slug(strategy);
        tracker.write_file(out_dir / ("strategy_" + slug + ".csv"), [&](std::ostream& out) {
            write_strategy_table(out, plan, fused.results, strategy);
        });
        tracker.write_file(out_dir / ("distances_" + slug + ".csv"), [&](std::ostream& out) {
            write_distance_table(out, plan, records, strategy);
        });
        tracker.write_file(out_dir / ("improvement_" + slug + ".csv"), [&](std::ostream& out) {
            write_improvement_csv(out, records, strategy);
        });
    }
    if (config.emit_diversity) {
        tracker.ensure_dir(out_dir / "diversity");
        for (const auto& day : fused.results) {
            tracker.write_file(out_dir / "diversity" / (day.day.to_string() + ".csv"),
                               [&](std::ostream& out) { day.diversity.write_csv(out); });
        }
    }
    tracker.write_file(out_dir / "summary.csv",
                       [&](std::ostream& out) { report.write_csv(out); });
    tracker.write_file(out_dir / "summary.txt",
                       [&](std::ostream& out) { report.write_text(out); });
    tracker.commit();
    return report;
}

void run_diversity(const RunConfig& config) {
    AlignedTable predictions = load_price_table(config.predictions_path);
    AlignedTable actuals_table =
        load_price_table(config.actuals_path, "date", {config.price_column});
    std::vector<double> actuals = align_actuals(predictions, actuals_table, config.price_column);

    const auto& labels = predictions.column_names;
    if (labels.size() < 2) {
        throw std::invalid_argument("diversity needs at least two model columns, got " +
                                    std::to_string(labels.size()));
    }
    std::vector<double> sigmas;
    for (std::size_t j = 0; j < predictions.columns.size(); ++j) {
        double sigma = residual_stddev(predictions.columns[j], actuals);
        if (!(sigma > 0.0)) {
            throw std::invalid_argument("model '" + labels[j] +
                                        "' has zero residual spread on the test set; its "
                                        "predictions cannot be expanded into a distribution");
        }
        sigmas.push_back(sigma);
    }

    OutputTracker tracker;
    tracker.ensure_dir(config.out_dir);
    fs::path out_dir(config.out_dir);
    tracker.ensure_dir(out_dir / "diversity");
    tracker.ensure_dir(out_dir / "rsc");

    std::vector<StrengthVector> strengths_by_day;
    strengths_by_day.reserve(predictions.rows());
    std::vector<PredictionPoint> points(labels.size());
    for (std::size_t d = 0; d < predictions.rows(); ++d) {
        for (std::size_t j = 0; j < labels.size(); ++j) {
            points[j] = {labels[j], predictions.dates[d], predictions.columns[j][d], sigmas[j]};
        }
        auto grid = std::make_shared<const PriceGrid>(build_price_grid(points, config.grid_points));
        auto items = std::make_shared<ItemSet>(grid->size());
        std::vector<ScoringSystem> systems;
        std::vector<RSCFunction> rscs;
        systems.reserve(points.size());
        rscs.reserve(points.size());
        for (const auto& point : points) {
            DayDistribution dist = expand_to_distribution(point, grid);
            rscs.push_back(rsc_function(std::span<const double>(dist.scores)));
            systems.emplace_back(items, std::move(dist.scores), point.model_label);
        }
        DiversityMatrix matrix = diversity_matrix(systems);
        strengths_by_day.push_back(diversity_strengths(systems));

        tracker.write_file(out_dir / "diversity" / (predictions.dates[d].to_string() + ".csv"),
                           [&](std::ostream& out) { matrix.write_csv(out); });

        // Per-day RSC functions, the plot-ready view of how the systems
        // diverge: one row per rank, one score column per model.
        tracker.write_file(
            out_dir / "rsc" / (predictions.dates[d].to_string() + ".csv"),
            [&](std::ostream& out) {
                std::vector<std::string> row;
                row.push_back("rank");
                row.insert(row.end(), labels.begin(), labels.end());
                out << csv::join_line(row) << '\n';
                for (std::size_t i = 0; i < grid->size(); ++i) {
                    row.clear();
                    row.push_back(std::to_string(i + 1));
                    for (const auto& rsc : rscs) {
                        row.push_back(csv::format_sig(rsc.values[i], 9));
                    }
                    out << csv::join_line(row) << '\n';
                }
            });
    }

    tracker.write_file(out_dir / "diversity_strengths.csv", [&](std::ostream& out) {
        std::vector<std::string> row;
        row.push_back("date");
        row.insert(row.end(), labels.begin(), labels.end());
        out << csv::join_line(row) << '\n';
        for (std::size_t d = 0; d < strengths_by_day.size(); ++d) {
            row.clear();
            row.push_back(predictions.dates[d].to_string());
            for (double ds : strengths_by_day[d].values) {
                row.push_back(csv::format_sig(ds, 9));
            }
            out << csv::join_line(row) << '\n';
        }
    });
    tracker.commit();
}

EvaluationReport run_eval(const RunConfig& config) {
    AlignedTable predictions = load_price_table(config.predictions_path);
    AlignedTable actuals_table =
        load_price_table(config.actuals_path, "date", {config.price_column});
    std::vector<double> actuals = align_actuals(predictions, actuals_table, config.price_column);

    EvaluationReport report;
    report.total_days = predictions.rows();
    for (std::size_t c = 0; c < predictions.columns.size(); ++c) {
        SystemScore score;
        score.label = predictions.column_names[c];
        score.rmse = rmse(predictions.columns[c], actuals);
        score.mape_percent = mape(predictions.columns[c], actuals);
        report.systems.push_back(std::move(score));
    }

    if (!config.out_dir.empty()) {
        OutputTracker tracker;
        tracker.ensure_dir(config.out_dir);
        fs::path out_dir(config.out_dir);
        tracker.write_file(out_dir / "eval_summary.csv",
                           [&](std::ostream& out) { report.write_csv(out); });
        tracker.write_file(out_dir / "eval_summary.txt",
                           [&](std::ostream& out) { report.write_text(out); });
        tracker.commit();
    }
    return report;
}

} // namespace cfa
