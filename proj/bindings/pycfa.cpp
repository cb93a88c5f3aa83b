// Python bindings for the fusion core. Operations take plain score lists and
// handle the shared-item-set plumbing internally, so the module is usable
// straight from numpy/pandas columns.

#include "cfa/combination.hpp"
#include "cfa/distribution.hpp"
#include "cfa/diversity.hpp"
#include "cfa/metrics.hpp"
#include "cfa/pipeline.hpp"
#include "cfa/predictors.hpp"
#include "cfa/run.hpp"
#include "cfa/scoring.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>

namespace py = pybind11;

namespace {

std::vector<cfa::ScoringSystem> make_systems(const std::vector<std::vector<double>>& scores) {
    if (scores.empty()) {
        throw std::invalid_argument("need at least one score vector");
    }
    auto items = std::make_shared<cfa::ItemSet>(scores.front().size());
    std::vector<cfa::ScoringSystem> systems;
    systems.reserve(scores.size());
    for (std::size_t j = 0; j < scores.size(); ++j) {
        systems.emplace_back(items, scores[j], "S" + std::to_string(j));
    }
    return systems;
}

cfa::WeightScheme make_scheme(const std::string& scheme,
                              const std::optional<std::vector<double>>& weights) {
    if (scheme == "ac") {
        return cfa::WeightScheme::ac();
    }
    if (!weights.has_value()) {
        throw std::invalid_argument("scheme '" + scheme + "' requires weights");
    }
    if (scheme == "wcds") {
        return cfa::WeightScheme::wcds({cfa::StrengthKind::diversity, *weights});
    }
    if (scheme == "wcp") {
        return cfa::WeightScheme::wcp({cfa::StrengthKind::performance, *weights});
    }
    throw std::invalid_argument("unknown scheme '" + scheme + "' (expected ac, wcds, wcp)");
}

cfa::ForecastConfig make_forecast_config(const std::string& kind, double alpha, int lag_order) {
    cfa::ForecastConfig config;
    if (kind == "naive") {
        config.kind = cfa::BaselineKind::naive;
    } else if (kind == "ema") {
        config.kind = cfa::BaselineKind::ema;
    } else if (kind == "ar") {
        config.kind = cfa::BaselineKind::ar_ols;
    } else {
        throw std::invalid_argument("unknown baseline kind '" + kind +
                                    "' (expected naive, ema, ar)");
    }
    config.alpha = alpha;
    config.lag_order = lag_order;
    return config;
}

py::dict fuse_day_py(const std::vector<double>& mus, const std::vector<double>& sigmas,
                     const std::vector<std::string>& labels, std::size_t grid_points,
                     const std::vector<std::string>& strategies, const std::string& wcds_scope,
                     const std::optional<std::vector<double>>& wcp_weights) {
    if (mus.size() != sigmas.size() || mus.size() != labels.size()) {
        throw std::invalid_argument("mus, sigmas, and labels must have equal length");
    }
    std::vector<cfa::PredictionPoint> points;
    points.reserve(mus.size());
    for (std::size_t j = 0; j < mus.size(); ++j) {
        points.push_back({labels[j], cfa::Date(), mus[j], sigmas[j]});
    }
    auto grid = std::make_shared<const cfa::PriceGrid>(cfa::build_price_grid(points, grid_points));
    std::vector<cfa::DayDistribution> distributions;
    distributions.reserve(points.size());
    for (const auto& point : points) {
        distributions.push_back(cfa::expand_to_distribution(point, grid));
    }

    std::vector<cfa::Strategy> parsed;
    for (const auto& name : strategies) {
        parsed.push_back(cfa::parse_strategy(name));
    }
    auto plan = cfa::FusionPlan::build(labels, parsed);

    cfa::FusionOptions options;
    if (wcds_scope == "group") {
        options.wcds_scope = cfa::WcdsScope::group;
    } else if (wcds_scope == "full") {
        options.wcds_scope = cfa::WcdsScope::full_set;
    } else {
        throw std::invalid_argument("wcds_scope must be 'group' or 'full'");
    }
    if (wcp_weights.has_value()) {
        options.performance_weights =
            cfa::StrengthVector{cfa::StrengthKind::performance, *wcp_weights};
    }

    cfa::DayFusionResult result = cfa::fuse_day(distributions, plan, options);

    py::dict individual;
    for (std::size_t j = 0; j < labels.size(); ++j) {
        individual[py::str(labels[j])] = result.individual_prices[j];
    }
    py::dict groups;
    for (std::size_t s = 0; s < plan.strategies.size(); ++s) {
        py::dict per_group;
        for (std::size_t g = 0; g < plan.groups.size(); ++g) {
            per_group[py::str(plan.group_label(g))] = result.group_prices[s][g];
        }
        groups[py::str(cfa::strategy_name(plan.strategies[s]))] = per_group;
    }
    py::dict strengths;
    for (std::size_t j = 0; j < labels.size(); ++j) {
        strengths[py::str(labels[j])] = result.full_set_strengths.values[j];
    }

    py::dict out;
    out["grid_lower"] = grid->lower();
    out["grid_upper"] = grid->upper();
    out["individual"] = individual;
    out["groups"] = groups;
    out["diversity_strength"] = strengths;
    return out;
}

py::dict run_fuse_py(const std::string& predictions_csv, const std::string& actuals_csv,
                     const std::string& out_dir, std::size_t grid_points,
                     const std::vector<std::string>& strategies, const std::string& wcds_scope,
                     const std::string& price_column, bool emit_diversity) {
    cfa::RunConfig config;
    config.predictions_path = predictions_csv;
    config.actuals_path = actuals_csv;
    config.out_dir = out_dir;
    config.grid_points = grid_points;
    config.price_column = price_column;
    config.emit_diversity = emit_diversity;
    config.strategies.clear();
    for (const auto& name : strategies) {
        config.strategies.push_back(cfa::parse_strategy(name));
    }
    config.wcds_scope = wcds_scope == "full" ? cfa::WcdsScope::full_set : cfa::WcdsScope::group;

    cfa::EvaluationReport report = cfa::run_pipeline(config);
    py::dict out;
    for (const auto& system : report.systems) {
        py::dict entry;
        entry["rmse"] = system.rmse;
        entry["mape_percent"] = system.mape_percent;
        if (system.days_improved.has_value()) {
            entry["days_improved"] = *system.days_improved;
        }
        out[py::str(system.label)] = entry;
    }
    return out;
}

} // namespace

PYBIND11_MODULE(pycfa, m) {
    m.doc() = "combinatorial fusion analysis: rank-score characteristic functions, "
              "cognitive diversity, and score/rank combinations";

    py::register_exception<std::invalid_argument>(m, "ValidationError", PyExc_ValueError);

    m.def(
        "normalize_scores",
        [](const std::vector<double>& raw) { return cfa::normalize_scores(raw); },
        py::arg("raw"), "Min-max normalization onto [0,1]; constant input maps to all ones.");

    m.def(
        "rank_from_scores",
        [](const std::vector<double>& scores) {
            return cfa::rank_from_scores(std::span<const double>(scores)).ranks;
        },
        py::arg("scores"),
        "Ranks 1..n, higher score first; ties keep item order.");

    m.def(
        "rsc_function",
        [](const std::vector<double>& scores) {
            return cfa::rsc_function(std::span<const double>(scores)).values;
        },
        py::arg("scores"), "Scores reindexed by rank position (non-increasing).");

    m.def(
        "cognitive_diversity",
        [](const std::vector<double>& a, const std::vector<double>& b) {
            auto systems = make_systems({a, b});
            return cfa::cognitive_diversity(systems[0], systems[1]);
        },
        py::arg("a"), py::arg("b"),
        "RMS distance between the two score vectors' RSC functions.");

    m.def(
        "diversity_strength",
        [](const std::vector<std::vector<double>>& scores, std::size_t j) {
            auto systems = make_systems(scores);
            return cfa::diversity_strength(systems, j);
        },
        py::arg("scores"), py::arg("j"),
        "Average cognitive diversity between system j and the others.");

    m.def(
        "diversity_matrix",
        [](const std::vector<std::vector<double>>& scores) {
            return cfa::diversity_matrix(make_systems(scores)).values;
        },
        py::arg("scores"), "All pairwise cognitive diversities.");

    m.def(
        "combine_scores",
        [](const std::vector<std::vector<double>>& scores, const std::string& scheme,
           const std::optional<std::vector<double>>& weights) {
            return cfa::combine_scores(make_systems(scores), make_scheme(scheme, weights))
                .values;
        },
        py::arg("scores"), py::arg("scheme") = "ac", py::arg("weights") = py::none(),
        "Weighted mean of scores per item; the best item maximizes the result.");

    m.def(
        "combine_ranks",
        [](const std::vector<std::vector<double>>& scores, const std::string& scheme,
           const std::optional<std::vector<double>>& weights) {
            return cfa::combine_ranks(make_systems(scores), make_scheme(scheme, weights))
                .values;
        },
        py::arg("scores"), py::arg("scheme") = "ac", py::arg("weights") = py::none(),
        "Reciprocal-weighted mean rank per item; the best item minimizes the result.");

    m.def(
        "residual_stddev",
        [](const std::vector<double>& predicted, const std::vector<double>& actual) {
            return cfa::residual_stddev(predicted, actual);
        },
        py::arg("predicted"), py::arg("actual"),
        "Population standard deviation of (actual - predicted).");

    py::class_<cfa::PriceGrid>(m, "PriceGrid")
        .def(py::init<double, double, std::size_t>(), py::arg("lower"), py::arg("upper"),
             py::arg("resolution"))
        .def_property_readonly("lower", &cfa::PriceGrid::lower)
        .def_property_readonly("upper", &cfa::PriceGrid::upper)
        .def_property_readonly("spacing", &cfa::PriceGrid::spacing)
        .def_property_readonly("points",
                               [](const cfa::PriceGrid& g) { return g.points(); })
        .def("nearest_index", &cfa::PriceGrid::nearest_index, py::arg("price"))
        .def("__len__", &cfa::PriceGrid::size);

    m.def(
        "build_price_grid",
        [](const std::vector<double>& mus, const std::vector<double>& sigmas,
           std::size_t resolution) {
            if (mus.size() != sigmas.size()) {
                throw std::invalid_argument("mus and sigmas must have equal length");
            }
            std::vector<cfa::PredictionPoint> points;
            for (std::size_t j = 0; j < mus.size(); ++j) {
                points.push_back({"m" + std::to_string(j), cfa::Date(), mus[j], sigmas[j]});
            }
            return cfa::build_price_grid(points, resolution);
        },
        py::arg("mus"), py::arg("sigmas"), py::arg("resolution") = 2001,
        "Union of the models' mu +/- 2 sigma ranges, clamped at zero.");

    m.def(
        "expand_to_distribution",
        [](double mu, double sigma, const cfa::PriceGrid& grid) {
            auto shared = std::make_shared<const cfa::PriceGrid>(grid);
            return cfa::expand_to_distribution({"m", cfa::Date(), mu, sigma}, shared).scores;
        },
        py::arg("mu"), py::arg("sigma"), py::arg("grid"),
        "Truncated (2 sigma), peak-normalized normal scores over the grid.");

    m.def("enumerate_groups", &cfa::enumerate_groups, py::arg("t"),
          "All subsets of {0..t-1} with two or more members, by size then lexicographic.");

    m.def(
        "select_price",
        [](const std::vector<double>& values, const std::string& basis,
           const std::vector<double>& prices) {
            if (values.size() != prices.size()) {
                throw std::invalid_argument("values and prices must have equal length");
            }
            std::size_t best = 0;
            bool maximize = basis == "score";
            if (!maximize && basis != "rank") {
                throw std::invalid_argument("basis must be 'score' or 'rank'");
            }
            for (std::size_t i = 1; i < values.size(); ++i) {
                if (maximize ? values[i] > values[best] : values[i] < values[best]) {
                    best = i;
                }
            }
            return prices[best];
        },
        py::arg("values"), py::arg("basis"), py::arg("prices"),
        "Winning price: argmax for score basis, argmin for rank basis; ties go to the "
        "earliest (lowest) price.");

    m.def("fuse_day", &fuse_day_py, py::arg("mus"), py::arg("sigmas"), py::arg("labels"),
          py::arg("grid_points") = 2001,
          py::arg("strategies") =
              std::vector<std::string>{"sc-ac", "rc-ac", "sc-wcds", "rc-wcds"},
          py::arg("wcds_scope") = "group", py::arg("wcp_weights") = py::none(),
          "One day of the fusion pipeline: shared grid, distributions, per-group prices.");

    m.def(
        "rmse",
        [](const std::vector<double>& predicted, const std::vector<double>& actual) {
            return cfa::rmse(predicted, actual);
        },
        py::arg("predicted"), py::arg("actual"));

    m.def(
        "mape",
        [](const std::vector<double>& predicted, const std::vector<double>& actual) {
            return cfa::mape(predicted, actual);
        },
        py::arg("predicted"), py::arg("actual"), "Mean absolute percentage error in percent.");

    m.def(
        "predict_next",
        [](const std::vector<double>& history, const std::string& kind, double alpha,
           int lag_order) {
            return cfa::predict_next(history, make_forecast_config(kind, alpha, lag_order));
        },
        py::arg("history"), py::arg("kind") = "naive", py::arg("alpha") = 0.3,
        py::arg("lag_order") = 1, "One-step-ahead baseline prediction.");

    m.def(
        "baseline_predict",
        [](const std::vector<double>& series, const std::string& kind, double alpha,
           int lag_order, std::size_t test_days) {
            return cfa::baseline_predict(series, make_forecast_config(kind, alpha, lag_order),
                                         test_days)
                .predictions;
        },
        py::arg("series"), py::arg("kind"), py::arg("alpha") = 0.3, py::arg("lag_order") = 1,
        py::arg("test_days") = 1,
        "Expanding-window backtest over the trailing test days of the series.");

    m.def("run_fuse", &run_fuse_py, py::arg("predictions_csv"), py::arg("actuals_csv"),
          py::arg("out_dir"), py::arg("grid_points") = 2001,
          py::arg("strategies") =
              std::vector<std::string>{"sc-ac", "rc-ac", "sc-wcds", "rc-wcds"},
          py::arg("wcds_scope") = "group", py::arg("price_column") = "price",
          py::arg("emit_diversity") = false,
          "Full fusion pipeline over CSV inputs; returns {label: metrics} and writes "
          "reports to out_dir.");
}
