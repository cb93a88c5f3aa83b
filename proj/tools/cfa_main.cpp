// cfa: combinatorial fusion of forecast scoring systems.
//
// Subcommands mirror the pipeline phases: predict (baseline forecasts),
// fuse (distribution expansion + combination + improvement analysis),
// diversity (per-day cognitive-diversity matrices), eval (RMSE/MAPE).

#include "cfa/csv.hpp"
#include "cfa/run.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

// Exit codes: 0 success, 1 input/validation error, 2 internal invariant
// violation.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInternal = 2;

struct CliState {
    cfa::RunConfig config;
    std::string config_path;
    std::string strategies = "sc-ac,rc-ac,sc-wcds,rc-wcds";
    std::string wcds_scope = "group";
    std::string normalization = "train";
    std::string baselines = "naive,ema:0.3,ema:0.7,ar:1,ar:3";
    std::string wcp_weights;
    std::string seed;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::string current;
    for (char c : text) {
        if (c == ',') {
            if (!current.empty()) {
                items.push_back(current);
                current.clear();
            }
        } else {
            current += c;
        }
    }
    if (!current.empty()) {
        items.push_back(current);
    }
    return items;
}

std::string trim(const std::string& text) {
    auto begin = text.find_first_not_of(" \t\r");
    auto end = text.find_last_not_of(" \t\r");
    return begin == std::string::npos ? "" : text.substr(begin, end - begin + 1);
}

// Flat key=value configuration. Keys are the long flag names without the
// leading dashes; '#' starts a comment. A key is applied only when the
// matching flag was not given, so flags (and CFA_* environment variables,
// which CLI11 counts as given) override the file, and the file overrides
// built-in defaults.
void apply_config_file(CLI::App* cmd, CliState& state) {
    if (state.config_path.empty()) {
        return;
    }
    std::ifstream in(state.config_path);
    if (!in) {
        throw std::runtime_error("cannot open config file: " + state.config_path);
    }

    auto assign = [&](const std::string& key, const std::string& value) {
        auto set_size = [&](std::size_t& target) {
            target = static_cast<std::size_t>(cfa::csv::parse_number(value));
        };
        if (key == "input") {
            state.config.input_path = value;
        } else if (key == "market") {
            state.config.market_path = value;
        } else if (key == "predictions") {
            state.config.predictions_path = value;
        } else if (key == "actuals") {
            state.config.actuals_path = value;
        } else if (key == "price-column") {
            state.config.price_column = value;
        } else if (key == "out") {
            state.config.out_dir = value;
        } else if (key == "train-fraction") {
            state.config.train_fraction = cfa::csv::parse_number(value);
        } else if (key == "grid-points") {
            set_size(state.config.grid_points);
        } else if (key == "strategies") {
            state.strategies = value;
        } else if (key == "wcds-scope") {
            state.wcds_scope = value;
        } else if (key == "normalization") {
            state.normalization = value;
        } else if (key == "baselines") {
            state.baselines = value;
        } else if (key == "wcp-weights") {
            state.wcp_weights = value;
        } else if (key == "seed") {
            state.seed = value;
        } else if (key == "emit-diversity") {
            state.config.emit_diversity = value == "1" || value == "true";
        } else {
            throw std::invalid_argument(state.config_path + ": unknown config key '" + key +
                                        "'");
        }
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string text = trim(line);
        if (text.empty() || text[0] == '#') {
            continue;
        }
        auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(state.config_path + ":" + std::to_string(line_no) +
                                        ": expected key=value");
        }
        std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));

        const CLI::Option* option = cmd->get_option_no_throw("--" + key);
        if (option == nullptr) {
            throw std::invalid_argument(state.config_path + ": key '" + key +
                                        "' is not an option of subcommand '" +
                                        cmd->get_name() + "'");
        }
        if (option->count() > 0) {
            continue; // flag or environment value wins
        }
        assign(key, value);
    }
}

void finalize(CliState& state) {
    auto& config = state.config;

    config.strategies.clear();
    for (const auto& name : split_list(state.strategies)) {
        config.strategies.push_back(cfa::parse_strategy(name));
    }
    if (config.strategies.empty()) {
        throw std::invalid_argument("no strategies selected");
    }
    if (config.grid_points < 2) {
        throw std::invalid_argument("--grid-points must be at least 2");
    }

    if (state.wcds_scope == "group") {
        config.wcds_scope = cfa::WcdsScope::group;
    } else if (state.wcds_scope == "full") {
        config.wcds_scope = cfa::WcdsScope::full_set;
    } else {
        throw std::invalid_argument("--wcds-scope must be 'group' or 'full', got '" +
                                    state.wcds_scope + "'");
    }

    if (state.normalization == "train") {
        config.normalization = cfa::NormalizationMode::train;
    } else if (state.normalization == "global") {
        config.normalization = cfa::NormalizationMode::global;
    } else {
        throw std::invalid_argument("--normalization must be 'train' or 'global', got '" +
                                    state.normalization + "'");
    }

    config.baselines.clear();
    for (const auto& text : split_list(state.baselines)) {
        config.baselines.push_back(cfa::ForecastConfig::parse(text));
    }

    config.wcp_weights.clear();
    for (const auto& text : split_list(state.wcp_weights)) {
        config.wcp_weights.push_back(cfa::csv::parse_number(text));
    }

    if (!state.seed.empty()) {
        config.seed = static_cast<std::uint64_t>(cfa::csv::parse_number(state.seed));
    }
}

void add_common_options(CLI::App* cmd, CliState& state) {
    cmd->add_option("--config", state.config_path, "flat key=value configuration file")
        ->envname("CFA_CONFIG");
    cmd->add_option("--out", state.config.out_dir, "output directory")
        ->envname("CFA_OUT")
        ->capture_default_str();
    cmd->add_option("--price-column", state.config.price_column,
                    "name of the price column in the actuals table")
        ->envname("CFA_PRICE_COLUMN")
        ->capture_default_str();
    cmd->add_option("--seed", state.seed, "reserved; the pipeline is deterministic");
}

void add_grid_option(CLI::App* cmd, CliState& state) {
    cmd->add_option("--grid-points", state.config.grid_points,
                    "price grid resolution per day")
        ->envname("CFA_GRID_POINTS")
        ->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"combinatorial fusion analysis for next-day price forecasts"};
    app.require_subcommand(1);

    CliState state;

    CLI::App* predict = app.add_subcommand(
        "predict", "run built-in baselines over the test partition of a price series");
    predict->add_option("--input", state.config.input_path, "price history CSV (date,price,...)")
        ->envname("CFA_INPUT");
    predict->add_option("--market", state.config.market_path,
                        "optional market feature CSV to forward-fill and normalize");
    predict->add_option("--train-fraction", state.config.train_fraction,
                        "chronological train share in (0,1)")
        ->envname("CFA_TRAIN_FRACTION")
        ->capture_default_str();
    predict->add_option("--baselines", state.baselines,
                        "comma list of naive, ema:<alpha>, ar:<p>")
        ->capture_default_str();
    predict->add_option("--normalization", state.normalization,
                        "feature scaling statistics: train or global")
        ->envname("CFA_NORMALIZATION")
        ->capture_default_str();
    add_common_options(predict, state);

    CLI::App* fuse = app.add_subcommand(
        "fuse", "expand predictions into distributions, combine, and evaluate");
    fuse->add_option("--predictions", state.config.predictions_path,
                     "predictions CSV (date + one column per model)")
        ->envname("CFA_PREDICTIONS");
    fuse->add_option("--actuals", state.config.actuals_path, "actual price CSV (date,price)")
        ->envname("CFA_ACTUALS");
    fuse->add_option("--strategies", state.strategies,
                     "comma list from sc-ac,rc-ac,sc-wcds,rc-wcds,sc-wcp,rc-wcp")
        ->envname("CFA_STRATEGIES")
        ->capture_default_str();
    fuse->add_option("--wcds-scope", state.wcds_scope,
                     "diversity strengths from the 'group' being combined or the 'full' set")
        ->envname("CFA_WCDS_SCOPE")
        ->capture_default_str();
    fuse->add_option("--wcp-weights", state.wcp_weights,
                     "comma list of performance weights, one per model (for *-wcp)");
    fuse->add_flag("--emit-diversity", state.config.emit_diversity,
                   "also write per-day diversity matrices");
    add_grid_option(fuse, state);
    add_common_options(fuse, state);

    CLI::App* diversity = app.add_subcommand(
        "diversity", "write per-day cognitive-diversity matrices and strengths");
    diversity->add_option("--predictions", state.config.predictions_path,
                          "predictions CSV (date + one column per model)")
        ->envname("CFA_PREDICTIONS");
    diversity->add_option("--actuals", state.config.actuals_path,
                          "actual price CSV (date,price)")
        ->envname("CFA_ACTUALS");
    add_grid_option(diversity, state);
    add_common_options(diversity, state);

    CLI::App* eval = app.add_subcommand("eval", "RMSE/MAPE of predictions against actuals");
    eval->add_option("--predictions", state.config.predictions_path,
                     "predictions CSV (date + one column per system)")
        ->envname("CFA_PREDICTIONS");
    eval->add_option("--actuals", state.config.actuals_path, "actual price CSV (date,price)")
        ->envname("CFA_ACTUALS");
    add_common_options(eval, state);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        CLI::App* active = app.get_subcommands().front();
        apply_config_file(active, state);

        auto require = [&](const std::string& value, const std::string& flag) {
            if (value.empty()) {
                throw std::invalid_argument(active->get_name() + " requires " + flag +
                                            " (flag, config key, or CFA_* environment)");
            }
        };
        finalize(state);

        if (active == predict) {
            require(state.config.input_path, "--input");
            cfa::run_predict(state.config);
            std::cout << "wrote predictions to " << state.config.out_dir << "\n";
        } else if (active == fuse) {
            require(state.config.predictions_path, "--predictions");
            require(state.config.actuals_path, "--actuals");
            cfa::EvaluationReport report = cfa::run_pipeline(state.config);
            report.write_text(std::cout);
            std::cout << "full reports in " << state.config.out_dir << "\n";
        } else if (active == diversity) {
            require(state.config.predictions_path, "--predictions");
            require(state.config.actuals_path, "--actuals");
            cfa::run_diversity(state.config);
            std::cout << "wrote diversity matrices to " << state.config.out_dir << "\n";
        } else if (active == eval) {
            require(state.config.predictions_path, "--predictions");
            require(state.config.actuals_path, "--actuals");
            cfa::EvaluationReport report = cfa::run_eval(state.config);
            report.write_text(std::cout);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "cfa: error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "cfa: error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "cfa: internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitOk;
}
