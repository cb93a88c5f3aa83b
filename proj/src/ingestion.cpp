#include "cfa/ingestion.hpp"

#include "cfa/csv.hpp"
#include "cfa/warnings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

namespace cfa {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

bool is_missing_cell(const std::string& cell) {
    return cell.empty() ||
           cell.find_first_not_of(" \t") == std::string::npos;
}

} // namespace

std::size_t AlignedTable::column_index(const std::string& name) const {
    for (std::size_t c = 0; c < column_names.size(); ++c) {
        if (column_names[c] == name) {
            return c;
        }
    }
    throw std::invalid_argument("unknown column '" + name + "'");
}

const std::vector<double>& AlignedTable::column(const std::string& name) const {
    return columns[column_index(name)];
}

void AlignedTable::write_csv(std::ostream& out) const {
    std::vector<std::string> row;
    row.reserve(column_names.size() + 1);
    row.push_back("date");
    row.insert(row.end(), column_names.begin(), column_names.end());
    out << csv::join_line(row) << '\n';
    for (std::size_t r = 0; r < rows(); ++r) {
        row.clear();
        row.push_back(dates[r].to_string());
        for (const auto& column : columns) {
            row.push_back(csv::format_full(column[r]));
        }
        out << csv::join_line(row) << '\n';
    }
}

AlignedTable load_price_table(const std::string& path, const std::string& date_column,
                              const std::vector<std::string>& value_columns) {
    csv::Table raw = csv::read_file(path);

    std::size_t date_col = 0;
    bool found_date = false;
    for (std::size_t c = 0; c < raw.header.size(); ++c) {
        if (raw.header[c] == date_column) {
            date_col = c;
            found_date = true;
            break;
        }
    }
    if (!found_date) {
        throw std::invalid_argument(path + ": no '" + date_column + "' column in header");
    }

    std::vector<std::size_t> value_cols;
    std::vector<std::string> names;
    if (value_columns.empty()) {
        for (std::size_t c = 0; c < raw.header.size(); ++c) {
            if (c != date_col) {
                value_cols.push_back(c);
                names.push_back(raw.header[c]);
            }
        }
    } else {
        for (const auto& name : value_columns) {
            bool found = false;
            for (std::size_t c = 0; c < raw.header.size(); ++c) {
                if (raw.header[c] == name) {
                    value_cols.push_back(c);
                    names.push_back(name);
                    found = true;
                    break;
                }
            }
            if (!found) {
                throw std::invalid_argument(path + ": no '" + name + "' column in header");
            }
        }
    }
    if (value_cols.empty()) {
        throw std::invalid_argument(path + ": no value columns");
    }

    // Parse rows into a date-sorted map; duplicate dates are a hard error.
    std::map<Date, std::vector<double>> parsed;
    for (std::size_t r = 0; r < raw.rows.size(); ++r) {
        const auto& cells = raw.rows[r];
        if (cells.size() != raw.header.size()) {
            throw std::invalid_argument(path + ": row " + std::to_string(r + 2) + " has " +
                                        std::to_string(cells.size()) + " cells, header has " +
                                        std::to_string(raw.header.size()));
        }
        Date date;
        try {
            date = Date::parse(cells[date_col]);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(path + ": row " + std::to_string(r + 2) + ": " +
                                        e.what());
        }
        std::vector<double> values(value_cols.size(), kMissing);
        for (std::size_t v = 0; v < value_cols.size(); ++v) {
            const std::string& cell = cells[value_cols[v]];
            if (is_missing_cell(cell)) {
                continue;
            }
            try {
                values[v] = csv::parse_number(cell);
            } catch (const std::invalid_argument&) {
                throw std::invalid_argument(path + ": row " + std::to_string(r + 2) +
                                            ", column '" + names[v] + "': unparsable cell '" +
                                            cell + "'");
            }
        }
        if (!parsed.emplace(date, std::move(values)).second) {
            throw std::invalid_argument(path + ": duplicate date " + date.to_string());
        }
    }
    if (parsed.empty()) {
        throw std::invalid_argument(path + ": no data rows");
    }

    // Lay out one row per calendar day; weekend/holiday gaps become missing
    // rows that the forward fill below completes.
    AlignedTable table;
    table.column_names = std::move(names);
    Date day = parsed.begin()->first;
    Date last = parsed.rbegin()->first;
    table.columns.assign(value_cols.size(), {});
    while (true) {
        table.dates.push_back(day);
        auto it = parsed.find(day);
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            table.columns[c].push_back(it == parsed.end() ? kMissing : it->second[c]);
        }
        if (day == last) {
            break;
        }
        day = day.next_day();
    }

    // Forward fill per column.
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        auto& column = table.columns[c];
        if (std::isnan(column.front())) {
            throw std::invalid_argument(path + ": column '" + table.column_names[c] +
                                        "' starts with a missing value; nothing to fill from");
        }
        for (std::size_t r = 1; r < column.size(); ++r) {
            if (std::isnan(column[r])) {
                column[r] = column[r - 1];
            }
        }
    }
    return table;
}

AlignedTable normalize_features(const AlignedTable& table,
                                const std::optional<SplitSpec>& split) {
    if (table.rows() == 0) {
        throw std::invalid_argument("normalize_features: empty table");
    }
    std::size_t stat_rows = table.rows();
    if (split.has_value()) {
        if (split->boundary == 0 || split->boundary > table.rows()) {
            throw std::invalid_argument("normalize_features: split boundary " +
                                        std::to_string(split->boundary) + " outside table of " +
                                        std::to_string(table.rows()) + " rows");
        }
        stat_rows = split->boundary;
    }

    AlignedTable out = table;
    for (std::size_t c = 0; c < out.columns.size(); ++c) {
        auto& column = out.columns[c];
        double lo = column[0];
        double hi = column[0];
        for (std::size_t r = 1; r < stat_rows; ++r) {
            lo = std::min(lo, column[r]);
            hi = std::max(hi, column[r]);
        }
        if (lo == hi) {
            warn("column '" + out.column_names[c] +
                 "' is constant over the normalization window; mapping to 1.0");
            std::fill(column.begin(), column.end(), 1.0);
            continue;
        }
        double range = hi - lo;
        for (double& v : column) {
            v = (v - lo) / range;
        }
    }
    return out;
}

SplitSpec make_split(std::size_t row_count, double train_fraction) {
    if (!(train_fraction > 0.0) || !(train_fraction < 1.0)) {
        throw std::invalid_argument("train fraction must be in (0,1), got " +
                                    csv::format_full(train_fraction));
    }
    if (row_count < 2) {
        throw std::invalid_argument("need at least 2 rows to split, got " +
                                    std::to_string(row_count));
    }
    SplitSpec spec;
    spec.train_fraction = train_fraction;
    spec.boundary =
        static_cast<std::size_t>(std::floor(static_cast<double>(row_count) * train_fraction));
    if (spec.boundary == 0 || spec.boundary == row_count) {
        throw std::invalid_argument("train fraction " + csv::format_full(train_fraction) +
                                    " leaves an empty partition for " +
                                    std::to_string(row_count) + " rows");
    }
    return spec;
}

std::pair<AlignedTable, AlignedTable> split_train_test(const AlignedTable& table,
                                                       double train_fraction) {
    SplitSpec spec = make_split(table.rows(), train_fraction);

    auto cut = static_cast<std::ptrdiff_t>(spec.boundary);
    AlignedTable train;
    AlignedTable test;
    train.column_names = table.column_names;
    test.column_names = table.column_names;
    train.dates.assign(table.dates.begin(), table.dates.begin() + cut);
    test.dates.assign(table.dates.begin() + cut, table.dates.end());
    for (const auto& column : table.columns) {
        train.columns.emplace_back(column.begin(), column.begin() + cut);
        test.columns.emplace_back(column.begin() + cut, column.end());
    }
    return {std::move(train), std::move(test)};
}

} // namespace cfa
