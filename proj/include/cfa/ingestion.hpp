#pragma once

#include "cfa/date.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cfa {

// Date-indexed numeric table with no gaps: strictly increasing daily dates
// and a value for every cell.
struct AlignedTable {
    std::vector<Date> dates;
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> columns; // columns[c][row]

    std::size_t rows() const noexcept { return dates.size(); }
    std::size_t column_index(const std::string& name) const; // throws on unknown name
    const std::vector<double>& column(const std::string& name) const;

    // date column first, then value columns; full numeric precision.
    void write_csv(std::ostream& out) const;
};

// Chronological boundary: rows [0, boundary) train, the rest test.
struct SplitSpec {
    double train_fraction = 0.8;
    std::size_t boundary = 0;
};

// Loads a dated CSV. Empty `value_columns` selects every non-date column.
// Rows are sorted by date; duplicate dates are an error. Calendar gaps and
// empty cells are forward-filled per column from the last present value;
// a column with no leading value cannot be filled and is rejected.
AlignedTable load_price_table(const std::string& path, const std::string& date_column = "date",
                              const std::vector<std::string>& value_columns = {});

// Min-max normalization to [0,1] per column. With a split, statistics come
// from the training rows only (so test values may leave [0,1]); a column
// constant over the statistics window maps to all ones with a warning.
AlignedTable normalize_features(const AlignedTable& table,
                                const std::optional<SplitSpec>& split = std::nullopt);

// boundary = floor(rows * train_fraction); both partitions must be non-empty.
SplitSpec make_split(std::size_t row_count, double train_fraction);

std::pair<AlignedTable, AlignedTable> split_train_test(const AlignedTable& table,
                                                       double train_fraction);

} // namespace cfa
