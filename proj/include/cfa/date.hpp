#pragma once

#include <chrono>
#include <compare>
#include <string>

namespace cfa {

// Calendar date at day resolution, parsed and printed as ISO-8601
// (YYYY-MM-DD). All tables in this library are indexed by Date.
class Date {
public:
    Date() = default;
    Date(int year, unsigned month, unsigned day);

    static Date parse(const std::string& text);

    std::string to_string() const;
    Date next_day() const;

    int year() const { return static_cast<int>(ymd_.year()); }
    unsigned month() const { return static_cast<unsigned>(ymd_.month()); }
    unsigned day() const { return static_cast<unsigned>(ymd_.day()); }

    friend bool operator==(const Date& a, const Date& b) { return a.ymd_ == b.ymd_; }
    friend std::strong_ordering operator<=>(const Date& a, const Date& b) {
        return a.ymd_ <=> b.ymd_;
    }

private:
    explicit Date(std::chrono::year_month_day ymd) : ymd_(ymd) {}

    std::chrono::year_month_day ymd_{};
};

} // namespace cfa
