#include "cfa/date.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace cfa {

namespace {

int parse_component(const std::string& text, std::size_t begin, std::size_t end) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + begin, text.data() + end, value);
    if (ec != std::errc{} || ptr != text.data() + end) {
        throw std::invalid_argument("invalid date '" + text + "': expected YYYY-MM-DD");
    }
    return value;
}

} // namespace

Date::Date(int year, unsigned month, unsigned day)
    : ymd_(std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}) {
    if (!ymd_.ok()) {
        throw std::invalid_argument("invalid calendar date " + to_string());
    }
}

Date Date::parse(const std::string& text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw std::invalid_argument("invalid date '" + text + "': expected YYYY-MM-DD");
    }
    int year = parse_component(text, 0, 4);
    int month = parse_component(text, 5, 7);
    int day = parse_component(text, 8, 10);
    return Date(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
}

std::string Date::to_string() const {
    char buffer[16];
    std::snprintf(buffer, sizeof(buffer), "%04d-%02u-%02u", year(), month(), day());
    return buffer;
}

Date Date::next_day() const {
    using namespace std::chrono;
    return Date(year_month_day{sys_days{ymd_} + days{1}});
}

} // namespace cfa
