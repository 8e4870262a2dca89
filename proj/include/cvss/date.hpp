#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace cvss {

using Date = std::chrono::year_month_day;

// Parses the leading YYYY-MM-DD of `text` (NVD timestamps such as
// "2015-10-01T21:59Z" are accepted). Returns nullopt on anything else or on an
// impossible calendar date.
std::optional<Date> parse_date(std::string_view text);

std::string format_date(const Date& d);

// Whole calendar months from `from` to `to`, floored: 2015-01-15 -> 2015-04-20
// is 3, a 45-day gap is 1. Negative (truncated toward zero) when `to`
// precedes `from`.
int whole_months_between(const Date& from, const Date& to);

}  // namespace cvss
