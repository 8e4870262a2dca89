#pragma once

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cvss::csv {

using Row = std::vector<std::string>;

// Reads one RFC 4180 record (quoted fields may span lines). Returns nullopt at
// end of input. A trailing '\r' before the record terminator is dropped.
// Throws cvss::MalformedCsv on an unterminated quoted field.
std::optional<Row> read_row(std::istream& in);

// Quotes the field when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

void write_row(std::ostream& out, const Row& row);

}  // namespace cvss::csv
