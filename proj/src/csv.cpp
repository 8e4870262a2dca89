#include "cvss/csv.hpp"

#include <ostream>

#include "cvss/error.hpp"

namespace cvss::csv {

std::optional<Row> read_row(std::istream& in) {
  if (in.peek() == std::char_traits<char>::eof()) return std::nullopt;

  Row row;
  std::string field;
  bool quoted = false;
  bool after_quote = false;
  int ch = 0;
  while ((ch = in.get()) != std::char_traits<char>::eof()) {
    const char c = static_cast<char>(ch);
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get();
          field += '"';
        } else {
          quoted = false;
          after_quote = true;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      after_quote = false;
    } else if (c == '\n') {
      if (!after_quote && !field.empty() && field.back() == '\r') field.pop_back();
      row.push_back(std::move(field));
      return row;
    } else if (c == '"' && field.empty() && !after_quote) {
      quoted = true;
    } else if (c == '\r' && after_quote) {
      // CRLF after a closing quote
    } else {
      field += c;
    }
  }
  if (quoted) throw MalformedCsv("unterminated quoted field at end of input");
  if (!after_quote && !field.empty() && field.back() == '\r') field.pop_back();
  row.push_back(std::move(field));
  return row;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string{field};
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_row(std::ostream& out, const Row& row) {
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (k) out << ',';
    out << escape(row[k]);
  }
  out << '\n';
}

}  // namespace cvss::csv
