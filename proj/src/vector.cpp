#include "cvss/vector.hpp"

#include <optional>

#include "cvss/error.hpp"

namespace cvss {

namespace {

constexpr std::array<std::string_view, 6> kKeys{"AV", "AC", "Au", "C", "I", "A"};

std::optional<AccessVector> access_vector_from(char c) {
  switch (c) {
    case 'L': return AccessVector::Local;
    case 'A': return AccessVector::AdjacentNetwork;
    case 'N': return AccessVector::Network;
    default: return std::nullopt;
  }
}

std::optional<AccessComplexity> access_complexity_from(char c) {
  switch (c) {
    case 'H': return AccessComplexity::High;
    case 'M': return AccessComplexity::Medium;
    case 'L': return AccessComplexity::Low;
    default: return std::nullopt;
  }
}

std::optional<Authentication> authentication_from(char c) {
  switch (c) {
    case 'M': return Authentication::Multiple;
    case 'S': return Authentication::Single;
    case 'N': return Authentication::None;
    default: return std::nullopt;
  }
}

std::optional<CiaImpact> cia_from(char c) {
  switch (c) {
    case 'N': return CiaImpact::None;
    case 'P': return CiaImpact::Partial;
    case 'C': return CiaImpact::Complete;
    default: return std::nullopt;
  }
}

std::string located(std::string_view msg, std::string_view token, std::size_t pos) {
  std::string out{msg};
  out += " '";
  out += token;
  out += "' at position ";
  out += std::to_string(pos);
  return out;
}

}  // namespace

char metric_letter(AccessVector v) noexcept {
  switch (v) {
    case AccessVector::Local: return 'L';
    case AccessVector::AdjacentNetwork: return 'A';
    case AccessVector::Network: return 'N';
  }
  return '?';
}

char metric_letter(AccessComplexity v) noexcept {
  switch (v) {
    case AccessComplexity::High: return 'H';
    case AccessComplexity::Medium: return 'M';
    case AccessComplexity::Low: return 'L';
  }
  return '?';
}

char metric_letter(Authentication v) noexcept {
  switch (v) {
    case Authentication::Multiple: return 'M';
    case Authentication::Single: return 'S';
    case Authentication::None: return 'N';
  }
  return '?';
}

char metric_letter(CiaImpact v) noexcept {
  switch (v) {
    case CiaImpact::None: return 'N';
    case CiaImpact::Partial: return 'P';
    case CiaImpact::Complete: return 'C';
  }
  return '?';
}

CvssVector parse_vector(std::string_view text) {
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')') {
    text = text.substr(1, text.size() - 2);
  }
  if (text.empty()) throw MalformedVector("empty vector string", "", 0);

  std::array<std::string_view, 6> tokens{};
  std::array<std::size_t, 6> offsets{};
  std::size_t count = 0;
  std::size_t start = 0;
  while (true) {
    const auto slash = text.find('/', start);
    const auto token = text.substr(start, slash == std::string_view::npos ? slash : slash - start);
    if (count == tokens.size()) {
      throw MalformedVector(located("unexpected extra metric", token, start), std::string{token},
                            start);
    }
    tokens[count] = token;
    offsets[count] = start;
    ++count;
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }

  for (std::size_t k = 0; k < count; ++k) {
    const auto token = tokens[k];
    const auto colon = token.find(':');
    const auto key = token.substr(0, colon);
    if (colon == std::string_view::npos || key != kKeys[k]) {
      std::string msg = "expected ";
      msg += kKeys[k];
      msg += " metric, found";
      throw MalformedVector(located(msg, token, offsets[k]), std::string{token}, offsets[k]);
    }
    if (token.size() != colon + 2) {
      throw UnknownMetricValue(located("unknown metric value", token, offsets[k]),
                               std::string{token}, offsets[k]);
    }
  }
  if (count != tokens.size()) {
    const auto pos = text.size();
    std::string msg = "missing ";
    msg += kKeys[count];
    msg += " metric; vector has ";
    msg += std::to_string(count);
    msg += " of 6 metrics, ends";
    throw MalformedVector(located(msg, "", pos), "", pos);
  }

  auto letter = [&](std::size_t k) { return tokens[k].back(); };
  auto fail = [&](std::size_t k) -> UnknownMetricValue {
    return UnknownMetricValue(located("unknown metric value", tokens[k], offsets[k]),
                              std::string{tokens[k]}, offsets[k]);
  };

  CvssVector v;
  if (auto x = access_vector_from(letter(0))) v.av = *x; else throw fail(0);
  if (auto x = access_complexity_from(letter(1))) v.ac = *x; else throw fail(1);
  if (auto x = authentication_from(letter(2))) v.au = *x; else throw fail(2);
  if (auto x = cia_from(letter(3))) v.c = *x; else throw fail(3);
  if (auto x = cia_from(letter(4))) v.i = *x; else throw fail(4);
  if (auto x = cia_from(letter(5))) v.a = *x; else throw fail(5);
  return v;
}

std::string format_vector(const CvssVector& v) {
  std::string out = "AV:?/AC:?/Au:?/C:?/I:?/A:?";
  out[3] = metric_letter(v.av);
  out[8] = metric_letter(v.ac);
  out[13] = metric_letter(v.au);
  out[17] = metric_letter(v.c);
  out[21] = metric_letter(v.i);
  out[25] = metric_letter(v.a);
  return out;
}

}  // namespace cvss
