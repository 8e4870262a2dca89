#include "cvss/corpus.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "cvss/error.hpp"

namespace cvss {

namespace {

std::vector<std::string_view> split(std::string_view s, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(delim, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void bad_line(std::size_t line, const std::string& why) {
  throw CorpusIoError("corpus line " + std::to_string(line) + ": " + why);
}

Score parse_score(std::string_view text, std::size_t line) {
  // d.d or dd.d
  const auto dot = text.find('.');
  int whole = 0, frac = 0;
  if (dot == std::string_view::npos || dot + 2 != text.size() || dot == 0 ||
      std::from_chars(text.data(), text.data() + dot, whole).ptr != text.data() + dot ||
      std::from_chars(text.data() + dot + 1, text.data() + text.size(), frac).ptr !=
          text.data() + text.size() ||
      whole < 0 || whole > 10) {
    bad_line(line, "bad score '" + std::string(text) + "'");
  }
  return Score::from_tenths(whole * 10 + frac);
}

VulnRecord parse_record(const std::vector<std::string_view>& f, std::size_t line) {
  if (f.size() != 8) bad_line(line, "record needs 8 fields, found " + std::to_string(f.size()));
  VulnRecord r;
  r.cve_id = f[1];
  if (!is_cve_id(r.cve_id)) bad_line(line, "bad CVE id '" + r.cve_id + "'");
  const auto platform = parse_platform(f[2]);
  if (!platform) bad_line(line, "bad platform '" + std::string(f[2]) + "'");
  r.platform = *platform;
  const auto date = parse_date(f[3]);
  if (!date || f[3].size() != 10) bad_line(line, "bad date '" + std::string(f[3]) + "'");
  r.published = *date;
  try {
    r.vector = parse_vector(f[4]);
  } catch (const VectorError& e) {
    bad_line(line, e.what());
  }
  r.nvd_base_score = parse_score(f[5], line);
  if (f[6] != "-") {
    const auto scope = parse_scope(f[6]);
    if (!scope) bad_line(line, "bad scope '" + std::string(f[6]) + "'");
    r.scope = *scope;
  }
  if (!f[7].empty()) {
    for (auto cpe : split(f[7], ';')) r.cpe_uris.emplace_back(cpe);
  }
  return r;
}

Timeline parse_timeline(const std::vector<std::string_view>& f, std::size_t line) {
  if (f.size() != 4) bad_line(line, "timeline needs 4 fields, found " + std::to_string(f.size()));
  const std::string cve{f[1]};
  if (!is_cve_id(cve)) bad_line(line, "bad CVE id '" + cve + "'");
  const auto date = parse_date(f[2]);
  if (!date || f[2].size() != 10) bad_line(line, "bad date '" + std::string(f[2]) + "'");
  std::vector<CriticalPoint> points;
  if (!f[3].empty()) {
    int previous = 0;
    for (auto item : split(f[3], ';')) {
      const auto colon = item.find(':');
      if (colon == std::string_view::npos) bad_line(line, "bad point '" + std::string(item) + "'");
      const auto kind = parse_critical_point_kind(item.substr(0, colon));
      int month = -1;
      const auto digits = item.substr(colon + 1);
      const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), month);
      if (!kind || digits.empty() || res.ptr != digits.data() + digits.size() || month < 0) {
        bad_line(line, "bad point '" + std::string(item) + "'");
      }
      if (month < previous) bad_line(line, "points not in month order");
      previous = month;
      points.push_back({*kind, month});
    }
  }
  return Timeline(cve, *date, std::move(points));
}

}  // namespace

const VulnRecord* Corpus::find_record(std::string_view cve_id) const noexcept {
  for (const auto& r : records)
    if (r.cve_id == cve_id) return &r;
  return nullptr;
}

const Timeline* Corpus::find_timeline(std::string_view cve_id) const noexcept {
  for (const auto& t : timelines)
    if (t.cve_id() == cve_id) return &t;
  return nullptr;
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  out << kCorpusHeader << '\n';
  for (const auto& r : corpus.records) {
    out << "R|" << r.cve_id << '|' << to_string(r.platform) << '|' << format_date(r.published)
        << '|' << format_vector(r.vector) << '|' << r.nvd_base_score.str() << '|'
        << (r.scope ? to_string(*r.scope) : std::string_view("-")) << '|';
    for (std::size_t k = 0; k < r.cpe_uris.size(); ++k) {
      if (k) out << ';';
      out << r.cpe_uris[k];
    }
    out << '\n';
  }
  for (const auto& t : corpus.timelines) {
    out << "T|" << t.cve_id() << '|' << format_date(t.registered()) << '|';
    bool first = true;
    for (const auto& p : t.points()) {
      if (!first) out << ';';
      first = false;
      out << to_string(p.kind) << ':' << p.month;
    }
    out << '\n';
  }
}

Corpus read_corpus(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw CorpusIoError("corpus is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCorpusHeader) {
    throw CorpusVersionMismatch("unsupported corpus header '" + line + "', expected '" +
                                std::string(kCorpusHeader) + "'");
  }
  Corpus corpus;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line, '|');
    if (fields[0] == "R") {
      corpus.records.push_back(parse_record(fields, number));
    } else if (fields[0] == "T") {
      corpus.timelines.push_back(parse_timeline(fields, number));
    } else {
      bad_line(number, "unknown line tag '" + std::string(fields[0]) + "'");
    }
  }
  return corpus;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ostringstream buf;
  write_corpus(buf, corpus);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CorpusIoError("cannot write corpus to " + path.string());
  out << buf.str();
  if (!out.flush()) throw CorpusIoError("failed writing corpus to " + path.string());
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusIoError("cannot open corpus " + path.string());
  return read_corpus(in);
}

}  // namespace cvss
