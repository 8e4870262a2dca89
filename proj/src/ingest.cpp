#include "cvss/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <set>

#include <json.hpp>

#include "cvss/csv.hpp"
#include "cvss/error.hpp"

namespace cvss {

using nlohmann::json;

std::string_view to_string(Platform p) noexcept {
  switch (p) {
    case Platform::Android: return "android";
    case Platform::IOS: return "ios";
    case Platform::Other: return "other";
  }
  return "?";
}

std::optional<Platform> parse_platform(std::string_view text) noexcept {
  if (text == "android") return Platform::Android;
  if (text == "ios") return Platform::IOS;
  if (text == "other") return Platform::Other;
  return std::nullopt;
}

std::string_view to_string(VulnScope s) noexcept {
  return s == VulnScope::Application ? "app" : "os";
}

std::optional<VulnScope> parse_scope(std::string_view text) noexcept {
  if (text == "app") return VulnScope::Application;
  if (text == "os") return VulnScope::OperatingSystem;
  return std::nullopt;
}

bool is_cve_id(std::string_view text) noexcept {
  static const std::regex re(R"(CVE-\d{4}-\d{4,})");
  return std::regex_match(text.begin(), text.end(), re);
}

std::optional<std::vector<std::string>> split_cpe23(std::string_view uri) {
  constexpr std::string_view prefix = "cpe:2.3:";
  if (uri.substr(0, prefix.size()) != prefix) return std::nullopt;
  std::vector<std::string> parts;
  std::string cur;
  for (std::size_t k = 0; k < uri.size(); ++k) {
    const char c = uri[k];
    if (c == '\\' && k + 1 < uri.size()) {
      cur += c;
      cur += uri[++k];
    } else if (c == ':') {
      parts.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(std::move(cur));
  if (parts.size() != 13) return std::nullopt;
  const auto& part = parts[2];
  if (part != "a" && part != "o" && part != "h") return std::nullopt;
  return parts;
}

Platform detect_platform(std::span<const std::string> cpe_uris) {
  bool android = false;
  bool ios = false;
  for (const auto& uri : cpe_uris) {
    const auto parts = split_cpe23(uri);
    if (!parts) continue;
    const auto& vendor = (*parts)[3];
    const auto& product = (*parts)[4];
    const auto& target_sw = (*parts)[10];
    if ((vendor == "google" && product == "android") || target_sw == "android") android = true;
    if ((vendor == "apple" && product == "iphone_os") || target_sw == "iphone_os") ios = true;
  }
  if (android == ios) return Platform::Other;
  return android ? Platform::Android : Platform::IOS;
}

VulnScope classify_scope(std::span<const std::string> cpe_uris) {
  bool any_valid = false;
  for (const auto& uri : cpe_uris) {
    const auto parts = split_cpe23(uri);
    if (!parts) continue;
    any_valid = true;
    if ((*parts)[2] == "o") return VulnScope::OperatingSystem;
  }
  if (!any_valid) {
    throw UnclassifiableScope(cpe_uris.empty() ? "no CPE entries to classify"
                                               : "no well-formed CPE 2.3 entry to classify");
  }
  return VulnScope::Application;
}

namespace {

void collect_cpes(const json& node, std::vector<std::string>& out) {
  if (auto it = node.find("cpe_match"); it != node.end() && it->is_array()) {
    for (const auto& m : *it) {
      const bool vulnerable = m.value("vulnerable", true);
      if (!vulnerable) continue;
      if (auto uri = m.find("cpe23Uri"); uri != m.end() && uri->is_string()) {
        auto s = uri->get<std::string>();
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
      }
    }
  }
  if (auto it = node.find("children"); it != node.end() && it->is_array()) {
    for (const auto& child : *it) collect_cpes(child, out);
  }
}

template <typename T>
const T* lookup(const json& j, const char* pointer) {
  const json::json_pointer ptr(pointer);
  if (!j.contains(ptr)) return nullptr;
  return j.at(ptr).get_ptr<const T*>();
}

std::optional<VulnRecord> parse_item(const json& item, std::vector<Diagnostic>& skipped,
                                     std::size_t index) {
  const auto* id = lookup<json::string_t>(item, "/cve/CVE_data_meta/ID");
  if (!id) {
    skipped.push_back({"item " + std::to_string(index), "missing cve.CVE_data_meta.ID"});
    return std::nullopt;
  }
  if (!is_cve_id(*id)) {
    skipped.push_back({*id, "malformed CVE id"});
    return std::nullopt;
  }
  if (!item.contains(json::json_pointer("/impact/baseMetricV2"))) {
    skipped.push_back({*id, "no CVSS v2 metrics"});
    return std::nullopt;
  }
  const auto* vector = lookup<json::string_t>(item, "/impact/baseMetricV2/cvssV2/vectorString");
  const json::json_pointer score_ptr("/impact/baseMetricV2/cvssV2/baseScore");
  if (!vector || !item.contains(score_ptr) || !item.at(score_ptr).is_number()) {
    skipped.push_back({*id, "incomplete CVSS v2 metrics"});
    return std::nullopt;
  }
  const auto* published = lookup<json::string_t>(item, "/publishedDate");
  const auto date = published ? parse_date(*published) : std::nullopt;
  if (!date) {
    skipped.push_back({*id, "missing or malformed publishedDate"});
    return std::nullopt;
  }

  VulnRecord rec;
  rec.cve_id = *id;
  rec.published = *date;
  try {
    rec.vector = parse_vector(*vector);
  } catch (const VectorError& e) {
    skipped.push_back({*id, std::string("bad CVSS v2 vector: ") + e.what()});
    return std::nullopt;
  }
  const double score = item.at(score_ptr).get<double>();
  if (score < 0.0 || score > 10.0) {
    skipped.push_back({*id, "baseScore out of range"});
    return std::nullopt;
  }
  rec.nvd_base_score = Score::round(score);

  if (auto nodes = item.find("configurations"); nodes != item.end() && nodes->is_object()) {
    if (auto list = nodes->find("nodes"); list != nodes->end() && list->is_array()) {
      for (const auto& node : *list) collect_cpes(node, rec.cpe_uris);
    }
  }
  rec.platform = detect_platform(rec.cpe_uris);
  try {
    rec.scope = classify_scope(rec.cpe_uris);
  } catch (const UnclassifiableScope&) {
    rec.scope.reset();
  }
  return rec;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

std::string lower(std::string_view s) {
  std::string out{s};
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string{s.substr(b, e - b + 1)};
}

// Maps required/optional column names to their index in the header row.
std::map<std::string, std::size_t> header_index(const csv::Row& header) {
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < header.size(); ++k) index.emplace(lower(trim(header[k])), k);
  return index;
}

void require_columns(const std::map<std::string, std::size_t>& index,
                     std::initializer_list<const char*> names, std::string_view what) {
  std::string missing;
  for (const char* n : names) {
    if (!index.contains(n)) {
      if (!missing.empty()) missing += ", ";
      missing += n;
    }
  }
  if (!missing.empty()) {
    throw MalformedCsv(std::string(what) + " header is missing required column(s): " + missing);
  }
}

std::string field(const csv::Row& row, const std::map<std::string, std::size_t>& index,
                  const char* name) {
  const auto it = index.find(name);
  if (it == index.end() || it->second >= row.size()) return {};
  return trim(row[it->second]);
}

bool blank(const csv::Row& row) {
  return std::all_of(row.begin(), row.end(), [](const std::string& f) { return trim(f).empty(); });
}

}  // namespace

NvdFeed parse_nvd_feed(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw MalformedFeed(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw MalformedFeed("feed root is not a JSON object");
  const auto items = doc.find("CVE_Items");
  if (items == doc.end() || !items->is_array()) {
    throw MalformedFeed("feed has no CVE_Items array");
  }

  NvdFeed feed;
  std::size_t index = 0;
  for (const auto& item : *items) {
    if (!item.is_object()) {
      feed.skipped.push_back({"item " + std::to_string(index), "item is not an object"});
    } else if (auto rec = parse_item(item, feed.skipped, index)) {
      feed.records.push_back(std::move(*rec));
    }
    ++index;
  }
  return feed;
}

NvdFeed parse_nvd_feed(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_nvd_feed(in);
}

std::size_t EdbExport::unlinked() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(), [](const ExploitRecord& r) { return !r.linked(); }));
}

EdbExport parse_edb_csv(std::istream& in) {
  const auto header = csv::read_row(in);
  if (!header) throw MalformedCsv("EDB export is empty (no header row)");
  const auto index = header_index(*header);
  require_columns(index, {"id", "date", "platform", "type"}, "EDB");

  EdbExport out;
  std::size_t line = 1;
  while (auto row = csv::read_row(in)) {
    ++line;
    if (blank(*row)) continue;
    const auto id = field(*row, index, "id");
    const auto subject = id.empty() ? "line " + std::to_string(line) : "EDB-" + id;
    if (id.empty()) {
      out.diagnostics.push_back({subject, "missing id"});
      continue;
    }
    const auto date = parse_date(field(*row, index, "date"));
    if (!date) {
      out.diagnostics.push_back({subject, "unparseable date '" + field(*row, index, "date") + "'"});
      continue;
    }
    const auto type = lower(field(*row, index, "type"));
    const auto description = lower(field(*row, index, "description"));
    const auto kind = (type == "dos" || description.find("poc") != std::string::npos)
                          ? CriticalPointKind::ProofOfConcept
                          : CriticalPointKind::Exploit;

    std::vector<std::string> cves;
    const auto codes = field(*row, index, "codes");
    std::size_t start = 0;
    while (start <= codes.size()) {
      const auto semi = codes.find(';', start);
      const auto token =
          trim(std::string_view(codes).substr(start, semi == std::string::npos ? semi : semi - start));
      if (is_cve_id(token) && std::find(cves.begin(), cves.end(), token) == cves.end()) {
        cves.push_back(token);
      }
      if (semi == std::string::npos) break;
      start = semi + 1;
    }

    ExploitRecord rec{id, std::nullopt, *date, kind, field(*row, index, "platform")};
    if (cves.empty()) {
      out.records.push_back(std::move(rec));
    } else {
      for (auto& cve : cves) {
        rec.cve_id = std::move(cve);
        out.records.push_back(rec);
      }
    }
  }
  return out;
}

EdbExport parse_edb_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_edb_csv(in);
}

PatchList parse_patch_csv(std::istream& in) {
  const auto header = csv::read_row(in);
  if (!header) throw MalformedCsv("patch list is empty (no header row)");
  const auto index = header_index(*header);
  require_columns(index, {"cve_id", "date", "kind"}, "patch list");

  PatchList out;
  std::size_t line = 1;
  while (auto row = csv::read_row(in)) {
    ++line;
    if (blank(*row)) continue;
    const auto cve = field(*row, index, "cve_id");
    const auto subject = cve.empty() ? "line " + std::to_string(line) : cve;
    if (!is_cve_id(cve)) {
      out.diagnostics.push_back({subject, "malformed CVE id"});
      continue;
    }
    const auto date = parse_date(field(*row, index, "date"));
    if (!date) {
      out.diagnostics.push_back({subject, "unparseable date '" + field(*row, index, "date") + "'"});
      continue;
    }
    const auto kind_text = lower(field(*row, index, "kind"));
    CriticalPointKind kind;
    if (kind_text == "patch") {
      kind = CriticalPointKind::Patch;
    } else if (kind_text == "update") {
      kind = CriticalPointKind::Update;
    } else {
      out.diagnostics.push_back({subject, "unknown patch kind '" + kind_text + "'"});
      continue;
    }
    out.records.push_back({cve, *date, kind});
  }
  return out;
}

PatchList parse_patch_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_patch_csv(in);
}

TimelineSet build_timelines(std::span<const VulnRecord> vulns,
                            std::span<const ExploitRecord> exploits,
                            std::span<const PatchRecord> patches) {
  TimelineSet out;

  struct Event {
    Date date;
    CriticalPointKind kind;
    std::string source;
  };
  std::map<std::string, std::vector<Event>> events;
  std::set<std::string> seen_exploits;
  for (const auto& e : exploits) {
    if (!e.linked()) continue;
    // the same EDB row listed twice for one CVE is one event
    if (!seen_exploits.insert(e.edb_id + "|" + *e.cve_id).second) continue;
    events[*e.cve_id].push_back({e.date, e.kind_hint, "EDB-" + e.edb_id});
  }

  std::map<std::pair<std::string, CriticalPointKind>, Date> earliest_patch;
  for (const auto& p : patches) {
    auto [it, inserted] = earliest_patch.try_emplace({p.cve_id, p.kind}, p.date);
    if (!inserted && p.date < it->second) it->second = p.date;
  }
  for (const auto& [key, date] : earliest_patch) {
    events[key.first].push_back({date, key.second, std::string(to_string(key.second))});
  }

  out.timelines.reserve(vulns.size());
  for (const auto& v : vulns) {
    std::vector<CriticalPoint> points;
    if (auto it = events.find(v.cve_id); it != events.end()) {
      for (const auto& ev : it->second) {
        int month = whole_months_between(v.published, ev.date);
        if (ev.date < v.published) {
          out.diagnostics.push_back({v.cve_id, ev.source + " dated " + format_date(ev.date) +
                                                   " precedes publication " +
                                                   format_date(v.published) +
                                                   "; clamped to month 0"});
          month = 0;
        }
        points.push_back({ev.kind, month});
      }
      std::stable_sort(points.begin(), points.end(),
                       [](const CriticalPoint& a, const CriticalPoint& b) {
                         return a.month != b.month ? a.month < b.month : a.kind < b.kind;
                       });
    }
    out.timelines.emplace_back(v.cve_id, v.published, std::move(points));
  }
  return out;
}

std::size_t apply_scope_overrides(std::vector<VulnRecord>& records,
                                  const std::map<std::string, VulnScope>& overrides) {
  std::size_t changed = 0;
  for (auto& r : records) {
    if (auto it = overrides.find(r.cve_id); it != overrides.end()) {
      if (r.scope != it->second) ++changed;
      r.scope = it->second;
    }
  }
  return changed;
}

}  // namespace cvss
