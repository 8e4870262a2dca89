#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cvss/date.hpp"
#include "cvss/scoring.hpp"
#include "cvss/temporal.hpp"
#include "cvss/vector.hpp"

namespace cvss {

enum class Platform : std::uint8_t { Android, IOS, Other };

std::string_view to_string(Platform p) noexcept;
std::optional<Platform> parse_platform(std::string_view text) noexcept;

std::string_view to_string(VulnScope s) noexcept;  // "app" / "os"
std::optional<VulnScope> parse_scope(std::string_view text) noexcept;

// Normalized per-CVE record.
struct VulnRecord {
  std::string cve_id;
  Platform platform = Platform::Other;
  Date published{};
  CvssVector vector;
  Score nvd_base_score;
  std::optional<VulnScope> scope;  // nullopt when the CPEs could not classify it
  std::vector<std::string> cpe_uris;

  friend bool operator==(const VulnRecord&, const VulnRecord&) = default;
};

// A problem with one item or row. Never fatal for the file it came from.
struct Diagnostic {
  std::string subject;  // CVE id, EDB id or "line N"
  std::string message;
};

bool is_cve_id(std::string_view text) noexcept;

// Splits a CPE 2.3 formatted string into its 13 components. nullopt when the
// prefix or component count is wrong.
std::optional<std::vector<std::string>> split_cpe23(std::string_view uri);

// Android when some CPE names google:android or targets android software,
// iOS likewise for apple:iphone_os / iphone_os. A record matching both is
// Other so the two platform subsets stay disjoint.
Platform detect_platform(std::span<const std::string> cpe_uris);

// OperatingSystem when any well-formed CPE has part `o`, else Application.
// Throws UnclassifiableScope when the list is empty or every CPE is malformed.
VulnScope classify_scope(std::span<const std::string> cpe_uris);

struct NvdFeed {
  std::vector<VulnRecord> records;
  std::vector<Diagnostic> skipped;
};

// NVD JSON 1.1 data feed (`CVE_Items`). Items without usable CVSS v2 data are
// skipped with a diagnostic. Throws MalformedFeed if the document is not a
// feed at all.
NvdFeed parse_nvd_feed(std::istream& in);
NvdFeed parse_nvd_feed(const std::filesystem::path& path);

struct ExploitRecord {
  std::string edb_id;
  std::optional<std::string> cve_id;  // nullopt: not linked to any CVE
  Date date{};
  CriticalPointKind kind_hint = CriticalPointKind::Exploit;  // ProofOfConcept or Exploit
  std::string platform;

  bool linked() const noexcept { return cve_id.has_value(); }
  friend bool operator==(const ExploitRecord&, const ExploitRecord&) = default;
};

struct EdbExport {
  std::vector<ExploitRecord> records;
  std::vector<Diagnostic> diagnostics;

  std::size_t unlinked() const noexcept;
};

// Exploit-DB CSV export. Required columns: id, date, platform, type. Optional:
// codes (`;`-separated, CVE ids picked out), description. One record per
// linked CVE, or one unlinked record. Throws MalformedCsv on a bad header.
EdbExport parse_edb_csv(std::istream& in);
EdbExport parse_edb_csv(const std::filesystem::path& path);

struct PatchRecord {
  std::string cve_id;
  Date date{};
  CriticalPointKind kind = CriticalPointKind::Patch;  // Patch or Update

  friend bool operator==(const PatchRecord&, const PatchRecord&) = default;
};

struct PatchList {
  std::vector<PatchRecord> records;
  std::vector<Diagnostic> diagnostics;
};

// CSV with header `cve_id,date,kind`, kind in {patch, update}.
PatchList parse_patch_csv(std::istream& in);
PatchList parse_patch_csv(const std::filesystem::path& path);

struct TimelineSet {
  std::vector<Timeline> timelines;  // same order as the input records
  std::vector<Diagnostic> diagnostics;
};

// Each event becomes a point at whole months since the CVE's publication date;
// earlier events are clamped to month 0 with a warning. Every exploit record is
// its own point. Patch/update events are reduced to the earliest date per
// (CVE, kind). Events for CVEs outside `vulns` are ignored.
TimelineSet build_timelines(std::span<const VulnRecord> vulns,
                            std::span<const ExploitRecord> exploits,
                            std::span<const PatchRecord> patches);

// Manual scope overrides, CVE id -> scope. Returns the number of records changed.
std::size_t apply_scope_overrides(std::vector<VulnRecord>& records,
                                  const std::map<std::string, VulnScope>& overrides);

}  // namespace cvss
