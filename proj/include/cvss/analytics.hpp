#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cvss/corpus.hpp"
#include "cvss/ingest.hpp"
#include "cvss/scoring.hpp"
#include "cvss/temporal.hpp"

namespace cvss {

// Incidence share display string:
// "0%" for zero, three significant digits below 2% ("0.121%", "1.09%"),
// whole percent rounded half-up otherwise ("54%").
std::string format_share(std::size_t count, std::size_t total);

struct IncidenceRow {
  CiaImpact c = CiaImpact::None;
  CiaImpact i = CiaImpact::None;
  std::optional<CiaImpact> a;  // absent in the condensed C x I table
  std::size_t count = 0;

  std::string key() const;  // "C/C/C" or "C/C"
};

struct CiaIncidenceTable {
  bool condensed = false;
  std::size_t total = 0;
  // 27 (or 9) rows, Complete/Partial/None order per column.
  std::vector<IncidenceRow> rows;

  double share_percent(const IncidenceRow& row) const noexcept;
  std::string share_display(const IncidenceRow& row) const;
  const IncidenceRow* find(CiaImpact c, CiaImpact i, std::optional<CiaImpact> a = {}) const noexcept;
};

// Throws EmptySubset.
CiaIncidenceTable cia_incidence(std::span<const VulnRecord> subset, bool condensed = false);

enum class ScoreKind : std::uint8_t { Base, Impact, Exploitability };
std::string_view to_string(ScoreKind which) noexcept;

inline constexpr std::size_t kScoreBins = 101;  // 0.0 .. 10.0

struct ScoreHistogram {
  ScoreKind which = ScoreKind::Base;
  std::array<std::size_t, kScoreBins> counts{};  // index = tenths

  std::size_t total() const noexcept;
  // Scores rounded half-up to whole numbers, 0 .. 10.
  std::array<std::size_t, 11> integer_buckets() const noexcept;
  std::map<Score, std::size_t> nonzero_bins() const;
  void add(Score s);
};

ScoreHistogram histogram_of(std::span<const ScoreBreakdown> scores, ScoreKind which);
// Classic scores of the subset. Throws EmptySubset.
ScoreHistogram score_histogram(std::span<const VulnRecord> subset, ScoreKind which);

struct ComparisonRow {
  std::string cve_id;
  VulnScope scope = VulnScope::Application;
  CvssVector vector;
  ScoreBreakdown classic;
  ScoreBreakdown enhanced;
  int delta_tenths = 0;  // enhanced.base - classic.base
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  ScoreHistogram before;  // classic base
  ScoreHistogram after;   // enhanced base
  std::size_t changed = 0;
};

// Throws UnresolvedScope naming every record without a scope.
ComparisonReport compare_scoring(std::span<const VulnRecord> records);

struct ForecastRow {
  std::string cve_id;
  std::size_t critical_points = 0;
  ForecastPoint point;
};

// Panels keyed by critical-point count: "0", "1", "2", "3+".
struct ForecastGroup {
  std::size_t cves = 0;
  std::vector<double> mean_exploitability;  // per month
  std::vector<double> mean_base;            // per month
};

struct ForecastReport {
  int horizon_months = 0;
  std::vector<ForecastRow> rows;
  std::map<std::string, ForecastGroup> groups;
};

std::string critical_point_group(std::size_t points);

// Enhanced model per record (classic if the scope is unresolved), causal
// lambda. Records without a timeline use an empty one anchored at publication.
ForecastReport temporal_report(std::span<const VulnRecord> records,
                               std::span<const Timeline> timelines, int horizon_months,
                               double lambda_floor = kDefaultLambdaFloor);

enum class PlatformFilter : std::uint8_t { Android, IOS, All };
std::optional<PlatformFilter> parse_platform_filter(std::string_view text) noexcept;
std::string_view to_string(PlatformFilter f) noexcept;

// All means Android plus iOS; Other records never enter platform analyses.
std::vector<VulnRecord> select_platform(std::span<const VulnRecord> records, PlatformFilter f);

struct AnalysisReport {
  PlatformFilter platform = PlatformFilter::All;
  std::size_t records = 0;
  CiaIncidenceTable incidence;
  CiaIncidenceTable incidence_condensed;
  ScoreHistogram hist_base;
  ScoreHistogram hist_impact;
  ScoreHistogram hist_exploitability;
  ComparisonReport comparison;
  ForecastReport forecast;
};

// Throws EmptySubset or UnresolvedScope.
AnalysisReport analyze(const Corpus& corpus, PlatformFilter platform, int horizon_months,
                       double lambda_floor = kDefaultLambdaFloor);

// File names written by write_reports.
inline constexpr std::array<std::string_view, 7> kReportFiles{
    "cia_incidence.csv", "hist_base.csv",  "hist_impact.csv", "hist_exploitability.csv",
    "comparison.csv",    "forecast.csv",   "summary.json"};

void write_incidence_csv(std::ostream& out, const CiaIncidenceTable& table);
void write_histogram_csv(std::ostream& out, const ScoreHistogram& hist);
void write_comparison_csv(std::ostream& out, const ComparisonReport& report);
void write_forecast_csv(std::ostream& out, const ForecastReport& report);
void write_summary_json(std::ostream& out, const AnalysisReport& report);

// Creates `dir` if needed and writes every file in kReportFiles.
void write_reports(const std::filesystem::path& dir, const AnalysisReport& report);

}  // namespace cvss
