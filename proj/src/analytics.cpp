#include "cvss/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "cvss/error.hpp"

namespace cvss {

namespace {

// Row order: Complete, Partial, None per column.
constexpr std::array kTableOrder{CiaImpact::Complete, CiaImpact::Partial, CiaImpact::None};

void require_non_empty(std::size_t n, std::string_view what) {
  if (n == 0) throw EmptySubset(std::string(what) + ": subset has no records");
}

}  // namespace

std::string format_share(std::size_t count, std::size_t total) {
  if (count == 0 || total == 0) return "0%";
  if (100 * count >= 2 * total) {
    // exact half-up of 100*count/total
    const auto whole = (200 * count + total) / (2 * total);
    return std::to_string(whole) + "%";
  }
  const double pct = 100.0 * static_cast<double>(count) / static_cast<double>(total);
  const int decimals = 2 - static_cast<int>(std::floor(std::log10(pct)));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f%%", decimals, pct);
  return buf;
}

std::string IncidenceRow::key() const {
  std::string out{metric_letter(c)};
  out += '/';
  out += metric_letter(i);
  if (a) {
    out += '/';
    out += metric_letter(*a);
  }
  return out;
}

double CiaIncidenceTable::share_percent(const IncidenceRow& row) const noexcept {
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(row.count) / static_cast<double>(total);
}

std::string CiaIncidenceTable::share_display(const IncidenceRow& row) const {
  return format_share(row.count, total);
}

const IncidenceRow* CiaIncidenceTable::find(CiaImpact c, CiaImpact i,
                                            std::optional<CiaImpact> a) const noexcept {
  for (const auto& r : rows)
    if (r.c == c && r.i == i && r.a == a) return &r;
  return nullptr;
}

CiaIncidenceTable cia_incidence(std::span<const VulnRecord> subset, bool condensed) {
  require_non_empty(subset.size(), "cia_incidence");
  CiaIncidenceTable table;
  table.condensed = condensed;
  table.total = subset.size();
  for (auto c : kTableOrder) {
    for (auto i : kTableOrder) {
      if (condensed) {
        table.rows.push_back({c, i, std::nullopt, 0});
      } else {
        for (auto a : kTableOrder) table.rows.push_back({c, i, a, 0});
      }
    }
  }
  auto rank = [](CiaImpact x) { return static_cast<std::size_t>(2 - static_cast<int>(x)); };
  for (const auto& r : subset) {
    const auto& v = r.vector;
    const auto idx = condensed ? rank(v.c) * 3 + rank(v.i)
                               : rank(v.c) * 9 + rank(v.i) * 3 + rank(v.a);
    ++table.rows[idx].count;
  }
  return table;
}

std::string_view to_string(ScoreKind which) noexcept {
  switch (which) {
    case ScoreKind::Base: return "base";
    case ScoreKind::Impact: return "impact";
    case ScoreKind::Exploitability: return "exploitability";
  }
  return "?";
}

std::size_t ScoreHistogram::total() const noexcept {
  std::size_t n = 0;
  for (auto c : counts) n += c;
  return n;
}

std::array<std::size_t, 11> ScoreHistogram::integer_buckets() const noexcept {
  std::array<std::size_t, 11> out{};
  for (std::size_t t = 0; t < counts.size(); ++t) out[(t + 5) / 10] += counts[t];
  return out;
}

std::map<Score, std::size_t> ScoreHistogram::nonzero_bins() const {
  std::map<Score, std::size_t> out;
  for (std::size_t t = 0; t < counts.size(); ++t)
    if (counts[t]) out.emplace(Score::from_tenths(static_cast<int>(t)), counts[t]);
  return out;
}

void ScoreHistogram::add(Score s) {
  const auto t = std::clamp(s.tenths(), 0, static_cast<int>(kScoreBins) - 1);
  ++counts[static_cast<std::size_t>(t)];
}

namespace {

Score pick(const ScoreBreakdown& s, ScoreKind which) {
  switch (which) {
    case ScoreKind::Base: return s.base;
    case ScoreKind::Impact: return s.impact;
    case ScoreKind::Exploitability: return s.exploitability;
  }
  return {};
}

}  // namespace

ScoreHistogram histogram_of(std::span<const ScoreBreakdown> scores, ScoreKind which) {
  ScoreHistogram h;
  h.which = which;
  for (const auto& s : scores) h.add(pick(s, which));
  return h;
}

ScoreHistogram score_histogram(std::span<const VulnRecord> subset, ScoreKind which) {
  require_non_empty(subset.size(), "score_histogram");
  ScoreHistogram h;
  h.which = which;
  for (const auto& r : subset) h.add(pick(score_classic(r.vector), which));
  return h;
}

ComparisonReport compare_scoring(std::span<const VulnRecord> records) {
  std::vector<std::string> unresolved;
  for (const auto& r : records)
    if (!r.scope) unresolved.push_back(r.cve_id);
  if (!unresolved.empty()) throw UnresolvedScope(std::move(unresolved));

  ComparisonReport report;
  report.before.which = ScoreKind::Base;
  report.after.which = ScoreKind::Base;
  report.rows.reserve(records.size());
  for (const auto& r : records) {
    ComparisonRow row;
    row.cve_id = r.cve_id;
    row.scope = *r.scope;
    row.vector = r.vector;
    row.classic = score_classic(r.vector);
    row.enhanced = score_enhanced({r.vector, *r.scope});
    row.delta_tenths = row.enhanced.base.tenths() - row.classic.base.tenths();
    report.before.add(row.classic.base);
    report.after.add(row.enhanced.base);
    if (row.delta_tenths != 0) ++report.changed;
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string critical_point_group(std::size_t points) {
  return points >= 3 ? "3+" : std::to_string(points);
}

ForecastReport temporal_report(std::span<const VulnRecord> records,
                               std::span<const Timeline> timelines, int horizon_months,
                               double lambda_floor) {
  std::unordered_map<std::string_view, const Timeline*> by_cve;
  for (const auto& t : timelines) by_cve.emplace(t.cve_id(), &t);

  ForecastReport report;
  report.horizon_months = horizon_months;
  const TemporalParams params{lambda_floor, lambda_floor};
  const auto months = static_cast<std::size_t>(horizon_months);
  for (const auto& r : records) {
    const auto it = by_cve.find(r.cve_id);
    const Timeline fallback(r.cve_id, r.published);
    const Timeline& t = it == by_cve.end() ? fallback : *it->second;
    const auto series = r.scope ? forecast_series(EnhancedVector{r.vector, *r.scope}, t,
                                                  horizon_months, params)
                                : forecast_series(r.vector, t, horizon_months, params);
    const auto n = t.points().size();
    auto& group = report.groups[critical_point_group(n)];
    if (group.mean_base.empty()) {
      group.mean_exploitability.assign(months, 0.0);
      group.mean_base.assign(months, 0.0);
    }
    ++group.cves;
    for (const auto& p : series) {
      const auto m = static_cast<std::size_t>(p.month);
      group.mean_exploitability[m] += p.score.exploitability_raw;
      group.mean_base[m] += base_score_raw(p.score.impact_raw, p.score.exploitability_raw);
      report.rows.push_back({r.cve_id, n, p});
    }
  }
  for (auto& [name, group] : report.groups) {
    for (std::size_t m = 0; m < months; ++m) {
      group.mean_exploitability[m] /= static_cast<double>(group.cves);
      group.mean_base[m] /= static_cast<double>(group.cves);
    }
  }
  return report;
}

std::optional<PlatformFilter> parse_platform_filter(std::string_view text) noexcept {
  if (text == "android") return PlatformFilter::Android;
  if (text == "ios") return PlatformFilter::IOS;
  if (text == "all") return PlatformFilter::All;
  return std::nullopt;
}

std::string_view to_string(PlatformFilter f) noexcept {
  switch (f) {
    case PlatformFilter::Android: return "android";
    case PlatformFilter::IOS: return "ios";
    case PlatformFilter::All: return "all";
  }
  return "?";
}

std::vector<VulnRecord> select_platform(std::span<const VulnRecord> records, PlatformFilter f) {
  std::vector<VulnRecord> out;
  for (const auto& r : records) {
    const bool keep = (f == PlatformFilter::Android && r.platform == Platform::Android) ||
                      (f == PlatformFilter::IOS && r.platform == Platform::IOS) ||
                      (f == PlatformFilter::All && r.platform != Platform::Other);
    if (keep) out.push_back(r);
  }
  return out;
}

AnalysisReport analyze(const Corpus& corpus, PlatformFilter platform, int horizon_months,
                       double lambda_floor) {
  const auto subset = select_platform(corpus.records, platform);
  if (subset.empty()) {
    throw EmptySubset("platform '" + std::string(to_string(platform)) + "' has no records");
  }
  AnalysisReport report;
  report.platform = platform;
  report.records = subset.size();
  report.incidence = cia_incidence(subset, false);
  report.incidence_condensed = cia_incidence(subset, true);
  report.comparison = compare_scoring(subset);

  std::vector<ScoreBreakdown> classic;
  classic.reserve(report.comparison.rows.size());
  for (const auto& row : report.comparison.rows) classic.push_back(row.classic);
  report.hist_base = histogram_of(classic, ScoreKind::Base);
  report.hist_impact = histogram_of(classic, ScoreKind::Impact);
  report.hist_exploitability = histogram_of(classic, ScoreKind::Exploitability);

  report.forecast = temporal_report(subset, corpus.timelines, horizon_months, lambda_floor);
  return report;
}

}  // namespace cvss
