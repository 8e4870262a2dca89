#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cvss/analytics.hpp"
#include "cvss/csv.hpp"
#include "cvss/error.hpp"

namespace cvss {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string letter(CiaImpact x) { return std::string(1, metric_letter(x)); }

ordered_json incidence_json(const CiaIncidenceTable& table) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : table.rows) {
    ordered_json row;
    row["c"] = letter(r.c);
    row["i"] = letter(r.i);
    if (r.a) row["a"] = letter(*r.a);
    row["count"] = r.count;
    row["share"] = table.share_display(r);
    rows.push_back(std::move(row));
  }
  return {{"total", table.total}, {"rows", std::move(rows)}};
}

ordered_json histogram_json(const ScoreHistogram& h) {
  ordered_json bins = ordered_json::object();
  for (const auto& [score, count] : h.nonzero_bins()) bins[score.str()] = count;
  ordered_json buckets = ordered_json::array();
  for (auto c : h.integer_buckets()) buckets.push_back(c);
  return {{"total", h.total()}, {"bins", std::move(bins)}, {"integer_buckets", std::move(buckets)}};
}

ordered_json rounded_series(const std::vector<double>& values) {
  ordered_json out = ordered_json::array();
  // 6 decimals keeps the document byte-stable across libm differences
  for (double v : values) out.push_back(std::stod(fixed(v, 6)));
  return out;
}

}  // namespace

void write_incidence_csv(std::ostream& out, const CiaIncidenceTable& table) {
  out << (table.condensed ? "c,i,count,share_percent,share_display\n"
                          : "c,i,a,count,share_percent,share_display\n");
  for (const auto& r : table.rows) {
    csv::Row row{letter(r.c), letter(r.i)};
    if (r.a) row.push_back(letter(*r.a));
    row.push_back(std::to_string(r.count));
    row.push_back(fixed(table.share_percent(r), 6));
    row.push_back(table.share_display(r));
    csv::write_row(out, row);
  }
}

void write_histogram_csv(std::ostream& out, const ScoreHistogram& hist) {
  out << "score,count\n";
  for (std::size_t t = 0; t < hist.counts.size(); ++t) {
    out << Score::from_tenths(static_cast<int>(t)).str() << ',' << hist.counts[t] << '\n';
  }
}

void write_comparison_csv(std::ostream& out, const ComparisonReport& report) {
  out << "cve_id,scope,vector,classic_impact,classic_exploitability,classic_base,"
         "enhanced_impact,enhanced_exploitability,enhanced_base,delta\n";
  for (const auto& r : report.rows) {
    csv::write_row(out, {r.cve_id, std::string(to_string(r.scope)), format_vector(r.vector),
                         r.classic.impact.str(), r.classic.exploitability.str(),
                         r.classic.base.str(), r.enhanced.impact.str(),
                         r.enhanced.exploitability.str(), r.enhanced.base.str(),
                         Score::from_tenths(r.delta_tenths).str()});
  }
}

void write_forecast_csv(std::ostream& out, const ForecastReport& report) {
  out << "cve_id,critical_points,month,lambda,decay_weight,impact,exploitability,"
         "exploitability_raw,base\n";
  for (const auto& r : report.rows) {
    const auto& p = r.point;
    csv::write_row(out, {r.cve_id, std::to_string(r.critical_points), std::to_string(p.month),
                         fixed(p.lambda, 6), fixed(p.decay_weight, 6), p.score.impact.str(),
                         p.score.exploitability.str(), fixed(p.score.exploitability_raw, 6),
                         p.score.base.str()});
  }
}

void write_summary_json(std::ostream& out, const AnalysisReport& report) {
  ordered_json doc;
  doc["platform"] = std::string(to_string(report.platform));
  doc["records"] = report.records;
  doc["cia_incidence"] = incidence_json(report.incidence);
  doc["cia_incidence_condensed"] = incidence_json(report.incidence_condensed);
  doc["histograms"] = {{"base", histogram_json(report.hist_base)},
                       {"impact", histogram_json(report.hist_impact)},
                       {"exploitability", histogram_json(report.hist_exploitability)}};

  const auto& cmp = report.comparison;
  doc["comparison"] = {{"records", cmp.rows.size()},
                       {"changed", cmp.changed},
                       {"classic_base", histogram_json(cmp.before)},
                       {"enhanced_base", histogram_json(cmp.after)}};

  ordered_json groups = ordered_json::object();
  for (const auto& [name, g] : report.forecast.groups) {
    groups[name] = {{"cves", g.cves},
                    {"mean_exploitability", rounded_series(g.mean_exploitability)},
                    {"mean_base", rounded_series(g.mean_base)}};
  }
  doc["forecast"] = {{"horizon_months", report.forecast.horizon_months},
                     {"groups", std::move(groups)}};
  out << doc.dump(2) << '\n';
}

void write_reports(const std::filesystem::path& dir, const AnalysisReport& report) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());

  auto emit = [&](std::string_view name, auto&& writer) {
    std::ostringstream buf;
    writer(buf);
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << buf.str()) || !out.flush()) {
      throw Error("cannot write report " + path.string());
    }
  };
  emit("cia_incidence.csv", [&](std::ostream& o) { write_incidence_csv(o, report.incidence); });
  emit("hist_base.csv", [&](std::ostream& o) { write_histogram_csv(o, report.hist_base); });
  emit("hist_impact.csv", [&](std::ostream& o) { write_histogram_csv(o, report.hist_impact); });
  emit("hist_exploitability.csv",
       [&](std::ostream& o) { write_histogram_csv(o, report.hist_exploitability); });
  emit("comparison.csv", [&](std::ostream& o) { write_comparison_csv(o, report.comparison); });
  emit("forecast.csv", [&](std::ostream& o) { write_forecast_csv(o, report.forecast); });
  emit("summary.json", [&](std::ostream& o) { write_summary_json(o, report); });
}

}  // namespace cvss
