// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cvss/analytics.hpp"
#include "cvss/cli.hpp"
#include "cvss/corpus.hpp"
#include "cvss/ingest.hpp"
#include "cvss/scoring.hpp"
#include "cvss/temporal.hpp"
#include "cvss/vector.hpp"

namespace fs = std::filesystem;
using namespace cvss;

namespace {

const fs::path kData = CVSS_TEST_DATA_DIR;
const fs::path kGolden = CVSS_GOLDEN_DIR;
const std::string kCli = CVSS_CLI_PATH;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

struct Criterion {
  int id;
  const char* name;
  double budget_ms;  // 0: no explicit budget
  std::function<Outcome()> body;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int shell(const std::string& cmd) {
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::vector<VulnRecord> fixture_records() {
  std::vector<VulnRecord> out;
  for (const char* name : {"nvdcve-1.1-2015.json", "nvdcve-1.1-2016.json"}) {
    auto f = parse_nvd_feed(kData / name);
    out.insert(out.end(), f.records.begin(), f.records.end());
  }
  return out;
}

// 1
Outcome classic_triple() {
  Outcome o;
  const auto s = score_classic(parse_vector("AV:N/AC:M/Au:N/C:P/I:P/A:P"));
  o.require(s.impact.str() == "6.4", "impact " + s.impact.str());
  o.require(s.exploitability.str() == "8.6", "exploitability " + s.exploitability.str());
  o.require(s.base.str() == "6.8", "base " + s.base.str());
  o.detail = o.ok ? "6.4 / 8.6 / 6.8" : o.detail;
  return o;
}

// 2
Outcome nvd_oracle() {
  Outcome o;
  const auto records = fixture_records();
  std::size_t match = 0;
  std::string first_miss;
  for (const auto& r : records) {
    if (score_classic(r.vector).base == r.nvd_base_score) {
      ++match;
    } else if (first_miss.empty()) {
      first_miss = r.cve_id;
    }
  }
  o.require(records.size() >= 200, "fixture has only " + std::to_string(records.size()) + " records");
  o.require(match == records.size(), "mismatch at " + first_miss);
  if (o.ok) o.detail = std::to_string(match) + "/" + std::to_string(records.size()) + " records";
  return o;
}

// 3
struct Row {
  const char* key;
  std::size_t count;
  const char* display;
};

constexpr Row kAndroid[] = {
    {"C/C/C", 442, "54%"}, {"C/C/P", 0, "0%"}, {"C/C/N", 1, "0.121%"}, {"C/P/C", 0, "0%"},
    {"C/P/P", 0, "0%"}, {"C/P/N", 0, "0%"}, {"C/N/C", 3, "0.363%"}, {"C/N/P", 0, "0%"},
    {"C/N/N", 9, "1.09%"}, {"P/C/C", 0, "0%"}, {"P/C/P", 0, "0%"}, {"P/C/N", 0, "0%"},
    {"P/P/C", 0, "0%"}, {"P/P/P", 62, "8%"}, {"P/P/N", 58, "7%"}, {"P/N/C", 4, "0.484%"},
    {"P/N/P", 1, "0.121%"}, {"P/N/N", 134, "16%"}, {"N/C/C", 6, "0.726%"}, {"N/C/P", 0, "0%"},
    {"N/C/N", 0, "0%"}, {"N/P/C", 0, "0%"}, {"N/P/P", 17, "2%"}, {"N/P/N", 54, "7%"},
    {"N/N/C", 7, "0.847%"}, {"N/N/P", 28, "3%"}, {"N/N/N", 0, "0%"},
};
constexpr Row kIos[] = {
    {"C/C/C", 187, "22%"}, {"C/C/P", 0, "0%"}, {"C/C/N", 0, "0%"}, {"C/P/C", 0, "0%"},
    {"C/P/P", 0, "0%"}, {"C/P/N", 0, "0%"}, {"C/N/C", 0, "0%"}, {"C/N/P", 0, "0%"},
    {"C/N/N", 3, "0.355%"}, {"P/C/C", 0, "0%"}, {"P/C/P", 0, "0%"}, {"P/C/N", 0, "0%"},
    {"P/P/C", 0, "0%"}, {"P/P/P", 293, "35%"}, {"P/P/N", 33, "4%"}, {"P/N/C", 1, "0.118%"},
    {"P/N/P", 1, "0.118%"}, {"P/N/N", 173, "20%"}, {"N/C/C", 3, "0.355%"}, {"N/C/P", 0, "0%"},
    {"N/C/N", 2, "0.237%"}, {"N/P/C", 0, "0%"}, {"N/P/P", 4, "0.473%"}, {"N/P/N", 102, "12%"},
    {"N/N/C", 18, "2%"}, {"N/N/P", 25, "3%"}, {"N/N/N", 0, "0%"},
};

void check_incidence(Outcome& o, const char* label, const CiaIncidenceTable& t, const Row (&rows)[27],
                     std::size_t total) {
  o.require(t.total == total, std::string(label) + " total " + std::to_string(t.total));
  o.require(t.rows.size() == 27, std::string(label) + " row count");
  if (t.rows.size() != 27) return;
  for (std::size_t k = 0; k < 27; ++k) {
    const auto& r = t.rows[k];
    const std::string at = std::string(label) + " " + rows[k].key;
    o.require(r.key() == rows[k].key, at + " row order");
    o.require(r.count == rows[k].count, at + " count " + std::to_string(r.count));
    o.require(t.share_display(r) == rows[k].display, at + " display " + t.share_display(r));
    // whole-percent displays must be within rounding of the exact share
    std::string_view disp = rows[k].display;
    if (disp.find('.') == std::string_view::npos) {
      const double shown = std::stod(std::string(disp.substr(0, disp.size() - 1)));
      o.require(std::abs(t.share_percent(r) - shown) <= 0.5, at + " share error > 0.5%");
    }
    if (rows[k].count == 0) o.require(r.count == 0, at + " should be zero");
  }
}

Outcome table_incidence() {
  Outcome o;
  const auto corpus = load_corpus(kData / "incidence_corpus.txt");
  check_incidence(o, "android", cia_incidence(select_platform(corpus.records, PlatformFilter::Android)),
                  kAndroid, 826);
  check_incidence(o, "ios", cia_incidence(select_platform(corpus.records, PlatformFilter::IOS)), kIos,
                  845);
  if (o.ok) o.detail = "54 rows, counts and displays exact; C/C/C 54% / 22%, P/P/P 35% (iOS)";
  return o;
}

// 4
Outcome enhanced_dominance() {
  Outcome o;
  int vectors = 0, partial = 0;
  for_each_vector([&](const CvssVector& v) {
    ++vectors;
    const auto classic = score_classic(v);
    const auto app = score_enhanced({v, VulnScope::Application});
    const auto os = score_enhanced({v, VulnScope::OperatingSystem});
    const auto name = format_vector(v);
    for (const auto* s : {&app, &os}) {
      o.require((s->impact_raw > classic.impact_raw) == v.has_partial(), name + " dominance iff partial");
    }
    if (v.has_partial()) {
      ++partial;
      o.require(os.impact_raw > app.impact_raw, name + " os > app");
    }
    for (const auto* s : {&classic, &app, &os}) {
      for (Score x : {s->impact, s->exploitability, s->base}) {
        o.require(x.tenths() >= 0 && x.tenths() <= 100, name + " out of [0,10]");
      }
    }
  });
  o.require(vectors == 729, "enumerated " + std::to_string(vectors));
  if (o.ok) o.detail = "729 vectors x 2 scopes, " + std::to_string(partial) + " with a Partial component";
  return o;
}

// 5
Outcome enhanced_examples() {
  Outcome o;
  const auto v = parse_vector("AV:N/AC:M/Au:N/C:P/I:P/A:P");
  // by hand: 10.41 * (1 - 0.539^3) = 8.7799, 10.41 * (1 - 0.485^3) = 9.2224
  const double app_hand = 10.41 * (1 - 0.539 * 0.539 * 0.539);
  const double os_hand = 10.41 * (1 - 0.485 * 0.485 * 0.485);
  const auto app = score_enhanced({v, VulnScope::Application});
  const auto os = score_enhanced({v, VulnScope::OperatingSystem});
  o.require(app.impact.str() == "8.8", "application impact " + app.impact.str());
  o.require(os.impact.str() == "9.2", "OS impact " + os.impact.str());
  o.require(std::abs(app.impact_raw - app_hand) < 1e-12, "application raw differs from hand value");
  o.require(std::abs(os.impact_raw - os_hand) < 1e-12, "OS raw differs from hand value");
  if (o.ok) o.detail = "P/P/P impact 8.8 (app), 9.2 (os)";
  return o;
}

// 6
long double series_pmf(long double lambda, int kappa) {
  long double e = 0, term = 1;
  for (int n = 1; n < 200; ++n) {
    e += term;
    term *= -lambda / n;
  }
  for (int k = 1; k <= kappa; ++k) e *= lambda / k;
  return e;
}

Outcome poisson() {
  Outcome o;
  double worst = 0, worst_sum = 0;
  for (double l : {0.05, 0.25, 1.0, 2.0, 5.0}) {
    for (int k = 0; k <= 50; ++k) {
      worst = std::max(worst, std::abs(poisson_pmf(l, k) - static_cast<double>(series_pmf(l, k))));
    }
    double total = 0;
    for (int k = 0; k <= kMaxKappa; ++k) total += poisson_pmf(l, k);
    worst_sum = std::max(worst_sum, std::abs(total - 1.0));
  }
  o.require(worst < 1e-9, "pmf deviates from series oracle by " + std::to_string(worst));
  o.require(worst_sum < 1e-9, "pmf sum deviates by " + std::to_string(worst_sum));
  char buf[96];
  std::snprintf(buf, sizeof buf, "max |pmf - oracle| %.1e, max |sum - 1| %.1e", worst, worst_sum);
  if (o.ok) o.detail = buf;
  return o;
}

// 7
Outcome temporal_dynamics() {
  Outcome o;
  std::mt19937_64 rng(20160501);
  std::vector<CvssVector> all;
  for_each_vector([&](const CvssVector& v) { all.push_back(v); });
  std::uniform_int_distribution<std::size_t> pick_vector(0, all.size() - 1);
  std::uniform_int_distribution<int> month(0, 23);
  std::uniform_int_distribution<int> early(0, 20);
  std::uniform_int_distribution<int> npoints(1, 3);
  std::uniform_real_distribution<double> rate(kDefaultLambdaFloor, 0.25);
  const Date reg = std::chrono::year{2015} / 1 / 15;
  constexpr int kHorizon = 24;
  constexpr int kTrials = 1000;
  const TemporalParams defaults{};

  int bumps = 0;
  for (int trial = 0; trial < kTrials && o.ok; ++trial) {
    auto v = all[pick_vector(rng)];
    if (v.c == CiaImpact::None && v.i == CiaImpact::None && v.a == CiaImpact::None) v.c = CiaImpact::Partial;
    const double classic_e = score_classic(v).exploitability_raw;
    const std::string tag = "trial " + std::to_string(trial) + ": ";

    // (a) one point: strictly decreasing once it has passed
    {
      const int p = month(rng);
      const Timeline t("CVE-2015-0001", reg, {{CriticalPointKind::Exploit, p}});
      for (auto policy : {LambdaPolicy::Causal, LambdaPolicy::Fixed}) {
        const TemporalParams params{policy == LambdaPolicy::Fixed ? rate(rng) : kDefaultLambdaFloor,
                                    kDefaultLambdaFloor};
        const auto s = forecast_series(v, t, kHorizon, params, policy);
        for (int m = p + 1; m < kHorizon; ++m) {
          const auto& now = s[static_cast<std::size_t>(m)].score;
          const auto& before = s[static_cast<std::size_t>(m - 1)].score;
          const bool strict_here = m > p + 1 || p > 0 || policy == LambdaPolicy::Fixed;
          if (strict_here) {
            o.require(now.exploitability_raw < before.exploitability_raw,
                      tag + "(a) not strictly decreasing at month " + std::to_string(m));
          } else {
            o.require(now.exploitability_raw <= before.exploitability_raw, tag + "(a) rose at month 1");
          }
          o.require(base_score_raw(now.impact_raw, now.exploitability_raw) <=
                        base_score_raw(before.impact_raw, before.exploitability_raw),
                    tag + "(a) base rose");
        }
      }
    }

    // (b) inserting a point at m raises the month-m score; (c) never above classic
    {
      std::vector<CriticalPoint> pts;
      const int n = npoints(rng) - 1;  // 0..2 existing points
      for (int k = 0; k < n; ++k) pts.push_back({CriticalPointKind::Exploit, month(rng)});
      const int m = month(rng);
      const Timeline without("CVE-2015-0002", reg, pts);
      pts.push_back({CriticalPointKind::Patch, m});
      const Timeline with("CVE-2015-0002", reg, pts);
      const auto a = forecast_series(v, without, kHorizon, defaults);
      const auto b = forecast_series(v, with, kHorizon, defaults);
      const auto& am = a[static_cast<std::size_t>(m)];
      const auto& bm = b[static_cast<std::size_t>(m)];
      if (am.decay_weight < 1.0) {
        ++bumps;
        o.require(bm.score.exploitability_raw > am.score.exploitability_raw,
                  tag + "(b) no increase at month " + std::to_string(m));
      } else {
        o.require(bm.score.exploitability_raw == am.score.exploitability_raw, tag + "(b) changed at w = 1");
      }
      o.require(bm.score.base >= am.score.base, tag + "(b) reported base fell");
      for (const auto* s : {&a, &b}) {
        for (const auto& row : *s) {
          o.require(row.score.exploitability_raw <= classic_e, tag + "(c) above classic exploitability");
          o.require(row.decay_weight > 0.0 && row.decay_weight <= 1.0, tag + "(c) weight outside (0,1]");
        }
      }
    }

    // (d) 1, 2 and 3 points, lambda <= 0.25, nothing after: below 5% by month 23
    {
      std::vector<CriticalPoint> pts;
      const int n = 1 + trial % 3;
      for (int k = 0; k < n; ++k) pts.push_back({CriticalPointKind::Exploit, early(rng)});
      const Timeline t("CVE-2015-0003", reg, pts);
      const int first = t.points().front().month;
      for (auto policy : {LambdaPolicy::Causal, LambdaPolicy::Fixed}) {
        const TemporalParams params{rate(rng), kDefaultLambdaFloor};
        const auto s = forecast_series(v, t, kHorizon, params, policy);
        const double initial = s[static_cast<std::size_t>(first)].score.exploitability_raw;
        const auto& last = s.back();
        o.require(last.lambda <= 0.25, tag + "(d) lambda above 0.25");
        o.require(last.score.exploitability_raw < 0.05 * initial,
                  tag + "(d) still above 5% of initial at month 23");
      }
    }
  }
  o.require(bumps > 100, "too few informative insertions: " + std::to_string(bumps));
  if (o.ok) {
    o.detail = std::to_string(kTrials) + " randomized timelines, " + std::to_string(bumps) +
               " strict insertions";
  }
  return o;
}

// 8
Outcome round_trip() {
  Outcome o;
  const auto tmp = fs::temp_directory_path() / "cvss_acceptance_8";
  fs::remove_all(tmp);
  fs::create_directories(tmp);

  const auto table = load_corpus(kData / "incidence_corpus.txt");
  save_corpus(table, tmp / "table.txt");
  o.require(load_corpus(tmp / "table.txt") == table, "table fixture not lossless");
  o.require(slurp(tmp / "table.txt") == slurp(kData / "incidence_corpus.txt"), "table fixture re-save differs");

  auto records = fixture_records();
  const auto edb = parse_edb_csv(kData / "edb_export.csv");
  const auto patches = parse_patch_csv(kData / "patches.csv");
  auto timelines = build_timelines(records, edb.records, patches.records).timelines;
  const Corpus ingested{records, timelines};
  save_corpus(ingested, tmp / "nvd.txt");
  o.require(load_corpus(tmp / "nvd.txt") == ingested, "ingested corpus not lossless");

  std::ostringstream sink;
  for (const char* dir : {"a", "b"}) {
    const int code = cli::run({"cvss-temporal", "analyze", "--corpus", (tmp / "nvd.txt").string(),
                               "--platform", "all", "--out", (tmp / dir).string()},
                              sink, sink);
    o.require(code == 0, std::string("analyze run ") + dir + " failed: " + sink.str());
  }
  for (auto name : kReportFiles) {
    const auto a = slurp(tmp / "a" / name);
    o.require(!a.empty() && a == slurp(tmp / "b" / name), std::string(name) + " differs between runs");
  }
  fs::remove_all(tmp);
  if (o.ok) o.detail = "2 corpora lossless, 7 report files byte-identical across runs";
  return o;
}

// 9
Outcome end_to_end() {
  Outcome o;
  const auto tmp = fs::temp_directory_path() / "cvss_acceptance_9";
  fs::remove_all(tmp);
  fs::create_directories(tmp);
  const auto corpus = tmp / "corpus.txt";
  const auto reports = tmp / "reports";
  const std::string q = "'";
  const int ingest = shell(kCli + " ingest --nvd " + q + (kData / "nvdcve-1.1-2015.json").string() + q +
                           " " + q + (kData / "nvdcve-1.1-2016.json").string() + q + " --edb " + q +
                           (kData / "edb_export.csv").string() + q + " --patches " + q +
                           (kData / "patches.csv").string() + q + " --out " + q + corpus.string() + q +
                           " >/dev/null 2>&1");
  o.require(ingest == 0, "ingest exited " + std::to_string(ingest));
  const int analyze = shell(kCli + " analyze --corpus " + q + corpus.string() + q +
                            " --platform all --out " + q + reports.string() + q + " >/dev/null 2>&1");
  o.require(analyze == 0, "analyze exited " + std::to_string(analyze));
  std::size_t matched = 0;
  for (auto name : kReportFiles) {
    const auto got = slurp(reports / name);
    const auto want = slurp(kGolden / name);
    o.require(!want.empty(), std::string("golden ") + std::string(name) + " missing");
    o.require(got == want, std::string(name) + " differs from golden");
    matched += !want.empty() && got == want;
  }
  fs::remove_all(tmp);
  if (o.ok) o.detail = std::to_string(matched) + " report files match golden copies";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "classic triple 6.4/8.6/6.8", 0, classic_triple},
      {2, "NVD oracle equivalence", 1000, nvd_oracle},
      {3, "incidence tables", 1000, table_incidence},
      {4, "enhanced-weight dominance", 1000, enhanced_dominance},
      {5, "enhanced P/P/P example values", 0, enhanced_examples},
      {6, "Poisson correctness", 0, poisson},
      {7, "temporal dynamics", 1000, temporal_dynamics},
      {8, "round trip and determinism", 0, round_trip},
      {9, "end-to-end golden reports", 5000, end_to_end},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_ms > 0 && ms > c.budget_ms) {
      o.ok = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.budget_ms)) + " ms budget)";
    }
    failed += !o.ok;
    std::printf("%s [%d] %s: %s (%.1f ms)\n", o.ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), ms);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
