#include "cvss/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include <CLI11.hpp>

#include "cvss/analytics.hpp"
#include "cvss/corpus.hpp"
#include "cvss/error.hpp"
#include "cvss/ingest.hpp"
#include "cvss/scoring.hpp"
#include "cvss/temporal.hpp"
#include "cvss/vector.hpp"

namespace cvss::cli {

namespace {

constexpr int kOk = 0;
constexpr int kUserError = 2;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string{s.substr(b, e - b + 1)};
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double d = std::stod(value, &used);
    if (used == value.size()) return d;
  } catch (const std::exception&) {
  }
  throw Error("config key '" + key + "': not a number '" + value + "'");
}

int parse_int(const std::string& key, const std::string& value) {
  int out = 0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
    throw Error("config key '" + key + "': not an integer '" + value + "'");
  }
  return out;
}

void validate(const CliConfig& c) {
  if (!(c.lambda_floor > 0.0)) throw Error("lambda_floor must be > 0");
  if (c.horizon_months < 1) throw Error("horizon must be >= 1 month");
}

// CVE-YYYY-N ordering by year, then numerically by sequence.
bool cve_less(const std::string& a, const std::string& b) {
  auto key = [](const std::string& id) {
    const auto year = std::stoi(id.substr(4, 4));
    const auto seq = id.substr(9);
    return std::tuple(year, seq.size(), seq);
  };
  return key(a) < key(b);
}

void print_diagnostics(std::ostream& err, std::string_view source,
                       const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags) err << source << ": " << d.subject << ": " << d.message << '\n';
}

struct ScoreArgs {
  std::string vector;
  std::string scope;
  bool enhanced = false;
};

int cmd_score(const ScoreArgs& a, std::ostream& out, std::ostream& err) {
  const auto v = parse_vector(a.vector);
  ScoreBreakdown s;
  if (a.enhanced) {
    if (a.scope.empty()) {
      err << "error: --enhanced requires --scope app|os\n";
      return kUserError;
    }
    s = score_enhanced({v, a.scope == "os" ? VulnScope::OperatingSystem : VulnScope::Application});
  } else {
    s = score_classic(v);
  }
  out << "impact=" << s.impact.str() << " exploitability=" << s.exploitability.str()
      << " base=" << s.base.str() << '\n';
  return kOk;
}

struct IngestArgs {
  std::vector<std::string> nvd;
  std::string edb;
  std::string patches;
  std::vector<std::string> overrides;
};

int cmd_ingest(const IngestArgs& a, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  std::map<std::string, VulnScope> overrides;
  for (const auto& o : a.overrides) {
    const auto eq = o.find('=');
    const auto scope = eq == std::string::npos ? std::nullopt : parse_scope(o.substr(eq + 1));
    if (!scope || !is_cve_id(o.substr(0, eq))) {
      err << "error: --scope-override expects CVE-ID=app|os, got '" << o << "'\n";
      return kUserError;
    }
    overrides[o.substr(0, eq)] = *scope;
  }

  std::vector<VulnRecord> records;
  std::set<std::string> seen;
  std::size_t skipped = 0;
  for (const auto& path : a.nvd) {
    auto feed = parse_nvd_feed(std::filesystem::path(path));
    print_diagnostics(err, path, feed.skipped);
    skipped += feed.skipped.size();
    for (auto& r : feed.records) {
      if (!seen.insert(r.cve_id).second) {
        err << path << ": " << r.cve_id << ": duplicate of an earlier feed entry\n";
        ++skipped;
        continue;
      }
      records.push_back(std::move(r));
    }
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const VulnRecord& x, const VulnRecord& y) { return cve_less(x.cve_id, y.cve_id); });
  apply_scope_overrides(records, overrides);

  EdbExport edb;
  if (!a.edb.empty()) {
    edb = parse_edb_csv(std::filesystem::path(a.edb));
    print_diagnostics(err, a.edb, edb.diagnostics);
  }
  PatchList patches;
  if (!a.patches.empty()) {
    patches = parse_patch_csv(std::filesystem::path(a.patches));
    print_diagnostics(err, a.patches, patches.diagnostics);
  }

  auto timelines = build_timelines(records, edb.records, patches.records);
  print_diagnostics(err, "timelines", timelines.diagnostics);

  std::size_t unresolved = 0;
  for (const auto& r : records) {
    if (!r.scope) {
      err << "scope: " << r.cve_id << ": unclassifiable from CPEs; use --scope-override\n";
      ++unresolved;
    }
  }

  Corpus corpus{std::move(records), std::move(timelines.timelines)};
  save_corpus(corpus, cfg.corpus_path);
  out << "kept=" << corpus.records.size() << " skipped=" << skipped
      << " unlinked=" << edb.unlinked() << '\n';
  return kOk;
}

int cmd_analyze(const std::string& platform_text, const CliConfig& cfg, std::ostream& out) {
  const auto platform = parse_platform_filter(platform_text);
  if (!platform) throw Error("--platform must be android, ios or all");
  const auto corpus = load_corpus(cfg.corpus_path);
  const auto report = analyze(corpus, *platform, cfg.horizon_months, cfg.lambda_floor);
  write_reports(cfg.output_dir, report);
  out << "records=" << report.records << " changed=" << report.comparison.changed
      << " out=" << cfg.output_dir.string() << '\n';
  return kOk;
}

int cmd_forecast(const std::string& cve, const CliConfig& cfg, std::ostream& out) {
  const auto corpus = load_corpus(cfg.corpus_path);
  const auto* record = corpus.find_record(cve);
  if (!record) throw UnknownCve("unknown CVE '" + cve + "' in " + cfg.corpus_path.string());
  const auto* timeline = corpus.find_timeline(cve);
  const Timeline fallback(record->cve_id, record->published);
  const auto& t = timeline ? *timeline : fallback;

  const TemporalParams params{cfg.lambda_floor, cfg.lambda_floor};
  const auto series =
      record->scope
          ? forecast_series(EnhancedVector{record->vector, *record->scope}, t, cfg.horizon_months,
                            params)
          : forecast_series(record->vector, t, cfg.horizon_months, params);
  out << "month,impact,exploitability,base\n";
  for (const auto& p : series) {
    out << p.month << ',' << p.score.impact.str() << ',' << p.score.exploitability.str() << ','
        << p.score.base.str() << '\n';
  }
  return kOk;
}

}  // namespace

CliConfig parse_config(std::istream& in, CliConfig base) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw Error("config line " + std::to_string(number) + ": expected key = value");
    }
    const auto key = trim(body.substr(0, eq));
    const auto value = trim(body.substr(eq + 1));
    if (key == "corpus") {
      base.corpus_path = value;
    } else if (key == "lambda_floor") {
      base.lambda_floor = parse_double(key, value);
    } else if (key == "horizon") {
      base.horizon_months = parse_int(key, value);
    } else if (key == "out") {
      base.output_dir = value;
    } else {
      throw Error("config line " + std::to_string(number) + ": unknown key '" + key + "'");
    }
  }
  return base;
}

CliConfig load_default_config() {
  std::ifstream in{std::string(kConfigFileName)};
  if (!in) return {};
  return parse_config(in);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"CVSS v2 scoring with app/OS impact split and critical-point exploitability decay",
               "cvss-temporal"};
  app.require_subcommand(1);

  std::optional<std::string> corpus_flag, out_flag;
  std::optional<double> floor_flag;
  std::optional<int> horizon_flag;

  ScoreArgs score_args;
  auto* score = app.add_subcommand("score", "Score one CVSS v2 base vector");
  score->add_option("vector", score_args.vector, "e.g. AV:N/AC:M/Au:N/C:P/I:P/A:P")->required();
  score->add_option("--scope", score_args.scope, "Partial-impact scope for --enhanced")
      ->check(CLI::IsMember({"app", "os"}));
  score->add_flag("--enhanced", score_args.enhanced, "Use the application/OS Partial weights");

  IngestArgs ingest_args;
  auto* ingest = app.add_subcommand("ingest", "Build a normalized corpus from NVD/EDB files");
  ingest->add_option("--nvd", ingest_args.nvd, "NVD JSON 1.1 feed file(s)")->required();
  ingest->add_option("--edb", ingest_args.edb, "Exploit-DB CSV export");
  ingest->add_option("--patches", ingest_args.patches, "Patch events CSV (cve_id,date,kind)");
  ingest->add_option("--out", corpus_flag, "Corpus file to write");
  ingest->add_option("--scope-override", ingest_args.overrides, "CVE-ID=app|os");

  std::string platform = "all";
  auto* analyze_cmd = app.add_subcommand("analyze", "Write incidence, histogram, comparison and forecast reports");
  analyze_cmd->add_option("--corpus", corpus_flag, "Corpus file");
  analyze_cmd->add_option("--platform", platform, "android|ios|all");
  analyze_cmd->add_option("--out", out_flag, "Report directory");
  analyze_cmd->add_option("--horizon", horizon_flag, "Forecast horizon in months");
  analyze_cmd->add_option("--lambda-floor", floor_flag, "Lower bound for estimated lambda");

  std::string cve;
  auto* forecast = app.add_subcommand("forecast", "Print the month-by-month forecast of one CVE");
  forecast->add_option("--corpus", corpus_flag, "Corpus file");
  forecast->add_option("--cve", cve, "CVE id")->required();
  forecast->add_option("--horizon", horizon_flag, "Forecast horizon in months");
  forecast->add_option("--lambda-floor", floor_flag, "Lower bound for estimated lambda");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUserError;
  }

  try {
    auto cfg = load_default_config();
    if (corpus_flag) cfg.corpus_path = *corpus_flag;
    if (out_flag) cfg.output_dir = *out_flag;
    if (floor_flag) cfg.lambda_floor = *floor_flag;
    if (horizon_flag) cfg.horizon_months = *horizon_flag;
    validate(cfg);

    if (score->parsed()) return cmd_score(score_args, out, err);
    if (ingest->parsed()) return cmd_ingest(ingest_args, cfg, out, err);
    if (analyze_cmd->parsed()) return cmd_analyze(platform, cfg, out);
    if (forecast->parsed()) return cmd_forecast(cve, cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUserError;
  }
  return kUserError;
}

}  // namespace cvss::cli
