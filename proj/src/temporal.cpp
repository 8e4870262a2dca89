#include "cvss/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cvss/error.hpp"

namespace cvss {

std::string_view to_string(CriticalPointKind kind) noexcept {
  switch (kind) {
    case CriticalPointKind::Discovery: return "discovery";
    case CriticalPointKind::ProofOfConcept: return "poc";
    case CriticalPointKind::Exploit: return "exploit";
    case CriticalPointKind::Patch: return "patch";
    case CriticalPointKind::Update: return "update";
  }
  return "?";
}

std::optional<CriticalPointKind> parse_critical_point_kind(std::string_view text) noexcept {
  for (auto kind : {CriticalPointKind::Discovery, CriticalPointKind::ProofOfConcept,
                    CriticalPointKind::Exploit, CriticalPointKind::Patch,
                    CriticalPointKind::Update}) {
    if (text == to_string(kind)) return kind;
  }
  return std::nullopt;
}

Timeline::Timeline(std::string cve_id, Date registered, std::vector<CriticalPoint> points)
    : cve_id_(std::move(cve_id)), registered_(registered), points_(std::move(points)) {
  for (const auto& p : points_) {
    if (p.month < 0) throw Error("critical point month must be >= 0 in " + cve_id_);
  }
  std::stable_sort(points_.begin(), points_.end(),
                   [](const CriticalPoint& a, const CriticalPoint& b) { return a.month < b.month; });
}

void Timeline::add_point(CriticalPoint point) {
  if (point.month < 0) throw Error("critical point month must be >= 0 in " + cve_id_);
  const auto pos = std::upper_bound(
      points_.begin(), points_.end(), point,
      [](const CriticalPoint& a, const CriticalPoint& b) { return a.month < b.month; });
  points_.insert(pos, point);
}

double poisson_pmf(double lambda, int kappa) {
  if (!std::isfinite(lambda) || lambda <= 0.0) {
    throw InvalidLambda("poisson rate must be finite and > 0, got " + std::to_string(lambda));
  }
  if (kappa < 0) throw std::invalid_argument("poisson_pmf: kappa must be >= 0");
  if (kappa > kMaxKappa) return 0.0;
  return std::exp(-lambda + kappa * std::log(lambda) - std::lgamma(kappa + 1.0));
}

namespace {

std::size_t known_points(const Timeline& t, int as_of_month) {
  return static_cast<std::size_t>(std::count_if(
      t.points().begin(), t.points().end(),
      [as_of_month](const CriticalPoint& p) { return p.month <= as_of_month; }));
}

// Elapsed months of every point known by as_of_month, or {as_of_month} for the
// virtual registration point.
std::vector<int> elapsed_months(const Timeline& t, int as_of_month) {
  std::vector<int> out;
  for (const auto& p : t.points()) {
    if (p.month <= as_of_month) out.push_back(as_of_month - p.month);
  }
  if (out.empty()) out.push_back(as_of_month);
  return out;
}

void require_month(int as_of_month) {
  if (as_of_month < 0) throw std::invalid_argument("as_of_month must be >= 0");
}

}  // namespace

TemporalParams estimate_lambda(const Timeline& t, int as_of_month, double floor) {
  require_month(as_of_month);
  const auto n = static_cast<double>(known_points(t, as_of_month));
  const double lambda = std::max(floor, n / std::max(1, as_of_month));
  return {lambda, floor};
}

double aggregate_s(const Timeline& t, int as_of_month, const TemporalParams& params) {
  require_month(as_of_month);
  double s = 0.0;
  for (int kappa : elapsed_months(t, as_of_month)) s += poisson_pmf(params.lambda, kappa);
  return s;
}

double decay_weight(const Timeline& t, int as_of_month, const TemporalParams& params) {
  require_month(as_of_month);
  const double fresh = poisson_pmf(params.lambda, 0);
  const auto kappas = elapsed_months(t, as_of_month);
  double sum = 0.0;
  for (int kappa : kappas) sum += std::min(1.0, poisson_pmf(params.lambda, kappa) / fresh);
  return sum / static_cast<double>(kappas.size());
}

double temporal_exploitability(double base_exploitability_raw, const Timeline& t, int as_of_month,
                               const TemporalParams& params) {
  return base_exploitability_raw * decay_weight(t, as_of_month, params);
}

namespace {

std::vector<ForecastPoint> forecast(const SubScore& impact, const CvssVector& v, const Timeline& t,
                                    int horizon_months, const TemporalParams& params,
                                    LambdaPolicy policy) {
  if (horizon_months < 1) throw std::invalid_argument("forecast horizon must be >= 1 month");
  const auto expl = exploitability_subscore(v.av, v.ac, v.au);
  std::vector<ForecastPoint> out;
  out.reserve(static_cast<std::size_t>(horizon_months));
  for (int month = 0; month < horizon_months; ++month) {
    const auto p = policy == LambdaPolicy::Causal ? estimate_lambda(t, month, params.lambda_floor)
                                                  : params;
    const double w = decay_weight(t, month, p);
    const double e = expl.raw * w;
    ForecastPoint row;
    row.month = month;
    row.lambda = p.lambda;
    row.decay_weight = w;
    row.score = {impact.rounded, Score::round(std::min(e, 10.0)), base_score(impact.raw, e),
                 impact.raw, e};
    out.push_back(row);
  }
  return out;
}

}  // namespace

std::vector<ForecastPoint> forecast_series(const CvssVector& v, const Timeline& t,
                                           int horizon_months, const TemporalParams& params,
                                           LambdaPolicy policy) {
  return forecast(classic_impact(v), v, t, horizon_months, params, policy);
}

std::vector<ForecastPoint> forecast_series(const EnhancedVector& ev, const Timeline& t,
                                           int horizon_months, const TemporalParams& params,
                                           LambdaPolicy policy) {
  return forecast(enhanced_impact(ev), ev.base, t, horizon_months, params, policy);
}

}  // namespace cvss
