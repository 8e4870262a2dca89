#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cvss/date.hpp"
#include "cvss/scoring.hpp"
#include "cvss/vector.hpp"

namespace cvss {

// Lifecycle events of a vulnerability, in lifecycle order.
enum class CriticalPointKind : std::uint8_t { Discovery, ProofOfConcept, Exploit, Patch, Update };

std::string_view to_string(CriticalPointKind kind) noexcept;
std::optional<CriticalPointKind> parse_critical_point_kind(std::string_view text) noexcept;

struct CriticalPoint {
  CriticalPointKind kind = CriticalPointKind::Exploit;
  int month = 0;  // whole months since registration, >= 0

  friend bool operator==(const CriticalPoint&, const CriticalPoint&) = default;
};

// Critical points of one vulnerability, kept sorted by month (stable, so
// same-month points keep insertion order). Several points of the same kind
// are allowed.
class Timeline {
 public:
  Timeline() = default;
  // Throws cvss::Error if any month is negative.
  Timeline(std::string cve_id, Date registered, std::vector<CriticalPoint> points = {});

  const std::string& cve_id() const noexcept { return cve_id_; }
  const Date& registered() const noexcept { return registered_; }
  std::span<const CriticalPoint> points() const noexcept { return points_; }
  bool empty() const noexcept { return points_.empty(); }

  void add_point(CriticalPoint point);

  friend bool operator==(const Timeline&, const Timeline&) = default;

 private:
  std::string cve_id_;
  Date registered_{};
  std::vector<CriticalPoint> points_;
};

inline constexpr double kDefaultLambdaFloor = 1.0 / 24.0;
inline constexpr int kMaxKappa = 500;

struct TemporalParams {
  double lambda = kDefaultLambdaFloor;        // mean critical points per month
  double lambda_floor = kDefaultLambdaFloor;  // lambda is never estimated below this
};

// e^-lambda * lambda^kappa / kappa!, evaluated in log space. kappa > 500
// yields 0. Throws InvalidLambda for lambda <= 0 or non-finite.
double poisson_pmf(double lambda, int kappa);

// lambda = max(floor, N / max(1, as_of_month)), N = points with month <= as_of_month.
TemporalParams estimate_lambda(const Timeline& t, int as_of_month,
                               double floor = kDefaultLambdaFloor);

// S = sum over points known by as_of_month of pmf(lambda, as_of_month - month).
// With no such point, registration acts as a single virtual point at month 0.
double aggregate_s(const Timeline& t, int as_of_month, const TemporalParams& params);

// Mean over contributing points of min(1, pmf(lambda, k_i) / pmf(lambda, 0)).
// For lambda <= 1 this is exactly S / (N_eff * pmf(lambda, 0)); the per-term
// cap keeps w <= 1 when a burst of events pushes the estimate above 1.
double decay_weight(const Timeline& t, int as_of_month, const TemporalParams& params);

// base_exploitability_raw * decay_weight, unrounded.
double temporal_exploitability(double base_exploitability_raw, const Timeline& t, int as_of_month,
                               const TemporalParams& params);

enum class LambdaPolicy : std::uint8_t {
  Causal,  // re-estimate lambda each month from points known by then
  Fixed,   // use params.lambda for every month
};

struct ForecastPoint {
  int month = 0;
  double lambda = 0.0;
  double decay_weight = 0.0;
  ScoreBreakdown score;  // exploitability fields hold the temporal value
};

// One row per month 0 .. horizon_months-1. Impact is constant; base uses the
// temporal exploitability.
std::vector<ForecastPoint> forecast_series(const CvssVector& v, const Timeline& t,
                                           int horizon_months, const TemporalParams& params,
                                           LambdaPolicy policy = LambdaPolicy::Causal);
std::vector<ForecastPoint> forecast_series(const EnhancedVector& ev, const Timeline& t,
                                           int horizon_months, const TemporalParams& params,
                                           LambdaPolicy policy = LambdaPolicy::Causal);

}  // namespace cvss
