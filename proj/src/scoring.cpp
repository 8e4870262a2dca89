#include "cvss/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace cvss {

namespace {
// Absorbs representation error such as 6.85 being stored as 6.8499999...
constexpr double kRoundingSlack = 1e-9;
}  // namespace

Score Score::round(double value) {
  return Score(static_cast<int>(std::floor(value * 10.0 + 0.5 + kRoundingSlack)));
}

std::string Score::str() const {
  const int whole = std::abs(tenths_) / 10;
  const int frac = std::abs(tenths_) % 10;
  std::string out = tenths_ < 0 ? "-" : "";
  out += std::to_string(whole);
  out += '.';
  out += static_cast<char>('0' + frac);
  return out;
}

double weight(AccessVector v) noexcept {
  switch (v) {
    case AccessVector::Local: return 0.395;
    case AccessVector::AdjacentNetwork: return 0.646;
    case AccessVector::Network: return 1.0;
  }
  return 0.0;
}

double weight(AccessComplexity v) noexcept {
  switch (v) {
    case AccessComplexity::High: return 0.35;
    case AccessComplexity::Medium: return 0.61;
    case AccessComplexity::Low: return 0.71;
  }
  return 0.0;
}

double weight(Authentication v) noexcept {
  switch (v) {
    case Authentication::Multiple: return 0.45;
    case Authentication::Single: return 0.56;
    case Authentication::None: return 0.704;
  }
  return 0.0;
}

double impact_weight(CiaImpact ci) noexcept {
  switch (ci) {
    case CiaImpact::None: return weights::kImpactNone;
    case CiaImpact::Partial: return weights::kImpactPartial;
    case CiaImpact::Complete: return weights::kImpactComplete;
  }
  return 0.0;
}

double enhanced_impact_weight(CiaImpact ci, VulnScope scope) noexcept {
  if (ci != CiaImpact::Partial) return impact_weight(ci);
  return scope == VulnScope::Application ? weights::kPartialApplication
                                         : weights::kPartialSystem;
}

SubScore impact_subscore(double c, double i, double a) noexcept {
  const double raw = weights::kImpactScale * (1.0 - (1.0 - c) * (1.0 - i) * (1.0 - a));
  return {raw, Score::round(std::min(raw, 10.0))};
}

SubScore exploitability_subscore(AccessVector av, AccessComplexity ac,
                                 Authentication au) noexcept {
  const double raw = weights::kExploitabilityScale * weight(ac) * weight(au) * weight(av);
  return {raw, Score::round(std::min(raw, 10.0))};
}

double base_score_raw(double impact_raw, double exploitability_raw) noexcept {
  const double f = impact_raw == 0.0 ? 0.0 : weights::kImpactFactor;
  const double raw = (weights::kBaseImpactCoef * impact_raw +
                      weights::kBaseExploitabilityCoef * exploitability_raw - weights::kBaseOffset) *
                     f;
  return std::clamp(raw, 0.0, 10.0);
}

Score base_score(double impact_raw, double exploitability_raw) noexcept {
  return Score::round(base_score_raw(impact_raw, exploitability_raw));
}

SubScore classic_impact(const CvssVector& v) noexcept {
  return impact_subscore(impact_weight(v.c), impact_weight(v.i), impact_weight(v.a));
}

SubScore enhanced_impact(const EnhancedVector& ev) noexcept {
  const auto& v = ev.base;
  return impact_subscore(enhanced_impact_weight(v.c, ev.scope),
                         enhanced_impact_weight(v.i, ev.scope),
                         enhanced_impact_weight(v.a, ev.scope));
}

namespace {

ScoreBreakdown compose(const SubScore& impact, const CvssVector& v) noexcept {
  const auto expl = exploitability_subscore(v.av, v.ac, v.au);
  return {impact.rounded, expl.rounded, base_score(impact.raw, expl.raw), impact.raw, expl.raw};
}

}  // namespace

ScoreBreakdown score_classic(const CvssVector& v) noexcept {
  return compose(classic_impact(v), v);
}

ScoreBreakdown score_enhanced(const EnhancedVector& ev) noexcept {
  return compose(enhanced_impact(ev), ev.base);
}

}  // namespace cvss
