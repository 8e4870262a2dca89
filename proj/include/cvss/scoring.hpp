#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "cvss/vector.hpp"

namespace cvss {

// A reported score with one decimal, stored as an integer count of tenths so
// that comparisons and differences are exact.
class Score {
 public:
  constexpr Score() = default;
  static constexpr Score from_tenths(int tenths) { return Score(tenths); }
  // Half-up rounding to one decimal.
  static Score round(double value);

  constexpr int tenths() const noexcept { return tenths_; }
  constexpr double value() const noexcept { return tenths_ / 10.0; }
  std::string str() const;

  friend constexpr auto operator<=>(Score, Score) = default;

 private:
  constexpr explicit Score(int tenths) : tenths_(tenths) {}
  int tenths_ = 0;
};

enum class VulnScope : std::uint8_t { Application, OperatingSystem };

struct EnhancedVector {
  CvssVector base;
  VulnScope scope = VulnScope::Application;

  friend auto operator<=>(const EnhancedVector&, const EnhancedVector&) = default;
};

struct SubScore {
  double raw = 0.0;
  Score rounded;
};

struct ScoreBreakdown {
  Score impact;
  Score exploitability;
  Score base;
  double impact_raw = 0.0;
  double exploitability_raw = 0.0;
};

namespace weights {
inline constexpr double kImpactNone = 0.0;
inline constexpr double kImpactPartial = 0.275;
inline constexpr double kImpactComplete = 0.660;
inline constexpr double kPartialApplication = 0.461;
inline constexpr double kPartialSystem = 0.515;

inline constexpr double kImpactScale = 10.41;
inline constexpr double kExploitabilityScale = 20.0;
inline constexpr double kBaseImpactCoef = 0.6;
inline constexpr double kBaseExploitabilityCoef = 0.4;
inline constexpr double kBaseOffset = 1.5;
inline constexpr double kImpactFactor = 1.176;
}  // namespace weights

double weight(AccessVector v) noexcept;
double weight(AccessComplexity v) noexcept;
double weight(Authentication v) noexcept;

double impact_weight(CiaImpact ci) noexcept;
double enhanced_impact_weight(CiaImpact ci, VulnScope scope) noexcept;

// raw = 10.41 * (1 - (1-c)(1-i)(1-a)). The raw value is returned uncapped
// (10.0008 for all-Complete) because base_score composes from it; the rounded
// value is capped at 10.0.
SubScore impact_subscore(double c, double i, double a) noexcept;
SubScore exploitability_subscore(AccessVector av, AccessComplexity ac, Authentication au) noexcept;

// (0.6*impact + 0.4*exploitability - 1.5) * f(impact), f(0) = 0, else 1.176.
// Clamped to [0, 10] and rounded half-up.
double base_score_raw(double impact_raw, double exploitability_raw) noexcept;
Score base_score(double impact_raw, double exploitability_raw) noexcept;

ScoreBreakdown score_classic(const CvssVector& v) noexcept;
ScoreBreakdown score_enhanced(const EnhancedVector& ev) noexcept;

// Impact sub-score of the vector under classic or enhanced weights.
SubScore classic_impact(const CvssVector& v) noexcept;
SubScore enhanced_impact(const EnhancedVector& ev) noexcept;

}  // namespace cvss
