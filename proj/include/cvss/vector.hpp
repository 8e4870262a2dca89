#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace cvss {

enum class AccessVector : std::uint8_t { Local, AdjacentNetwork, Network };
enum class AccessComplexity : std::uint8_t { High, Medium, Low };
enum class Authentication : std::uint8_t { Multiple, Single, None };
enum class CiaImpact : std::uint8_t { None, Partial, Complete };

// Enumerators above are declared in increasing-weight order, so the
// underlying value doubles as a rank.
inline constexpr std::array kAccessVectors{AccessVector::Local, AccessVector::AdjacentNetwork,
                                           AccessVector::Network};
inline constexpr std::array kAccessComplexities{AccessComplexity::High, AccessComplexity::Medium,
                                                AccessComplexity::Low};
inline constexpr std::array kAuthentications{Authentication::Multiple, Authentication::Single,
                                             Authentication::None};
inline constexpr std::array kCiaImpacts{CiaImpact::None, CiaImpact::Partial, CiaImpact::Complete};

// The six CVSS v2 base metrics of one vulnerability.
struct CvssVector {
  AccessVector av = AccessVector::Network;
  AccessComplexity ac = AccessComplexity::Low;
  Authentication au = Authentication::None;
  CiaImpact c = CiaImpact::None;
  CiaImpact i = CiaImpact::None;
  CiaImpact a = CiaImpact::None;

  friend auto operator<=>(const CvssVector&, const CvssVector&) = default;

  bool has_partial() const noexcept {
    return c == CiaImpact::Partial || i == CiaImpact::Partial || a == CiaImpact::Partial;
  }
};

char metric_letter(AccessVector v) noexcept;
char metric_letter(AccessComplexity v) noexcept;
char metric_letter(Authentication v) noexcept;
char metric_letter(CiaImpact v) noexcept;

// Parses `AV:N/AC:L/Au:N/C:C/I:C/A:C`, optionally wrapped in one pair of
// parentheses. Keys must appear in exactly this order and letters are
// case-sensitive. Throws MalformedVector or UnknownMetricValue.
CvssVector parse_vector(std::string_view text);

// Canonical form, no parentheses.
std::string format_vector(const CvssVector& v);

// Calls fn(v) for each of the 729 base vectors in a fixed order.
template <typename Fn>
void for_each_vector(Fn&& fn) {
  for (auto av : kAccessVectors)
    for (auto ac : kAccessComplexities)
      for (auto au : kAuthentications)
        for (auto c : kCiaImpacts)
          for (auto i : kCiaImpacts)
            for (auto a : kCiaImpacts) fn(CvssVector{av, ac, au, c, i, a});
}

}  // namespace cvss
