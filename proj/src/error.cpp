#include "cvss/error.hpp"

namespace cvss {

namespace {

std::string unresolved_message(const std::vector<std::string>& cves) {
  std::string msg = "scope unresolved for " + std::to_string(cves.size()) + " record(s):";
  for (const auto& c : cves) msg += " " + c;
  return msg;
}

}  // namespace

UnresolvedScope::UnresolvedScope(std::vector<std::string> cves)
    : Error(unresolved_message(cves)), cves_(std::move(cves)) {}

}  // namespace cvss
