#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cvss/temporal.hpp"

namespace cvss::cli {

inline constexpr std::string_view kConfigFileName = "cvss-temporal.conf";

struct CliConfig {
  std::filesystem::path corpus_path = "corpus.txt";
  double lambda_floor = kDefaultLambdaFloor;
  int horizon_months = 24;
  std::filesystem::path output_dir = "reports";
};

// Flat `key = value` text; '#' starts a comment. Keys: corpus, lambda_floor,
// horizon, out. Throws cvss::Error on an unknown key or bad value.
CliConfig parse_config(std::istream& in, CliConfig base = {});

// Reads ./cvss-temporal.conf from the working directory when it exists.
CliConfig load_default_config();

// Runs the tool. args[0] is the program name. Returns 0 on success, 2 on any
// user or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cvss::cli
