#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "cvss/ingest.hpp"
#include "cvss/temporal.hpp"

namespace cvss {

inline constexpr std::string_view kCorpusHeader = "cvss-temporal-corpus v1";

// Normalized corpus. On disk, one record or timeline per line:
//
//   cvss-temporal-corpus v1
//   R|CVE-id|platform|published|vector|nvd_base|scope|cpe1;cpe2
//   T|CVE-id|registered|kind:month;kind:month
//
// scope is `app`, `os` or `-` (unresolved). Records are written before
// timelines, each in container order.
struct Corpus {
  std::vector<VulnRecord> records;
  std::vector<Timeline> timelines;

  const VulnRecord* find_record(std::string_view cve_id) const noexcept;
  const Timeline* find_timeline(std::string_view cve_id) const noexcept;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

void write_corpus(std::ostream& out, const Corpus& corpus);
// Throws CorpusVersionMismatch on an unknown header, CorpusIoError on any
// malformed line (the message names the line number).
Corpus read_corpus(std::istream& in);

void save_corpus(const Corpus& corpus, const std::filesystem::path& path);
Corpus load_corpus(const std::filesystem::path& path);

}  // namespace cvss
