#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cvss/corpus.hpp"
#include "cvss/error.hpp"

using namespace cvss;
using std::chrono::year;

namespace {

const std::filesystem::path kData = CVSS_TEST_DATA_DIR;

Corpus small_corpus() {
  Corpus c;
  VulnRecord a;
  a.cve_id = "CVE-2015-6602";
  a.platform = Platform::Android;
  a.published = year{2015} / 10 / 1;
  a.vector = parse_vector("AV:N/AC:M/Au:N/C:P/I:P/A:P");
  a.nvd_base_score = Score::from_tenths(68);
  a.scope = VulnScope::OperatingSystem;
  a.cpe_uris = {"cpe:2.3:o:google:android:6.0:*:*:*:*:*:*:*",
                "cpe:2.3:o:google:android:6.0.1:*:*:*:*:*:*:*"};
  VulnRecord b = a;
  b.cve_id = "CVE-2016-0001";
  b.platform = Platform::IOS;
  b.scope.reset();
  b.cpe_uris.clear();
  VulnRecord d = a;
  d.cve_id = "CVE-2016-0002";
  d.platform = Platform::Other;
  d.scope = VulnScope::Application;
  c.records = {a, b, d};
  c.timelines = {Timeline(a.cve_id, a.published,
                          {{CriticalPointKind::ProofOfConcept, 1}, {CriticalPointKind::Exploit, 5}}),
                 Timeline(b.cve_id, b.published)};
  return c;
}

std::string to_text(const Corpus& c) {
  std::ostringstream out;
  write_corpus(out, c);
  return out.str();
}

Corpus from_text(const std::string& s) {
  std::istringstream in(s);
  return read_corpus(in);
}

}  // namespace

TEST_CASE("corpus text format") {
  const auto text = to_text(small_corpus());
  CHECK(text.rfind("cvss-temporal-corpus v1\n", 0) == 0);
  CHECK(text.find("R|CVE-2015-6602|android|2015-10-01|AV:N/AC:M/Au:N/C:P/I:P/A:P|6.8|os|"
                  "cpe:2.3:o:google:android:6.0:*:*:*:*:*:*:*;"
                  "cpe:2.3:o:google:android:6.0.1:*:*:*:*:*:*:*\n") != std::string::npos);
  CHECK(text.find("R|CVE-2016-0001|ios|2015-10-01|AV:N/AC:M/Au:N/C:P/I:P/A:P|6.8|-|\n") !=
        std::string::npos);
  CHECK(text.find("T|CVE-2015-6602|2015-10-01|poc:1;exploit:5\n") != std::string::npos);
  CHECK(text.find("T|CVE-2016-0001|2015-10-01|\n") != std::string::npos);
}

TEST_CASE("3-record corpus round-trips and re-saves byte-identically") {
  const auto c = small_corpus();
  const auto text = to_text(c);
  const auto back = from_text(text);
  CHECK(back == c);
  CHECK(to_text(back) == text);
  CHECK(back.find_record("CVE-2016-0002") != nullptr);
  CHECK(back.find_timeline("CVE-2016-0002") == nullptr);
}

TEST_CASE("bundled table fixture round-trips through a file") {
  const auto c = load_corpus(kData / "incidence_corpus.txt");
  CHECK(c.records.size() == 826 + 845);
  const auto tmp = std::filesystem::temp_directory_path() / "cvss_corpus_roundtrip.txt";
  save_corpus(c, tmp);
  CHECK(load_corpus(tmp) == c);
  std::ifstream a(kData / "incidence_corpus.txt", std::ios::binary), b(tmp, std::ios::binary);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
  std::filesystem::remove(tmp);
}

TEST_CASE("version header is enforced") {
  CHECK_THROWS_AS(from_text("cvss-temporal-corpus v2\n"), CorpusVersionMismatch);
  CHECK_THROWS_AS(from_text(""), CorpusIoError);
  CHECK(from_text("cvss-temporal-corpus v1\n").records.empty());
}

TEST_CASE("malformed lines name their line number") {
  const std::string head = "cvss-temporal-corpus v1\n";
  const char* bad[] = {
      "X|foo\n",
      "R|CVE-2015-6602|android|2015-10-01|AV:N/AC:M/Au:N/C:P/I:P/A:P|6.8|os\n",
      "R|CVE-2015-6602|android|2015-13-01|AV:N/AC:M/Au:N/C:P/I:P/A:P|6.8|os|\n",
      "R|CVE-2015-6602|linux|2015-10-01|AV:N/AC:M/Au:N/C:P/I:P/A:P|6.8|os|\n",
      "R|CVE-2015-6602|android|2015-10-01|AV:N/AC:M/Au:N/C:P/I:P|6.8|os|\n",
      "R|CVE-2015-6602|android|2015-10-01|AV:N/AC:M/Au:N/C:P/I:P/A:P|6.8|kernel|\n",
      "R|CVE-2015-6602|android|2015-10-01|AV:N/AC:M/Au:N/C:P/I:P/A:P|high|os|\n",
      "R|bogus|android|2015-10-01|AV:N/AC:M/Au:N/C:P/I:P/A:P|6.8|os|\n",
      "T|CVE-2015-6602|2015-10-01|exploit\n",
      "T|CVE-2015-6602|2015-10-01|exploit:-1\n",
      "T|CVE-2015-6602|2015-10-01|hack:1\n",
  };
  for (const char* line : bad) {
    INFO(line);
    try {
      from_text(head + line);
      FAIL("accepted");
    } catch (const CorpusIoError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
}

TEST_CASE("missing file is an I/O error") {
  CHECK_THROWS_AS(load_corpus(kData / "does_not_exist.txt"), CorpusIoError);
}
