#include <doctest.h>

#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "pottslab/io.hpp"
#include "pottslab/report.hpp"

using namespace pottslab;

TEST_CASE("double formatting round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 1e-17, 12345.6789, 0.93304476901111144, -2.5e300}) {
    const std::string s = format_double(x);
    CHECK(std::stod(s) == x);
  }
}

TEST_CASE("csv writer: quoting, line endings, arity") {
  CsvWriter csv({"a", "b"});
  csv.add_field(std::string("plain"));
  csv.add_field(1.5);
  csv.end_row();
  csv.add_field(std::string("needs,\"quotes\""));
  csv.add_field(2);
  csv.end_row();
  const std::string out = csv.str();
  CHECK(out == "a,b\nplain,1.5\n\"needs,\"\"quotes\"\"\",2\n");
  CHECK(out.find('\r') == std::string::npos);

  CsvWriter bad({"x", "y"});
  bad.add_field(1);
  CHECK_THROWS_AS(bad.end_row(), std::logic_error);
}

TEST_CASE("json object writer") {
  JsonObj o;
  o.field("name", "a\"b\n").field("x", 0.25).field("n", 7).field("flag", true);
  o.field("missing", std::numeric_limits<double>::quiet_NaN());
  CHECK(o.str(false) ==
        "{\"name\":\"a\\\"b\\n\",\"x\":0.25,\"n\":7,\"flag\":true,\"missing\":null}");
}

TEST_CASE("fnv1a64 fingerprint") {
  CHECK(fnv1a64("abc") == 0xe71fa2190541574bULL);
  CHECK(hex64(fnv1a64("abc")) == "e71fa2190541574b");
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
}

TEST_CASE("file round trip") {
  const std::string path = "io_roundtrip.tmp";
  write_text_file(path, "line1\nline2\n");
  CHECK(read_text_file(path) == "line1\nline2\n");
  std::remove(path.c_str());
}

TEST_CASE("check report accounting") {
  CheckReport rep("demo");
  rep.require_le("ok", 1.0, 2.0, 0.0);
  rep.require_le("tight", 1.0, 1.0, 0.0);
  rep.require_le("bad", 2.0, 1.0, 1e-12);
  CHECK(rep.cases() == 3);
  CHECK(rep.violations() == 1);
  CHECK_FALSE(rep.pass());
  CHECK(rep.min_slack() == -1.0);
  CHECK(rep.worst_case() == "bad");

  CheckReport other("demo");
  other.require_le("worse", 5.0, 1.0, 0.0);
  rep.merge(other, "pfx/");
  CHECK(rep.violations() == 2);
  CHECK(rep.worst_case() == "pfx/worse");

  const std::string csv = check_cases_csv({&rep});
  CHECK(csv.find("demo,bad,2,1,-1,0\n") != std::string::npos);
  const std::string frag = check_summary_json_fragment(rep);
  CHECK(frag.find("\"violations\":2") != std::string::npos);
}
