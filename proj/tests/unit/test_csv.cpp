#include <doctest.h>

#include <sstream>

#include "copreg/csv.hpp"
#include "copreg/errors.hpp"

using namespace copreg;

TEST_CASE("reads plain and quoted fields with CRLF") {
  std::istringstream in(
      "x,y,label\r\n1.5,2,\"a,b\"\r\n-3e2,0.25,\"say \"\"hi\"\"\"\n");
  const CsvTable t = read_csv(in);
  CHECK(t.header == std::vector<std::string>{"x", "y", "label"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][2] == "a,b");
  CHECK(t.rows[1][2] == "say \"hi\"");
  CHECK(parse_double(t.rows[1][0], "cell") == -300.0);
  CHECK(t.column("y") == 1);
  CHECK_THROWS_AS(t.column("missing"), InvalidInput);
}

TEST_CASE("rejects ragged rows and empty input") {
  std::istringstream ragged("a,b\n1,2,3\n");
  CHECK_THROWS_AS(read_csv(ragged), InvalidInput);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_csv(empty), InvalidInput);
}

TEST_CASE("write quotes only when needed and round-trips") {
  std::ostringstream out;
  write_csv(out, {"a", "b"}, {{"plain", "with,comma"}, {"q\"uote", "x"}});
  CHECK(out.str() == "a,b\nplain,\"with,comma\"\n\"q\"\"uote\",x\n");
  std::istringstream back(out.str());
  const CsvTable t = read_csv(back);
  CHECK(t.rows[0][1] == "with,comma");
  CHECK(t.rows[1][0] == "q\"uote");
}

TEST_CASE("doubles round-trip through format/parse") {
  for (double v : {0.1, -1.0 / 3.0, 1e-300, 2.5e17, 0.0}) {
    CHECK(parse_double(format_double(v), "t") == v);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK_THROWS_AS(parse_double("1.2.3", "t"), InvalidInput);
  CHECK_THROWS_AS(parse_double("abc", "t"), InvalidInput);
  CHECK_THROWS_AS(parse_double("", "t"), InvalidInput);
}
