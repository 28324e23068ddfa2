#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "qgrav/csv.hpp"
#include "qgrav/errors.hpp"

using namespace qgrav;

TEST_SUITE("csv") {

TEST_CASE("number formatting round-trips") {
  CHECK(csv::format_number(0.1) == "0.1");
  CHECK(csv::format_number(-2.0) == "-2");
  CHECK(csv::format_number(INFINITY) == "inf");
  CHECK(csv::format_number(NAN) == "nan");
  for (double v : {1.0 / 3.0, 6.02214076e23, -1.6e-19, 0.9375}) CHECK(std::stod(csv::format_number(v)) == v);
}

TEST_CASE("table layout") {
  csv::Table t({"name", "x", "n"});
  t.meta("units", "natural");
  t.meta("sigma", 0.5);
  t.add_row({"plain", 1.25, 3L});
  t.add_row({"with, comma \"q\"", -0.5, 0L});
  std::ostringstream os;
  t.write(os);
  CHECK(os.str() ==
        "# units = natural\n"
        "# sigma = 0.5\n"
        "name,x,n\n"
        "plain,1.25,3\n"
        "\"with, comma \"\"q\"\"\",-0.5,0\n");
  CHECK(t.size() == 2);
  CHECK_THROWS_AS(t.add_row({1.0}), Error);
}

}  // TEST_SUITE
