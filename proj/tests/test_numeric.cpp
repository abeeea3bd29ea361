#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "smoothctl/errors.hpp"
#include "smoothctl/numeric.hpp"

using namespace smoothctl;

TEST_CASE("format_double round-trips exactly") {
  const double values[] = {0.0,   1.5,    -1.5,       1.0 / 3.0, 4.0 / 3.0,
                           1e300, 1e-300, -2.5e-8,    3.141592653589793,
                           1e-17, 123456789.123456789};
  for (double v : values) {
    CHECK(parse_double(format_double(v)) == v);
  }
}

TEST_CASE("format_double stays human readable") {
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-3.0) == "-3");
}

TEST_CASE("negative zero collapses to plain zero") {
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(0.0) == "0");
}

TEST_CASE("parse_double rejects malformed input") {
  CHECK_THROWS_AS(parse_double("abc"), ConfigError);
  CHECK_THROWS_AS(parse_double("1.5x"), ConfigError);
  CHECK_THROWS_AS(parse_double(""), ConfigError);
}

TEST_CASE("split_csv_line") {
  CHECK(split_csv_line("a,b,c") == std::vector<std::string>{"a", "b", "c"});
  CHECK(split_csv_line("1,,3") == std::vector<std::string>{"1", "", "3"});
  CHECK(split_csv_line("x,") == std::vector<std::string>{"x", ""});
  CHECK(split_csv_line("solo") == std::vector<std::string>{"solo"});
}

TEST_CASE("lex_less orders coordinatewise") {
  Vec a(2), b(2), c(2);
  a << 1, 2;
  b << 1, 3;
  c << 2, 0;
  CHECK(lex_less(a, b));
  CHECK(lex_less(a, c));
  CHECK(lex_less(b, c));
  CHECK_FALSE(lex_less(b, a));
  CHECK_FALSE(lex_less(a, a));
}

TEST_CASE("approx_equal tolerance") {
  Vec a(2), b(2);
  a << 1.0, 2.0;
  b << 1.0 + 1e-10, 2.0;
  CHECK(approx_equal(a, b, 1e-9));
  b[0] = 1.0 + 1e-8;
  CHECK_FALSE(approx_equal(a, b, 1e-9));
}

TEST_CASE("fnv1a_hex matches published vectors") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("UniformSource is deterministic per seed") {
  UniformSource a(7), b(7), c(8);
  bool same = true, diff = false;
  for (int i = 0; i < 100; ++i) {
    std::uint64_t va = a.next_u64();
    if (va != b.next_u64()) same = false;
    if (va != c.next_u64()) diff = true;
  }
  CHECK(same);
  CHECK(diff);
}

TEST_CASE("UniformSource ranges") {
  UniformSource src(3);
  for (int i = 0; i < 1000; ++i) {
    double u = src.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    double x = src.next(-2.0, 5.0);
    CHECK(x >= -2.0);
    CHECK(x <= 5.0);
  }
}

TEST_CASE("UniformSource mean near one half") {
  UniformSource src(11);
  double sum = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) sum += src.next_unit();
  // three sigma of the mean of n uniform draws: 3 / (sqrt(12) * sqrt(n))
  CHECK(std::abs(sum / n - 0.5) < 0.00866);
}

TEST_CASE("UniformSource box draws stay inside") {
  Vec lo(3), hi(3);
  lo << -1, 0, 2;
  hi << 1, 0.5, 3;
  UniformSource src(5);
  for (int i = 0; i < 200; ++i) {
    Vec p = src.next_in_box(lo, hi);
    REQUIRE(p.size() == 3);
    for (int k = 0; k < 3; ++k) {
      CHECK(p[k] >= lo[k]);
      CHECK(p[k] <= hi[k]);
    }
  }
}
