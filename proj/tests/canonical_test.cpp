#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <string>

#include "mrtrim/canonical.hpp"

using namespace mrtrim;

TEST_CASE("format_number: zero and signed zero", "[canonical]") {
  REQUIRE(format_number(0.0) == "0.0");
  REQUIRE(format_number(-0.0) == "0.0");
}

TEST_CASE("format_number: integers keep a decimal point", "[canonical]") {
  REQUIRE(format_number(52.0) == "52.0");
  REQUIRE(format_number(-3.0) == "-3.0");
  REQUIRE(format_number(1000.0) == "1000.0");
  REQUIRE(format_number(123456789.0) == "123456789.0");
}

TEST_CASE("format_number: fractions are limited to 9 significant digits", "[canonical]") {
  REQUIRE(format_number(4.1) == "4.1");
  REQUIRE(format_number(0.5) == "0.5");
  REQUIRE(format_number(1.0 / 7.0) == "0.142857143");
  REQUIRE(format_number(2.0 / 3.0) == "0.666666667");
  REQUIRE(format_number(-1.0 / 3.0) == "-0.333333333");
  REQUIRE(format_number(3.5355339059327378) == "3.53553391");
}

TEST_CASE("format_number: small magnitudes stay fixed-point", "[canonical]") {
  REQUIRE(format_number(0.001) == "0.001");
  REQUIRE(format_number(1.5e-7) == "0.00000015");
  REQUIRE(format_number(-2.5e-4) == "-0.00025");
}

TEST_CASE("format_number: exponent form starts at 1e9", "[canonical]") {
  REQUIRE(format_number(1e9) == "1.0e+09");
  REQUIRE(format_number(-1e9) == "-1.0e+09");
  REQUIRE(format_number(1.23e12) == "1.23e+12");
  REQUIRE(format_number(999999999.0) == "999999999.0");
  // 9.999999995e8 rounds up to 10 significant-digit 1e9 territory.
  REQUIRE(format_number(999999999.5) == "1.0e+09");
  REQUIRE(format_number(9.5e307) == "9.5e+307");
}

TEST_CASE("format_number: value just below 1 is fixed-point", "[canonical]") {
  REQUIRE(format_number(0.9) == "0.9");
  REQUIRE(format_number(0.99999999) == "0.99999999");
}

TEST_CASE("canonical_round is idempotent and format-stable", "[canonical]") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> mantissa(-1.0, 1.0);
  std::uniform_int_distribution<int> exponent(-12, 12);
  for (int i = 0; i < 20000; ++i) {
    const double x = mantissa(gen) * std::pow(10.0, exponent(gen));
    const double once = canonical_round(x);
    REQUIRE(canonical_round(once) == once);
    REQUIRE(format_number(once) == format_number(x));
  }
}

TEST_CASE("canonical_round fixes already-canonical values", "[canonical]") {
  for (double x : {0.0, 1.0, -5.0, 42.5, 0.125, 1e6, 2.0 / 16.0}) {
    REQUIRE(canonical_round(x) == x);
  }
}

TEST_CASE("canonical_round error is bounded by half an ulp of 9 digits", "[canonical]") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> d(-1000.0, 1000.0);
  for (int i = 0; i < 10000; ++i) {
    const double x = d(gen);
    const double r = canonical_round(x);
    if (x == 0) continue;
    REQUIRE(std::abs(r - x) <= 5e-9 * std::abs(x));
  }
}
