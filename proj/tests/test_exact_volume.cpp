#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "mvol/exact_volume.hpp"

using mvol::ExactVolume;
using mvol::Int;

namespace {

ExactVolume random_value(std::mt19937_64& rng, bool nonzero = false) {
  std::uniform_int_distribution<int> num(-30, 30);
  std::uniform_int_distribution<int> den(1, 12);
  std::uniform_int_distribution<int> rad(1, 40);
  std::uniform_int_distribution<int> pip(0, 6);
  for (;;) {
    ExactVolume v(num(rng), den(rng), rad(rng), static_cast<unsigned>(pip(rng)));
    if (!nonzero || !v.is_zero()) return v;
  }
}

}  // namespace

TEST_CASE("normalize extracts square factors and reduces") {
  const ExactVolume v(2, 4, 12, 1);
  CHECK(v == ExactVolume(1, 1, 3, 1));
  CHECK(v.str() == "√3·π");
}

TEST_CASE("normalize keeps exact one") {
  const ExactVolume one(1, 1, 1, 0);
  CHECK(one.is_one());
  CHECK(one.str() == "1");
}

TEST_CASE("normalize canonicalizes zero") {
  const ExactVolume z(0, 7, 5, 3);
  CHECK(z.is_zero());
  CHECK(z.num() == 0);
  CHECK(z.den() == 1);
  CHECK(z.radicand() == 1);
  CHECK(z.pi_pow() == 0);
}

TEST_CASE("normalize fixes signs so den > 0") {
  const ExactVolume v(3, -6, 1, 0);
  CHECK(v.num() == -1);
  CHECK(v.den() == 2);
}

TEST_CASE("zero denominator is rejected") {
  CHECK_THROWS_AS(ExactVolume(1, 0, 1, 0), mvol::InvalidDenominatorError);
}

TEST_CASE("normalize is idempotent") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 500; ++t) {
    const ExactVolume v = random_value(rng);
    CHECK(ExactVolume(v.num(), v.den(), v.radicand(), v.pi_pow()) == v);
  }
}

TEST_CASE("mul combines radicals and powers") {
  const ExactVolume su3(1, 1, 3, 5);           // √3·π^5
  const ExactVolume two_pi2(2, 1, 1, 2);       // 2π^2
  CHECK(su3 * two_pi2 == ExactVolume(2, 1, 3, 7));

  const ExactVolume r2pi(1, 1, 2, 1);          // √2·π
  CHECK(r2pi * r2pi == ExactVolume(2, 1, 1, 2));

  CHECK(ExactVolume(1, 2, 3, 0) * ExactVolume(2, 3, 3, 0) == ExactVolume(1));
}

TEST_CASE("div quotients exactly") {
  CHECK(ExactVolume(2, 1, 1, 2) / ExactVolume(2, 1, 1, 1) == ExactVolume::pi_power(1));
  CHECK(ExactVolume(1, 1, 3, 5) / ExactVolume::sqrt_of(3) == ExactVolume::pi_power(5));
  CHECK(ExactVolume::pi_power(5) / ExactVolume::sqrt_of(3) == ExactVolume(1, 3, 3, 5));
}

TEST_CASE("div by zero throws") {
  CHECK_THROWS_AS(ExactVolume(1) / ExactVolume(), mvol::DivideByZeroError);
}

TEST_CASE("quotient with negative pi power is not representable") {
  CHECK_THROWS_AS(ExactVolume(1) / ExactVolume::pi_power(1), mvol::Error);
}

TEST_CASE("mul and div are exact inverses") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 2000; ++t) {
    const ExactVolume a = random_value(rng);
    const ExactVolume b = random_value(rng, /*nonzero=*/true);
    CHECK((a * b) / b == a);
  }
}

TEST_CASE("approx matches calculator values") {
  CHECK(ExactVolume(2, 1, 1, 2).approx() == Catch::Approx(19.739208802178716).epsilon(1e-14));
  CHECK(ExactVolume(1).approx() == 1.0);
  CHECK(ExactVolume(1, 1, 3, 5).approx() == Catch::Approx(530.0416421643).epsilon(1e-10));
  CHECK(ExactVolume().approx() == 0.0);
}

TEST_CASE("approx is multiplicative to 1e-12 relative") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 1000; ++t) {
    const ExactVolume a = random_value(rng);
    const ExactVolume b = random_value(rng);
    const double lhs = (a * b).approx();
    const double rhs = a.approx() * b.approx();
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("approx stays accurate for large pi powers") {
  const ExactVolume v = ExactVolume::pi_power(64);
  CHECK(v.approx() == Catch::Approx(std::pow(std::numbers::pi, 64)).epsilon(1e-13));
}

TEST_CASE("render produces the canonical grammar") {
  CHECK(ExactVolume(1, 840, 1, 4).str() == "(1/840)·π^4");
  CHECK(ExactVolume(1, 1, 3, 5).str() == "√3·π^5");
  CHECK(ExactVolume(2).str() == "2");
  CHECK(ExactVolume(-1, 2, 5, 1).str() == "-(1/2)·√5·π");
  CHECK(ExactVolume(2, 1, 1, 1).str() == "2·π");
  CHECK(ExactVolume().str() == "0");
}

TEST_CASE("parse inverts render") {
  for (const char* text : {"0", "1", "2", "-3", "(1/840)·π^4", "√3·π^5", "2·π",
                           "-(1/2)·√5·π", "π^2", "√2", "(22/7)"}) {
    CHECK(ExactVolume::parse(text).str() == text);
  }
}

TEST_CASE("render/parse round-trips random values") {
  std::mt19937_64 rng(123);
  for (int t = 0; t < 1000; ++t) {
    const ExactVolume v = random_value(rng);
    CHECK(ExactVolume::parse(v.str()) == v);
  }
}

TEST_CASE("parse rejects malformed input") {
  for (const char* text : {"", "·π", "(1/)", "1/2", "√", "2.5", "π^", "2x"}) {
    CHECK_THROWS_AS(ExactVolume::parse(text), mvol::Error);
  }
}

TEST_CASE("json round-trips and flags big integers as strings") {
  const ExactVolume v(1, 1, 3, 5);
  nlohmann::json j = v;
  CHECK(j.at("num") == 1);
  CHECK(j.at("radicand") == 3);
  CHECK(j.at("pi_pow") == 5);
  CHECK(j.at("approx").get<double>() == Catch::Approx(v.approx()));
  CHECK(j.get<ExactVolume>() == v);

  Int giant = 1;
  for (int k = 2; k <= 40; ++k) giant *= k;  // 40! overflows int64
  const ExactVolume big(1, giant, 1, 3);
  nlohmann::json jb = big;
  CHECK(jb.at("den").is_string());
  CHECK(jb.get<ExactVolume>() == big);
}

TEST_CASE("integer_value extracts plain integers") {
  CHECK(ExactVolume(39).integer_value() == 39);
  CHECK_THROWS_AS(ExactVolume::pi_power(1).integer_value(), mvol::InconsistencyError);
}
