#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <numbers>

#include "mvol/chart.hpp"
#include "mvol/closed_forms.hpp"
#include "mvol/integrate.hpp"

using namespace mvol;

namespace {

Chart unit_box(int dim, double value = 1.0) {
  Chart c;
  c.dim = dim;
  for (int i = 0; i < dim; ++i) {
    c.ranges.emplace_back(0.0, 1.0);
    c.param_names.push_back("x" + std::to_string(i));
  }
  c.density = [value](std::span<const double>) { return value; };
  c.label = "unit box";
  return c;
}

}  // namespace

TEST_CASE("Gauss-Legendre order 1 is the midpoint rule") {
  const GaussRule r = gauss_legendre_rule(1);
  REQUIRE(r.nodes.size() == 1);
  CHECK(r.nodes[0] == Catch::Approx(0.0).margin(1e-15));
  CHECK(r.weights[0] == Catch::Approx(2.0));
}

TEST_CASE("Gauss-Legendre order 2 nodes are ±1/√3") {
  const GaussRule r = gauss_legendre_rule(2);
  CHECK(r.nodes[0] == Catch::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r.nodes[1] == Catch::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r.weights[0] == Catch::Approx(1.0).epsilon(1e-15));
  CHECK(r.weights[1] == Catch::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("order 5 integrates x^8 exactly") {
  const GaussRule r = gauss_legendre_rule(5);
  double sum = 0.0;
  for (int i = 0; i < 5; ++i) sum += r.weights[i] * std::pow(r.nodes[i], 8);
  CHECK(std::abs(sum - 2.0 / 9.0) <= 1e-14);
}

TEST_CASE("rules are symmetric with positive weights summing to 2") {
  for (int order : {3, 16, 32, 64, 127, 256}) {
    const GaussRule r = gauss_legendre_rule(order);
    double wsum = 0.0;
    for (int i = 0; i < order; ++i) {
      CHECK(r.weights[i] > 0.0);
      CHECK(r.nodes[i] == Catch::Approx(-r.nodes[order - 1 - i]).margin(1e-14));
      CHECK(r.weights[i] == Catch::Approx(r.weights[order - 1 - i]).epsilon(1e-12));
      wsum += r.weights[i];
    }
    CHECK(wsum == Catch::Approx(2.0).epsilon(1e-13));
  }
}

TEST_CASE("rule is exact to degree 2n−1") {
  const int order = 6;
  const GaussRule r = gauss_legendre_rule(order);
  for (int deg = 0; deg <= 2 * order - 1; ++deg) {
    double sum = 0.0;
    for (int i = 0; i < order; ++i) sum += r.weights[i] * std::pow(r.nodes[i], deg);
    const double exact = (deg % 2 == 0) ? 2.0 / (deg + 1) : 0.0;
    CHECK(std::abs(sum - exact) <= 1e-13);
  }
}

TEST_CASE("order bounds are enforced") {
  CHECK_THROWS_AS(gauss_legendre_rule(0), UnsupportedOrderError);
  CHECK_THROWS_AS(gauss_legendre_rule(257), UnsupportedOrderError);
}

TEST_CASE("tensor quadrature on charts") {
  const auto check = [](const Chart& c, double expect) {
    const IntegrationResult r = integrate_tensor(c, 32);
    CHECK(r.std_error == 0.0);
    CHECK(r.method == Method::GaussTensor);
    CHECK(std::abs(r.estimate - expect) <= 1e-10 * std::abs(expect));
  };
  check(su2_euler_chart(), vol_su(2).approx());
  check(sphere_chart(2), vol_sphere(2).approx());
  check(sphere_chart(4), vol_sphere(4).approx());
}

TEST_CASE("tensor quadrature of a constant box is exact") {
  const IntegrationResult r = integrate_tensor(unit_box(2), 8);
  CHECK(r.estimate == Catch::Approx(1.0).margin(1e-14));
  CHECK(r.evaluations == 64);
}

TEST_CASE("tensor quadrature rejects dim > 5") {
  CHECK_THROWS_AS(integrate_tensor(unit_box(6), 4), DimensionError);
}

TEST_CASE("Monte Carlo on a constant density has zero error") {
  const IntegrationResult r = integrate_mc(unit_box(3), 10000, 12345, 16);
  CHECK(r.estimate == 1.0);
  CHECK(r.std_error == 0.0);
  CHECK(r.evaluations == 10000);
  CHECK(r.method == Method::MonteCarlo);
}

TEST_CASE("Monte Carlo lands within three standard errors") {
  const Chart so3 = so3_euler_chart();
  const IntegrationResult r = integrate_mc(so3, 1000000, 777, 64);
  const double truth = vol_so(3).approx();
  CHECK(std::abs(r.estimate - truth) <= 3.0 * r.std_error);
  CHECK(r.std_error < 0.01 * truth);
}

TEST_CASE("Monte Carlo is bit-reproducible across thread counts") {
  const Chart so3 = so3_euler_chart();
  const IntegrationResult a = integrate_mc(so3, 200000, 99, 64, 1);
  const IntegrationResult b = integrate_mc(so3, 200000, 99, 64, 4);
  const IntegrationResult c = integrate_mc(so3, 200000, 99, 64, 2);
  CHECK(std::memcmp(&a.estimate, &b.estimate, sizeof(double)) == 0);
  CHECK(std::memcmp(&a.estimate, &c.estimate, sizeof(double)) == 0);
  CHECK(std::memcmp(&a.std_error, &b.std_error, sizeof(double)) == 0);

  const IntegrationResult d = integrate_mc(so3, 200000, 100, 64, 1);
  CHECK(a.estimate != d.estimate);  // different seed, different stream
}

TEST_CASE("Monte Carlo error scales like 1/√N") {
  const Chart so3 = so3_euler_chart();
  const double truth = vol_so(3).approx();
  const int trials = 30;
  const std::uint64_t n_small = 4096, n_big = 8192;
  double rms_small = 0.0, rms_big = 0.0;
  for (int t = 0; t < trials; ++t) {
    const double e1 = integrate_mc(so3, n_small, 5000 + t, 16).estimate - truth;
    const double e2 = integrate_mc(so3, n_big, 9000 + t, 16).estimate - truth;
    rms_small += e1 * e1;
    rms_big += e2 * e2;
  }
  const double ratio = std::sqrt(rms_small / rms_big);
  CHECK(ratio > std::numbers::sqrt2 / 1.5);
  CHECK(ratio < std::numbers::sqrt2 * 1.5);
}
