#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "mvol/haar.hpp"
#include "mvol/stats.hpp"

using namespace mvol;

namespace {

bool is_special_unitary(const Eigen::MatrixXcd& u, double tol = 1e-12) {
  const int n = static_cast<int>(u.rows());
  const double unit = (u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).norm();
  return unit < tol && std::abs(u.determinant() - Complex(1.0, 0.0)) < tol;
}

}  // namespace

TEST_CASE("beta inverse CDFs hit the endpoints and medians") {
  CHECK(su2_beta_from_uniform(0.0) == Catch::Approx(0.0).margin(1e-15));
  CHECK(su2_beta_from_uniform(1.0) == Catch::Approx(M_PI / 2));
  CHECK(su2_beta_from_uniform(0.5) == Catch::Approx(M_PI / 4));
  CHECK(so3_beta_from_uniform(0.5) == Catch::Approx(M_PI / 2));
  CHECK(so3_beta_from_uniform(0.0) == Catch::Approx(0.0).margin(1e-15));
  CHECK(so3_beta_from_uniform(1.0) == Catch::Approx(M_PI));
}

TEST_CASE("SU(2) samples are special unitary") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 1000; ++t) CHECK(is_special_unitary(sample_su2(rng).matrix));
}

TEST_CASE("SO(3) samples are special orthogonal") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 1000; ++t) {
    const GroupSample s = sample_so3(rng);
    CHECK(s.matrix.imag().norm() == 0.0);
    CHECK(is_special_unitary(s.matrix));
  }
}

TEST_CASE("SU(2) trace moment matches Haar") {
  std::mt19937_64 rng(3);
  std::vector<double> m2(1000000);
  for (double& x : m2) {
    const double t = std::abs(sample_su2(rng).matrix.trace());
    x = t * t;
  }
  const MomentSummary s = summarize(m2);
  CHECK(std::abs(s.mean - 1.0) <= 3.0 * s.std_error);
}

TEST_CASE("SO(3) mean trace vanishes") {
  // Axis-angle oracle: E[Tr R] = ∫₀^π (1+2cosθ)(1−cosθ)/π dθ = 0.
  std::mt19937_64 rng(4);
  std::vector<double> tr(1000000);
  for (double& x : tr) x = sample_so3(rng).matrix.trace().real();
  const MomentSummary s = summarize(tr);
  CHECK(std::abs(s.mean - 0.0) <= 3.0 * s.std_error);
}

TEST_CASE("samplers are deterministic for a fixed seed") {
  std::mt19937_64 a(42), b(42);
  for (int t = 0; t < 25; ++t) {
    CHECK(sample_su2(a).matrix == sample_su2(b).matrix);
    CHECK(sample_so3(a).matrix == sample_so3(b).matrix);
  }
  Su3Sampler s1, s2;
  std::mt19937_64 c(42), d(42);
  for (int t = 0; t < 5; ++t) CHECK(s1.sample(c).matrix == s2.sample(d).matrix);
}

TEST_CASE("QR oracle produces Haar-distributed special unitaries") {
  std::mt19937_64 rng(5);
  for (int n : {2, 3, 5, 8}) {
    for (int t = 0; t < 50; ++t) {
      const GroupSample s = sample_qr_oracle(n, rng);
      CHECK(is_special_unitary(s.matrix));
    }
  }
  CHECK_THROWS_AS(sample_qr_oracle(9, rng), Error);
  CHECK_THROWS_AS(sample_qr_oracle(1, rng), Error);
}

TEST_CASE("SU(3) rejection sampler yields valid group elements") {
  Su3Sampler sampler;
  std::mt19937_64 rng(6);
  for (int t = 0; t < 200; ++t) CHECK(is_special_unitary(sampler.sample(rng).matrix));
  CHECK(sampler.acceptance_rate() > 0.0);
  CHECK(sampler.bound_violations() == 0);
  CHECK(sampler.envelope_bound() > 0.0);

  // the free function shares one process-wide sampler
  std::mt19937_64 rng2(6);
  CHECK(is_special_unitary(sample_su3(rng2).matrix));
}

TEST_CASE("SU(3) chart sampler agrees with the QR oracle on moments") {
  Su3Sampler sampler;
  std::mt19937_64 rng(7);
  const int n = 20000;
  std::vector<double> chart_m2(n), oracle_m2(n);
  for (int t = 0; t < n; ++t) {
    const double a = std::abs(sampler.sample(rng).matrix.trace());
    const double b = std::abs(sample_qr_oracle(3, rng).matrix.trace());
    chart_m2[t] = a * a;
    oracle_m2[t] = b * b;
  }
  const MomentSummary sc = summarize(chart_m2);
  const MomentSummary so = summarize(oracle_m2);
  const double combined = std::hypot(sc.std_error, so.std_error);
  CHECK(std::abs(sc.mean - so.mean) <= 3.0 * combined);
  CHECK(std::abs(sc.mean - 1.0) <= 3.0 * sc.std_error);
}

TEST_CASE("SU(2) chart sampler passes a KS test against the QR oracle") {
  std::mt19937_64 rng(8);
  const int n = 20000;
  std::vector<double> chart_tr(n), oracle_tr(n);
  for (int t = 0; t < n; ++t) {
    chart_tr[t] = std::abs(sample_su2(rng).matrix.trace());
    oracle_tr[t] = std::abs(sample_qr_oracle(2, rng).matrix.trace());
  }
  const double d = ks_statistic(chart_tr, oracle_tr);
  CHECK(ks_pvalue(d, n, n) >= 0.001);
}

TEST_CASE("left translation preserves moments") {
  std::mt19937_64 rng(9);
  const Eigen::MatrixXcd g = sample_su2(rng).matrix;
  const int n = 200000;
  std::vector<double> plain(n), moved(n);
  for (int t = 0; t < n; ++t) {
    const Eigen::MatrixXcd u = sample_su2(rng).matrix;
    const double a = std::abs(u.trace());
    const double b = std::abs((g * u).trace());
    plain[t] = a * a;
    moved[t] = b * b;
  }
  const MomentSummary sp = summarize(plain);
  const MomentSummary sm = summarize(moved);
  CHECK(std::abs(sp.mean - sm.mean) <= 3.0 * std::hypot(sp.std_error, sm.std_error));
}
