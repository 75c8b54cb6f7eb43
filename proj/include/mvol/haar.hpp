#pragma once

#include <Eigen/Dense>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "mvol/errors.hpp"
#include "mvol/matrix_chart.hpp"

namespace mvol {

struct GroupSample {
  Eigen::MatrixXcd matrix;
  std::string group_label;
};

namespace detail {

inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Inverse CDF of the normalized sin(2β) marginal on [0,π/2].
inline double su2_beta_from_uniform(double u) { return std::asin(std::sqrt(u)); }

/// Inverse CDF of the normalized sin(β) marginal on [0,π].
inline double so3_beta_from_uniform(double u) { return std::acos(1.0 - 2.0 * u); }

/// Haar sample from SU(2): α,γ uniform on their Euler ranges, β by inverse
/// CDF; the matrix is the Euler product in the defining representation.
inline GroupSample sample_su2(std::mt19937_64& rng) {
  const double alpha = M_PI * detail::unit_uniform(rng);
  const double gamma = 2.0 * M_PI * detail::unit_uniform(rng);
  const double beta = su2_beta_from_uniform(detail::unit_uniform(rng));
  const Complex i(0.0, 1.0);
  Eigen::MatrixXcd u(2, 2);
  u(0, 0) = std::exp(i * (alpha + gamma)) * std::cos(beta);
  u(0, 1) = std::exp(i * (alpha - gamma)) * std::sin(beta);
  u(1, 0) = -std::exp(-i * (alpha - gamma)) * std::sin(beta);
  u(1, 1) = std::exp(-i * (alpha + gamma)) * std::cos(beta);
  return {std::move(u), "SU(2)"};
}

/// Haar sample from SO(3): R = R_z(α)R_y(β)R_z(γ) with β = arccos(1−2u).
inline GroupSample sample_so3(std::mt19937_64& rng) {
  const double alpha = 2.0 * M_PI * detail::unit_uniform(rng);
  const double gamma = 2.0 * M_PI * detail::unit_uniform(rng);
  const double beta = so3_beta_from_uniform(detail::unit_uniform(rng));
  const auto rz = [](double t) {
    Eigen::Matrix3d m;
    m << std::cos(t), std::sin(t), 0.0, -std::sin(t), std::cos(t), 0.0, 0.0, 0.0, 1.0;
    return m;
  };
  Eigen::Matrix3d ry;
  ry << std::cos(beta), 0.0, -std::sin(beta), 0.0, 1.0, 0.0, std::sin(beta), 0.0,
      std::cos(beta);
  const Eigen::Matrix3d r = rz(alpha) * ry * rz(gamma);
  return {r.cast<Complex>(), "SO(3)"};
}

/// Rejection sampler on the SU(3) chart box against the Maurer-Cartan
/// density. The envelope M comes from a coarse grid scan inflated by 10%;
/// correctness needs only M ≥ sup density, and an observed violation
/// auto-heals by doubling M (with a warning) before resampling.
class Su3Sampler {
public:
  explicit Su3Sampler(int grid_per_dim = 5) : chart_(su3_matrix_chart()) {
    bound_.store(1.1 * scan_bound(grid_per_dim));
  }

  GroupSample sample(std::mt19937_64& rng) {
    const auto& ranges = chart_.ranges();
    std::vector<double> alpha(ranges.size());
    for (;;) {
      proposed_.fetch_add(1, std::memory_order_relaxed);
      for (std::size_t i = 0; i < ranges.size(); ++i)
        alpha[i] = ranges[i].first +
                   (ranges[i].second - ranges[i].first) * detail::unit_uniform(rng);
      const double d = chart_.density(alpha);
      double m = bound_.load(std::memory_order_relaxed);
      if (d > m) {
        bound_.compare_exchange_strong(m, 2.0 * m);
        violations_.fetch_add(1, std::memory_order_relaxed);
        std::cerr << "Su3Sampler: envelope violated (density " << d << " > bound "
                  << m << "), doubling bound\n";
        continue;
      }
      if (detail::unit_uniform(rng) * m <= d) {
        accepted_.fetch_add(1, std::memory_order_relaxed);
        return {Eigen::MatrixXcd(chart_.element(alpha)), "SU(3)"};
      }
    }
  }

  [[nodiscard]] double envelope_bound() const { return bound_.load(); }
  [[nodiscard]] std::uint64_t proposed() const { return proposed_.load(); }
  [[nodiscard]] std::uint64_t accepted() const { return accepted_.load(); }
  [[nodiscard]] std::uint64_t bound_violations() const { return violations_.load(); }
  [[nodiscard]] double acceptance_rate() const {
    const double p = static_cast<double>(proposed_.load());
    return p > 0.0 ? static_cast<double>(accepted_.load()) / p : 0.0;
  }
  [[nodiscard]] const MatrixChart& chart() const { return chart_; }

private:
  [[nodiscard]] double scan_bound(int grid) const {
    const auto& ranges = chart_.ranges();
    const int dim = static_cast<int>(ranges.size());
    std::uint64_t total = 1;
    for (int i = 0; i < dim; ++i) total *= static_cast<std::uint64_t>(grid);

    const unsigned n_threads =
        std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
    std::vector<double> best(n_threads, 0.0);
    const auto worker = [&](unsigned t) {
      std::vector<double> pt(dim);
      double local = 0.0;
      for (std::uint64_t e = t; e < total; e += n_threads) {
        std::uint64_t rem = e;
        for (int i = 0; i < dim; ++i) {
          const auto cell = static_cast<double>(rem % grid);
          rem /= grid;
          const auto& [lo, hi] = ranges[i];
          pt[i] = lo + (hi - lo) * (cell + 0.5) / grid;
        }
        local = std::max(local, chart_.density(pt));
      }
      best[t] = local;
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (auto& th : pool) th.join();
    double m = 0.0;
    for (double b : best) m = std::max(m, b);
    return m;
  }

  MatrixChart chart_;
  std::atomic<double> bound_{0.0};
  std::atomic<std::uint64_t> proposed_{0};
  std::atomic<std::uint64_t> accepted_{0};
  std::atomic<std::uint64_t> violations_{0};
};

/// Haar sample from SU(3) through a shared process-wide sampler.
inline GroupSample sample_su3(std::mt19937_64& rng) {
  static Su3Sampler sampler;
  return sampler.sample(rng);
}

/// Independent Haar oracle: complex Ginibre matrix, Householder QR with the
/// R-diagonal phase correction (Haar on U(n)), then a global phase onto SU(n).
inline GroupSample sample_qr_oracle(int n, std::mt19937_64& rng) {
  if (n < 2 || n > 8) throw Error("sample_qr_oracle: n must be in [2,8]");
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd g(n, n);
  const double s = 1.0 / std::sqrt(2.0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) g(r, c) = Complex(normal(rng) * s, normal(rng) * s);

  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < n; ++c) {
    const Complex rd = r(c, c);
    const double mag = std::abs(rd);
    q.col(c) *= mag > 0.0 ? rd / mag : Complex(1.0, 0.0);
  }
  const double det_arg = std::arg(q.determinant());
  q *= std::exp(Complex(0.0, -det_arg / n));
  return {std::move(q), "SU(" + std::to_string(n) + ")"};
}

}  // namespace mvol
