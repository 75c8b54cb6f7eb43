#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "mvol/chart.hpp"
#include "mvol/errors.hpp"

namespace mvol {

enum class Method { GaussTensor, MonteCarlo };

struct IntegrationResult {
  double estimate = 0.0;
  double std_error = 0.0;  // 0 for deterministic quadrature
  std::uint64_t evaluations = 0;
  Method method = Method::GaussTensor;
};

struct GaussRule {
  std::vector<double> nodes;    // ascending, symmetric about 0
  std::vector<double> weights;  // positive, sum to 2
};

/// Gauss-Legendre nodes/weights on [−1,1] by Newton iteration on P_n;
/// exact for polynomials of degree ≤ 2·order−1.
inline GaussRule gauss_legendre_rule(int order) {
  if (order < 1 || order > 256)
    throw UnsupportedOrderError("gauss_legendre_rule: order must be in [1,256]");
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Legendre recurrence: (k+1)P_{k+1} = (2k+1)xP_k − kP_{k−1}.
      double p0 = 1.0, p1 = x;
      for (int k = 1; k < order; ++k) {
        const double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

/// Tensor-product Gauss-Legendre quadrature over the chart box.
/// Rejects dim > 5: the grid blows up, use integrate_mc instead.
inline IntegrationResult integrate_tensor(const Chart& chart, int order) {
  if (chart.dim > 5)
    throw DimensionError("integrate_tensor: dim > 5, use Monte Carlo");
  const GaussRule rule = gauss_legendre_rule(order);
  const int d = chart.dim;

  std::vector<double> mid(d), half(d);
  double scale = 1.0;
  for (int i = 0; i < d; ++i) {
    mid[i] = 0.5 * (chart.ranges[i].first + chart.ranges[i].second);
    half[i] = 0.5 * (chart.ranges[i].second - chart.ranges[i].first);
    scale *= half[i];
  }

  std::vector<int> idx(d, 0);
  std::vector<double> pt(d);
  double sum = 0.0;
  std::uint64_t evals = 1;
  for (int i = 0; i < d; ++i) evals *= static_cast<std::uint64_t>(order);
  for (std::uint64_t e = 0; e < evals; ++e) {
    double w = 1.0;
    for (int i = 0; i < d; ++i) {
      pt[i] = mid[i] + half[i] * rule.nodes[idx[i]];
      w *= rule.weights[idx[i]];
    }
    sum += w * chart.density(pt);
    for (int i = 0; i < d; ++i) {  // odometer
      if (++idx[i] < order) break;
      idx[i] = 0;
    }
  }
  return {sum * scale, 0.0, evals, Method::GaussTensor};
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Independent stream per (seed, chunk); results cannot depend on which
/// thread ran which chunk.
inline std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) {
  return splitmix64(seed ^ splitmix64(chunk + 1));
}

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0,1)
}

struct ChunkPartial {
  double sum = 0.0;
  double sumsq = 0.0;
  std::uint64_t count = 0;
};

}  // namespace detail

/// Seeded Monte Carlo over the chart box. Bit-reproducible for fixed
/// (seed, chunks, samples): each chunk has its own RNG stream and partials
/// combine in chunk order regardless of thread count.
inline IntegrationResult integrate_mc(const Chart& chart, std::uint64_t samples,
                                      std::uint64_t seed, unsigned chunks = 64,
                                      unsigned threads = 0) {
  if (samples < 1) throw Error("integrate_mc: samples must be >= 1");
  if (chunks < 1) throw Error("integrate_mc: chunks must be >= 1");
  const int d = chart.dim;

  std::vector<detail::ChunkPartial> partials(chunks);
  const auto run_chunk = [&](unsigned c) {
    const std::uint64_t base = samples / chunks;
    const std::uint64_t count = base + (c < samples % chunks ? 1 : 0);
    std::mt19937_64 rng(detail::chunk_seed(seed, c));
    std::vector<double> pt(d);
    detail::ChunkPartial p;
    for (std::uint64_t s = 0; s < count; ++s) {
      for (int i = 0; i < d; ++i) {
        const auto& [lo, hi] = chart.ranges[i];
        pt[i] = lo + (hi - lo) * detail::uniform01(rng);
      }
      const double f = chart.density(pt);
      p.sum += f;
      p.sumsq += f * f;
    }
    p.count = count;
    partials[c] = p;
  };

  unsigned n_threads = threads ? threads : std::thread::hardware_concurrency();
  n_threads = std::max(1u, std::min(n_threads, chunks));
  if (n_threads == 1) {
    for (unsigned c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<unsigned> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t)
      pool.emplace_back([&] {
        for (unsigned c = next.fetch_add(1); c < chunks; c = next.fetch_add(1))
          run_chunk(c);
      });
    for (auto& th : pool) th.join();
  }

  double sum = 0.0, sumsq = 0.0;
  std::uint64_t n = 0;
  for (const auto& p : partials) {  // deterministic chunk order
    sum += p.sum;
    sumsq += p.sumsq;
    n += p.count;
  }
  const double mean = sum / static_cast<double>(n);
  double var = 0.0;
  if (n > 1)
    var = std::max(0.0, (sumsq - sum * sum / static_cast<double>(n)) /
                            static_cast<double>(n - 1));
  const double box = chart.box_volume();
  return {box * mean, box * std::sqrt(var / static_cast<double>(n)), n,
          Method::MonteCarlo};
}

}  // namespace mvol
