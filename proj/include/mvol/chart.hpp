#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mvol/errors.hpp"

namespace mvol {

/// A coordinate chart: a parameter box together with the density whose
/// integral over the box is the manifold volume.
struct Chart {
  int dim = 0;
  std::vector<std::pair<double, double>> ranges;  // lo < hi per parameter
  std::vector<std::string> param_names;
  std::function<double(std::span<const double>)> density;
  std::string label;

  [[nodiscard]] double box_volume() const {
    double v = 1.0;
    for (const auto& [lo, hi] : ranges) v *= hi - lo;
    return v;
  }
};

/// Hyperspherical chart for S^n: base angle θ_1 ∈ [0,2π] and latitudes
/// θ_2..θ_n ∈ [0,π]; density ∏_{k≥2} sin^{k−1}(θ_k). The doubling from
/// Vol(S^0) = 2 is absorbed into the base-circle range.
inline Chart sphere_chart(int n) {
  if (n < 1) throw UnsupportedManifoldError("sphere_chart: n must be >= 1");
  Chart c;
  c.dim = n;
  c.label = "S^" + std::to_string(n);
  c.ranges.emplace_back(0.0, 2.0 * M_PI);
  c.param_names.push_back("theta1");
  for (int k = 2; k <= n; ++k) {
    c.ranges.emplace_back(0.0, M_PI);
    c.param_names.push_back("theta" + std::to_string(k));
  }
  c.density = [n](std::span<const double> a) {
    double d = 1.0;
    for (int k = 2; k <= n; ++k) d *= std::pow(std::sin(a[k - 1]), k - 1);
    return d;
  };
  return c;
}

/// SU(2) in Euler angles u = e^{iσ₃α}e^{iσ₂β}e^{iσ₃γ}: density sin(2β) on
/// α ∈ [0,π], β ∈ [0,π/2], γ ∈ [0,2π]; total 2π².
inline Chart su2_euler_chart() {
  Chart c;
  c.dim = 3;
  c.label = "SU(2) Euler";
  c.ranges = {{0.0, M_PI}, {0.0, M_PI / 2}, {0.0, 2.0 * M_PI}};
  c.param_names = {"alpha", "beta", "gamma"};
  c.density = [](std::span<const double> a) { return std::sin(2.0 * a[1]); };
  return c;
}

/// SU(2) as the embedded S³ ⊂ C², phases φ,ψ ∈ [0,2π] and β ∈ [0,π/2]:
/// density (1/2)sin(2β); total 2π².
inline Chart su2_embedding_chart() {
  Chart c;
  c.dim = 3;
  c.label = "SU(2) embedding";
  c.ranges = {{0.0, 2.0 * M_PI}, {0.0, 2.0 * M_PI}, {0.0, M_PI / 2}};
  c.param_names = {"phi", "psi", "beta"};
  c.density = [](std::span<const double> a) { return 0.5 * std::sin(2.0 * a[2]); };
  return c;
}

/// SO(3) in Euler angles R = R_z(α)R_y(β)R_z(γ): density sin(β) on
/// α,γ ∈ [0,2π], β ∈ [0,π]; total 8π².
inline Chart so3_euler_chart() {
  Chart c;
  c.dim = 3;
  c.label = "SO(3) Euler";
  c.ranges = {{0.0, 2.0 * M_PI}, {0.0, M_PI}, {0.0, 2.0 * M_PI}};
  c.param_names = {"alpha", "beta", "gamma"};
  c.density = [](std::span<const double> a) { return std::sin(a[1]); };
  return c;
}

}  // namespace mvol
