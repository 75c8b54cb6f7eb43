#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mvol/chart.hpp"
#include "mvol/errors.hpp"
#include "mvol/integrate.hpp"

namespace mvol {

using Complex = std::complex<double>;

/// Small dense matrices without heap traffic: dynamic size, capacity 8.
using CMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, 0, 8, 8>;
using JacobianMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 8, 8>;

// ---------------------------------------------------------------------------
// Generator bases, all normalized to Tr[g_i g_j] = 2δ_ij
// ---------------------------------------------------------------------------

/// Pauli matrices σ1, σ2, σ3.
inline std::vector<CMat> pauli_generators() {
  const Complex i(0.0, 1.0);
  std::vector<CMat> g(3, CMat::Zero(2, 2));
  g[0](0, 1) = 1;
  g[0](1, 0) = 1;
  g[1](0, 1) = -i;
  g[1](1, 0) = i;
  g[2](0, 0) = 1;
  g[2](1, 1) = -1;
  return g;
}

/// Gell-Mann matrices λ1..λ8.
inline std::vector<CMat> gell_mann_generators() {
  const Complex i(0.0, 1.0);
  std::vector<CMat> g(8, CMat::Zero(3, 3));
  g[0](0, 1) = 1;
  g[0](1, 0) = 1;
  g[1](0, 1) = -i;
  g[1](1, 0) = i;
  g[2](0, 0) = 1;
  g[2](1, 1) = -1;
  g[3](0, 2) = 1;
  g[3](2, 0) = 1;
  g[4](0, 2) = -i;
  g[4](2, 0) = i;
  g[5](1, 2) = 1;
  g[5](2, 1) = 1;
  g[6](1, 2) = -i;
  g[6](2, 1) = i;
  const double s = 1.0 / std::sqrt(3.0);
  g[7](0, 0) = s;
  g[7](1, 1) = s;
  g[7](2, 2) = -2.0 * s;
  return g;
}

/// Adjoint-representation rotation generators (J_k)_{ab} = −i·ε_{kab},
/// satisfying [J_x,J_y] = iJ_z and Tr[J_iJ_j] = 2δ_ij.
inline std::vector<CMat> so3_generators() {
  const Complex i(0.0, 1.0);
  std::vector<CMat> g(3, CMat::Zero(3, 3));
  g[0](1, 2) = -i;
  g[0](2, 1) = i;
  g[1](0, 2) = i;
  g[1](2, 0) = -i;
  g[2](0, 1) = -i;
  g[2](1, 0) = i;
  return g;
}

// ---------------------------------------------------------------------------
// MatrixChart: product-of-exponentials parameterization of a matrix group
// ---------------------------------------------------------------------------

/// A group parameterization u(α) = g₀·∏ₖ exp(i·g_{jₖ}·α_{pₖ}) over a box,
/// with the orthonormal generator basis it will be differentiated against.
///
/// The Haar density in these coordinates comes out of the Maurer-Cartan
/// form: write (−i)·u⁻¹·∂u/∂α_p = Σᵢ J_{ip}·gᵢ; then |det J| is the density.
/// Derivatives are exact (∂/∂α of an exponential product inserts i·g at the
/// factor's position); finite differences near the degenerate chart boundary
/// lose the density's zero structure.
class MatrixChart {
public:
  static constexpr int kMaxSteps = 16;

  MatrixChart(std::string group_label, int matrix_dim, std::vector<CMat> generators,
              std::vector<std::pair<int, int>> exponent_sequence,
              std::vector<std::pair<double, double>> ranges,
              std::vector<std::string> param_names = {})
      : label_(std::move(group_label)),
        dim_(matrix_dim),
        generators_(std::move(generators)),
        sequence_(std::move(exponent_sequence)),
        ranges_(std::move(ranges)),
        param_names_(std::move(param_names)) {
    if (static_cast<int>(sequence_.size()) > kMaxSteps)
      throw InconsistencyError("MatrixChart: too many exponential factors");
    if (generators_.size() != ranges_.size())
      throw InconsistencyError(
          "MatrixChart: need as many generators as parameters for a square Jacobian");
    if (param_names_.empty())
      for (std::size_t p = 0; p < ranges_.size(); ++p)
        param_names_.push_back("alpha" + std::to_string(p + 1));
    for (const auto& g : generators_) {
      if (g.rows() != dim_ || g.cols() != dim_)
        throw InconsistencyError("MatrixChart: generator has the wrong shape");
      if ((g - g.adjoint()).norm() > 1e-12)
        throw InconsistencyError("MatrixChart: generators must be hermitian");
    }
    for (const auto& [gen, par] : sequence_)
      if (gen < 0 || gen >= static_cast<int>(generators_.size()) || par < 0 ||
          par >= static_cast<int>(ranges_.size()))
        throw InconsistencyError("MatrixChart: exponent sequence index out of range");
    left_factor_ = CMat::Identity(dim_, dim_);
    build_exp_cache();
  }

  [[nodiscard]] const std::string& label() const { return label_; }
  [[nodiscard]] int matrix_dim() const { return dim_; }
  [[nodiscard]] int param_count() const { return static_cast<int>(ranges_.size()); }
  [[nodiscard]] const std::vector<CMat>& generators() const { return generators_; }
  [[nodiscard]] const std::vector<std::pair<int, int>>& exponent_sequence() const {
    return sequence_;
  }
  [[nodiscard]] const std::vector<std::pair<double, double>>& ranges() const {
    return ranges_;
  }
  [[nodiscard]] const std::vector<std::string>& param_names() const {
    return param_names_;
  }

  /// Copy of this chart translated on the left by a fixed group element.
  /// Haar left-invariance says the density's integral must not change.
  [[nodiscard]] MatrixChart left_translated(const CMat& g) const {
    MatrixChart out = *this;
    out.left_factor_ = g * left_factor_;
    out.label_ = label_ + " (left-translated)";
    return out;
  }

  /// The group element u(α).
  [[nodiscard]] CMat element(std::span<const double> alpha) const {
    CMat u = left_factor_;
    for (const auto& [gen, par] : sequence_) u *= exp_factor(gen, alpha[par]);
    return u;
  }

  /// Coefficient matrix J_{ip} of the Maurer-Cartan decomposition
  /// (−i)·u⁻¹·∂u/∂α_p = Σᵢ J_{ip}·gᵢ.
  [[nodiscard]] JacobianMatrix jacobian(std::span<const double> alpha) const {
    const int n = param_count();
    const int steps = static_cast<int>(sequence_.size());

    std::array<CMat, kMaxSteps> factor;
    for (int k = 0; k < steps; ++k)
      factor[k] = exp_factor(sequence_[k].first, alpha[sequence_[k].second]);

    std::array<CMat, kMaxSteps + 1> prefix;  // prefix[k] = g₀·F₀···F_{k−1}
    prefix[0] = left_factor_;
    for (int k = 0; k < steps; ++k) prefix[k + 1] = prefix[k] * factor[k];
    const CMat& u = prefix[steps];

    std::array<CMat, kMaxSteps + 1> suffix;  // suffix[k] = F_k···F_{steps−1}
    suffix[steps] = CMat::Identity(dim_, dim_);
    for (int k = steps - 1; k >= 0; --k) suffix[k] = factor[k] * suffix[k + 1];

    const Complex i(0.0, 1.0);
    JacobianMatrix jac(n, n);
    CMat deriv(dim_, dim_), h(dim_, dim_), residual(dim_, dim_);
    for (int p = 0; p < n; ++p) {
      deriv.setZero();
      for (int k = 0; k < steps; ++k)
        if (sequence_[k].second == p)
          deriv += prefix[k] * (generators_[sequence_[k].first] * suffix[k]);
      // deriv currently misses the factor i from d/dα e^{igα} = i·g·e^{igα};
      // folding it with the dualizing (−i) leaves h = u†·deriv directly.
      h = u.adjoint() * deriv;
      residual = h;
      for (int g = 0; g < n; ++g) {
        const double c =
            0.5 * generators_[g].cwiseProduct(h.transpose()).sum().real();
        jac(g, p) = c;
        residual -= c * generators_[g];
      }
      if (residual.norm() > 1e-9)
        throw InconsistencyError(
            "MatrixChart: derivative left the generator span (residual " +
            std::to_string(residual.norm()) + ") in chart " + label_);
    }
    return jac;
  }

  /// Haar density |det J(α)|; 0 at degenerate (boundary) points.
  [[nodiscard]] double density(std::span<const double> alpha) const {
    return std::abs(jacobian(alpha).determinant());
  }

  [[nodiscard]] double box_volume() const {
    double v = 1.0;
    for (const auto& [lo, hi] : ranges_) v *= hi - lo;
    return v;
  }

private:
  struct ExpCache {
    bool diagonal = false;
    Eigen::VectorXd evals;
    CMat vectors;
  };

  void build_exp_cache() {
    exp_cache_.resize(generators_.size());
    for (std::size_t g = 0; g < generators_.size(); ++g) {
      const CMat& m = generators_[g];
      ExpCache& e = exp_cache_[g];
      CMat off = m;
      off.diagonal().setZero();
      if (off.norm() < 1e-14) {
        e.diagonal = true;
        e.evals = m.diagonal().real();
      } else {
        // exp(i·m·t) via the spectral decomposition of the hermitian m.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
        e.evals = solver.eigenvalues();
        e.vectors = solver.eigenvectors();
      }
    }
  }

  [[nodiscard]] CMat exp_factor(int gen, double t) const {
    const ExpCache& e = exp_cache_[gen];
    const Complex i(0.0, 1.0);
    if (e.diagonal) {
      CMat f = CMat::Zero(dim_, dim_);
      for (int j = 0; j < dim_; ++j) f(j, j) = std::exp(i * e.evals(j) * t);
      return f;
    }
    CMat scaled = e.vectors;
    for (int j = 0; j < dim_; ++j) scaled.col(j) *= std::exp(i * e.evals(j) * t);
    return scaled * e.vectors.adjoint();
  }

  std::string label_;
  int dim_;
  std::vector<CMat> generators_;
  std::vector<std::pair<int, int>> sequence_;
  std::vector<std::pair<double, double>> ranges_;
  std::vector<std::string> param_names_;
  CMat left_factor_;
  std::vector<ExpCache> exp_cache_;
};

// ---------------------------------------------------------------------------
// Euler-angle charts
// ---------------------------------------------------------------------------

/// SU(2) Euler chart u = e^{iσ₃α}e^{iσ₂β}e^{iσ₃γ} as a MatrixChart.
inline MatrixChart su2_matrix_chart() {
  return {"SU(2)",
          2,
          pauli_generators(),
          {{2, 0}, {1, 1}, {2, 2}},
          {{0.0, M_PI}, {0.0, M_PI / 2}, {0.0, 2.0 * M_PI}},
          {"alpha", "beta", "gamma"}};
}

/// SO(3) Euler chart R = e^{iJ₃α}e^{iJ₂β}e^{iJ₃γ} in the adjoint rep.
inline MatrixChart so3_matrix_chart() {
  return {"SO(3)",
          3,
          so3_generators(),
          {{2, 0}, {1, 1}, {2, 2}},
          {{0.0, 2.0 * M_PI}, {0.0, M_PI}, {0.0, 2.0 * M_PI}},
          {"alpha", "beta", "gamma"}};
}

/// The 8-parameter SU(3) chart
/// u = e^{iλ₃α₁}e^{iλ₂α₂}e^{iλ₃α₃}e^{iλ₅α₄}e^{iλ₃α₅}e^{iλ₂α₆}e^{iλ₃α₇}e^{iλ₈α₈}
/// with ranges chosen so the density integrates to Vol(SU(3)) = √3π⁵.
inline MatrixChart su3_matrix_chart() {
  const double pi = M_PI;
  return {"SU(3)",
          3,
          gell_mann_generators(),
          {{2, 0}, {1, 1}, {2, 2}, {4, 3}, {2, 4}, {1, 5}, {2, 6}, {7, 7}},
          {{0.0, pi},
           {0.0, pi / 2},
           {0.0, 2.0 * pi},
           {0.0, pi / 2},
           {0.0, pi},
           {0.0, pi / 2},
           {0.0, 2.0 * pi},
           {0.0, std::sqrt(3.0) * pi}}};
}

/// Free-function forms of the engine entry points.
inline double maurer_cartan_density(const MatrixChart& chart,
                                    std::span<const double> alpha) {
  return chart.density(alpha);
}
inline JacobianMatrix maurer_cartan_jacobian(const MatrixChart& chart,
                                             std::span<const double> alpha) {
  return chart.jacobian(alpha);
}

/// Expands a matrix in an orthonormal generator basis; returns the
/// coefficients and the Frobenius norm of what is left over.
inline std::pair<std::vector<double>, double> decompose_in_generators(
    const std::vector<CMat>& generators, const CMat& h) {
  std::vector<double> coeff(generators.size());
  CMat residual = h;
  for (std::size_t g = 0; g < generators.size(); ++g) {
    coeff[g] = 0.5 * generators[g].cwiseProduct(h.transpose()).sum().real();
    residual -= coeff[g] * generators[g];
  }
  return {std::move(coeff), residual.norm()};
}

/// Worst orthonormality defect max |Tr[gᵢgⱼ] − 2δᵢⱼ| of a chart's basis.
inline double generator_orthonormality_defect(const MatrixChart& chart) {
  double worst = 0.0;
  const auto& gs = chart.generators();
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = 0; j < gs.size(); ++j) {
      const double t = (gs[i] * gs[j]).trace().real();
      worst = std::max(worst, std::abs(t - (i == j ? 2.0 : 0.0)));
    }
  return worst;
}

/// Adapts a MatrixChart to the plain Chart interface used by the
/// integrators; the density closure shares ownership of the chart.
inline Chart chart_from_matrix(const MatrixChart& mc) {
  auto owned = std::make_shared<const MatrixChart>(mc);
  Chart c;
  c.dim = owned->param_count();
  c.ranges = owned->ranges();
  c.param_names = owned->param_names();
  c.label = owned->label() + " Maurer-Cartan";
  c.density = [owned](std::span<const double> a) { return owned->density(a); };
  return c;
}

/// Monte Carlo volume of a MatrixChart's Maurer-Cartan density.
inline IntegrationResult integrate_mc(const MatrixChart& chart, std::uint64_t samples,
                                      std::uint64_t seed, unsigned chunks = 64,
                                      unsigned threads = 0) {
  return integrate_mc(chart_from_matrix(chart), samples, seed, chunks, threads);
}

}  // namespace mvol
