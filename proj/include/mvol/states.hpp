#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "mvol/closed_forms.hpp"
#include "mvol/errors.hpp"

namespace mvol {

/// Spectral type of a density matrix: the partition of n recording
/// eigenvalue multiplicities, with the unitary orbit it labels.
struct SpectralType {
  int n = 0;
  std::vector<int> partition;  // parts sorted descending
  std::string orbit_label;     // e.g. "U(5)/(U(3)×U(2))"
  int orbit_dim = 0;           // n² − Σ qᵢ²
};

/// Stabilizer quotient label for a partition, repeated factors grouped as
/// powers: [2,2,1] of 5 → "U(5)/(U(2)^2×U(1))".
inline std::string orbit_label(int n, const std::vector<int>& partition) {
  std::vector<std::string> factors;
  for (std::size_t i = 0; i < partition.size();) {
    std::size_t j = i;
    while (j < partition.size() && partition[j] == partition[i]) ++j;
    std::string f = "U(" + std::to_string(partition[i]) + ")";
    if (j - i > 1) f += "^" + std::to_string(j - i);
    factors.push_back(std::move(f));
    i = j;
  }
  std::string den;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i > 0) den += "×";
    den += factors[i];
  }
  if (factors.size() > 1) den = "(" + den + ")";
  return "U(" + std::to_string(n) + ")/" + den;
}

/// Orbit dimension n² − Σ qᵢ² of U(n)/∏U(qᵢ).
inline int orbit_dimension(int n, const std::vector<int>& partition) {
  int sum = 0, sumsq = 0;
  for (int q : partition) {
    if (q < 1) throw InvalidPartitionError("orbit_dimension: parts must be positive");
    sum += q;
    sumsq += q * q;
  }
  if (sum != n)
    throw InvalidPartitionError("orbit_dimension: partition does not sum to n");
  return n * n - sumsq;
}

/// All spectral types for n×n density matrices: one per partition of n,
/// sorted by orbit dimension (ties broken by partition, descending-lex).
inline std::vector<SpectralType> enumerate_spectral_types(int n) {
  if (n < 1 || n > 30)
    throw InvalidPartitionError("enumerate_spectral_types: n must be in [1,30]");
  std::vector<SpectralType> out;
  std::vector<int> parts;
  const auto recurse = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back({n, parts, orbit_label(n, parts), orbit_dimension(n, parts)});
      return;
    }
    for (int q = std::min(remaining, max_part); q >= 1; --q) {
      parts.push_back(q);
      self(self, remaining - q, q);
      parts.pop_back();
    }
  };
  recurse(recurse, n, n);
  std::stable_sort(out.begin(), out.end(),
                   [](const SpectralType& a, const SpectralType& b) {
                     if (a.orbit_dim != b.orbit_dim) return a.orbit_dim < b.orbit_dim;
                     return a.partition > b.partition;
                   });
  return out;
}

struct OrbitVolume {
  ExactVolume volume;
  bool is_point = false;
};

/// Volume of the unitary orbit of a spectral type. The single-part orbit is
/// a point; by convention its volume is 1 (U(n)/U(n) cancels anyway) and the
/// is_point flag is set.
inline OrbitVolume orbit_volume(int n, const std::vector<int>& partition) {
  orbit_dimension(n, partition);  // validates
  if (partition.size() == 1) return {ExactVolume(1), true};
  std::vector<int> sorted = partition;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  return {vol_complex_flag(sorted), false};
}

/// Eigenvalues of ρ = diag(1+x₃+x₈/√3, 1−x₃+x₈/√3, 1−2x₈/√3)/3.
inline std::array<double, 3> su3_eigenvalues(double x3, double x8) {
  const double s = x8 / std::sqrt(3.0);
  return {(1.0 + x3 + s) / 3.0, (1.0 - x3 + s) / 3.0, (1.0 - 2.0 * s) / 3.0};
}

/// Is the Bloch point (x₃,x₈) a physical qutrit state? All three
/// eigenvalues must be non-negative.
inline bool su3_positivity(double x3, double x8) {
  const auto ev = su3_eigenvalues(x3, x8);
  return ev[0] >= 0.0 && ev[1] >= 0.0 && ev[2] >= 0.0;
}

/// Positivity in terms of the characteristic-polynomial minors: Σλ ≥ 0,
/// Σ_{i<j} λᵢλⱼ ≥ 0, λ₁λ₂λ₃ ≥ 0. Requires a unit-trace spectrum.
inline bool minor_conditions(double l1, double l2, double l3) {
  if (std::abs(l1 + l2 + l3 - 1.0) > 1e-12)
    throw InvalidSpectrumError("minor_conditions: spectrum must sum to 1");
  const double e1 = l1 + l2 + l3;
  const double e2 = l1 * l2 + l2 * l3 + l3 * l1;
  const double e3 = l1 * l2 * l3;
  return e1 >= 0.0 && e2 >= 0.0 && e3 >= 0.0;
}

/// Euclidean volume of the full qubit state space (the Bloch ball):
/// ∫₀¹ r² dr · Vol(S²) = 4π/3.
inline ExactVolume qubit_state_volume() {
  return vol_sphere(2) / ExactVolume(3);
}

}  // namespace mvol
