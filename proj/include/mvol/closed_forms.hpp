#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "mvol/errors.hpp"
#include "mvol/exact_volume.hpp"

namespace mvol {

// ---------------------------------------------------------------------------
// Manifold identifiers
// ---------------------------------------------------------------------------

enum class Family {
  Sphere,
  Ball,
  RealProj,
  ComplexProj,
  QuatProj,
  OctProj,
  SU,
  U,
  PU,
  SO,
  O,
  Spin,
  Sp,
  G2,
  F4,
  ComplexFlag,
  RealFlag,
};

/// Which division algebra a projective space is built over; the value is the
/// real dimension of the algebra.
enum class DivisionAlgebra : int { R = 1, C = 2, H = 4, O = 8 };

struct ManifoldId {
  Family family;
  std::vector<int> params;  // dimension/rank, or the partition for flags
  Rational xi = 1;          // free scale, G2/F4 only
};

namespace detail {

inline Int factorial(int n) {
  Int f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

inline Int double_factorial(int n) {  // n!! with (-1)!! = 1
  Int f = 1;
  for (int k = n; k >= 2; k -= 2) f *= k;
  return f;
}

inline Int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Int b = 1;
  for (int i = 1; i <= k; ++i) {
    b *= n - k + i;
    b /= i;
  }
  return b;
}

inline Int pow2(int k) { return Int(1) << k; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Spheres, balls, projective spaces
// ---------------------------------------------------------------------------

/// Volume of the unit sphere S^n (geodesic length 2π), n ≥ 0.
/// Odd n = 2k+1: 2π^{k+1}/k!.  Even n = 2k: 2(2π)^k/(2k−1)!!.
inline ExactVolume vol_sphere(int n) {
  if (n < 0) throw UnsupportedManifoldError("vol_sphere: dimension must be >= 0");
  if (n % 2 == 1) {
    const int k = (n - 1) / 2;
    return {2, detail::factorial(k), 1, static_cast<unsigned>(k + 1)};
  }
  const int k = n / 2;
  return {2 * detail::pow2(k), detail::double_factorial(2 * k - 1), 1,
          static_cast<unsigned>(k)};
}

/// Volume of the unit ball D^n = Vol(S^{n−1})/n, n ≥ 1.
inline ExactVolume vol_ball(int n) {
  if (n < 1) throw UnsupportedManifoldError("vol_ball: dimension must be >= 1");
  return vol_sphere(n - 1) / ExactVolume(n);
}

/// Volume of KP^n as the sphere quotient Vol(S^{kn+k−1})/Vol(S^{k−1}),
/// geodesic length π. KP^0 is a point with volume 1; octonionic n ∈ {1,2}.
inline ExactVolume vol_projective(DivisionAlgebra field, int n) {
  const int k = static_cast<int>(field);
  if (n < 0) throw UnsupportedManifoldError("vol_projective: n must be >= 0");
  if (field == DivisionAlgebra::O && (n < 1 || n > 2))
    throw UnsupportedManifoldError("vol_projective: octonionic plane exists only for n = 1, 2");
  return vol_sphere(k * (n + 1) - 1) / vol_sphere(k - 1);
}

/// Real dimension of a CROSS given as a projective-space ManifoldId.
inline int cross_dimension(const ManifoldId& m) {
  const int n = m.params.at(0);
  switch (m.family) {
    case Family::RealProj: return n;
    case Family::ComplexProj: return 2 * n;
    case Family::QuatProj: return 4 * n;
    case Family::OctProj: return 8 * n;
    default:
      throw UnsupportedManifoldError("cross_dimension: not a projective space");
  }
}

/// Weinstein integer (2π/π)^dim · Vol(cross)/Vol(S^dim) for geodesic length π.
/// The exact quotient must come out integral; anything else is a formula bug.
inline Int weinstein_integer(const ManifoldId& cross) {
  DivisionAlgebra field;
  switch (cross.family) {
    case Family::RealProj: field = DivisionAlgebra::R; break;
    case Family::ComplexProj: field = DivisionAlgebra::C; break;
    case Family::QuatProj: field = DivisionAlgebra::H; break;
    case Family::OctProj: field = DivisionAlgebra::O; break;
    default:
      throw UnsupportedManifoldError("weinstein_integer: argument must be a projective space");
  }
  const int dim = cross_dimension(cross);
  const ExactVolume ratio =
      ExactVolume(detail::pow2(dim)) * vol_projective(field, cross.params.at(0)) /
      vol_sphere(dim);
  if (!ratio.is_integer())
    throw InconsistencyError("weinstein_integer: quotient " + ratio.str() + " is not an integer");
  return ratio.integer_value();
}

// ---------------------------------------------------------------------------
// Classical groups, Tr[λ_i λ_j] = 2δ_ij normalization
// ---------------------------------------------------------------------------

/// Vol(SU(n)) = √(n·2^{n−1})·π^{(n−1)(n+2)/2}·∏_{k<n} 1/k!, n ≥ 2.
inline ExactVolume vol_su(int n) {
  if (n < 2) throw UnsupportedManifoldError("vol_su: n must be >= 2");
  Int den = 1;
  for (int k = 1; k <= n - 1; ++k) den *= detail::factorial(k);
  return {1, den, Int(n) * detail::pow2(n - 1),
          static_cast<unsigned>((n - 1) * (n + 2) / 2)};
}

/// The stretching factor √(n/2(n−1)) = √binom(n,2)/(n−1) applied to the last
/// Cartan generator when climbing from SU(n−1) to SU(n).
inline ExactVolume su_stretching_factor(int n) {
  return ExactVolume::sqrt_of(detail::binomial(n, 2)) / ExactVolume(n - 1);
}

/// Vol(SU(n)) by the fibration recursion from Vol(SU(2)) = 2π²; must agree
/// with the closed form exactly.
inline ExactVolume vol_su_recursive(int n) {
  if (n < 2) throw UnsupportedManifoldError("vol_su_recursive: n must be >= 2");
  ExactVolume v(2, 1, 1, 2);
  for (int m = 3; m <= n; ++m)
    v = su_stretching_factor(m) * vol_sphere(2 * m - 1) * v;
  return v;
}

/// Vol(U(n)) with a radius-one U(1) factor: √(n·2^{n+1})·π^{n(n+1)/2}·∏ 1/k!.
inline ExactVolume vol_u(int n) {
  if (n < 1) throw UnsupportedManifoldError("vol_u: n must be >= 1");
  Int den = 1;
  for (int k = 1; k <= n - 1; ++k) den *= detail::factorial(k);
  return {1, den, Int(n) * detail::pow2(n + 1),
          static_cast<unsigned>(n * (n + 1) / 2)};
}

/// Vol(PU(n)) = Vol(SU(n))/♯Z_n = Vol(SU(n))/n.
inline ExactVolume vol_pu(int n) {
  if (n < 2) throw UnsupportedManifoldError("vol_pu: n must be >= 2");
  return vol_su(n) / ExactVolume(n);
}

/// Vol(SO(n)) = ∏_{d=2}^{n} Vol(S^{d−1}), vector normalization, n ≥ 2.
inline ExactVolume vol_so(int n) {
  if (n < 2) throw UnsupportedManifoldError("vol_so: n must be >= 2");
  ExactVolume v(1);
  for (int d = 2; d <= n; ++d) v *= vol_sphere(d - 1);
  return v;
}

/// Even/odd closed forms for Vol(SO(n)); must equal the sphere product.
inline ExactVolume vol_so_closed(int n) {
  if (n < 2) throw UnsupportedManifoldError("vol_so_closed: n must be >= 2");
  if (n % 2 == 0) {
    const int m = n / 2;  // 2^{m−1}(2π)^{m²}/∏_{s<m}(2s)!
    Int den = 1;
    for (int s = 1; s <= m - 1; ++s) den *= detail::factorial(2 * s);
    return {detail::pow2(m - 1 + m * m), den, 1, static_cast<unsigned>(m * m)};
  }
  const int m = (n - 1) / 2;  // 2^m(2π)^{m(m+1)}/∏_{s<m}(2s+1)!
  Int den = 1;
  for (int s = 1; s <= m - 1; ++s) den *= detail::factorial(2 * s + 1);
  return {detail::pow2(m + m * (m + 1)), den, 1, static_cast<unsigned>(m * (m + 1))};
}

/// Vol(O(n)) = Vol(Spin(n)) = 2·Vol(SO(n)) in the vector normalization.
/// Spin(3) comes out 16π² here, not the 2π² of SU(2); see
/// normalization_clashes() for the isomorphism mismatches this causes.
inline ExactVolume vol_o_or_spin(int n) {
  if (n < 2) throw UnsupportedManifoldError("vol_o_or_spin: n must be >= 2");
  return ExactVolume(2) * vol_so(n);
}

/// Vol(Sp(n)) = ∏_{k=1}^{n} Vol(S^{4k−1}), radius-one spheres, n ≥ 1.
inline ExactVolume vol_sp(int n) {
  if (n < 1) throw UnsupportedManifoldError("vol_sp: n must be >= 1");
  ExactVolume v(1);
  for (int k = 1; k <= n; ++k) v *= vol_sphere(4 * k - 1);
  return v;
}

/// Closed form 2^n·π^{n(n+1)}/∏_{k=1}^{n}(2k−1)!.
inline ExactVolume vol_sp_closed(int n) {
  if (n < 1) throw UnsupportedManifoldError("vol_sp_closed: n must be >= 1");
  Int den = 1;
  for (int k = 1; k <= n; ++k) den *= detail::factorial(2 * k - 1);
  return {detail::pow2(n), den, 1, static_cast<unsigned>(n * (n + 1))};
}

/// Vol(G2) = Vol(SU(3))·Vol(S^6)·ξ = (16/15)·√3·π^8·ξ, via G2/SU(3) = S^6.
inline ExactVolume vol_g2(const Rational& xi = 1) {
  if (xi <= 0) throw UnsupportedManifoldError("vol_g2: xi must be positive");
  return vol_su(3) * vol_sphere(6) * ExactVolume::from_rational(xi);
}

/// Vol(F4) = Vol(OP²)·Vol(Spin(9))·ξ = 2^25·π^28/(5!·7!·11!)·ξ.
inline ExactVolume vol_f4(const Rational& xi = 1) {
  if (xi <= 0) throw UnsupportedManifoldError("vol_f4: xi must be positive");
  return vol_projective(DivisionAlgebra::O, 2) * vol_o_or_spin(9) *
         ExactVolume::from_rational(xi);
}

// ---------------------------------------------------------------------------
// Flag manifolds
// ---------------------------------------------------------------------------

namespace detail {

inline void check_partition(const std::vector<int>& partition, const char* who) {
  if (partition.size() < 2)
    throw InvalidPartitionError(std::string(who) + ": partition needs >= 2 parts");
  for (int q : partition)
    if (q < 1) throw InvalidPartitionError(std::string(who) + ": parts must be positive");
}

/// ∏_{k=1}^{n} Vol(S^{2k−1}), the "naive" odd-sphere volume of U(n).
inline ExactVolume odd_sphere_product(int n) {
  ExactVolume v(1);
  for (int k = 1; k <= n; ++k) v *= vol_sphere(2 * k - 1);
  return v;
}

/// Vol(O(m)) with the conventions Vol(O(1)) = 2 and Vol(O(0)) = 1.
inline ExactVolume orthogonal_volume(int m) {
  if (m <= 0) return ExactVolume(1);
  if (m == 1) return ExactVolume(2);
  return vol_o_or_spin(m);
}

}  // namespace detail

/// Volume of the generalized complex flag manifold U(n)/∏U(q_i): the naive
/// sphere quotient; the stretching factors cancel rank against rank.
inline ExactVolume vol_complex_flag(const std::vector<int>& partition) {
  detail::check_partition(partition, "vol_complex_flag");
  const int n = std::accumulate(partition.begin(), partition.end(), 0);
  ExactVolume v = detail::odd_sphere_product(n);
  for (int q : partition) v /= detail::odd_sphere_product(q);
  return v;
}

/// Volume of the real flag manifold O(n)/∏O(n_i); no stretching factors.
inline ExactVolume vol_real_flag(const std::vector<int>& partition) {
  detail::check_partition(partition, "vol_real_flag");
  const int n = std::accumulate(partition.begin(), partition.end(), 0);
  ExactVolume v = detail::orthogonal_volume(n);
  for (int q : partition) v /= detail::orthogonal_volume(q);
  return v;
}

// ---------------------------------------------------------------------------
// Invariants and the normalization-clash report
// ---------------------------------------------------------------------------

/// Scalar curvature n(n−1)/R² of the radius-R sphere S^n.
inline Rational scalar_curvature(int n, const Rational& radius) {
  if (n < 1) throw UnsupportedManifoldError("scalar_curvature: n must be >= 1");
  if (radius <= 0) throw UnsupportedManifoldError("scalar_curvature: radius must be positive");
  return Rational(n) * Rational(n - 1) / (radius * radius);
}

/// Bloch radius √(n(n−1)/2) of the pure-state generator vector.
inline ExactVolume bloch_radius(int n) {
  if (n < 2) throw UnsupportedManifoldError("bloch_radius: n must be >= 2");
  return ExactVolume::sqrt_of(Int(n) * (n - 1) / 2);
}

struct NormalizationClash {
  std::string name_a;
  ExactVolume value_a;
  std::string name_b;
  ExactVolume value_b;
  ExactVolume ratio;  // value_a / value_b
};

/// The two volume mismatches across accidental isomorphisms: the same
/// Tr[λ²] = 2 rule applied in different representations.
inline std::vector<NormalizationClash> normalization_clashes() {
  const auto make = [](std::string a, ExactVolume va, std::string b, ExactVolume vb) {
    ExactVolume r = va / vb;
    return NormalizationClash{std::move(a), std::move(va), std::move(b), std::move(vb),
                              std::move(r)};
  };
  return {
      make("Spin(6)", vol_o_or_spin(6), "SU(4)", vol_su(4)),
      make("Spin(5)", vol_o_or_spin(5), "Sp(2)", vol_sp(2)),
  };
}

// ---------------------------------------------------------------------------
// Dispatcher
// ---------------------------------------------------------------------------

inline ExactVolume volume(const ManifoldId& m) {
  const auto arg = [&](std::size_t i) -> int {
    if (i >= m.params.size())
      throw UnsupportedManifoldError("volume: missing manifold parameter");
    return m.params[i];
  };
  switch (m.family) {
    case Family::Sphere: return vol_sphere(arg(0));
    case Family::Ball: return vol_ball(arg(0));
    case Family::RealProj: return vol_projective(DivisionAlgebra::R, arg(0));
    case Family::ComplexProj: return vol_projective(DivisionAlgebra::C, arg(0));
    case Family::QuatProj: return vol_projective(DivisionAlgebra::H, arg(0));
    case Family::OctProj: return vol_projective(DivisionAlgebra::O, arg(0));
    case Family::SU: return vol_su(arg(0));
    case Family::U: return vol_u(arg(0));
    case Family::PU: return vol_pu(arg(0));
    case Family::SO: return vol_so(arg(0));
    case Family::O: return vol_o_or_spin(arg(0));
    case Family::Spin:
      if (arg(0) < 3) throw UnsupportedManifoldError("volume: Spin(n) needs n >= 3");
      return vol_o_or_spin(arg(0));
    case Family::Sp: return vol_sp(arg(0));
    case Family::G2: return vol_g2(m.xi);
    case Family::F4: return vol_f4(m.xi);
    case Family::ComplexFlag: return vol_complex_flag(m.params);
    case Family::RealFlag: return vol_real_flag(m.params);
  }
  throw UnsupportedManifoldError("volume: unknown family");
}

}  // namespace mvol
