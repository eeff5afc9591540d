#pragma once

#include "riesz/measure.hpp"
#include "riesz/primary_factor.hpp"

#include <array>
#include <vector>

namespace riesz {

/// v(z) = sum_k m_k log|E(z/xi_k, p_k)| with per-atom genus
/// p_k = genus_schedule(n(|xi_k|), eta).
///
/// The genera are computed once at construction; evaluation is O(size * p).
/// The measure is shared, not copied.
class CanonicalProduct
{
public:
  CanonicalProduct(PointMeasure mu, double eta);

  /// -inf exactly when z coincides with an atom.
  [[nodiscard]] double operator()(Point z) const;

  [[nodiscard]] const PointMeasure& measure() const noexcept { return mu_; }
  [[nodiscard]] double eta() const noexcept { return eta_; }
  [[nodiscard]] Genus genus(std::size_t atom_index) const { return genera_.at(atom_index); }
  [[nodiscard]] std::span<const Genus> genera() const noexcept { return genera_; }

  /// z / xi_k, computed as z * (1 / xi_k). Every consumer of the product uses
  /// this so per-atom terms agree bit for bit.
  [[nodiscard]] Point ratio(Point z, std::size_t atom_index) const noexcept
  {
    const Point inv = inverse_[atom_index];
    return {z.real() * inv.real() - z.imag() * inv.imag(), z.real() * inv.imag() + z.imag() * inv.real()};
  }

private:
  PointMeasure mu_;
  double eta_;
  std::vector<Genus> genera_;
  std::vector<Point> inverse_;
};

[[nodiscard]] double eval_v(const PointMeasure& mu, double eta, Point z);

/// The four disjoint regions that carry v1..v5.
/// A1 = C(z,Delta) (carries v1 and v2), A3 = C(0,r) \ A1,
/// A4 = C(0,R) \ (C(0,r) u A1), A5 = complement of C(0,R).
enum class Region
{
  A1,
  A3,
  A4,
  A5
};

[[nodiscard]] Region classify_region(Point xi, Point z, double delta, double big_r);

struct DecompositionReport
{
  Point z;
  double r = 0.0;
  double n_r = 0.0;
  double delta = 0.0;
  double big_r = 0.0;
  double v1 = 0.0;
  double v2 = 0.0;
  double v3 = 0.0;
  double v4 = 0.0;
  double v5 = 0.0;
  double v_sum = 0.0;
  double v_direct = 0.0;
  /// v2 with the genus frozen at genus_schedule(n(r), eta) for all of A1.
  double v2_frozen = 0.0;
  /// Mass in A1, A3, A4, A5.
  std::array<double, 4> region_mass{};
};

/// Five-region split of v(z). Throws DomainError when n(|z|) < 3.
[[nodiscard]] DecompositionReport decompose(const PointMeasure& mu, double eta, double delta_exp, Point z);
[[nodiscard]] DecompositionReport decompose(const CanonicalProduct& v, double delta_exp, Point z);

/// v1 rebuilt from the concentration index by Stieltjes integration by parts:
///   I(z) + log(Delta) n(z,Delta) + int_0^R nu(z,t)/t dt + log(1/R) n(z,Delta),
/// with nu(z,t) = mu(C(0,t) n C(z,Delta)).
[[nodiscard]] double v1_via_parts(const PointMeasure& mu, double delta_exp, Point z);

/// Pointwise checks of the logarithmic bounds used on A3 and A4.
struct RegionBoundReport
{
  double n_r = 0.0;
  double bound15 = 0.0;        // 2 (log log n(r) + log r)
  double bound17 = 0.0;        // |log(Delta/R)|
  std::size_t a3_checked = 0;  // atoms in A3 with |xi| > 1
  std::size_t a3_violations = 0;
  std::size_t a4_checked = 0;
  std::size_t a4_violations = 0;
  double a3_worst = 0.0;       // max |log|1 - z/xi|| over A3
  double a4_worst = 0.0;
};

[[nodiscard]] RegionBoundReport region_bounds(const PointMeasure& mu, double delta_exp, Point z);

} // namespace riesz
