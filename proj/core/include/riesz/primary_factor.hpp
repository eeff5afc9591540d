#pragma once

#include "riesz/measure.hpp"

#include <cstdint>

namespace riesz {

/// Genus of a Weierstrass primary factor, capped at kMax.
class Genus
{
public:
  static constexpr std::uint32_t kMax = 1'000'000;

  constexpr Genus() = default;
  /// Throws ContractError when p > kMax.
  explicit Genus(std::uint64_t p);

  [[nodiscard]] constexpr std::uint32_t value() const noexcept { return p_; }

  friend constexpr bool operator==(Genus, Genus) = default;
  friend constexpr auto operator<=>(Genus, Genus) = default;

private:
  std::uint32_t p_ = 0;
};

/// floor((max(log n, 0))^(1+eta)); zero when n <= 1.
[[nodiscard]] Genus genus_schedule(double n_value, double eta);

/// log|E(w,p)| = log|1-w| + Re sum_{j=1..p} w^j/j, with -inf at w = 1.
///
/// For |w| <= 1/2, and for |w| < 1 whenever |w|^(p+1) < 1e-12, the value is
/// summed as the tail -Re sum_{j>p} w^j/j. That avoids the cancellation
/// between the logarithm and the partial sum, which otherwise leaves an
/// absolute error far above the true value. Elsewhere it is evaluated
/// directly.
[[nodiscard]] double log_abs_primary(Point w, Genus p);

/// Re sum_{j=1..p} w^j/j by Horner's scheme.
[[nodiscard]] double tail_polynomial(Point w, Genus p);

/// tail_polynomial for four arguments sharing one genus. Each lane performs
/// exactly the scalar operation sequence, so out[i] == tail_polynomial(w[i], p).
void tail_polynomial4(const Point* w, Genus p, double* out);

namespace detail {
/// True when log_abs_primary takes the tail-series branch for (w, p).
[[nodiscard]] bool uses_series(Point w, Genus p);
/// log|1 - w| via log of the squared modulus.
[[nodiscard]] double log_abs_one_minus(Point w);
// Exposed for the crossover tests; callers use log_abs_primary.
[[nodiscard]] double log_abs_primary_series(Point w, Genus p);
[[nodiscard]] double log_abs_primary_direct(Point w, Genus p);
/// Four series evaluations sharing one genus, each bit identical to
/// log_abs_primary_series.
void log_abs_primary_series4(const Point* w, Genus p, double* out);
} // namespace detail

struct BoundWitness
{
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// sum_{j=1..p} |w|^j/j <= a^p (2 + log p), for |w| < a, a > 1, p >= 1.
[[nodiscard]] BoundWitness bound13_holds(Point w, double a, Genus p);

/// |log|E(w,p)|| <= |w|^(p+1), for |w| <= p/(p+1), p >= 1.
[[nodiscard]] BoundWitness bound19_holds(Point w, Genus p);

} // namespace riesz
