#pragma once

#include "riesz/measure.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace riesz {

/// Euler's number as it appears in the exponents n(r)^e and N(r)^{2e}.
inline constexpr double kEulerE = 2.718281828459045235360287471352662498;

/// Delta(r) = r / (log n(r))^delta_exp. Throws DomainError when n(r) < 3.
[[nodiscard]] double delta_of_r(const PointMeasure& mu, double delta_exp, double r);

/// I(z) = -int_0^Delta n(z,t)/t dt
///      = -sum_{|xi - z| <= Delta} m log(Delta / |xi - z|),   Delta = Delta(|z|).
/// Always <= 0; -inf when an atom sits at z.
[[nodiscard]] double conc_index(const PointMeasure& mu, double delta_exp, Point z);

/// Same sum with Delta supplied by the caller.
[[nodiscard]] double conc_index_with_delta(const PointMeasure& mu, double delta, Point z);

using ScalarField = std::function<double(Point)>;

/// f at `samples` equispaced points r e^{2 pi i j / samples}. Evaluated in
/// parallel; the result is ordered by j.
[[nodiscard]] std::vector<double> circle_values(const ScalarField& f, double r, std::size_t samples);

/// Maximum over the sampled circle: a lower approximation of B(r,f).
/// -inf samples are skipped. Requires samples >= 64.
[[nodiscard]] double max_on_circle(const ScalarField& f, double r, std::size_t samples);
[[nodiscard]] double max_of_samples(std::span<const double> values);

/// Trapezoidal circle mean of f^+.
[[nodiscard]] double nevanlinna_T(const ScalarField& f, double r, std::size_t samples);
[[nodiscard]] double positive_mean(std::span<const double> values);

/// Per-radius outcome of an empirical exceptional-set scan.
struct ExceptionalScan
{
  std::vector<double> radii;
  std::vector<bool> ok;
  IntervalSet violations;
  double log_measure = 0.0;
};

/// Interval hull of the flagged grid points. Each grid radius owns the cell
/// reaching halfway to its neighbours (mirrored at the ends, clipped at 1);
/// cells of adjacent violating points merge.
[[nodiscard]] IntervalSet violation_hull(std::span<const double> radii, const std::vector<bool>& ok);

/// n(r (1 + M / log^delta n(r))) <= n(r)^e at one radius. Throws DomainError
/// when n(r) < 3.
[[nodiscard]] bool bn_inequality(const PointMeasure& mu, double delta_exp, double big_m, double r);

/// n(r) <= N(r)^2 at one radius.
[[nodiscard]] bool lemma11_inequality(const PointMeasure& mu, double r);

[[nodiscard]] ExceptionalScan bn_check(const PointMeasure& mu, double delta_exp, double big_m,
                                       std::span<const double> radii);
[[nodiscard]] ExceptionalScan lemma11_check(const PointMeasure& mu, std::span<const double> radii);

/// Moves r off atom moduli: if some modulus is within relative 1e-6 of r,
/// r is pushed just past it. Returns r unchanged otherwise.
[[nodiscard]] double nudge_radius(const PointMeasure& mu, double r);

/// Real part of a complex polynomial, sum_k c_k z^k. Harmonic and measure
/// free, so adding it to v leaves the Riesz measure unchanged.
struct HarmonicAddend
{
  std::vector<Point> coefficients;

  [[nodiscard]] double operator()(Point z) const;
  [[nodiscard]] bool empty() const noexcept { return coefficients.empty(); }
};

struct SweepParams
{
  double delta_exp = 1.0;
  double eta = 0.5;
  double big_m = 2.0;
  std::size_t angles_per_radius = 16;
  std::size_t circle_samples = 4096;
  std::uint64_t seed = 0;
  HarmonicAddend harmonic;
};

/// One radius of a residual sweep. u = v + h.
struct ResidualRow
{
  double r = 0.0;
  bool nudged = false;
  double n_r = 0.0;
  double N_r = 0.0;
  double delta = 0.0;
  std::vector<Point> z_samples;
  std::vector<double> I;
  std::vector<double> u;
  std::vector<double> residual; // u - I
  std::size_t skipped = 0;      // samples within 1e-9 r of an atom
  double B_r = 0.0;
  double T_r = 0.0;
  double I_mean = 0.0;
  double I_min = 0.0;
  double v_mean = 0.0;
  double resid_max = 0.0;
  double ratio1 = 0.0; // log(1 + resid_max) / N_r
  bool bn_ok = true;
  bool lemma_ok = true;
};

/// Throws DomainError if any radius has n(r) < 3.
[[nodiscard]] std::vector<ResidualRow> residual_sweep(const PointMeasure& mu, const SweepParams& params,
                                                      std::span<const double> radii);

} // namespace riesz
