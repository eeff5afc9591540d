#pragma once

#include "riesz/measure.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace riesz {

/// A point z is (beta, s)-light when n(z,t) < beta t for every t in (0, s),
/// and heavy otherwise.
struct Classification
{
  bool heavy = false;
  double witness_radius = 0.0; // t with n(z,t) >= beta t; 0 when light
  double witness_mass = 0.0;   // n(z, witness_radius)
};

/// Exact classification from the jump radii of t -> n(z,t).
[[nodiscard]] Classification classify_point(const PointMeasure& mu, double beta, double s, Point z);

/// V(N) with N^{2e} = o(V) and V = exp(o(N)).
struct Envelope
{
  enum class Kind
  {
    ExpSqrt,            // exp(sqrt N)
    PowerTimesExpSqrt,  // N^{2e} exp(sqrt N)
    Power               // N^k
  };

  Kind kind = Kind::ExpSqrt;
  double exponent = 2.0 * 2.718281828459045; // Power only

  /// log V(N), finite for N > 0.
  [[nodiscard]] double log_value(double big_n) const;
};

struct BetaSchedule
{
  double beta = 0.0;
  double s = 0.0;      // r / log^delta n(r)
  double big_n = 0.0;  // N(r)
  double log_v = 0.0;  // log V(N(r))
  double log_n2e = 0.0; // 2e log N(r)
};

/// beta(r) s(r) = (V(r) N(r)^{2e})^{1/2}. Throws DomainError when n(r) < 3 or
/// V(r) < N(r)^{2e}.
[[nodiscard]] BetaSchedule beta_schedule(const PointMeasure& mu, double delta_exp, double r,
                                         const Envelope& envelope);

struct CoverDisk
{
  Point center;
  double radius = 0.0;
  double witness_mass = 0.0;
};

struct CoverGrid
{
  std::size_t radial = 16;
  std::size_t angular = 256;
};

struct HeavyCover
{
  std::vector<CoverDisk> disks; // one per heavy sample, centered at it
  std::size_t samples_total = 0;
};

/// Classifies every atom with modulus in [r - s, r + delta + s] and a jittered
/// polar grid over the annulus r <= |z| <= r + delta.
[[nodiscard]] HeavyCover heavy_cover(const PointMeasure& mu, double beta, double s, double r, double delta,
                                     const CoverGrid& grid, std::uint64_t seed);

struct Selection
{
  std::vector<CoverDisk> selected;
  std::size_t multiplicity_measured = 0;
};

inline constexpr std::uint64_t kProbeSeed = 0x5eed'0f'b0'5c'1c'0aULL;
inline constexpr std::size_t kRandomProbes = 10'000;

/// Greedy selection: take the largest remaining disk whose center is not in
/// an already selected disk (ties by center modulus, then angle). Every input
/// center ends up in a selected disk. Multiplicity is the maximum number of
/// selected disks containing a probe, over the selected centers, `extra_probes`
/// and 1e4 seeded points in the bounding box.
[[nodiscard]] Selection besicovitch_select(std::span<const CoverDisk> disks,
                                           std::span<const Point> extra_probes = {},
                                           std::uint64_t probe_seed = kProbeSeed);

struct CoverReport
{
  double r = 0.0;
  double delta = 0.0;
  double big_r = 0.0;
  double beta = 0.0;
  double s = 0.0;
  std::vector<CoverDisk> disks_selected;
  std::size_t multiplicity_measured = 0;
  double radii_sum = 0.0;             // over selected centers with |z_j| in [r, R]
  double radii_sum_over_delta = 0.0;
  double witness_mass_sum = 0.0;      // sum n(z_j, r_j) over the same disks
  double n_outer = 0.0;               // n(R + Delta)
  std::size_t samples_total = 0;
  std::size_t heavy_samples_total = 0;
  std::size_t heavy_samples_covered = 0;
  bool witness_chain_ok = true;       // witness_mass >= beta radius for every disk
};

/// heavy_cover + besicovitch_select + the bookkeeping of the report.
[[nodiscard]] CoverReport build_cover(const PointMeasure& mu, double beta, double s, double r, double delta,
                                      const CoverGrid& grid, std::uint64_t seed);

struct RadiiSumCheck
{
  double radii_sum = 0.0;
  double bound = 0.0; // 6 N(r)^{2e} / beta
  double ratio_to_delta = 0.0;
  bool holds = false;
  bool bn_ok = false; // only asserted when true
};

[[nodiscard]] RadiiSumCheck radii_sum_check(const CoverReport& cover, const PointMeasure& mu, double delta_exp,
                                            double big_m, double r);

} // namespace riesz
