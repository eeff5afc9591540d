#include "riesz/lightpoints.hpp"

#include "riesz/concentration.hpp"
#include "riesz/errors.hpp"
#include "riesz/parallel.hpp"
#include "riesz/summation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace riesz {

namespace {

constexpr double kZeroRadiusFraction = 1e-6;

double uniform01(std::mt19937_64& rng)
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool contains(const CoverDisk& d, Point p)
{
  return std::abs(p - d.center) <= d.radius;
}

} // namespace

Classification classify_point(const PointMeasure& mu, double beta, double s, Point z)
{
  if (!(beta > 0.0) || !(s > 0.0)) {
    throw ContractError("classify_point: beta and s must be positive");
  }
  const double c = std::abs(z);
  const double eps = 1e-12 * (c + s);
  const auto [first, last] = mu.modulus_window(c - s - eps, c + s + eps);
  const auto atoms = mu.atoms();

  struct Jump
  {
    double d;
    double m;
  };
  std::vector<Jump> jumps;
  for (std::size_t k = first; k < last; ++k) {
    const double d = std::abs(atoms[k].location - z);
    if (d < s) {
      jumps.push_back({d, atoms[k].mass});
    }
  }
  std::sort(jumps.begin(), jumps.end(), [](const Jump& a, const Jump& b) { return a.d < b.d; });

  Classification out;
  double cumulative = 0.0;
  double at_zero = 0.0;
  for (std::size_t i = 0; i < jumps.size();) {
    // n(z,t) jumps once per distinct distance (closed disks).
    const double d = jumps[i].d;
    while (i < jumps.size() && jumps[i].d == d) {
      cumulative += jumps[i].m;
      ++i;
    }
    if (d == 0.0) {
      at_zero = cumulative;
      continue;
    }
    if (cumulative >= beta * d) {
      out.heavy = true;
      out.witness_radius = d;
      out.witness_mass = cumulative;
      return out;
    }
  }
  if (at_zero > 0.0) {
    // n(z,t) >= at_zero > beta t for small t > 0; keep the witness disk
    // non-degenerate and inside the condition.
    out.heavy = true;
    out.witness_radius = std::min(kZeroRadiusFraction * s, at_zero / beta);
    out.witness_mass = count_disk(mu, z, out.witness_radius);
  }
  return out;
}

double Envelope::log_value(double big_n) const
{
  switch (kind) {
  case Kind::ExpSqrt:
    return std::sqrt(big_n);
  case Kind::PowerTimesExpSqrt:
    return 2.0 * kEulerE * std::log(big_n) + std::sqrt(big_n);
  case Kind::Power:
    return exponent * std::log(big_n);
  }
  return 0.0;
}

BetaSchedule beta_schedule(const PointMeasure& mu, double delta_exp, double r, const Envelope& envelope)
{
  BetaSchedule out;
  out.s = delta_of_r(mu, delta_exp, r);
  out.big_n = integrated_counting(mu, r);
  if (!(out.big_n > 0.0)) {
    throw DomainError("beta_schedule: N(r) = 0 at r = " + format_shortest(r));
  }
  out.log_v = envelope.log_value(out.big_n);
  out.log_n2e = 2.0 * kEulerE * std::log(out.big_n);
  if (out.log_v < out.log_n2e) {
    throw DomainError("beta_schedule: envelope V(r) < N(r)^{2e} at r = " + format_shortest(r));
  }
  out.beta = std::exp(0.5 * (out.log_v + out.log_n2e)) / out.s;
  return out;
}

HeavyCover heavy_cover(const PointMeasure& mu, double beta, double s, double r, double delta,
                       const CoverGrid& grid, std::uint64_t seed)
{
  std::vector<Point> samples;
  const auto [first, last] = mu.modulus_window(r - s, r + delta + s);
  const auto atoms = mu.atoms();
  for (std::size_t k = first; k < last; ++k) {
    samples.push_back(atoms[k].location);
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < grid.radial; ++i) {
    for (std::size_t j = 0; j < grid.angular; ++j) {
      const double rho = r + delta * (static_cast<double>(i) + uniform01(rng)) / static_cast<double>(grid.radial);
      const double theta =
        2.0 * std::numbers::pi * (static_cast<double>(j) + uniform01(rng)) / static_cast<double>(grid.angular);
      samples.push_back(std::polar(rho, theta));
    }
  }

  std::vector<Classification> classes(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) { classes[i] = classify_point(mu, beta, s, samples[i]); });

  HeavyCover out;
  out.samples_total = samples.size();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (classes[i].heavy) {
      out.disks.push_back({samples[i], classes[i].witness_radius, classes[i].witness_mass});
    }
  }
  return out;
}

Selection besicovitch_select(std::span<const CoverDisk> disks, std::span<const Point> extra_probes,
                             std::uint64_t probe_seed)
{
  std::vector<CoverDisk> order(disks.begin(), disks.end());
  std::stable_sort(order.begin(), order.end(), [](const CoverDisk& a, const CoverDisk& b) {
    if (a.radius != b.radius) {
      return a.radius > b.radius;
    }
    const double ma = std::abs(a.center);
    const double mb = std::abs(b.center);
    if (ma != mb) {
      return ma < mb;
    }
    return std::arg(a.center) < std::arg(b.center);
  });

  Selection out;
  for (const auto& d : order) {
    const bool covered = std::any_of(out.selected.begin(), out.selected.end(),
                                     [&](const CoverDisk& s) { return contains(s, d.center); });
    if (!covered) {
      out.selected.push_back(d);
    }
  }
  if (out.selected.empty()) {
    return out;
  }

  const auto depth = [&](Point p) {
    return static_cast<std::size_t>(std::count_if(out.selected.begin(), out.selected.end(),
                                                  [&](const CoverDisk& s) { return contains(s, p); }));
  };
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const auto& s : out.selected) {
    out.multiplicity_measured = std::max(out.multiplicity_measured, depth(s.center));
    xmin = std::min(xmin, s.center.real() - s.radius);
    xmax = std::max(xmax, s.center.real() + s.radius);
    ymin = std::min(ymin, s.center.imag() - s.radius);
    ymax = std::max(ymax, s.center.imag() + s.radius);
  }
  for (const Point p : extra_probes) {
    out.multiplicity_measured = std::max(out.multiplicity_measured, depth(p));
  }
  std::mt19937_64 rng(probe_seed);
  for (std::size_t i = 0; i < kRandomProbes; ++i) {
    const double x = xmin + (xmax - xmin) * uniform01(rng);
    const double y = ymin + (ymax - ymin) * uniform01(rng);
    out.multiplicity_measured = std::max(out.multiplicity_measured, depth(Point(x, y)));
  }
  return out;
}

CoverReport build_cover(const PointMeasure& mu, double beta, double s, double r, double delta,
                        const CoverGrid& grid, std::uint64_t seed)
{
  CoverReport rep;
  rep.r = r;
  rep.delta = delta;
  rep.big_r = r + delta;
  rep.beta = beta;
  rep.s = s;

  const HeavyCover heavy = heavy_cover(mu, beta, s, r, delta, grid, seed);
  rep.samples_total = heavy.samples_total;
  rep.heavy_samples_total = heavy.disks.size();

  // Atoms near the selected disks are the points the counting step integrates over.
  std::vector<Point> probes;
  const auto [first, last] = mu.modulus_window(r - 2.0 * s, rep.big_r + 2.0 * s);
  for (std::size_t k = first; k < last; ++k) {
    probes.push_back(mu.atoms()[k].location);
  }
  Selection sel = besicovitch_select(heavy.disks, probes);
  rep.disks_selected = std::move(sel.selected);
  rep.multiplicity_measured = sel.multiplicity_measured;

  for (const auto& d : heavy.disks) {
    if (d.witness_mass < beta * d.radius) {
      rep.witness_chain_ok = false;
    }
    if (std::any_of(rep.disks_selected.begin(), rep.disks_selected.end(),
                    [&](const CoverDisk& s) { return contains(s, d.center); })) {
      ++rep.heavy_samples_covered;
    }
  }

  CompensatedSum radii;
  CompensatedSum mass;
  for (const auto& d : rep.disks_selected) {
    const double m = std::abs(d.center);
    if (m >= r && m <= rep.big_r) {
      radii += d.radius;
      mass += count_disk(mu, d.center, d.radius);
    }
  }
  rep.radii_sum = radii.value();
  rep.radii_sum_over_delta = rep.radii_sum / delta;
  rep.witness_mass_sum = mass.value();
  rep.n_outer = n_of_r(mu, rep.big_r + delta);
  return rep;
}

RadiiSumCheck radii_sum_check(const CoverReport& cover, const PointMeasure& mu, double delta_exp, double big_m,
                              double r)
{
  RadiiSumCheck out;
  const double big_n = integrated_counting(mu, r);
  out.radii_sum = cover.radii_sum;
  out.bound = 6.0 * std::exp(2.0 * kEulerE * std::log(big_n)) / cover.beta;
  out.ratio_to_delta = cover.radii_sum_over_delta;
  out.holds = out.radii_sum <= out.bound;
  out.bn_ok = bn_inequality(mu, delta_exp, big_m, r);
  return out;
}

} // namespace riesz
