#include "riesz/concentration.hpp"

#include "riesz/canonical_product.hpp"
#include "riesz/errors.hpp"
#include "riesz/parallel.hpp"
#include "riesz/summation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace riesz {

double delta_of_r(const PointMeasure& mu, double delta_exp, double r)
{
  if (!(delta_exp > 0.0)) {
    throw ContractError("delta_of_r: delta_exp must be positive");
  }
  const double n = n_of_r(mu, r);
  if (!(n >= 3.0)) {
    throw DomainError("Delta(r) undefined at r = " + format_shortest(r) + ": n(r) = " + format_shortest(n) +
                      " < 3; use a larger radius");
  }
  return r / std::pow(std::log(n), delta_exp);
}

double conc_index_with_delta(const PointMeasure& mu, double delta, Point z)
{
  const double c = std::abs(z);
  const double eps = 1e-12 * (c + delta);
  const auto [first, last] = mu.modulus_window(c - delta - eps, c + delta + eps);
  const auto atoms = mu.atoms();
  CompensatedSum sum;
  for (std::size_t k = first; k < last; ++k) {
    const double d = std::abs(atoms[k].location - z);
    if (d > delta) {
      continue;
    }
    if (d == 0.0) {
      return -std::numeric_limits<double>::infinity();
    }
    sum += atoms[k].mass * std::log(delta / d);
  }
  return 0.0 - sum.value();
}

double conc_index(const PointMeasure& mu, double delta_exp, Point z)
{
  return conc_index_with_delta(mu, delta_of_r(mu, delta_exp, std::abs(z)), z);
}

std::vector<double> circle_values(const ScalarField& f, double r, std::size_t samples)
{
  std::vector<double> values(samples);
  parallel_for(samples, [&](std::size_t j) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(samples);
    values[j] = f(Point(r * std::cos(theta), r * std::sin(theta)));
  });
  return values;
}

double max_of_samples(std::span<const double> values)
{
  double best = -std::numeric_limits<double>::infinity();
  for (double x : values) {
    if (x > best) {
      best = x;
    }
  }
  return best;
}

double positive_mean(std::span<const double> values)
{
  if (values.empty()) {
    return 0.0;
  }
  CompensatedSum sum;
  for (double x : values) {
    if (x > 0.0) {
      sum += x;
    }
  }
  return sum.value() / static_cast<double>(values.size());
}

double max_on_circle(const ScalarField& f, double r, std::size_t samples)
{
  if (samples < 64) {
    throw ContractError("max_on_circle: need at least 64 samples");
  }
  return max_of_samples(circle_values(f, r, samples));
}

double nevanlinna_T(const ScalarField& f, double r, std::size_t samples)
{
  if (samples < 64) {
    throw ContractError("nevanlinna_T: need at least 64 samples");
  }
  return positive_mean(circle_values(f, r, samples));
}

IntervalSet violation_hull(std::span<const double> radii, const std::vector<bool>& ok)
{
  if (radii.size() != ok.size()) {
    throw ContractError("violation_hull: radii and flags differ in length");
  }
  if (!std::is_sorted(radii.begin(), radii.end())) {
    throw ContractError("violation_hull: radii must be ascending");
  }
  std::vector<Interval> cells;
  const std::size_t n = radii.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (ok[i]) {
      continue;
    }
    double left = 0.0;
    double right = 0.0;
    if (n == 1) {
      left = right = 0.5e-3 * radii[i];
    } else {
      left = i > 0 ? 0.5 * (radii[i] - radii[i - 1]) : 0.5 * (radii[1] - radii[0]);
      right = i + 1 < n ? 0.5 * (radii[i + 1] - radii[i]) : 0.5 * (radii[n - 1] - radii[n - 2]);
    }
    const double a = std::max(1.0, radii[i] - left);
    const double b = std::max(radii[i] + right, std::nextafter(a, std::numeric_limits<double>::infinity()));
    cells.push_back({a, b});
  }
  return IntervalSet(std::move(cells));
}

bool bn_inequality(const PointMeasure& mu, double delta_exp, double big_m, double r)
{
  const double n = n_of_r(mu, r);
  if (!(n >= 3.0)) {
    throw DomainError("bn_check: n(r) < 3 at r = " + format_shortest(r));
  }
  const double stretched = r * (1.0 + big_m / std::pow(std::log(n), delta_exp));
  return n_of_r(mu, stretched) <= std::pow(n, kEulerE);
}

bool lemma11_inequality(const PointMeasure& mu, double r)
{
  const double n = n_of_r(mu, r);
  const double big_n = r >= 1.0 ? integrated_counting(mu, r) : 0.0;
  return n <= big_n * big_n;
}

namespace {

template <typename Predicate>
ExceptionalScan scan(std::span<const double> radii, Predicate&& pred)
{
  ExceptionalScan out;
  out.radii.assign(radii.begin(), radii.end());
  out.ok.reserve(radii.size());
  for (double r : radii) {
    out.ok.push_back(pred(r));
  }
  out.violations = violation_hull(out.radii, out.ok);
  out.log_measure = log_measure(out.violations);
  return out;
}

} // namespace

ExceptionalScan bn_check(const PointMeasure& mu, double delta_exp, double big_m, std::span<const double> radii)
{
  if (!(big_m > 0.0)) {
    throw ContractError("bn_check: M must be positive");
  }
  return scan(radii, [&](double r) { return bn_inequality(mu, delta_exp, big_m, r); });
}

ExceptionalScan lemma11_check(const PointMeasure& mu, std::span<const double> radii)
{
  return scan(radii, [&](double r) { return lemma11_inequality(mu, r); });
}

double nudge_radius(const PointMeasure& mu, double r)
{
  constexpr double kMargin = 1e-6;
  for (int iter = 0; iter < 64; ++iter) {
    const auto [first, last] = mu.modulus_window(r * (1.0 - kMargin), r * (1.0 + kMargin));
    if (first == last) {
      return r;
    }
    r = mu.moduli()[last - 1] * (1.0 + 2.0 * kMargin);
  }
  return r;
}

double HarmonicAddend::operator()(Point z) const
{
  Point acc(0.0, 0.0);
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    acc = acc * z + *it;
  }
  return acc.real();
}

std::vector<ResidualRow> residual_sweep(const PointMeasure& mu, const SweepParams& params,
                                        std::span<const double> radii)
{
  if (params.circle_samples < 64) {
    throw ContractError("residual_sweep: circle_samples must be >= 64");
  }
  const CanonicalProduct v(mu, params.eta);
  const auto u = [&](Point z) { return v(z) + params.harmonic(z); };

  std::mt19937_64 rng(params.seed);
  std::vector<ResidualRow> rows;
  rows.reserve(radii.size());
  for (double requested : radii) {
    ResidualRow row;
    row.r = nudge_radius(mu, requested);
    row.nudged = row.r != requested;
    row.n_r = n_of_r(mu, row.r);
    row.delta = delta_of_r(mu, params.delta_exp, row.r);
    row.N_r = integrated_counting(mu, row.r);

    std::vector<Point> candidates;
    for (std::size_t j = 0; j < params.angles_per_radius; ++j) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(rng() >> 11) * 0x1.0p-53;
      candidates.push_back(std::polar(row.r, theta));
    }
    for (const Point z : candidates) {
      if (count_disk(mu, z, 1e-9 * row.r) > 0.0) {
        ++row.skipped;
        continue;
      }
      row.z_samples.push_back(z);
    }
    row.I.resize(row.z_samples.size());
    row.u.resize(row.z_samples.size());
    row.residual.resize(row.z_samples.size());
    parallel_for(row.z_samples.size(), [&](std::size_t j) {
      row.I[j] = conc_index_with_delta(mu, row.delta, row.z_samples[j]);
      row.u[j] = u(row.z_samples[j]);
      row.residual[j] = row.u[j] - row.I[j];
    });

    const auto circle = circle_values(u, row.r, params.circle_samples);
    row.B_r = max_of_samples(circle);
    row.T_r = positive_mean(circle);

    CompensatedSum i_sum;
    CompensatedSum u_sum;
    row.I_min = row.I.empty() ? 0.0 : std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < row.z_samples.size(); ++j) {
      i_sum += row.I[j];
      u_sum += row.u[j];
      row.I_min = std::min(row.I_min, row.I[j]);
      row.resid_max = std::max(row.resid_max, std::abs(row.residual[j]));
    }
    const auto count = static_cast<double>(std::max<std::size_t>(1, row.z_samples.size()));
    row.I_mean = i_sum.value() / count;
    row.v_mean = u_sum.value() / count;
    row.ratio1 = std::log1p(row.resid_max) / row.N_r;
    row.bn_ok = bn_inequality(mu, params.delta_exp, params.big_m, row.r);
    row.lemma_ok = lemma11_inequality(mu, row.r);
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace riesz
