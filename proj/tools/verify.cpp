#include "verify.hpp"

#include "report_io.hpp"

#include <riesz/canonical_product.hpp>
#include <riesz/concentration.hpp>
#include <riesz/errors.hpp>
#include <riesz/lightpoints.hpp>
#include <riesz/primary_factor.hpp>
#include <riesz/summation.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace riesz::app {

namespace {

struct Scenario
{
  std::string name;
  PointMeasure mu;
  double delta_exp;
  double eta;
  double big_m;
  Envelope envelope;
  std::size_t z_count;
  std::size_t jensen_radii;
};

double uniform01(std::mt19937_64& rng)
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Smallest radius with n(r) >= 3, or rmax when the measure is too light.
double domain_floor(const PointMeasure& mu)
{
  for (std::size_t k = 0; k < mu.size(); ++k) {
    if (mu.prefix_mass(k + 1) >= 3.0) {
      return mu.moduli()[k];
    }
  }
  return mu.rmax();
}

std::vector<Point> sample_points(const PointMeasure& mu, std::size_t count, std::uint64_t seed)
{
  const double lo = domain_floor(mu) * 1.01;
  const double hi = mu.rmax() * 0.98;
  std::vector<Point> out;
  if (!(hi > lo)) {
    return out;
  }
  std::mt19937_64 rng(seed);
  while (out.size() < count) {
    const double r = lo + (hi - lo) * uniform01(rng);
    const Point z = std::polar(r, 2.0 * std::numbers::pi * uniform01(rng));
    if (count_disk(mu, z, 1e-9 * r) == 0.0) {
      out.push_back(z);
    }
  }
  return out;
}

/// Radii in the widest gaps between consecutive atom moduli, keeping a 1e-3
/// relative distance from every modulus.
std::vector<double> jensen_radii(const PointMeasure& mu, std::size_t count)
{
  const auto m = mu.moduli();
  struct Gap
  {
    double width;
    double mid;
  };
  std::vector<Gap> gaps;
  for (std::size_t k = 2; k + 1 < m.size(); ++k) {
    const double mid = 0.5 * (m[k] + m[k + 1]);
    const double half = 0.5 * (m[k + 1] - m[k]);
    if (half > 1e-3 * mid * 1.01) {
      gaps.push_back({half / mid, mid});
    }
  }
  std::sort(gaps.begin(), gaps.end(), [](const Gap& a, const Gap& b) { return a.width > b.width; });
  std::vector<double> out;
  for (std::size_t i = 0; i < gaps.size() && out.size() < count; ++i) {
    out.push_back(gaps[i].mid);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Dense t-grid classification, independent of the jump-radius scan.
bool dense_heavy(const PointMeasure& mu, double beta, double s, Point z, std::size_t grid)
{
  std::vector<std::pair<double, double>> dist;
  for (const auto& a : mu.atoms()) {
    const double d = std::abs(a.location - z);
    if (d < s) {
      dist.emplace_back(d, a.mass);
    }
  }
  std::sort(dist.begin(), dist.end());
  std::size_t k = 0;
  double mass = 0.0;
  for (std::size_t i = 1; i <= grid; ++i) {
    const double t = s * static_cast<double>(i) / static_cast<double>(grid + 1);
    while (k < dist.size() && dist[k].first <= t) {
      mass += dist[k].second;
      ++k;
    }
    if (mass >= beta * t) {
      return true;
    }
  }
  return false;
}

std::string sci(double x)
{
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

void check_scenario(const Scenario& sc, double ts, std::vector<CheckResult>& out)
{
  const std::string tag = "[" + sc.name + "] ";
  const auto zs = sample_points(sc.mu, sc.z_count, 0xC0FFEEULL);
  if (zs.empty()) {
    out.push_back({tag + "samples", false, "measure too light: no radius with n(r) >= 3"});
    return;
  }
  const CanonicalProduct v(sc.mu, sc.eta);

  double worst_partition = 0.0;
  double worst_parts = 0.0;
  double worst_mass = 0.0;
  std::size_t a15_checked = 0;
  std::size_t a15_viol = 0;
  std::size_t a15_reported = 0;
  std::size_t a17_checked = 0;
  std::size_t a17_viol = 0;
  for (const Point z : zs) {
    const auto rep = decompose(v, sc.delta_exp, z);
    const double scale = std::max(1.0, std::abs(rep.v_direct));
    worst_partition = std::max(worst_partition, std::abs(rep.v_direct - rep.v_sum) / scale);
    const double parts = v1_via_parts(sc.mu, sc.delta_exp, z);
    worst_parts = std::max(worst_parts, std::abs(parts - rep.v1) / std::max(1.0, std::abs(rep.v1)));
    const double region_total = rep.region_mass[0] + rep.region_mass[1] + rep.region_mass[2] + rep.region_mass[3];
    worst_mass = std::max(worst_mass, std::abs(region_total - sc.mu.total_mass()) / std::max(1.0, sc.mu.total_mass()));

    const auto bounds = region_bounds(sc.mu, sc.delta_exp, z);
    if (bounds.n_r >= 16.0) {
      a15_checked += bounds.a3_checked;
      a15_viol += bounds.a3_violations;
    } else {
      a15_reported += bounds.a3_violations;
    }
    a17_checked += bounds.a4_checked;
    a17_viol += bounds.a4_violations;
  }
  out.push_back({tag + "partition identity", worst_partition <= 1e-9 * ts && worst_mass <= 1e-12 * ts,
                 "max rel err " + sci(worst_partition) + ", region mass err " + sci(worst_mass)});
  out.push_back({tag + "integration-by-parts identity", worst_parts <= 1e-9 * ts, "max rel err " + sci(worst_parts)});
  out.push_back({tag + "log bound on A3", a15_viol == 0,
                 std::to_string(a15_checked) + " atoms checked, " + std::to_string(a15_viol) + " violations; " +
                   std::to_string(a15_reported) + " reported below n(r) = 16"});
  out.push_back({tag + "log bound on A4", a17_viol == 0,
                 std::to_string(a17_checked) + " atoms checked, " + std::to_string(a17_viol) + " violations"});

  // Jensen: circle mean of v equals N(r).
  const auto radii = jensen_radii(sc.mu, sc.jensen_radii);
  double worst_jensen = 0.0;
  for (double r : radii) {
    const auto values = circle_values([&](Point z) { return v(z); }, r, 4096);
    CompensatedSum mean;
    for (double x : values) {
      mean += x;
    }
    const double big_n = integrated_counting(sc.mu, r);
    worst_jensen = std::max(worst_jensen, std::abs(mean.value() / 4096.0 - big_n) / std::max(1e-300, big_n));
  }
  out.push_back({tag + "Jensen circle mean", !radii.empty() && worst_jensen <= 1e-4 * ts,
                 std::to_string(radii.size()) + " radii, max rel err " + sci(worst_jensen)});

  // Light/heavy classification against a dense t-grid.
  std::size_t agree = 0;
  std::size_t heavy = 0;
  const auto cls_points = sample_points(sc.mu, 50, 0xBEEFULL);
  for (const Point z : cls_points) {
    const double s = delta_of_r(sc.mu, sc.delta_exp, std::abs(z));
    const double beta = 3.0 / s;
    const auto c = classify_point(sc.mu, beta, s, z);
    heavy += c.heavy ? 1 : 0;
    agree += c.heavy == dense_heavy(sc.mu, beta, s, z, 10'000) ? 1 : 0;
  }
  out.push_back({tag + "light/heavy classification", agree == cls_points.size(),
                 std::to_string(agree) + "/" + std::to_string(cls_points.size()) + " agree, " +
                   std::to_string(heavy) + " heavy"});

  // Covering chains at a mid radius, with a small beta and the scheduled beta.
  const double r_mid = std::abs(zs[zs.size() / 2]);
  const double delta = delta_of_r(sc.mu, sc.delta_exp, r_mid);
  std::vector<std::pair<std::string, double>> betas = {{"beta=3/s", 3.0 / delta}};
  bool scheduled = false;
  try {
    betas.emplace_back("scheduled beta", beta_schedule(sc.mu, sc.delta_exp, r_mid, sc.envelope).beta);
    scheduled = true;
  } catch (const DomainError&) {
  }
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const auto rep = build_cover(sc.mu, betas[i].second, delta, r_mid, delta, CoverGrid{8, 128}, 99);
    const bool counting = rep.witness_mass_sum <= static_cast<double>(rep.multiplicity_measured) * rep.n_outer;
    const bool ok = rep.heavy_samples_covered == rep.heavy_samples_total && rep.multiplicity_measured <= 6 &&
                    rep.witness_chain_ok && counting;
    out.push_back({tag + "cover chains (" + betas[i].first + ")", ok,
                   "heavy " + std::to_string(rep.heavy_samples_total) + ", covered " +
                     std::to_string(rep.heavy_samples_covered) + ", multiplicity " +
                     std::to_string(rep.multiplicity_measured)});
    if (i == 1 && scheduled) {
      const auto check = radii_sum_check(rep, sc.mu, sc.delta_exp, sc.big_m, r_mid);
      out.push_back({tag + "radii-sum bound", check.holds || !check.bn_ok,
                     "sum " + sci(check.radii_sum) + " <= " + sci(check.bound) +
                       (check.bn_ok ? "" : " (radius flagged, not asserted)")});
    }
  }
}

} // namespace

bool VerifyReport::all_pass() const
{
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

VerifyReport run_verify(const RunConfig& cfg, const PointMeasure& mu)
{
  VerifyReport rep;
  const double ts = cfg.tolerance_scale;

  // Elementary inequalities, sampled over their whole precondition domains.
  {
    std::mt19937_64 rng(13);
    std::size_t v13 = 0;
    std::size_t v19 = 0;
    for (int i = 0; i < 10'000; ++i) {
      const double a = 1.0 + 9.0 * (1.0 - uniform01(rng));
      const double x = a * uniform01(rng);
      const Genus p(1 + rng() % 200);
      v13 += bound13_holds(std::polar(x, 2.0 * std::numbers::pi * uniform01(rng)), a, p).holds ? 0 : 1;
    }
    for (int i = 0; i < 10'000; ++i) {
      const auto pv = 1 + rng() % 64;
      const double x = static_cast<double>(pv) / static_cast<double>(pv + 1) * uniform01(rng);
      v19 += bound19_holds(std::polar(x, 2.0 * std::numbers::pi * uniform01(rng)), Genus(pv)).holds ? 0 : 1;
    }
    rep.checks.push_back({"partial-sum bound", v13 == 0, std::to_string(v13) + " violations in 10000 samples"});
    rep.checks.push_back({"primary-factor tail bound", v19 == 0, std::to_string(v19) + " violations in 10000 samples"});
  }

  std::vector<Scenario> scenarios;
  scenarios.push_back({"configured", mu, cfg.delta_exp, cfg.eta, cfg.big_m, cfg.envelope, 20, 2});
  Envelope fixture_env;
  fixture_env.kind = Envelope::Kind::PowerTimesExpSqrt;
  scenarios.push_back({"exp-r4", generate_profile(Profile{Profile::Kind::Exp, 1.0, 1.0}, 4.0, 11), 1.0, 1.5, 2.0,
                       fixture_env, 20, 4});
  scenarios.push_back({"power-r3.5", generate_profile(Profile{Profile::Kind::Power, 4.0, 2.0}, 3.5, 12), 0.5, 1.0,
                       2.0, fixture_env, 20, 4});
  for (const auto& sc : scenarios) {
    check_scenario(sc, ts, rep.checks);
  }
  return rep;
}

nlohmann::json verify_to_json(const VerifyReport& rep)
{
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : rep.checks) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  return {{"all_pass", rep.all_pass()}, {"checks", checks}};
}

} // namespace riesz::app
