#include <doctest.h>

#include "oracles.hpp"

#include <riesz/concentration.hpp>
#include <riesz/errors.hpp>
#include <riesz/lightpoints.hpp>

#include <cmath>
#include <numbers>

using namespace riesz;

namespace {

const PointMeasure& exp6()
{
  static const PointMeasure mu = generate_profile(Profile::parse("exp:c=1,q=1"), 6.0, 42);
  return mu;
}

std::vector<Point> probe_points(std::mt19937_64& rng, const PointMeasure& mu, std::size_t count)
{
  std::vector<Point> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 2 == 0) {
      const Atom& a = mu.atoms()[static_cast<std::size_t>(oracle::uniform(rng, 0.0, 1.0) * mu.size())];
      out.push_back(a.location + std::polar(oracle::uniform(rng, 0.0, 0.05), oracle::uniform(rng, 0.0, 6.3)));
    } else {
      out.push_back(std::polar(oracle::uniform(rng, 1.0, mu.rmax()), oracle::uniform(rng, 0.0, 6.3)));
    }
  }
  return out;
}

} // namespace

TEST_CASE("classify_point examples")
{
  CHECK_FALSE(classify_point(PointMeasure(), 1.0, 1.0, {2.0, 0.0}).heavy);

  const double d = 0.3;
  const PointMeasure one({{{3.0, 0.0}, 1.0}}, 5.0);
  const Point z{3.0, d};
  const auto heavy = classify_point(one, 1.0 / (2.0 * d), 1.0, z);
  CHECK(heavy.heavy);
  CHECK(heavy.witness_radius == doctest::Approx(d).epsilon(1e-15));
  CHECK(heavy.witness_mass == 1.0);
  CHECK(oracle::dense_grid_heavy(one, 1.0 / (2.0 * d), 1.0, z, 10'000));

  CHECK_FALSE(classify_point(one, 2.0 / d, 1.0, z).heavy);
  CHECK_FALSE(oracle::dense_grid_heavy(one, 2.0 / d, 1.0, z, 10'000));
  // The atom lies at distance d, outside (0, s) when s <= d.
  CHECK_FALSE(classify_point(one, 1e-9, d, z).heavy);
}

TEST_CASE("classification matches the dense t-grid oracle")
{
  std::mt19937_64 rng(501);
  int heavy = 0;
  int total = 0;
  for (const double c : {0.5, 3.0, 30.0}) {
    for (const Point z : probe_points(rng, exp6(), 20)) {
      const double s = delta_of_r(exp6(), 1.0, std::max(std::abs(z), 2.5));
      const double beta = c / s;
      const auto got = classify_point(exp6(), beta, s, z);
      CHECK(got.heavy == oracle::dense_grid_heavy(exp6(), beta, s, z, 10'000));
      heavy += got.heavy ? 1 : 0;
      ++total;
    }
  }
  CHECK(heavy > 0);
  CHECK(heavy < total);
}

TEST_CASE("witness disks satisfy the mass condition")
{
  std::mt19937_64 rng(502);
  for (const Point z : probe_points(rng, exp6(), 100)) {
    const auto c = classify_point(exp6(), 4.0, 1.0, z);
    if (!c.heavy) {
      CHECK(c.witness_radius == 0.0);
      continue;
    }
    CHECK(c.witness_radius > 0.0);
    CHECK(c.witness_radius < 1.0);
    CHECK(c.witness_mass == doctest::Approx(oracle::scan_count(exp6(), z, c.witness_radius)).epsilon(1e-14));
    CHECK(c.witness_mass >= 4.0 * c.witness_radius);
  }
}

TEST_CASE("a sample on an atom is heavy with a positive witness radius")
{
  const Atom& a = exp6().atoms()[77];
  for (const double beta : {1e-3, 1.0, 1e6, 1e12}) {
    const auto c = classify_point(exp6(), beta, 0.5, a.location);
    CHECK(c.heavy);
    CHECK(c.witness_radius > 0.0);
    CHECK(c.witness_mass >= beta * c.witness_radius);
  }
}

TEST_CASE("heavy stays heavy for smaller beta and larger s")
{
  std::mt19937_64 rng(503);
  for (const Point z : probe_points(rng, exp6(), 100)) {
    const double beta = oracle::uniform(rng, 0.5, 20.0);
    const double s = oracle::uniform(rng, 0.05, 1.0);
    if (!classify_point(exp6(), beta, s, z).heavy) {
      continue;
    }
    CHECK(classify_point(exp6(), beta * oracle::uniform(rng, 0.0, 1.0), s, z).heavy);
    CHECK(classify_point(exp6(), beta, s * oracle::uniform(rng, 1.0, 3.0), z).heavy);
  }
}

TEST_CASE("beta_schedule examples")
{
  // V = N^{2e}: the gate's boundary is accepted and beta s = N^{2e}.
  const Envelope boundary{Envelope::Kind::Power, 2.0 * kEulerE};
  const auto b = beta_schedule(exp6(), 1.0, 5.0, boundary);
  const double big_n = integrated_counting(exp6(), 5.0);
  CHECK(b.beta * b.s == doctest::Approx(std::pow(big_n, 2.0 * kEulerE)).epsilon(1e-12));

  // N(r) = 1 and V = e give beta s = sqrt(e).
  const double r = 5.0;
  const PointMeasure mu({{std::polar(r * std::exp(-1.0 / 3.0), 0.4), 3.0}}, 6.0);
  CHECK(integrated_counting(mu, r) == doctest::Approx(1.0).epsilon(1e-15));
  const auto unit = beta_schedule(mu, 1.0, r, Envelope{});
  CHECK(unit.beta * unit.s == doctest::Approx(std::sqrt(std::numbers::e)).epsilon(1e-14));
  CHECK(unit.s == doctest::Approx(r / std::log(3.0)).epsilon(1e-15));

  // Envelope below N^{2e} is rejected.
  CHECK_THROWS_AS((void)beta_schedule(exp6(), 1.0, 5.0, Envelope{Envelope::Kind::Power, 2.0}), DomainError);
}

TEST_CASE("beta_schedule agrees with the residual row at r = 6")
{
  const PointMeasure mu = generate_profile(Profile::parse("exp:c=0.1,q=1"), 10.5, 42);
  const Envelope env{Envelope::Kind::PowerTimesExpSqrt, 2.0 * kEulerE};
  SweepParams params;
  params.delta_exp = 1.0;
  params.eta = 1.25;
  params.angles_per_radius = 2;
  params.circle_samples = 64;
  const std::vector<double> radii{6.0};
  const auto row = residual_sweep(mu, params, radii).front();
  const double log_v = 2.0 * kEulerE * std::log(row.N_r) + std::sqrt(row.N_r);
  const double want = std::exp(0.5 * (log_v + 2.0 * kEulerE * std::log(row.N_r))) / row.delta;
  const auto b = beta_schedule(mu, 1.0, row.r, env);
  CHECK(b.beta == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("heavy_cover limits")
{
  const double r = 5.0;
  const double delta = delta_of_r(exp6(), 1.0, r);
  const auto none = heavy_cover(exp6(), 1e12, delta, r, delta, CoverGrid{4, 32}, 1);
  // Only samples sitting exactly on atoms can be heavy for an enormous beta.
  for (const auto& d : none.disks) {
    bool on_atom = false;
    for (const Atom& a : exp6().atoms()) {
      on_atom = on_atom || a.location == d.center;
    }
    CHECK(on_atom);
  }

  const auto all = heavy_cover(exp6(), 1e-12, delta, r, delta, CoverGrid{4, 32}, 1);
  CHECK(all.disks.size() == all.samples_total);
  for (const auto& d : all.disks) {
    CHECK(d.radius < delta);
  }

  const PointMeasure far({{{2.0, 0.0}, 5.0}}, 30.0);
  const auto empty = heavy_cover(far, 1e3, 0.5, 20.0, 1.0, CoverGrid{4, 32}, 1);
  CHECK(empty.disks.empty());
  CHECK(empty.samples_total > 0);
}

TEST_CASE("besicovitch_select degenerate inputs")
{
  std::vector<CoverDisk> disjoint;
  for (int k = 0; k < 10; ++k) {
    disjoint.push_back({{3.0 * k, 0.0}, 1.0, 1.0});
  }
  const auto a = besicovitch_select(disjoint);
  CHECK(a.selected.size() == 10);
  CHECK(a.multiplicity_measured == 1);

  const std::vector<CoverDisk> same(7, CoverDisk{{1.0, 2.0}, 0.5, 1.0});
  const auto b = besicovitch_select(same);
  CHECK(b.selected.size() == 1);
  CHECK(b.multiplicity_measured == 1);

  CHECK(besicovitch_select({}).selected.empty());
}

TEST_CASE("besicovitch_select covers every center with bounded overlap")
{
  std::mt19937_64 rng(504);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<CoverDisk> disks;
    for (int k = 0; k < 400; ++k) {
      disks.push_back({{oracle::uniform(rng, -5.0, 5.0), oracle::uniform(rng, -5.0, 5.0)},
                       std::exp(oracle::uniform(rng, -3.0, 0.5)),
                       1.0});
    }
    const auto sel = besicovitch_select(disks);
    for (const auto& d : disks) {
      bool covered = false;
      for (const auto& s : sel.selected) {
        covered = covered || std::abs(d.center - s.center) <= s.radius;
      }
      CHECK(covered);
    }
    std::size_t at_centers = 0;
    for (const auto& p : sel.selected) {
      std::size_t m = 0;
      for (const auto& s : sel.selected) {
        m += std::abs(p.center - s.center) <= s.radius ? 1 : 0;
      }
      at_centers = std::max(at_centers, m);
    }
    CHECK(sel.multiplicity_measured >= at_centers);
    CHECK(sel.multiplicity_measured <= 6);
  }
}

TEST_CASE("build_cover bookkeeping")
{
  const double r = 4.5;
  const double delta = delta_of_r(exp6(), 1.0, r);
  const double beta = 3.0 / delta;
  const auto rep = build_cover(exp6(), beta, delta, r, delta, CoverGrid{8, 64}, 17);
  CHECK(rep.big_r == r + delta);
  CHECK(rep.heavy_samples_total > 0);
  CHECK(rep.heavy_samples_covered == rep.heavy_samples_total);
  CHECK(rep.witness_chain_ok);
  CHECK(rep.multiplicity_measured <= 6);
  double radii = 0.0;
  double mass = 0.0;
  for (const auto& d : rep.disks_selected) {
    CHECK(d.witness_mass >= beta * d.radius);
    const double m = std::abs(d.center);
    if (m >= r && m <= rep.big_r) {
      radii += d.radius;
      mass += oracle::scan_count(exp6(), d.center, d.radius);
    }
  }
  CHECK(rep.radii_sum == doctest::Approx(radii).epsilon(1e-12));
  CHECK(rep.witness_mass_sum == doctest::Approx(mass).epsilon(1e-12));
  CHECK(rep.n_outer == oracle::scan_n(exp6(), rep.big_r + delta));
  CHECK(mass <= static_cast<double>(rep.multiplicity_measured) * rep.n_outer);
  CHECK(beta * radii <= mass);
}

TEST_CASE("radii_sum_check examples")
{
  const double r = 5.0;
  CoverReport empty;
  empty.r = r;
  const auto e = radii_sum_check(empty, exp6(), 1.0, 2.0, r);
  CHECK(e.radii_sum == 0.0);
  CHECK(e.holds);

  const double delta = delta_of_r(exp6(), 1.0, r);
  const double beta = 2.0;
  const auto rep = build_cover(exp6(), beta, delta, r, delta, CoverGrid{4, 32}, 5);
  for (const auto& d : rep.disks_selected) {
    CHECK(d.radius <= d.witness_mass / beta);
    CHECK(d.witness_mass / beta <= rep.n_outer / beta);
  }
  const auto chk = radii_sum_check(rep, exp6(), 1.0, 2.0, r);
  const double big_n = integrated_counting(exp6(), r);
  CHECK(chk.bound == doctest::Approx(6.0 * std::pow(big_n, 2.0 * kEulerE) / beta).epsilon(1e-12));
  CHECK(chk.radii_sum == rep.radii_sum);
  CHECK(chk.ratio_to_delta == doctest::Approx(rep.radii_sum / delta).epsilon(1e-14));
  if (chk.bn_ok) {
    CHECK(chk.holds);
  }
}
