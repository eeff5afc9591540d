#include <doctest.h>

#include "oracles.hpp"

#include <riesz/canonical_product.hpp>
#include <riesz/concentration.hpp>
#include <riesz/errors.hpp>
#include <riesz/summation.hpp>

#include <cmath>
#include <numbers>

using namespace riesz;

namespace {

const PointMeasure& exp6()
{
  static const PointMeasure mu = generate_profile(Profile::parse("exp:c=1,q=1"), 6.0, 42);
  return mu;
}

bool close_rel(double got, double want, double tol)
{
  if (std::isinf(want) || std::isinf(got)) {
    return got == want;
  }
  return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
}

/// Random z with n(|z|) >= 3, at most `rmax`.
Point random_z(std::mt19937_64& rng, const PointMeasure& mu, double rmax)
{
  const double lo = std::abs(mu.atoms()[2].location) * 1.01;
  return std::polar(oracle::uniform(rng, lo, rmax), oracle::uniform(rng, 0.0, 2.0 * M_PI));
}

} // namespace

TEST_CASE("eval_v examples")
{
  CHECK(eval_v(PointMeasure(), 1.0, {3.0, 4.0}) == 0.0);
  const PointMeasure one({{{2.0, 0.0}, 1.0}}, 5.0);
  CHECK(eval_v(one, 1.0, {0.0, 0.0}) == 0.0);
  CHECK(std::abs(eval_v(one, 1.0, {4.0, 0.0})) <= 1e-15);
  CHECK(eval_v(one, 1.0, {6.0, 0.0}) == doctest::Approx(std::numbers::ln2).epsilon(1e-15));
  CHECK(eval_v(one, 1.0, {2.0, 0.0}) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("per-atom genus follows the schedule of closed-disk counts")
{
  const CanonicalProduct v(exp6(), 0.5);
  for (std::size_t k = 0; k < exp6().size(); ++k) {
    const double n = oracle::scan_n(exp6(), std::abs(exp6().atoms()[k].location));
    CHECK(v.genus(k).value() == oracle::genus(n, 0.5));
  }
}

TEST_CASE("eval_v matches the naive 50-digit summation")
{
  const Point z{2.5, 0.1};
  CHECK(close_rel(eval_v(exp6(), 0.5, z), oracle::eval_v_naive(exp6(), 0.5, z), 1e-11));

  std::mt19937_64 rng(301);
  for (int trial = 0; trial < 10; ++trial) {
    const Point w = std::polar(oracle::uniform(rng, 1.0, 7.0), oracle::uniform(rng, 0.0, 2.0 * M_PI));
    const double eta = oracle::uniform(rng, 0.3, 2.0);
    CHECK(close_rel(eval_v(exp6(), eta, w), oracle::eval_v_naive(exp6(), eta, w), 1e-11));
  }
}

TEST_CASE("decompose rejects radii with n(r) < 3")
{
  const PointMeasure far({{{8.0, 0.0}, 1.0}, {{0.0, 9.0}, 1.0}, {{-9.5, 0.0}, 1.0}}, 10.0);
  CHECK_THROWS_AS((void)decompose(far, 1.0, 1.0, {2.0, 0.0}), DomainError);
  CHECK_THROWS_AS((void)decompose(PointMeasure(), 1.0, 1.0, {2.0, 0.0}), DomainError);
}

TEST_CASE("decompose with all mass beyond R except the three atoms opening the domain")
{
  // n(r) >= 3 is required, so the three unit atoms at modulus 1.5 stay inside
  // C(0,r) but outside C(z,Delta); everything else lies beyond R.
  std::vector<Atom> atoms{{{1.5, 0.0}, 1.0}, {{0.0, 1.5}, 1.0}, {{-1.5, 0.0}, 1.0}};
  const Point z{0.0, -2.0};
  const double delta = 2.0 / std::log(3.0);
  const double big_r = 2.0 + delta;
  for (int k = 0; k < 12; ++k) {
    atoms.push_back({std::polar(big_r + 0.5 + 0.3 * k, 0.5 * k), 1.0});
  }
  const PointMeasure mu(atoms, 20.0);
  const auto rep = decompose(mu, 1.0, 1.0, z);
  CHECK(rep.delta == doctest::Approx(delta).epsilon(1e-15));
  CHECK(rep.region_mass[0] == 0.0);
  CHECK(rep.region_mass[1] == 3.0);
  CHECK(rep.region_mass[2] == 0.0);
  CHECK(rep.region_mass[3] == 12.0);
  CHECK(rep.v1 == 0.0);
  CHECK(rep.v2 == 0.0);
  CHECK(rep.v4 == 0.0);
  CHECK(close_rel(rep.v3 + rep.v5, rep.v_direct, 1e-12));
}

TEST_CASE("decompose with everything inside C(z, Delta)")
{
  const PointMeasure mu({{{4.99, 0.0}, 1.0},
                         {{4.995, 0.0}, 1.0},
                         {{4.98, 0.01}, 1.0},
                         {{5.01, 0.0}, 1.0},
                         {{5.0, 0.02}, 1.0}},
                        6.0);
  const auto rep = decompose(mu, 0.5, 1.0, {5.0, 0.0});
  CHECK(rep.n_r == 3.0);
  CHECK(rep.v3 == 0.0);
  CHECK(rep.v4 == 0.0);
  CHECK(rep.v5 == 0.0);
  CHECK(rep.region_mass[0] == 5.0);
  CHECK(close_rel(rep.v1 + rep.v2, rep.v_direct, 1e-12));
}

TEST_CASE("decompose partition identity on the exponential measure")
{
  std::mt19937_64 rng(302);
  for (int trial = 0; trial < 20; ++trial) {
    const Point z = std::polar(6.0, oracle::uniform(rng, 0.0, 2.0 * M_PI));
    const auto rep = decompose(exp6(), 0.5, 1.0, z);
    CHECK(std::abs(rep.v_direct - (rep.v1 + rep.v2 + rep.v3 + rep.v4 + rep.v5)) <=
          1e-9 * std::max(1.0, std::abs(rep.v_direct)));
    CHECK(rep.big_r == rep.r + rep.delta);
    CHECK(rep.v_direct == eval_v(exp6(), 0.5, z));
  }
}

TEST_CASE("regions are exclusive and the region masses add up")
{
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 30; ++trial) {
    const PointMeasure mu = oracle::random_measure(rng, 300, 12.0);
    const Point z = random_z(rng, mu, 11.0);
    const double delta_exp = oracle::uniform(rng, 0.3, 2.0);
    const auto rep = decompose(mu, 1.0, delta_exp, z);
    double mass[4] = {0.0, 0.0, 0.0, 0.0};
    for (const Atom& a : mu.atoms()) {
      const double m = std::abs(a.location);
      const bool in1 = std::abs(a.location - z) <= rep.delta;
      const bool in3 = m <= rep.r && !in1;
      const bool in4 = m <= rep.big_r && m > rep.r && !in1;
      const bool in5 = m > rep.big_r && !in1;
      REQUIRE(int(in1) + int(in3) + int(in4) + int(in5) == 1);
      const int idx = in1 ? 0 : in3 ? 1 : in4 ? 2 : 3;
      CHECK(static_cast<int>(classify_region(a.location, z, rep.delta, rep.big_r)) == idx);
      mass[idx] += a.mass;
    }
    for (int i = 0; i < 4; ++i) {
      CHECK(rep.region_mass[static_cast<std::size_t>(i)] == doctest::Approx(mass[i]).epsilon(1e-13));
    }
    CHECK(rep.region_mass[0] + rep.region_mass[1] + rep.region_mass[2] + rep.region_mass[3] ==
          doctest::Approx(mu.total_mass()).epsilon(1e-13));
  }
}

TEST_CASE("v2_frozen uses the genus of n(r) on all of A1")
{
  std::mt19937_64 rng(304);
  for (int trial = 0; trial < 10; ++trial) {
    const Point z = random_z(rng, exp6(), 6.0);
    const auto rep = decompose(exp6(), 0.5, 1.0, z);
    const unsigned p = oracle::genus(oracle::scan_n(exp6(), std::abs(z)), 0.5);
    long double want = 0.0L;
    for (const Atom& a : exp6().atoms()) {
      if (std::abs(a.location - z) <= rep.delta) {
        want += a.mass * oracle::tail_polynomial_naive(z / a.location, p);
      }
    }
    CHECK(close_rel(rep.v2_frozen, static_cast<double>(want), 1e-10));
  }
}

TEST_CASE("-inf propagates when z sits on an atom")
{
  const Point z = exp6().atoms()[200].location;
  const auto rep = decompose(exp6(), 0.5, 1.0, z);
  CHECK(rep.v_direct == -std::numeric_limits<double>::infinity());
  CHECK(rep.v1 == -std::numeric_limits<double>::infinity());
  CHECK(rep.v_sum == -std::numeric_limits<double>::infinity());
  CHECK(v1_via_parts(exp6(), 1.0, z) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("v1_via_parts examples")
{
  const PointMeasure sparse({{{1.5, 0.0}, 1.0}, {{0.0, 1.5}, 1.0}, {{-1.5, 0.0}, 1.0}}, 12.0);
  const Point z{10.0, 0.0};
  CHECK(v1_via_parts(sparse, 3.0, z) == 0.0);
  CHECK(decompose(sparse, 1.0, 3.0, z).v1 == 0.0);

  const PointMeasure one({{{4.0, 0.0}, 3.0}}, 6.0);
  const Point zz{4.5, 0.0};
  const double want = 3.0 * std::log(std::abs(1.0 - zz / Point{4.0, 0.0}));
  CHECK(v1_via_parts(one, 1.0, zz) == doctest::Approx(want).epsilon(1e-13));
  CHECK(decompose(one, 1.0, 1.0, zz).v1 == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("v1_via_parts agrees with decompose on 50 random points")
{
  std::mt19937_64 rng(305);
  for (int trial = 0; trial < 50; ++trial) {
    const Point z = random_z(rng, exp6(), 6.0);
    const double v1 = decompose(exp6(), 0.5, 1.0, z).v1;
    CHECK(close_rel(v1_via_parts(exp6(), 1.0, z), v1, 1e-9));
  }
}

TEST_CASE("logarithmic bounds on A3 and A4")
{
  std::mt19937_64 rng(306);
  for (const double rmax : {4.0, 5.0, 6.0}) {
    const PointMeasure mu = generate_profile(Profile::parse("exp:c=1,q=1"), rmax, 9);
    for (int trial = 0; trial < 20; ++trial) {
      const Point z = random_z(rng, mu, rmax);
      const auto rb = region_bounds(mu, 1.0, z);
      CHECK(rb.a4_violations == 0);
      if (rb.n_r >= 16.0) {
        CHECK(rb.a3_violations == 0);
      }
    }
  }
}

TEST_CASE("Jensen: circle mean of v equals N(r)")
{
  const CanonicalProduct v(exp6(), 0.5);
  const auto moduli = exp6().moduli();
  int tested = 0;
  for (std::size_t k = 0; k + 1 < moduli.size() && tested < 6; k += 37) {
    const double r = 0.5 * (moduli[k] + moduli[k + 1]);
    if (std::min(r - moduli[k], moduli[k + 1] - r) < 1e-3 * r) {
      continue;
    }
    CompensatedSum mean;
    for (std::size_t j = 0; j < 4096; ++j) {
      mean += v(std::polar(r, 2.0 * M_PI * static_cast<double>(j) / 4096.0));
    }
    const double big_n = oracle::integrated_counting_quad(exp6(), r);
    CHECK(std::abs(mean.value() / 4096.0 - big_n) <= 1e-4 * big_n);
    ++tested;
  }
  CHECK(tested >= 3);
}
