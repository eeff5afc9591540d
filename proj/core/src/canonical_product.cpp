#include "riesz/canonical_product.hpp"

#include "riesz/concentration.hpp"
#include "riesz/errors.hpp"
#include "riesz/summation.hpp"

#include <cmath>
#include <limits>

namespace riesz {

CanonicalProduct::CanonicalProduct(PointMeasure mu, double eta)
  : mu_(std::move(mu))
  , eta_(eta)
{
  if (!(eta > 0.0)) {
    throw ContractError("CanonicalProduct: eta must be positive");
  }
  const auto moduli = mu_.moduli();
  const auto atoms = mu_.atoms();
  genera_.reserve(moduli.size());
  inverse_.reserve(moduli.size());
  for (std::size_t k = 0; k < moduli.size(); ++k) {
    // Closed-disk count: each atom sees itself and its equal-modulus peers.
    genera_.push_back(genus_schedule(n_of_r(mu_, moduli[k]), eta_));
    const Point xi = atoms[k].location;
    const double norm2 = xi.real() * xi.real() + xi.imag() * xi.imag();
    inverse_.emplace_back(xi.real() / norm2, -xi.imag() / norm2);
  }
}

double CanonicalProduct::operator()(Point z) const
{
  const auto atoms = mu_.atoms();
  const std::size_t n = atoms.size();
  CompensatedSum sum;
  std::size_t k = 0;
  while (k < n) {
    // Four consecutive atoms of one genus on the same branch share a batched
    // pass; the per-atom values equal the scalar path.
    if (k + 4 <= n && genera_[k] == genera_[k + 3]) {
      Point w[4];
      bool series[4];
      bool direct = true;
      for (int l = 0; l < 4; ++l) {
        if (z == atoms[k + l].location) {
          return -std::numeric_limits<double>::infinity();
        }
        w[l] = ratio(z, k + l);
        series[l] = detail::uses_series(w[l], genera_[k]);
        direct = direct && !series[l];
      }
      if (series[0] && series[1] && series[2] && series[3]) {
        double tail[4];
        detail::log_abs_primary_series4(w, genera_[k], tail);
        for (int l = 0; l < 4; ++l) {
          sum += atoms[k + l].mass * tail[l];
        }
        k += 4;
        continue;
      }
      if (direct) {
        double poly[4];
        tail_polynomial4(w, genera_[k], poly);
        for (int l = 0; l < 4; ++l) {
          sum += atoms[k + l].mass * (detail::log_abs_one_minus(w[l]) + poly[l]);
        }
        k += 4;
        continue;
      }
    }
    if (z == atoms[k].location) {
      return -std::numeric_limits<double>::infinity();
    }
    sum += atoms[k].mass * log_abs_primary(ratio(z, k), genera_[k]);
    ++k;
  }
  return sum.value();
}

double eval_v(const PointMeasure& mu, double eta, Point z)
{
  return CanonicalProduct(mu, eta)(z);
}

Region classify_region(Point xi, Point z, double delta, double big_r)
{
  if (std::abs(xi - z) <= delta) {
    return Region::A1;
  }
  const double m = std::abs(xi);
  if (m <= std::abs(z)) {
    return Region::A3;
  }
  if (m <= big_r) {
    return Region::A4;
  }
  return Region::A5;
}

DecompositionReport decompose(const CanonicalProduct& v, double delta_exp, Point z)
{
  const PointMeasure& mu = v.measure();
  DecompositionReport rep;
  rep.z = z;
  rep.r = std::abs(z);
  rep.n_r = n_of_r(mu, rep.r);
  rep.delta = delta_of_r(mu, delta_exp, rep.r);
  rep.big_r = rep.r + rep.delta;

  const Genus frozen = genus_schedule(rep.n_r, v.eta());
  const auto atoms = mu.atoms();
  CompensatedSum s1, s2, s3, s4, s5, s2f;
  std::array<CompensatedSum, 4> masses;

  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const Point xi = atoms[k].location;
    const double m = atoms[k].mass;
    const Point w = v.ratio(z, k);
    switch (classify_region(xi, z, rep.delta, rep.big_r)) {
    case Region::A1:
      s1 += z == xi ? -std::numeric_limits<double>::infinity() : m * detail::log_abs_one_minus(w);
      s2 += m * tail_polynomial(w, v.genus(k));
      s2f += m * tail_polynomial(w, frozen);
      masses[0] += m;
      break;
    case Region::A3:
      s3 += m * log_abs_primary(w, v.genus(k));
      masses[1] += m;
      break;
    case Region::A4:
      s4 += m * log_abs_primary(w, v.genus(k));
      masses[2] += m;
      break;
    case Region::A5:
      s5 += m * log_abs_primary(w, v.genus(k));
      masses[3] += m;
      break;
    }
  }
  rep.v1 = s1.value();
  rep.v2 = s2.value();
  rep.v3 = s3.value();
  rep.v4 = s4.value();
  rep.v5 = s5.value();
  rep.v2_frozen = s2f.value();
  for (std::size_t i = 0; i < 4; ++i) {
    rep.region_mass[i] = masses[i].value();
  }

  CompensatedSum total;
  for (double part : {rep.v1, rep.v2, rep.v3, rep.v4, rep.v5}) {
    total += part;
  }
  rep.v_sum = total.value();
  rep.v_direct = v(z);
  return rep;
}

DecompositionReport decompose(const PointMeasure& mu, double eta, double delta_exp, Point z)
{
  return decompose(CanonicalProduct(mu, eta), delta_exp, z);
}

double v1_via_parts(const PointMeasure& mu, double delta_exp, Point z)
{
  const double r = std::abs(z);
  const double delta = delta_of_r(mu, delta_exp, r);
  const double big_r = r + delta;

  const double index = conc_index_with_delta(mu, delta, z);
  if (std::isinf(index)) {
    return index;
  }
  const double n_z = count_disk(mu, z, delta);

  // int_0^R nu(z,t)/t dt: each atom of C(z,Delta) enters at t = |xi|.
  CompensatedSum stieltjes;
  const auto atoms = mu.atoms();
  const auto moduli = mu.moduli();
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if (moduli[k] <= big_r && std::abs(atoms[k].location - z) <= delta) {
      stieltjes += atoms[k].mass * std::log(big_r / moduli[k]);
    }
  }

  CompensatedSum total;
  total += index;
  total += std::log(delta) * n_z;
  total += stieltjes.value();
  total += std::log(1.0 / big_r) * n_z;
  return total.value();
}

RegionBoundReport region_bounds(const PointMeasure& mu, double delta_exp, Point z)
{
  RegionBoundReport rep;
  const double r = std::abs(z);
  rep.n_r = n_of_r(mu, r);
  const double delta = delta_of_r(mu, delta_exp, r);
  const double big_r = r + delta;
  rep.bound15 = 2.0 * (std::log(std::log(rep.n_r)) + std::log(r));
  rep.bound17 = std::abs(std::log(delta / big_r));

  const auto atoms = mu.atoms();
  const auto moduli = mu.moduli();
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const Point xi = atoms[k].location;
    const Region region = classify_region(xi, z, delta, big_r);
    if (region != Region::A3 && region != Region::A4) {
      continue;
    }
    const double value = std::abs(std::log(std::abs(1.0 - z / xi)));
    if (region == Region::A3 && moduli[k] > 1.0) {
      ++rep.a3_checked;
      rep.a3_worst = std::max(rep.a3_worst, value);
      if (value > rep.bound15) {
        ++rep.a3_violations;
      }
    } else if (region == Region::A4) {
      ++rep.a4_checked;
      rep.a4_worst = std::max(rep.a4_worst, value);
      if (value > rep.bound17) {
        ++rep.a4_violations;
      }
    }
  }
  return rep;
}

} // namespace riesz
