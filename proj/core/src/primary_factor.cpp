#include "riesz/primary_factor.hpp"

#include "riesz/errors.hpp"
#include "riesz/summation.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace riesz {

namespace {

constexpr double kTailRelTol = 1e-18;
constexpr double kSeriesRadius = 0.5;
// log(1e-12): below this |w|^(p+1) the direct branch, whose absolute error is
// near 1e-16, no longer resolves the value.
constexpr double kLogSmallTail = -27.631021115928547;

Point mul(Point a, Point b) noexcept
{
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

Point ipow(Point w, std::uint64_t n) noexcept
{
  Point result(1.0, 0.0);
  while (n > 0) {
    if (n & 1U) {
      result = mul(result, w);
    }
    w = mul(w, w);
    n >>= 1U;
  }
  return result;
}

double norm2(Point a) noexcept
{
  return a.real() * a.real() + a.imag() * a.imag();
}

constexpr std::size_t kReciprocals = 1U << 14U;

// 1.0 / j for j < kReciprocals; identical to dividing in place.
const double* reciprocal_table()
{
  static const std::vector<double> table = [] {
    std::vector<double> t(kReciprocals, 0.0);
    for (std::size_t j = 1; j < kReciprocals; ++j) {
      t[j] = 1.0 / static_cast<double>(j);
    }
    return t;
  }();
  return table.data();
}

double reciprocal(std::uint64_t j, const double* table) noexcept
{
  return j < kReciprocals ? table[j] : 1.0 / static_cast<double>(j);
}

} // namespace

Genus::Genus(std::uint64_t p)
{
  if (p > kMax) {
    throw ContractError("genus " + std::to_string(p) + " exceeds the cap of 1e6");
  }
  p_ = static_cast<std::uint32_t>(p);
}

Genus genus_schedule(double n_value, double eta)
{
  if (!(eta > 0.0)) {
    throw ContractError("genus_schedule: eta must be positive");
  }
  if (!(n_value > 1.0)) {
    return Genus{};
  }
  const double x = std::pow(std::log(n_value), 1.0 + eta);
  if (!(x <= static_cast<double>(Genus::kMax))) {
    throw ContractError("genus_schedule: genus exceeds the cap of 1e6");
  }
  return Genus(static_cast<std::uint64_t>(std::floor(x)));
}

double tail_polynomial(Point w, Genus p)
{
  const auto n = p.value();
  if (n == 0) {
    return 0.0;
  }
  // Plain real arithmetic: std::complex multiplication carries NaN/inf
  // recovery that dominates the cost of this loop.
  const double wr = w.real();
  const double wi = w.imag();
  double ar = 1.0 / n;
  double ai = 0.0;
  for (auto j = n - 1; j >= 1; --j) {
    const double tr = ar * wr - ai * wi + 1.0 / j;
    ai = ar * wi + ai * wr;
    ar = tr;
  }
  return ar * wr - ai * wi;
}

void tail_polynomial4(const Point* w, Genus p, double* out)
{
  const auto n = p.value();
  if (n == 0) {
    out[0] = out[1] = out[2] = out[3] = 0.0;
    return;
  }
  double wr[4];
  double wi[4];
  double ar[4];
  double ai[4];
  for (int l = 0; l < 4; ++l) {
    wr[l] = w[l].real();
    wi[l] = w[l].imag();
    ar[l] = 1.0 / n;
    ai[l] = 0.0;
  }
  for (auto j = n - 1; j >= 1; --j) {
    const double c = 1.0 / j;
    for (int l = 0; l < 4; ++l) {
      const double tr = ar[l] * wr[l] - ai[l] * wi[l] + c;
      ai[l] = ar[l] * wi[l] + ai[l] * wr[l];
      ar[l] = tr;
    }
  }
  for (int l = 0; l < 4; ++l) {
    out[l] = ar[l] * wr[l] - ai[l] * wi[l];
  }
}

namespace detail {

bool uses_series(Point w, Genus p)
{
  const double n2 = norm2(w);
  if (n2 <= kSeriesRadius * kSeriesRadius) {
    return true;
  }
  if (n2 >= 1.0) {
    return false;
  }
  // (x - 1) / x <= log x <= x - 1 settles most cases without the logarithm.
  const double half_p1 = 0.5 * (static_cast<double>(p.value()) + 1.0);
  if (half_p1 * (n2 - 1.0) < kLogSmallTail) {
    return true;
  }
  if (half_p1 * (n2 - 1.0) / n2 >= kLogSmallTail) {
    return false;
  }
  return half_p1 * std::log(n2) < kLogSmallTail;
}

double log_abs_primary_series(Point w, Genus p)
{
  // -Re sum_{j>p} w^j/j, stopped once |term| <= kTailRelTol |partial sum|.
  constexpr double tol2 = kTailRelTol * kTailRelTol;
  std::uint64_t j = std::uint64_t{p.value()} + 1;
  Point power = ipow(w, j);
  double sr = 0.0;
  double si = 0.0;
  const double* table = reciprocal_table();
  while (true) {
    const double inv = reciprocal(j, table);
    const Point term(power.real() * inv, power.imag() * inv);
    sr += term.real();
    si += term.imag();
    const double t2 = norm2(term);
    if (t2 <= tol2 * (sr * sr + si * si) || t2 == 0.0) {
      break;
    }
    power = mul(power, w);
    ++j;
  }
  return -sr;
}

void log_abs_primary_series4(const Point* w, Genus p, double* out)
{
  // Lane-wise copy of log_abs_primary_series: a lane stops updating at the
  // term where the scalar loop would break.
  constexpr double tol2 = kTailRelTol * kTailRelTol;
  const double* table = reciprocal_table();
  const std::uint64_t first = std::uint64_t{p.value()} + 1;
  double pr[4];
  double pi[4];
  double wr[4];
  double wi[4];
  double sr[4] = {0.0, 0.0, 0.0, 0.0};
  double si[4] = {0.0, 0.0, 0.0, 0.0};
  bool active[4];
  for (int l = 0; l < 4; ++l) {
    const Point start = ipow(w[l], first);
    pr[l] = start.real();
    pi[l] = start.imag();
    wr[l] = w[l].real();
    wi[l] = w[l].imag();
    active[l] = true;
  }
  int live = 4;
  for (std::uint64_t j = first; live > 0; ++j) {
    const double inv = reciprocal(j, table);
    for (int l = 0; l < 4; ++l) {
      if (!active[l]) {
        continue;
      }
      const double tr = pr[l] * inv;
      const double ti = pi[l] * inv;
      sr[l] += tr;
      si[l] += ti;
      const double t2 = tr * tr + ti * ti;
      if (t2 <= tol2 * (sr[l] * sr[l] + si[l] * si[l]) || t2 == 0.0) {
        active[l] = false;
        --live;
        continue;
      }
      const double nr = pr[l] * wr[l] - pi[l] * wi[l];
      pi[l] = pr[l] * wi[l] + pi[l] * wr[l];
      pr[l] = nr;
    }
  }
  for (int l = 0; l < 4; ++l) {
    out[l] = -sr[l];
  }
}

double log_abs_one_minus(Point w)
{
  const double x = 1.0 - w.real();
  const double y = w.imag();
  return 0.5 * std::log(x * x + y * y);
}

double log_abs_primary_direct(Point w, Genus p)
{
  return log_abs_one_minus(w) + tail_polynomial(w, p);
}

} // namespace detail

double log_abs_primary(Point w, Genus p)
{
  if (w == Point(1.0, 0.0)) {
    return -std::numeric_limits<double>::infinity();
  }
  if (detail::uses_series(w, p)) {
    return detail::log_abs_primary_series(w, p);
  }
  return detail::log_abs_primary_direct(w, p);
}

BoundWitness bound13_holds(Point w, double a, Genus p)
{
  const double x = std::abs(w);
  if (!(a > 1.0) || !(x < a) || p.value() < 1) {
    throw ContractError("bound13_holds: requires |w| < a, a > 1, p >= 1");
  }
  CompensatedSum lhs;
  double power = 1.0;
  for (std::uint32_t j = 1; j <= p.value(); ++j) {
    power *= x;
    lhs += power / j;
  }
  BoundWitness out;
  out.lhs = lhs.value();
  out.rhs = std::pow(a, p.value()) * (2.0 + std::log(static_cast<double>(p.value())));
  out.holds = out.lhs <= out.rhs;
  return out;
}

BoundWitness bound19_holds(Point w, Genus p)
{
  const double x = std::abs(w);
  const double pv = p.value();
  if (p.value() < 1 || !(x <= pv / (pv + 1.0))) {
    throw ContractError("bound19_holds: requires p >= 1 and |w| <= p/(p+1)");
  }
  BoundWitness out;
  out.lhs = std::abs(log_abs_primary(w, p));
  out.rhs = std::pow(x, pv + 1.0);
  out.holds = out.lhs <= out.rhs;
  return out;
}

} // namespace riesz
