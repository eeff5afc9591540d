#include "riesz/measure.hpp"

#include "riesz/errors.hpp"
#include "riesz/summation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace riesz {

struct PointMeasure::Data
{
  std::vector<Atom> atoms;
  std::vector<double> moduli;
  std::vector<double> prefix; // prefix[k] = mass of atoms [0, k)
  double rmax = 2.0;
  std::string description;
  std::uint64_t seed = 0;
};

std::shared_ptr<const PointMeasure::Data>
PointMeasure::build(std::vector<Atom> atoms, double rmax, std::string description, std::uint64_t seed)
{
  if (!(rmax > 0.0) || !std::isfinite(rmax)) {
    throw ContractError("PointMeasure: rmax must be a positive finite real");
  }
  for (const auto& a : atoms) {
    if (!(a.mass > 0.0) || !std::isfinite(a.mass)) {
      throw ContractError("PointMeasure: atom masses must be positive and finite");
    }
    const double m = std::abs(a.location);
    if (!std::isfinite(m) || !(m > 1.0)) {
      throw ContractError("PointMeasure: atoms must satisfy |location| > 1");
    }
    if (m > rmax) {
      throw ContractError("PointMeasure: atom outside the truncation radius rmax");
    }
  }

  struct Keyed
  {
    double modulus;
    double angle;
    Atom atom;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(atoms.size());
  for (const auto& a : atoms) {
    keyed.push_back({std::abs(a.location), std::arg(a.location), a});
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed& x, const Keyed& y) {
    if (x.modulus != y.modulus) {
      return x.modulus < y.modulus;
    }
    return x.angle < y.angle;
  });

  auto data = std::make_shared<PointMeasure::Data>();
  data->rmax = rmax;
  data->description = std::move(description);
  data->seed = seed;
  data->atoms.reserve(keyed.size());
  data->moduli.reserve(keyed.size());
  data->prefix.reserve(keyed.size() + 1);
  data->prefix.push_back(0.0);
  double running = 0.0;
  for (const auto& k : keyed) {
    data->atoms.push_back(k.atom);
    data->moduli.push_back(k.modulus);
    running += k.atom.mass;
    data->prefix.push_back(running);
  }
  return data;
}

namespace {

// Triangle-inequality pruning must not drop boundary atoms through rounding.
double slack(double scale)
{
  return 1e-12 * scale + std::numeric_limits<double>::min();
}

} // namespace

PointMeasure::PointMeasure(double rmax, std::string description)
  : data_(build({}, rmax, std::move(description), 0))
{}

PointMeasure::PointMeasure(std::vector<Atom> atoms, double rmax, std::string description,
                           std::uint64_t seed)
  : data_(build(std::move(atoms), rmax, std::move(description), seed))
{}

std::span<const Atom> PointMeasure::atoms() const noexcept { return data_->atoms; }
std::span<const double> PointMeasure::moduli() const noexcept { return data_->moduli; }
double PointMeasure::rmax() const noexcept { return data_->rmax; }
std::uint64_t PointMeasure::seed() const noexcept { return data_->seed; }
const std::string& PointMeasure::description() const noexcept { return data_->description; }
std::size_t PointMeasure::size() const noexcept { return data_->atoms.size(); }
bool PointMeasure::empty() const noexcept { return data_->atoms.empty(); }
double PointMeasure::total_mass() const noexcept { return data_->prefix.back(); }
double PointMeasure::prefix_mass(std::size_t k) const noexcept
{
  return data_->prefix[std::min(k, data_->atoms.size())];
}

std::pair<std::size_t, std::size_t> PointMeasure::modulus_window(double lo, double hi) const
{
  const auto& m = data_->moduli;
  const auto first = std::lower_bound(m.begin(), m.end(), lo);
  const auto last = std::upper_bound(first, m.end(), hi);
  return {static_cast<std::size_t>(first - m.begin()), static_cast<std::size_t>(last - m.begin())};
}

double count_disk(const PointMeasure& mu, Point center, double radius)
{
  if (!(radius >= 0.0)) {
    throw ContractError("count_disk: radius must be nonnegative");
  }
  const double c = std::abs(center);
  const double eps = slack(c + radius);
  const auto [first, last] = mu.modulus_window(c - radius - eps, c + radius + eps);
  const auto atoms = mu.atoms();
  double mass = 0.0;
  for (std::size_t k = first; k < last; ++k) {
    if (std::abs(atoms[k].location - center) <= radius) {
      mass += atoms[k].mass;
    }
  }
  return mass;
}

double n_of_r(const PointMeasure& mu, double r)
{
  if (r < 0.0) {
    return 0.0;
  }
  const auto m = mu.moduli();
  const auto k = static_cast<std::size_t>(std::upper_bound(m.begin(), m.end(), r) - m.begin());
  return mu.prefix_mass(k);
}

double integrated_counting(const PointMeasure& mu, double r)
{
  if (!(r >= 1.0)) {
    throw ContractError("integrated_counting: r must be >= 1");
  }
  const auto m = mu.moduli();
  const auto atoms = mu.atoms();
  CompensatedSum sum;
  for (std::size_t k = 0; k < m.size() && m[k] <= r; ++k) {
    sum += atoms[k].mass * std::log(r / m[k]);
  }
  return sum.value();
}

double nu_mixed(const PointMeasure& mu, Point z, double dcap, double t)
{
  if (!(dcap > 0.0) || !(t >= 0.0)) {
    throw ContractError("nu_mixed: requires dcap > 0 and t >= 0");
  }
  const double c = std::abs(z);
  const double eps = slack(c + dcap);
  const auto [first, last] = mu.modulus_window(c - dcap - eps, std::min(t, c + dcap + eps));
  const auto atoms = mu.atoms();
  const auto m = mu.moduli();
  double mass = 0.0;
  for (std::size_t k = first; k < last; ++k) {
    if (m[k] <= t && std::abs(atoms[k].location - z) <= dcap) {
      mass += atoms[k].mass;
    }
  }
  return mass;
}

// ---------------------------------------------------------------------------
// Profiles

double Profile::operator()(double r) const
{
  switch (kind) {
  case Kind::Zero:
    return 0.0;
  case Kind::Exp:
    return scale * (std::exp(std::pow(r, exponent)) - std::numbers::e);
  case Kind::Power:
    return scale * (std::pow(r, exponent) - 1.0);
  }
  return 0.0;
}

std::string Profile::to_string() const
{
  switch (kind) {
  case Kind::Zero:
    return "zero";
  case Kind::Exp:
    return "exp:c=" + format_shortest(scale) + ",q=" + format_shortest(exponent);
  case Kind::Power:
    return "power:c=" + format_shortest(scale) + ",q=" + format_shortest(exponent);
  }
  return "zero";
}

namespace {

double parse_double(std::string_view s, const char* what)
{
  double value = 0.0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, value);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw ContractError(std::string("cannot parse ") + what + ": '" + std::string(s) + "'");
  }
  return value;
}

std::uint64_t parse_u64(std::string_view s, const char* what)
{
  std::uint64_t value = 0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, value);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw ContractError(std::string("cannot parse ") + what + ": '" + std::string(s) + "'");
  }
  return value;
}

} // namespace

Profile Profile::parse(std::string_view text)
{
  Profile p;
  if (text == "zero") {
    return p;
  }
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ContractError("unknown profile '" + std::string(text) + "'");
  }
  const auto name = text.substr(0, colon);
  if (name == "exp") {
    p.kind = Kind::Exp;
  } else if (name == "power") {
    p.kind = Kind::Power;
  } else {
    throw ContractError("unknown profile kind '" + std::string(name) + "'");
  }
  auto rest = text.substr(colon + 1);
  bool have_c = false;
  bool have_q = false;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (item.starts_with("c=")) {
      p.scale = parse_double(item.substr(2), "profile scale");
      have_c = true;
    } else if (item.starts_with("q=")) {
      p.exponent = parse_double(item.substr(2), "profile exponent");
      have_q = true;
    } else {
      throw ContractError("unknown profile parameter '" + std::string(item) + "'");
    }
  }
  if (!have_c || !have_q) {
    throw ContractError("profile '" + std::string(text) + "' needs both c= and q=");
  }
  return p;
}

namespace {

PointMeasure place_atoms(const std::function<double(double)>& profile, double rmax,
                         std::uint64_t seed, std::string description)
{
  if (!(rmax > 1.0) || !std::isfinite(rmax)) {
    throw ContractError("generate_profile: rmax must be a finite real > 1");
  }
  const double top = profile(rmax);
  if (!std::isfinite(top)) {
    throw ContractError("generate_profile: profile(rmax) is not finite");
  }
  if (top > static_cast<double>(kAtomBudget)) {
    throw ContractError("generate_profile: ceil(profile(rmax)) exceeds the atom budget of 1e6");
  }
  const auto count = top > 0.0 ? static_cast<std::size_t>(std::ceil(top)) : std::size_t{0};

  std::mt19937_64 rng(seed);
  std::vector<Atom> atoms;
  atoms.reserve(count);
  double lo_hint = 1.0;
  for (std::size_t k = 1; k <= count; ++k) {
    const double target = static_cast<double>(k);
    double modulus = rmax;
    if (profile(rmax) >= target) {
      // Invariant: profile(lo) < target <= profile(hi).
      double lo = lo_hint;
      double hi = rmax;
      while (true) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
          break;
        }
        if (profile(mid) >= target) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      modulus = hi;
      lo_hint = lo;
    }
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double angle = 2.0 * std::numbers::pi * u;
    Point loc = std::polar(modulus, angle);
    while (std::abs(loc) > rmax) {
      loc *= 1.0 - 0x1.0p-52;
    }
    atoms.push_back({loc, 1.0});
  }
  return PointMeasure(std::move(atoms), rmax, std::move(description), seed);
}

} // namespace

PointMeasure generate_profile(const Profile& profile, double rmax, std::uint64_t seed)
{
  if (profile.kind != Profile::Kind::Zero && (!(profile.scale >= 0.0) || !(profile.exponent > 0.0))) {
    throw ContractError("generate_profile: profile is not monotone (need c >= 0, q > 0)");
  }
  return place_atoms(profile, rmax, seed, profile.to_string());
}

PointMeasure generate_profile(const std::function<double(double)>& profile, double rmax,
                              std::uint64_t seed, std::string description)
{
  if (!(rmax > 1.0)) {
    throw ContractError("generate_profile: rmax must be > 1");
  }
  if (profile(1.0) != 0.0) {
    throw ContractError("generate_profile: profile(1) must be 0");
  }
  constexpr int kChecks = 1024;
  double prev = 0.0;
  for (int i = 1; i <= kChecks; ++i) {
    const double r = 1.0 + (rmax - 1.0) * i / kChecks;
    const double v = profile(r);
    if (v < prev) {
      throw ContractError("generate_profile: profile is not monotone");
    }
    prev = v;
  }
  return place_atoms(profile, rmax, seed, std::move(description));
}

// ---------------------------------------------------------------------------
// Interval sets

IntervalSet::IntervalSet(std::vector<Interval> intervals)
{
  for (const auto& iv : intervals) {
    if (!(iv.a >= 1.0) || !(iv.b > iv.a) || !std::isfinite(iv.b)) {
      throw ContractError("IntervalSet: intervals need 1 <= a < b < inf");
    }
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& x, const Interval& y) { return x.a < y.a || (x.a == y.a && x.b < y.b); });
  for (const auto& iv : intervals) {
    if (!intervals_.empty() && iv.a <= intervals_.back().b) {
      intervals_.back().b = std::max(intervals_.back().b, iv.b);
    } else {
      intervals_.push_back(iv);
    }
  }
}

bool IntervalSet::contains(double t) const noexcept
{
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [t](const Interval& iv) { return iv.a <= t && t <= iv.b; });
}

bool operator==(const IntervalSet& x, const IntervalSet& y)
{
  return std::equal(x.intervals_.begin(), x.intervals_.end(), y.intervals_.begin(), y.intervals_.end(),
                    [](const Interval& p, const Interval& q) { return p.a == q.a && p.b == q.b; });
}

double log_measure(const IntervalSet& s)
{
  CompensatedSum sum;
  for (const auto& iv : s.intervals()) {
    sum += std::log(iv.b / iv.a);
  }
  return sum.value();
}

// ---------------------------------------------------------------------------
// Serialization

std::string format_shortest(double x)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_measure(std::ostream& out, const PointMeasure& mu)
{
  out << "# rmax=" << format_shortest(mu.rmax()) << " seed=" << mu.seed()
      << " profile=" << mu.description() << '\n';
  for (const auto& a : mu.atoms()) {
    out << format_shortest(a.location.real()) << ' ' << format_shortest(a.location.imag()) << ' '
        << format_shortest(a.mass) << '\n';
  }
}

PointMeasure read_measure(std::istream& in)
{
  std::string header;
  if (!std::getline(in, header) || !header.starts_with("# rmax=")) {
    throw ContractError("measure file: missing '# rmax=' header");
  }
  const auto seed_pos = header.find(" seed=");
  const auto prof_pos = header.find(" profile=");
  if (seed_pos == std::string::npos || prof_pos == std::string::npos || prof_pos < seed_pos) {
    throw ContractError("measure file: malformed header '" + header + "'");
  }
  const std::string_view hv(header);
  const double rmax = parse_double(hv.substr(7, seed_pos - 7), "rmax");
  const std::uint64_t seed = parse_u64(hv.substr(seed_pos + 6, prof_pos - seed_pos - 6), "seed");
  std::string description(hv.substr(prof_pos + 9));

  std::vector<Atom> atoms;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) {
      continue;
    }
    std::istringstream fields(line);
    std::string re;
    std::string im;
    std::string mass;
    std::string extra;
    if (!(fields >> re >> im >> mass) || (fields >> extra)) {
      throw ContractError("measure file: line " + std::to_string(lineno) + " is not 're im mass'");
    }
    atoms.push_back({Point(parse_double(re, "re"), parse_double(im, "im")), parse_double(mass, "mass")});
  }
  return PointMeasure(std::move(atoms), rmax, std::move(description), seed);
}

} // namespace riesz
