#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace riesz {

using Point = std::complex<double>;

struct Atom
{
  Point location;
  double mass = 0.0;
};

/// Finite weighted atom set standing in for the Riesz measure of a
/// subharmonic function, truncated at radius rmax.
///
/// Invariants enforced at construction:
///   - 1 < |location| <= rmax for every atom (so n(1) = 0 exactly);
///   - every mass is finite and strictly positive;
///   - atoms are sorted by modulus, ties by angle, then insertion order.
///
/// The object is immutable; copies share storage.
class PointMeasure
{
public:
  /// Empty measure.
  explicit PointMeasure(double rmax = 2.0, std::string description = "empty");

  PointMeasure(std::vector<Atom> atoms, double rmax, std::string description = {},
               std::uint64_t seed = 0);

  [[nodiscard]] std::span<const Atom> atoms() const noexcept;
  /// |location| of each atom, in storage order.
  [[nodiscard]] std::span<const double> moduli() const noexcept;
  [[nodiscard]] double rmax() const noexcept;
  [[nodiscard]] std::uint64_t seed() const noexcept;
  [[nodiscard]] const std::string& description() const noexcept;
  [[nodiscard]] std::size_t size() const noexcept;
  [[nodiscard]] bool empty() const noexcept;
  [[nodiscard]] double total_mass() const noexcept;

  /// Mass of the atoms with index < k (sequential left-to-right sum).
  [[nodiscard]] double prefix_mass(std::size_t k) const noexcept;

  /// Index range [first, last) of atoms whose modulus lies in [lo, hi].
  [[nodiscard]] std::pair<std::size_t, std::size_t> modulus_window(double lo, double hi) const;

private:
  struct Data;
  static std::shared_ptr<const Data> build(std::vector<Atom> atoms, double rmax, std::string description,
                                           std::uint64_t seed);

  std::shared_ptr<const Data> data_;
};

/// n(z,t): mass of the closed disk |w - center| <= radius. Boundary atoms count.
[[nodiscard]] double count_disk(const PointMeasure& mu, Point center, double radius);

/// n(r) = n(0,r).
[[nodiscard]] double n_of_r(const PointMeasure& mu, double r);

/// N(r) = int_1^r n(t)/t dt, evaluated in closed form as
/// sum over |a_k| <= r of m_k log(r/|a_k|).
[[nodiscard]] double integrated_counting(const PointMeasure& mu, double r);

/// Mass of C(0,t) intersected with C(z,dcap).
[[nodiscard]] double nu_mixed(const PointMeasure& mu, Point z, double dcap, double t);

/// Closed-form monotone counting targets for generate_profile.
///   Zero:  0
///   Exp:   scale * (exp(r^exponent) - e)
///   Power: scale * (r^exponent - 1)
/// All vanish at r = 1.
struct Profile
{
  enum class Kind
  {
    Zero,
    Exp,
    Power
  };

  Kind kind = Kind::Zero;
  double scale = 1.0;
  double exponent = 1.0;

  [[nodiscard]] double operator()(double r) const;
  /// "zero", "exp:c=<scale>,q=<exponent>", "power:c=<scale>,q=<exponent>".
  [[nodiscard]] std::string to_string() const;
  static Profile parse(std::string_view text);

  friend bool operator==(const Profile&, const Profile&) = default;
};

inline constexpr std::size_t kAtomBudget = 1'000'000;

/// Places, for k = 1 .. ceil(profile(rmax)), a unit atom at modulus
/// inf{r : profile(r) >= k} (clamped to rmax) with a seeded pseudorandom
/// angle. Throws ContractError for non-monotone profiles or when the atom
/// count exceeds kAtomBudget.
[[nodiscard]] PointMeasure generate_profile(const Profile& profile, double rmax, std::uint64_t seed);

/// Same placement rule for an arbitrary callable. Monotonicity is checked on
/// a 1024-point grid over [1, rmax].
[[nodiscard]] PointMeasure generate_profile(const std::function<double(double)>& profile, double rmax,
                                            std::uint64_t seed, std::string description);

struct Interval
{
  double a = 1.0;
  double b = 1.0;
};

/// Finite union of closed intervals in [1, inf). Overlapping or touching
/// intervals are merged on construction, so the representation is canonical.
class IntervalSet
{
public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> intervals);

  [[nodiscard]] std::span<const Interval> intervals() const noexcept { return intervals_; }
  [[nodiscard]] bool empty() const noexcept { return intervals_.empty(); }
  [[nodiscard]] bool contains(double t) const noexcept;

  friend bool operator==(const IntervalSet& x, const IntervalSet& y);

private:
  std::vector<Interval> intervals_;
};

/// int chi_S(t) dlog t = sum log(b_i / a_i).
[[nodiscard]] double log_measure(const IntervalSet& s);

/// Shortest decimal string that parses back to the same double.
[[nodiscard]] std::string format_shortest(double x);

/// Text format: a header `# rmax=<v> seed=<v> profile=<text>` followed by one
/// `re im mass` line per atom.
void write_measure(std::ostream& out, const PointMeasure& mu);
[[nodiscard]] PointMeasure read_measure(std::istream& in);

} // namespace riesz
