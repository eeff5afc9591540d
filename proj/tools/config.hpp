#pragma once

#include <riesz/concentration.hpp>
#include <riesz/lightpoints.hpp>
#include <riesz/measure.hpp>

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace riesz::app {

class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct MeasureSpec
{
  Profile profile;
  double rmax = 5.0;
  std::uint64_t seed = 0;
  std::string file; // when non-empty, load atoms from this file instead
};

struct CoverSpec
{
  std::vector<double> radii;
  CoverGrid grid;
  std::uint64_t seed = 0;
  std::optional<double> beta_override;
};

/// Everything a run depends on. Persisted configs spell out every field.
struct RunConfig
{
  double delta_exp = 1.0;
  double eta = 1.5;
  double big_m = 2.0;
  MeasureSpec measure;
  std::vector<double> radii;
  std::size_t angles_per_radius = 16;
  std::size_t circle_samples = 4096;
  std::uint64_t seed = 0;
  Envelope envelope;
  std::vector<Point> harmonic;
  std::vector<Point> decompose_points;
  CoverSpec cover;
  std::string output_dir = "out";
  double tolerance_scale = 1.0;
};

/// Throws ConfigError on missing keys, wrong types or 0 < delta < eta failing.
[[nodiscard]] RunConfig config_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json config_to_json(const RunConfig& cfg);

[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);
void save_config(const RunConfig& cfg, const std::filesystem::path& path);

[[nodiscard]] std::string envelope_name(Envelope::Kind kind);

} // namespace riesz::app
