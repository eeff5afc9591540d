#include "config.hpp"

#include <fstream>
#include <sstream>

namespace riesz::app {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key)
{
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(std::string("config: missing key '") + key + "'");
  }
  return j.at(key);
}

template <typename T>
T get(const json& j, const char* key)
{
  try {
    return require(j, key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: bad value for '") + key + "': " + e.what());
  }
}

std::vector<Point> points_from(const json& arr, const char* key)
{
  std::vector<Point> out;
  if (!arr.is_array()) {
    throw ConfigError(std::string("config: '") + key + "' must be an array of [re, im] pairs");
  }
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw ConfigError(std::string("config: '") + key + "' entries must be [re, im]");
    }
    out.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return out;
}

json points_to(const std::vector<Point>& pts)
{
  json arr = json::array();
  for (const auto& p : pts) {
    arr.push_back({p.real(), p.imag()});
  }
  return arr;
}

Envelope::Kind envelope_kind(const std::string& name)
{
  if (name == "exp_sqrt") {
    return Envelope::Kind::ExpSqrt;
  }
  if (name == "power_times_exp_sqrt") {
    return Envelope::Kind::PowerTimesExpSqrt;
  }
  if (name == "power") {
    return Envelope::Kind::Power;
  }
  throw ConfigError("config: unknown envelope kind '" + name + "'");
}

} // namespace

std::string envelope_name(Envelope::Kind kind)
{
  switch (kind) {
  case Envelope::Kind::ExpSqrt:
    return "exp_sqrt";
  case Envelope::Kind::PowerTimesExpSqrt:
    return "power_times_exp_sqrt";
  case Envelope::Kind::Power:
    return "power";
  }
  return "exp_sqrt";
}

RunConfig config_from_json(const json& j)
{
  RunConfig cfg;
  cfg.delta_exp = get<double>(j, "delta_exp");
  cfg.eta = get<double>(j, "eta");
  cfg.big_m = get<double>(j, "bigM");
  if (!(cfg.delta_exp > 0.0 && cfg.delta_exp < cfg.eta)) {
    throw ConfigError("config: need 0 < delta_exp < eta");
  }
  if (!(cfg.big_m > 0.0)) {
    throw ConfigError("config: bigM must be positive");
  }

  const json& m = require(j, "measure");
  try {
    cfg.measure.profile = Profile::parse(get<std::string>(m, "profile"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  cfg.measure.rmax = get<double>(m, "rmax");
  cfg.measure.seed = get<std::uint64_t>(m, "seed");
  cfg.measure.file = get<std::string>(m, "file");

  cfg.radii = get<std::vector<double>>(j, "radii");
  cfg.angles_per_radius = get<std::size_t>(j, "angles_per_radius");
  cfg.circle_samples = get<std::size_t>(j, "circle_samples");
  if (cfg.circle_samples < 64) {
    throw ConfigError("config: circle_samples must be >= 64");
  }
  cfg.seed = get<std::uint64_t>(j, "seed");

  const json& env = require(j, "envelope");
  cfg.envelope.kind = envelope_kind(get<std::string>(env, "kind"));
  cfg.envelope.exponent = get<double>(env, "exponent");

  cfg.harmonic = points_from(require(j, "harmonic"), "harmonic");
  cfg.decompose_points = points_from(require(j, "decompose_points"), "decompose_points");

  const json& c = require(j, "cover");
  cfg.cover.radii = get<std::vector<double>>(c, "radii");
  cfg.cover.grid.radial = get<std::size_t>(c, "radial");
  cfg.cover.grid.angular = get<std::size_t>(c, "angular");
  cfg.cover.seed = get<std::uint64_t>(c, "seed");
  const json& beta = require(c, "beta_override");
  if (!beta.is_null()) {
    if (!beta.is_number() || !(beta.get<double>() > 0.0)) {
      throw ConfigError("config: cover.beta_override must be null or a positive number");
    }
    cfg.cover.beta_override = beta.get<double>();
  }

  cfg.output_dir = get<std::string>(j, "output_dir");
  cfg.tolerance_scale = get<double>(j, "tolerance_scale");
  if (!(cfg.tolerance_scale > 0.0)) {
    throw ConfigError("config: tolerance_scale must be positive");
  }
  return cfg;
}

json config_to_json(const RunConfig& cfg)
{
  json j;
  j["delta_exp"] = cfg.delta_exp;
  j["eta"] = cfg.eta;
  j["bigM"] = cfg.big_m;
  j["measure"] = {
    {"profile", cfg.measure.profile.to_string()},
    {"rmax", cfg.measure.rmax},
    {"seed", cfg.measure.seed},
    {"file", cfg.measure.file},
  };
  j["radii"] = cfg.radii;
  j["angles_per_radius"] = cfg.angles_per_radius;
  j["circle_samples"] = cfg.circle_samples;
  j["seed"] = cfg.seed;
  j["envelope"] = {{"kind", envelope_name(cfg.envelope.kind)}, {"exponent", cfg.envelope.exponent}};
  j["harmonic"] = points_to(cfg.harmonic);
  j["decompose_points"] = points_to(cfg.decompose_points);
  j["cover"] = {
    {"radii", cfg.cover.radii},
    {"radial", cfg.cover.grid.radial},
    {"angular", cfg.cover.grid.angular},
    {"seed", cfg.cover.seed},
    {"beta_override", cfg.cover.beta_override ? json(*cfg.cover.beta_override) : json(nullptr)},
  };
  j["output_dir"] = cfg.output_dir;
  j["tolerance_scale"] = cfg.tolerance_scale;
  return j;
}

RunConfig load_config(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file " + path.string());
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

void save_config(const RunConfig& cfg, const std::filesystem::path& path)
{
  std::ofstream out(path);
  out << config_to_json(cfg).dump(2) << '\n';
}

} // namespace riesz::app
