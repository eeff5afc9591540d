#include "commands.hpp"

#include "report_io.hpp"
#include "verify.hpp"

#include <riesz/canonical_product.hpp>
#include <riesz/concentration.hpp>
#include <riesz/errors.hpp>
#include <riesz/lightpoints.hpp>

#include <fstream>
#include <ostream>

namespace riesz::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ofstream open_out(const fs::path& dir, const std::string& name)
{
  fs::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot write " + (dir / name).string());
  }
  return out;
}

} // namespace

PointMeasure resolve_measure(const RunConfig& cfg)
{
  if (!cfg.measure.file.empty()) {
    std::ifstream in(cfg.measure.file);
    if (!in) {
      throw ConfigError("cannot open measure file " + cfg.measure.file);
    }
    return read_measure(in);
  }
  return generate_profile(cfg.measure.profile, cfg.measure.rmax, cfg.measure.seed);
}

int cmd_generate(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log)
{
  const PointMeasure mu = generate_profile(cfg.measure.profile, cfg.measure.rmax, cfg.measure.seed);
  auto out = open_out(out_dir, "measure.txt");
  write_measure(out, mu);
  log << "generate: " << mu.size() << " atoms -> " << (out_dir / "measure.txt").string() << '\n';
  return kExitOk;
}

int cmd_decompose(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log)
{
  const PointMeasure mu = resolve_measure(cfg);
  const CanonicalProduct v(mu, cfg.eta);
  auto out = open_out(out_dir, "decompose.csv");
  out << kDecomposeHeader << '\n';
  std::size_t flagged = 0;
  for (const Point z : cfg.decompose_points) {
    try {
      write_decompose_row(out, decompose(v, cfg.delta_exp, z));
    } catch (const DomainError&) {
      write_decompose_failure(out, z, "domain_error");
      ++flagged;
    }
  }
  log << "decompose: " << cfg.decompose_points.size() << " rows (" << flagged << " flagged)\n";
  return kExitOk;
}

int cmd_residuals(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log)
{
  const PointMeasure mu = resolve_measure(cfg);
  SweepParams params;
  params.delta_exp = cfg.delta_exp;
  params.eta = cfg.eta;
  params.big_m = cfg.big_m;
  params.angles_per_radius = cfg.angles_per_radius;
  params.circle_samples = cfg.circle_samples;
  params.seed = cfg.seed;
  params.harmonic.coefficients = cfg.harmonic;

  const auto rows = residual_sweep(mu, params, cfg.radii);
  {
    auto out = open_out(out_dir, "residuals.csv");
    out << kResidualHeader << '\n';
    for (const auto& row : rows) {
      write_residual_row(out, row);
    }
  }

  std::vector<double> used;
  for (const auto& row : rows) {
    used.push_back(row.r);
  }
  const ExceptionalScan bn = bn_check(mu, cfg.delta_exp, cfg.big_m, used);
  const ExceptionalScan lemma = lemma11_check(mu, used);
  json skipped = json::array();
  for (const auto& row : rows) {
    skipped.push_back(row.skipped);
  }
  json report = {
    {"bigM", cfg.big_m},
    {"bn_check", scan_to_json(bn)},
    {"lemma11_check", scan_to_json(lemma)},
    {"skipped_samples", skipped},
  };
  auto out = open_out(out_dir, "exceptional_sets.json");
  out << report.dump(2) << '\n';
  log << "residuals: " << rows.size() << " radii, bn log-measure " << fmt17(bn.log_measure)
      << ", lemma log-measure " << fmt17(lemma.log_measure) << '\n';
  return kExitOk;
}

int cmd_cover(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log)
{
  const PointMeasure mu = resolve_measure(cfg);
  json reports = json::array();
  for (std::size_t i = 0; i < cfg.cover.radii.size(); ++i) {
    const double r = cfg.cover.radii[i];
    const double delta = delta_of_r(mu, cfg.delta_exp, r);
    double beta = 0.0;
    try {
      beta = cfg.cover.beta_override ? *cfg.cover.beta_override
                                     : beta_schedule(mu, cfg.delta_exp, r, cfg.envelope).beta;
    } catch (const DomainError& e) {
      reports.push_back({{"annulus", {r, r + delta}}, {"error", e.what()}});
      continue;
    }
    const CoverReport rep = build_cover(mu, beta, delta, r, delta, cfg.cover.grid, cfg.cover.seed + i);
    const RadiiSumCheck check = radii_sum_check(rep, mu, cfg.delta_exp, cfg.big_m, r);
    reports.push_back(cover_to_json(rep, check));
    auto csv = open_out(out_dir, "cover_disks_" + std::to_string(i) + ".csv");
    write_disks_csv(csv, rep.disks_selected);
    log << "cover: r=" << fmt17(r) << " heavy=" << rep.heavy_samples_total
        << " selected=" << rep.disks_selected.size() << " multiplicity=" << rep.multiplicity_measured << '\n';
  }
  auto out = open_out(out_dir, "cover.json");
  out << json{{"reports", reports}}.dump(2) << '\n';
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log)
{
  const VerifyReport rep = run_verify(cfg, resolve_measure(cfg));
  for (const auto& c : rep.checks) {
    log << (c.pass ? "PASS " : "FAIL ") << c.name << "  " << c.detail << '\n';
  }
  auto out = open_out(out_dir, "verify.json");
  out << verify_to_json(rep).dump(2) << '\n';
  log << "verify: " << (rep.all_pass() ? "all checks passed" : "invariant failure") << '\n';
  return rep.all_pass() ? kExitOk : kExitInvariantFailure;
}

int run_command(const std::string& name, const RunConfig& cfg, const fs::path& out_dir, std::ostream& log)
{
  try {
    if (name == "generate") {
      return cmd_generate(cfg, out_dir, log);
    }
    if (name == "decompose") {
      return cmd_decompose(cfg, out_dir, log);
    }
    if (name == "residuals") {
      return cmd_residuals(cfg, out_dir, log);
    }
    if (name == "cover") {
      return cmd_cover(cfg, out_dir, log);
    }
    if (name == "verify") {
      return cmd_verify(cfg, out_dir, log);
    }
    log << "unknown command '" << name << "'\n";
    return kExitConfigError;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
  } catch (const ContractError& e) {
    log << "input error: " << e.what() << '\n';
  } catch (const DomainError& e) {
    log << "domain error: " << e.what() << '\n';
  }
  return kExitConfigError;
}

} // namespace riesz::app
