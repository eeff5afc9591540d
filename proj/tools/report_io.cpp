#include "report_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace riesz::app {

using nlohmann::json;

std::string fmt17(double x)
{
  if (std::isnan(x)) {
    return "nan";
  }
  if (std::isinf(x)) {
    return x > 0 ? "inf" : "-inf";
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

// JSON has no infinities; those become strings.
json num(double x)
{
  if (std::isfinite(x)) {
    return x;
  }
  return fmt17(x);
}

} // namespace

void write_decompose_row(std::ostream& out, const DecompositionReport& rep)
{
  const double cols[] = {rep.z.real(), rep.z.imag(), rep.r,  rep.delta, rep.big_r, rep.v1,
                         rep.v2,       rep.v3,       rep.v4, rep.v5,    rep.v_sum, rep.v_direct,
                         rep.region_mass[0], rep.region_mass[1], rep.region_mass[2], rep.region_mass[3],
                         rep.v2_frozen};
  for (double c : cols) {
    out << fmt17(c) << ',';
  }
  out << "ok\n";
}

void write_decompose_failure(std::ostream& out, Point z, const std::string& status)
{
  out << fmt17(z.real()) << ',' << fmt17(z.imag()) << ',' << fmt17(std::abs(z));
  for (int i = 0; i < 14; ++i) {
    out << ",nan";
  }
  out << ',' << status << '\n';
}

void write_residual_row(std::ostream& out, const ResidualRow& row)
{
  out << fmt17(row.r) << ',' << fmt17(row.n_r) << ',' << fmt17(row.N_r) << ',' << fmt17(row.delta) << ','
      << fmt17(row.B_r) << ',' << fmt17(row.T_r) << ',' << fmt17(row.I_mean) << ',' << fmt17(row.I_min) << ','
      << fmt17(row.v_mean) << ',' << fmt17(row.resid_max) << ',' << fmt17(row.ratio1) << ','
      << (row.bn_ok ? 1 : 0) << ',' << (row.lemma_ok ? 1 : 0) << '\n';
}

void write_disks_csv(std::ostream& out, std::span<const CoverDisk> disks)
{
  out << kDiskHeader << '\n';
  for (const auto& d : disks) {
    out << fmt17(d.center.real()) << ',' << fmt17(d.center.imag()) << ',' << fmt17(d.radius) << ','
        << fmt17(d.witness_mass) << '\n';
  }
}

json scan_to_json(const ExceptionalScan& scan)
{
  json intervals = json::array();
  for (const auto& iv : scan.violations.intervals()) {
    intervals.push_back({iv.a, iv.b});
  }
  json flags = json::array();
  for (bool ok : scan.ok) {
    flags.push_back(ok);
  }
  return {{"radii", scan.radii}, {"ok", flags}, {"intervals", intervals}, {"log_measure", scan.log_measure}};
}

json cover_to_json(const CoverReport& rep, const RadiiSumCheck& check)
{
  json disks = json::array();
  for (const auto& d : rep.disks_selected) {
    disks.push_back({{"center", {d.center.real(), d.center.imag()}},
                     {"radius", d.radius},
                     {"witness_mass", d.witness_mass}});
  }
  return {
    {"annulus", {rep.r, rep.big_r}},
    {"delta", rep.delta},
    {"beta", num(rep.beta)},
    {"s", rep.s},
    {"samples_total", rep.samples_total},
    {"heavy_samples_total", rep.heavy_samples_total},
    {"heavy_samples_covered", rep.heavy_samples_covered},
    {"disks_selected", disks},
    {"multiplicity_measured", rep.multiplicity_measured},
    {"radii_sum", rep.radii_sum},
    {"radii_sum_over_delta", rep.radii_sum_over_delta},
    {"witness_mass_sum", rep.witness_mass_sum},
    {"n_outer", rep.n_outer},
    {"witness_chain_ok", rep.witness_chain_ok},
    {"radii_sum_bound", num(check.bound)},
    {"radii_sum_bound_holds", check.holds},
    {"bn_ok", check.bn_ok},
  };
}

} // namespace riesz::app
