#pragma once

#include <riesz/canonical_product.hpp>
#include <riesz/concentration.hpp>
#include <riesz/lightpoints.hpp>

#include <json.hpp>

#include <iosfwd>
#include <span>
#include <string>

namespace riesz::app {

/// 17 significant digits; "inf", "-inf" and "nan" spelled out.
[[nodiscard]] std::string fmt17(double x);

inline constexpr const char* kDecomposeHeader =
  "z_re,z_im,r,delta,bigR,v1,v2,v3,v4,v5,v_sum,v_direct,mass_A1,mass_A3,mass_A4,mass_A5,v2_frozen,status";
inline constexpr const char* kResidualHeader =
  "r,n_r,N_r,delta,B_r,T_r,I_mean,I_min,v_mean,resid_max,ratio1,bn_ok,lemma_ok";
inline constexpr const char* kDiskHeader = "center_re,center_im,radius,witness_mass";

void write_decompose_row(std::ostream& out, const DecompositionReport& rep);
/// Row for a point whose decomposition was rejected; the status column
/// carries the reason and the numeric columns are nan.
void write_decompose_failure(std::ostream& out, Point z, const std::string& status);

void write_residual_row(std::ostream& out, const ResidualRow& row);

void write_disks_csv(std::ostream& out, std::span<const CoverDisk> disks);

[[nodiscard]] nlohmann::json scan_to_json(const ExceptionalScan& scan);
[[nodiscard]] nlohmann::json cover_to_json(const CoverReport& rep, const RadiiSumCheck& check);

} // namespace riesz::app
