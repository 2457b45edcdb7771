#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gsol/fraction.hpp"
#include "gsol/rod_diagram.hpp"

namespace gsol {

/// One `[rod]` section. Either `fraction` (rods laid end to end from 0) or
/// `start`/`end`, all as fractions of the period.
struct RodSpec {
  int line = 0;
  std::optional<std::size_t> family;  ///< 1-based
  std::optional<std::vector<std::int64_t>> structure;
  std::optional<Fraction> fraction;
  std::optional<Fraction> start;
  std::optional<Fraction> end;
  RodKind kind = RodKind::axis;
};

struct Tolerances {
  double sum = 1e-8;             ///< lapse identity sum u_i - 2 log rho - c
  double harmonic = 1e-5;        ///< finite-difference Laplacian at h = 1e-3
  double quadrature = 1e-10;     ///< per path segment
  double integrability = 1e-8;   ///< path gap and period defect of alpha
  double defect = 1e-6;          ///< angle defects and their spread
  double ricci = 1e-4;           ///< finite-difference Ricci at h = 1e-3
  double rank = 1e-8;            ///< relative singular value cut
  double flux = 1e-6;
  double lapse = 1e-10;
};

struct GridSpec {
  double rho_min = 0.1;  ///< in units of L
  double rho_max = 2.0;
  int rho_count = 20;
  double z_min = 0.0;
  double z_max = 1.0;
  int z_count = 20;
};

/// Parsed run configuration. Defaults:
///   truncation = 40, far_field = 10..100 (units of L) with 16 samples,
///   grid rho 0.1..2 x 20, z 0..1 x 20 (units of L), tolerances as above.
struct RunConfig {
  std::size_t n = 0;
  double period = 1.0;
  int truncation = 40;
  Tolerances tol;
  double far_min = 10.0;
  double far_max = 100.0;
  int far_samples = 16;
  GridSpec grid;
  std::string sample_path;
  std::string report_path;
  std::vector<RodSpec> rods;

  /// Diagram described by the rod sections. Semantic problems (coverage,
  /// structures) are left for validate().
  [[nodiscard]] RodDiagram diagram() const;
};

/// Strict parser for the line-oriented `key = value` format with repeated
/// `[rod]` sections and `#` comments. Throws InputError with the line number.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

}  // namespace gsol
