#pragma once

#include <string_view>

namespace entsort {

/// Numerical thresholds shared by every module.
///
/// The defaults are the calibrated values; the CLI may override them through
/// the ENTSORT_TOLERANCE environment variable (see parse_tolerances).
struct Tolerances {
  double ortho = 1e-10;  // HS-orthonormality, unitarity, hermiticity checks
  double recon = 1e-9;   // reconstruction / eigen-residual checks, trace checks
  double drop = 1e-12;   // Gram-Schmidt residual below which a system is dependent
  double rank = 1e-10;   // singular values below rank * sigma_max count as zero
  double cross = 1e-9;   // margin above 1 for the cross-norm verdict
  double majorization = 1e-9;  // absolute slack on majorization partial sums
  double eigen_floor = 1e-12;  // eigenvalues at or below this are skipped in entropy
  double entropy_tie = 1e-12;  // entropies closer than this sort as equal
  double pure_norm = 1e-8;     // allowed |sum lambda^2 - 1| for pure Schmidt data
};

inline constexpr Tolerances kDefaultTolerances{};

/// Parses a comma separated list of `name=value` overrides on top of the
/// defaults, e.g. "rank=1e-8,majorization=1e-7". Unknown names and malformed
/// values throw std::invalid_argument.
Tolerances parse_tolerances(std::string_view overrides);

/// Reads ENTSORT_TOLERANCE; returns the defaults when the variable is unset.
Tolerances tolerances_from_env();

}  // namespace entsort
