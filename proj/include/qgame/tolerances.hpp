#pragma once

namespace qgame {

// Numerical tolerances shared by every module. Exact arithmetic identities
// are checked against these in floating point.
struct Tolerances {
  // |x|^2 + |y|^2 = 1 for qubit states, sum |amp_k|^2 = 1 for two-qubit states.
  double normalization = 1e-12;
  // Max entrywise |(U^dagger U - I)_jk|.
  double unitarity = 1e-10;
  // Gram-Schmidt seeds whose projected residual is shorter than this are skipped.
  double dependent_residual = 1e-8;
  // Slack for equilibrium deviation checks (amplitude moduli).
  double equilibrium = 1e-9;
  // Response coefficients below this are treated as zero by the region forms.
  double degenerate_coefficient = 1e-10;
  // Payoff-vector proximity used to de-duplicate search results.
  double payoff_dedup = 1e-6;
  // Slack for the case inequalities and region membership checks.
  double inequality = 1e-12;
  // Hand-typed amplitudes off by at most this much are renormalized.
  double input_renormalize = 1e-6;
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace qgame
