#pragma once

namespace abssep {

// Numerical tolerances shared across modules. Every API that depends on one of
// these accepts a Tolerances argument defaulting to these values.
struct Tolerances {
  double positivity = 1e-12;   // eigenvalues in [-positivity, 0) are clamped to 0
  double trace = 1e-9;         // |sum - 1| allowed before renormalization
  double hermitian = 1e-10;    // max |A - A^dagger| entry
  double slack = 1e-12;        // |slack| below this is reported as exactly 0
  double projection = 1e-10;   // membership slack accepted for projected parts
  double negative = 1e-10;     // partial-transpose eigenvalue below -negative is NPT
  double fd_step = 1e-6;       // central finite-difference step
  double fd_margin = 1e-7;     // Schur-condition violation threshold
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace abssep
