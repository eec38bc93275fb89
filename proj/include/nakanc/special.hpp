#pragma once

// Log-gamma and regularized incomplete gamma functions.
//
// All functions are pure and thread-safe. Invalid arguments throw
// nakanc::DomainError.

namespace nakanc::special {

/// Validated (shape, lower limit) pair for the incomplete gamma functions.
struct GammaArgs {
  double a;
  double x;

  /// Throws DomainError unless a > 0, x >= 0 and both are finite.
  static GammaArgs checked(double a, double x);
};

/// ln Γ(a) for a > 0. Relative error below 1e-13 on [0.5, 50], including
/// near the zeros at a = 1 and a = 2.
double log_gamma(double a);

/// Q(a, x) = Γ_inc(a, x) / Γ(a), the regularized upper incomplete gamma.
/// Results that would fall below DBL_MIN are returned as exactly 0.
double reg_upper_gamma(double a, double x);

/// P(a, x) = 1 - Q(a, x), evaluated directly so that tiny values keep full
/// relative precision (no 1 - Q cancellation).
double reg_lower_gamma(double a, double x);

}  // namespace nakanc::special
