#pragma once

#include <span>
#include <vector>

#include "nakanc/analytic.hpp"

namespace nakanc {

/// One point of an outage curve; snr is linear.
struct CurvePoint {
  double snr;
  double p_out;
};

struct DbWindow {
  double lo;
  double hi;
};

/// Least-squares fit of log10(p_out) against log10(snr) inside a window.
struct SlopeFit {
  double d_hat;       // negated slope
  DbWindow snr_window_db;
  double residual;    // sum of squared residuals of the log-log fit
  int points;
};

struct PredictedDiversity {
  double d;
  bool validated;  // false for non-integer m
};

namespace diversity {

/// Throws DomainError when fewer than 3 points fall inside the window, when
/// any p_out in the window is <= 0, or when the window is empty (hi <= lo).
SlopeFit estimate_diversity(std::span<const CurvePoint> curve, DbWindow window_db);

/// d = N m.
PredictedDiversity predicted_diversity(int n_pairs, double m);

/// Samples p^N (M + p^(N-1)) on an inclusive dB grid.
std::vector<CurvePoint> analytic_curve(int n_pairs, int m_relays, double m, const RateTarget& r,
                                       DbWindow range_db, double step_db,
                                       UnionMode mode = UnionMode::paper_sum);

}  // namespace diversity
}  // namespace nakanc
