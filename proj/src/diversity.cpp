#include "nakanc/diversity.hpp"

#include <cmath>
#include <string>

#include "nakanc/error.hpp"

namespace nakanc::diversity {

SlopeFit estimate_diversity(std::span<const CurvePoint> curve, DbWindow window_db) {
  detail::require(window_db.hi > window_db.lo, "estimate_diversity: window needs hi > lo");
  constexpr double kSlack = 1e-9;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::vector<std::pair<double, double>> xy;
  for (const auto& pt : curve) {
    detail::require(pt.snr > 0.0, "estimate_diversity: SNR must be > 0");
    const double db = 10.0 * std::log10(pt.snr);
    if (db < window_db.lo - kSlack || db > window_db.hi + kSlack) continue;
    detail::require(pt.p_out > 0.0, [&] {
      return "estimate_diversity: p_out <= 0 at " + std::to_string(db) + " dB";
    });
    const double x = std::log10(pt.snr);
    const double y = std::log10(pt.p_out);
    xy.emplace_back(x, y);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const auto n = static_cast<double>(xy.size());
  detail::require(xy.size() >= 3, [&] {
    return "estimate_diversity: need at least 3 points in the window, got " + std::to_string(xy.size());
  });
  const double sxx_c = sxx - sx * sx / n;
  const double slope = (sxy - sx * sy / n) / sxx_c;
  const double intercept = (sy - slope * sx) / n;
  double residual = 0.0;
  for (const auto& [x, y] : xy) {
    const double e = y - (intercept + slope * x);
    residual += e * e;
  }
  return {-slope, window_db, residual, static_cast<int>(xy.size())};
}

PredictedDiversity predicted_diversity(int n_pairs, double m) {
  detail::require(n_pairs >= 2, "predicted_diversity: N must be >= 2");
  detail::require(std::isfinite(m) && m >= 0.5, "predicted_diversity: m must be >= 0.5");
  return {n_pairs * m, m == std::floor(m)};
}

std::vector<CurvePoint> analytic_curve(int n_pairs, int m_relays, double m, const RateTarget& r,
                                       DbWindow range_db, double step_db, UnionMode mode) {
  detail::require(step_db > 0.0, "analytic_curve: step must be > 0");
  std::vector<CurvePoint> out;
  const auto steps = static_cast<int>(std::floor((range_db.hi - range_db.lo) / step_db + 1e-9));
  for (int i = 0; i <= steps; ++i) {
    const double snr = std::pow(10.0, (range_db.lo + i * step_db) / 10.0);
    double p;
    if (mode == UnionMode::paper_sum) {
      p = analytic::outage_extended_iid(n_pairs, m_relays, m, snr, r);
    } else {
      p = analytic::outage_generalized(
          ExtendedTopology::uniform(n_pairs, m_relays, {m, snr}), r, mode);
    }
    out.push_back({snr, p});
  }
  return out;
}

}  // namespace nakanc::diversity
