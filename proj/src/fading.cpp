#include "nakanc/fading.hpp"

#include <cmath>
#include <string>

#include "nakanc/error.hpp"
#include "nakanc/special.hpp"

namespace nakanc {

void NakagamiParams::validate() const {
  detail::require(std::isfinite(m) && m >= 0.5, [&] {
    return "Nakagami shape m must be finite and >= 0.5, got " + std::to_string(m);
  });
  detail::require(std::isfinite(mu) && mu > 0.0, [&] {
    return "Nakagami mean power mu must be finite and > 0, got " + std::to_string(mu);
  });
}

void LinkFading::validate() const {
  detail::require(std::isfinite(m) && m >= 0.5, [&] {
    return "link shape m must be finite and >= 0.5, got " + std::to_string(m);
  });
  detail::require(std::isfinite(mean_snr) && mean_snr > 0.0, [&] {
    return "link mean SNR must be finite and > 0, got " + std::to_string(mean_snr);
  });
}

namespace fading {

double amplitude_pdf(const NakagamiParams& p, double x) {
  p.validate();
  detail::require(std::isfinite(x) && x >= 0.0, "amplitude_pdf: x must be >= 0");
  if (x == 0.0) return p.m == 0.5 ? std::sqrt(2.0 / (M_PI * p.mu)) : 0.0;
  const double log_f = std::log(2.0) + p.m * std::log(p.m / p.mu) + (2.0 * p.m - 1.0) * std::log(x) -
                       p.m * x * x / p.mu - special::log_gamma(p.m);
  return std::exp(log_f);
}

double snr_pdf(const LinkFading& l, double g) {
  l.validate();
  detail::require(std::isfinite(g) && g >= 0.0, "snr_pdf: g must be >= 0");
  const double rate = l.m / l.mean_snr;
  if (g == 0.0) {
    if (l.m == 1.0) return rate;
    return l.m < 1.0 ? INFINITY : 0.0;
  }
  const double log_f =
      l.m * std::log(rate) + (l.m - 1.0) * std::log(g) - rate * g - special::log_gamma(l.m);
  return std::exp(log_f);
}

double snr_cdf(const LinkFading& l, double g) {
  l.validate();
  detail::require(std::isfinite(g) && g >= 0.0, "snr_cdf: g must be >= 0");
  return special::reg_lower_gamma(l.m, l.m * g / l.mean_snr);
}

double sample_unit_gamma(double shape, RandomStream& rng) {
  if (shape < 1.0) {
    const double u = rng.uniform();
    return sample_unit_gamma(shape + 1.0, rng) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double sample_amplitude(const NakagamiParams& p, RandomStream& rng) {
  p.validate();
  return std::sqrt(sample_unit_gamma(p.m, rng) * p.mu / p.m);
}

double rician_to_nakagami(double k) {
  detail::require(std::isfinite(k) && k >= 0.0, [&] {
    return "rician_to_nakagami: K must be finite and >= 0, got " + std::to_string(k);
  });
  return (k + 1.0) * (k + 1.0) / (2.0 * k + 1.0);
}

}  // namespace fading
}  // namespace nakanc
