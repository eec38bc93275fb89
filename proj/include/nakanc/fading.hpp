#pragma once

#include "nakanc/rng.hpp"

namespace nakanc {

/// Nakagami-m amplitude distribution: shape m >= 1/2, mean square
/// amplitude mu = E[X^2] > 0.
struct NakagamiParams {
  double m;
  double mu;

  void validate() const;
};

/// Per-link fading: shape m_ij and mean SNR (linear) of the link.
struct LinkFading {
  double m;
  double mean_snr;

  void validate() const;
};

namespace fading {

/// Density of the Nakagami-m amplitude X at x >= 0.
double amplitude_pdf(const NakagamiParams& p, double x);

/// Density of the instantaneous SNR (Gamma with shape m, mean mean_snr).
double snr_pdf(const LinkFading& l, double g);

/// P(gamma < g) = P(m, m g / mean_snr), the regularized lower incomplete gamma.
double snr_cdf(const LinkFading& l, double g);

/// Gamma(shape, 1) variate by Marsaglia-Tsang squeeze/rejection; shapes
/// below one use the boost G(a) = G(a + 1) U^{1/a}.
double sample_unit_gamma(double shape, RandomStream& rng);

/// One Nakagami amplitude: X = sqrt(G), G ~ Gamma(shape m, scale mu / m).
double sample_amplitude(const NakagamiParams& p, RandomStream& rng);

/// Rician K-factor to Nakagami shape, m = (K + 1)^2 / (2K + 1).
double rician_to_nakagami(double k);

}  // namespace fading
}  // namespace nakanc
