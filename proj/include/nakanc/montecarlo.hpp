#pragma once

// Monte-Carlo validators for the outage analysis.
//
//  * mc_event_outage: samples each link SNR and evaluates the literal
//    outage event. Exact for the event probability (no union-as-sum).
//  * mc_snr_outage: counts draws whose end-to-end equivalent SNR falls
//    below 2^R_t - 1.
//  * mc_ber: symbol-level chain with BPSK, XOR network coding at R1,
//    amplify-and-forward at R2 and XOR decoding at D1.
//
// Work is split into fixed-size chunks; chunk c draws from its own stream
// derive_seed(seed, c). Results are therefore bit-identical for any worker
// count and for Execution::serial, which runs the same chunks in order on
// the calling thread and is kept as the reference path.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>

#include "nakanc/analytic.hpp"
#include "nakanc/fading.hpp"
#include "nakanc/rng.hpp"

namespace nakanc {

/// Links of the two-pair network involved in S1 -> D1.
enum class Link : std::size_t { s1r1, s2r1, r1r2, r2d1, s2d1 };
inline constexpr std::size_t kLinkCount = 5;
inline constexpr std::array<Link, kLinkCount> kAllLinks = {Link::s1r1, Link::s2r1, Link::r1r2,
                                                           Link::r2d1, Link::s2d1};

enum class Node : std::size_t { s1, s2, r1, r2 };

Node transmitter(Link l) noexcept;
const char* link_name(Link l) noexcept;

/// Transmit powers, receiver noise variances and channel statistics.
/// channel[l].mu is E|h_l|^2; the link mean SNR is P_tx * mu / noise_var.
/// Zero powers and zero noise variances are accepted so the degenerate
/// (silent / noiseless) regimes can be simulated.
struct LinkBudget {
  std::array<double, 4> tx_power{1.0, 1.0, 1.0, 1.0};
  std::array<double, kLinkCount> noise_var{1.0, 1.0, 1.0, 1.0, 1.0};
  std::array<NakagamiParams, kLinkCount> channel{
      {{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}}};

  double power(Node n) const { return tx_power[static_cast<std::size_t>(n)]; }
  double power_of(Link l) const { return power(transmitter(l)); }
  double noise(Link l) const { return noise_var[static_cast<std::size_t>(l)]; }
  const NakagamiParams& params(Link l) const { return channel[static_cast<std::size_t>(l)]; }

  double mean_snr(Link l) const;
  LinkFading fading(Link l) const { return {params(l).m, mean_snr(l)}; }
  TwoPairLinks links() const;

  /// P = 1, unit mean channel power, noise 1/mean_snr on every link.
  static LinkBudget uniform(double m, double mean_snr);

  /// Equal power and noise everywhere; E|h|^2 chosen so each link has the
  /// requested mean SNR.
  static LinkBudget from_links(const TwoPairLinks& links, double tx_power, double noise_var);

  void validate() const;

  /// Throws ConfigError when a link's mean SNR differs from links by more
  /// than rel_tol (relative).
  void check_consistent(const TwoPairLinks& links, double rel_tol = 1e-9) const;
};

/// One joint realization of the five fading coefficients and noises.
struct ChannelDraw {
  std::array<std::complex<double>, kLinkCount> h{};
  std::array<std::complex<double>, kLinkCount> n{};

  std::complex<double> coeff(Link l) const { return h[static_cast<std::size_t>(l)]; }
  double gain(Link l) const { return std::norm(coeff(l)); }
};

enum class PhaseMode { uniform, zero };
enum class SnrMode { independent_links, shared_h };
enum class FadingGranularity { per_symbol, per_block };
enum class Execution { parallel, serial };

/// Draws h for every link. Phases are always drawn so the amplitude stream
/// is the same in both PhaseModes.
void draw_fading(const LinkBudget& b, SnrMode mode, PhaseMode phase, RandomStream& rng,
                 ChannelDraw& draw);

/// Draws n_l ~ CN(0, noise_var_l) for every link.
void draw_noise(const LinkBudget& b, RandomStream& rng, ChannelDraw& draw);

/// Binomial proportion estimate.
struct BinomialEstimate {
  double p_hat = 0.0;
  std::uint64_t events = 0;
  std::uint64_t trials = 0;
  double std_err = 0.0;

  static BinomialEstimate from_counts(std::uint64_t events, std::uint64_t trials);

  /// One-sided 95% upper bound when no event was observed (3 / trials).
  double zero_event_bound() const { return 3.0 / static_cast<double>(trials); }
};

using OutageEstimate = BinomialEstimate;
using BerEstimate = BinomialEstimate;

struct RunOptions {
  std::uint64_t seed = 1;
  int workers = 0;  // <= 0: OpenMP default
  Execution execution = Execution::parallel;
};

inline constexpr std::uint64_t kTrialsPerChunk = 8192;

namespace montecarlo {

OutageEstimate mc_event_outage(const TwoPairLinks& links, const RateTarget& r,
                               std::uint64_t trials, const RunOptions& run);
OutageEstimate mc_event_outage(const ExtendedTopology& t, const RateTarget& r,
                               std::uint64_t trials, const RunOptions& run);

/// End-to-end equivalent SNR of S1 -> D1 on one draw:
///   num = P_S2|h_S2D1|^2 + P_R1 P_R2 |h_R1R2|^2 |h_R2D1|^2 (P_S1|h_S1R1|^2 + P_S2|h_S2R1|^2)
///   den = s_S2D1 + s_R2D1 + P_R2|h_R2D1|^2 s_R1R2
///         + P_R1 P_R2 |h_R1R2|^2 |h_R2D1|^2 (s_S1R1 + s_S2R1)
/// with s the noise variances. Noise terms enter without the AF gain.
double equivalent_snr(const ChannelDraw& draw, const LinkBudget& b);

/// The same quantity when every link shares one coefficient h, equal
/// power P and noise N0:  P|h|^2 (1 + 2P^2|h|^4) / (N0 (2 + P|h|^2 + 2P^2|h|^4)).
double equivalent_snr_shared(double gain, double power, double noise_var);

OutageEstimate mc_snr_outage(const LinkBudget& b, const RateTarget& r, std::uint64_t trials,
                             const RunOptions& run, SnrMode mode = SnrMode::independent_links,
                             PhaseMode phase = PhaseMode::uniform);

/// AF gain at R2: sqrt(P_R2 / (P_R1 |h_R1R2|^2 + noise_var_R1R2)).
double af_gain(const LinkBudget& b, std::complex<double> h_r1r2);

struct BerOptions {
  std::uint64_t symbols_per_block = 10000;
  std::uint64_t blocks = 1000;
  FadingGranularity granularity = FadingGranularity::per_symbol;
};

BerEstimate mc_ber(const LinkBudget& b, const BerOptions& opts, const RunOptions& run);

}  // namespace montecarlo
}  // namespace nakanc
