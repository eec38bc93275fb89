#include "nakanc/montecarlo.hpp"

#include <omp.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "nakanc/error.hpp"

namespace nakanc {

Node transmitter(Link l) noexcept {
  switch (l) {
    case Link::s1r1:
      return Node::s1;
    case Link::s2r1:
    case Link::s2d1:
      return Node::s2;
    case Link::r1r2:
      return Node::r1;
    case Link::r2d1:
      return Node::r2;
  }
  return Node::s1;
}

const char* link_name(Link l) noexcept {
  switch (l) {
    case Link::s1r1:
      return "S1->R1";
    case Link::s2r1:
      return "S2->R1";
    case Link::r1r2:
      return "R1->R2";
    case Link::r2d1:
      return "R2->D1";
    case Link::s2d1:
      return "S2->D1";
  }
  return "?";
}

double LinkBudget::mean_snr(Link l) const { return power_of(l) * params(l).mu / noise(l); }

TwoPairLinks LinkBudget::links() const {
  return {fading(Link::s1r1), fading(Link::s2r1), fading(Link::r1r2), fading(Link::r2d1),
          fading(Link::s2d1)};
}

LinkBudget LinkBudget::uniform(double m, double mean_snr) {
  detail::require(std::isfinite(mean_snr) && mean_snr > 0.0, "LinkBudget: mean SNR must be > 0");
  LinkBudget b;
  b.noise_var.fill(1.0 / mean_snr);
  b.channel.fill({m, 1.0});
  b.validate();
  return b;
}

LinkBudget LinkBudget::from_links(const TwoPairLinks& links, double tx_power, double noise_var) {
  links.validate();
  detail::require(tx_power > 0.0 && noise_var > 0.0,
                  "LinkBudget::from_links: power and noise variance must be > 0");
  LinkBudget b;
  b.tx_power.fill(tx_power);
  b.noise_var.fill(noise_var);
  const std::array<LinkFading, kLinkCount> f = {links.s1r1, links.s2r1, links.r1r2, links.r2d1,
                                                links.s2d1};
  for (std::size_t i = 0; i < kLinkCount; ++i)
    b.channel[i] = {f[i].m, f[i].mean_snr * noise_var / tx_power};
  b.check_consistent(links);
  return b;
}

void LinkBudget::validate() const {
  for (double p : tx_power)
    detail::require(std::isfinite(p) && p >= 0.0, "LinkBudget: transmit powers must be >= 0");
  for (double s : noise_var)
    detail::require(std::isfinite(s) && s >= 0.0, "LinkBudget: noise variances must be >= 0");
  for (const auto& c : channel) c.validate();
}

void LinkBudget::check_consistent(const TwoPairLinks& links, double rel_tol) const {
  const std::array<LinkFading, kLinkCount> f = {links.s1r1, links.s2r1, links.r1r2, links.r2d1,
                                                links.s2d1};
  for (std::size_t i = 0; i < kLinkCount; ++i) {
    const auto l = kAllLinks[i];
    const double snr = mean_snr(l);
    if (std::abs(snr - f[i].mean_snr) > rel_tol * f[i].mean_snr || params(l).m != f[i].m)
      throw ConfigError(std::string("LinkBudget inconsistent with link fading on ") + link_name(l));
  }
}

BinomialEstimate BinomialEstimate::from_counts(std::uint64_t events, std::uint64_t trials) {
  detail::require(trials >= 1, "estimate needs at least one trial");
  detail::require(events <= trials, "estimate: events exceed trials");
  BinomialEstimate e;
  e.events = events;
  e.trials = trials;
  e.p_hat = static_cast<double>(events) / static_cast<double>(trials);
  e.std_err = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(trials));
  return e;
}

void draw_fading(const LinkBudget& b, SnrMode mode, PhaseMode phase, RandomStream& rng,
                 ChannelDraw& draw) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double shared = 0.0;
  if (mode == SnrMode::shared_h) {
    shared = fading::sample_unit_gamma(b.channel[0].m, rng) / b.channel[0].m;
  }
  double shared_phase = 0.0;
  if (mode == SnrMode::shared_h) shared_phase = kTwoPi * rng.uniform();

  for (std::size_t i = 0; i < kLinkCount; ++i) {
    const auto& c = b.channel[i];
    const double unit = mode == SnrMode::shared_h ? shared : fading::sample_unit_gamma(c.m, rng) / c.m;
    double angle = mode == SnrMode::shared_h ? shared_phase : kTwoPi * rng.uniform();
    if (phase == PhaseMode::zero) angle = 0.0;
    draw.h[i] = std::polar(std::sqrt(unit * c.mu), angle);
  }
}

void draw_noise(const LinkBudget& b, RandomStream& rng, ChannelDraw& draw) {
  for (std::size_t i = 0; i < kLinkCount; ++i) {
    const double sd = std::sqrt(0.5 * b.noise_var[i]);
    const double re = rng.normal();
    const double im = rng.normal();
    draw.n[i] = {sd * re, sd * im};
  }
}

namespace montecarlo {
namespace {

int worker_count(const RunOptions& run) {
  return run.workers > 0 ? run.workers : omp_get_max_threads();
}

// Runs fn(rng, begin, end) over [0, items) in chunks of per_chunk items.
// Chunk c uses stream derive_seed(seed, c); partial sums are reduced in
// chunk order.
template <typename ChunkFn>
std::uint64_t run_chunks(std::uint64_t items, std::uint64_t per_chunk, const RunOptions& run,
                         const ChunkFn& fn) {
  const std::uint64_t chunks = (items + per_chunk - 1) / per_chunk;
  std::vector<std::uint64_t> partial(chunks, 0);
  auto body = [&](std::uint64_t c) {
    RandomStream rng(derive_seed(run.seed, c));
    const std::uint64_t begin = c * per_chunk;
    const std::uint64_t end = std::min(items, begin + per_chunk);
    partial[c] = fn(rng, begin, end);
  };

  if (run.execution == Execution::serial) {
    for (std::uint64_t c = 0; c < chunks; ++c) body(c);
  } else {
    const auto n = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(dynamic) num_threads(worker_count(run))
    for (std::int64_t c = 0; c < n; ++c) body(static_cast<std::uint64_t>(c));
  }
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

void check_trials(std::uint64_t trials) {
  detail::require(trials >= 1, "Monte-Carlo run needs at least one trial");
}

// Per-link sampling data in ExtendedTopology canonical order.
struct EventLayout {
  int n_pairs;
  int m_relays;
  std::vector<double> shape;
  std::vector<double> scale;
};

EventLayout layout_of(const ExtendedTopology& t) {
  EventLayout lay{t.n_pairs(), t.m_relays(), {}, {}};
  for (const auto& id : t.required_links()) {
    const auto& l = t.at(id);
    lay.shape.push_back(l.m);
    lay.scale.push_back(l.mean_snr / l.m);
  }
  return lay;
}

}  // namespace

OutageEstimate mc_event_outage(const TwoPairLinks& links, const RateTarget& r,
                               std::uint64_t trials, const RunOptions& run) {
  return mc_event_outage(ExtendedTopology::from_two_pair(links), r, trials, run);
}

OutageEstimate mc_event_outage(const ExtendedTopology& t, const RateTarget& r,
                               std::uint64_t trials, const RunOptions& run) {
  t.validate();
  check_trials(trials);
  const double gth = analytic::snr_threshold(r);
  const EventLayout lay = layout_of(t);
  const std::size_t n = static_cast<std::size_t>(lay.n_pairs);
  const std::size_t chain = static_cast<std::size_t>(lay.m_relays - 1);
  const std::size_t links = lay.shape.size();

  const auto hits = run_chunks(trials, kTrialsPerChunk, run,
                               [&](RandomStream& rng, std::uint64_t begin, std::uint64_t end) {
    std::vector<char> down(links);
    std::uint64_t count = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      for (std::size_t k = 0; k < links; ++k)
        down[k] = fading::sample_unit_gamma(lay.shape[k], rng) * lay.scale[k] < gth;

      // Layout: [S_k->R1 (n)] [R_j->R_j+1 (chain)] [R_M->D1] [S_i->D1 (n-1)]
      bool sources_lost = true;
      for (std::size_t k = 0; k < n; ++k) sources_lost = sources_lost && down[k];
      bool relayed_down = sources_lost || down[n + chain];
      for (std::size_t j = 0; j < chain; ++j) relayed_down = relayed_down || down[n + j];
      bool side_down = true;
      for (std::size_t s = n + chain + 1; s < links; ++s) side_down = side_down && down[s];
      count += (side_down && relayed_down) ? 1 : 0;
    }
    return count;
  });
  return OutageEstimate::from_counts(hits, trials);
}

double equivalent_snr(const ChannelDraw& draw, const LinkBudget& b) {
  const double p_s1 = b.power(Node::s1);
  const double p_s2 = b.power(Node::s2);
  const double p_r1 = b.power(Node::r1);
  const double p_r2 = b.power(Node::r2);
  const double relay = p_r1 * p_r2 * draw.gain(Link::r1r2) * draw.gain(Link::r2d1);
  const double num = p_s2 * draw.gain(Link::s2d1) +
                     relay * (p_s1 * draw.gain(Link::s1r1) + p_s2 * draw.gain(Link::s2r1));
  const double den = b.noise(Link::s2d1) + b.noise(Link::r2d1) +
                     p_r2 * draw.gain(Link::r2d1) * b.noise(Link::r1r2) +
                     relay * (b.noise(Link::s1r1) + b.noise(Link::s2r1));
  if (num == 0.0) return 0.0;
  return num / den;
}

double equivalent_snr_shared(double gain, double power, double noise_var) {
  const double pg = power * gain;
  const double pg2 = pg * pg;
  return pg * (1.0 + 2.0 * pg2) / (noise_var * (2.0 + pg + 2.0 * pg2));
}

OutageEstimate mc_snr_outage(const LinkBudget& b, const RateTarget& r, std::uint64_t trials,
                             const RunOptions& run, SnrMode mode, PhaseMode phase) {
  b.validate();
  check_trials(trials);
  if (mode == SnrMode::shared_h) {
    for (const auto& c : b.channel)
      if (c.m != b.channel[0].m)
        throw ConfigError("shared_h mode needs the same shape m on every link");
  }
  const double gth = analytic::snr_threshold(r);
  const auto hits = run_chunks(trials, kTrialsPerChunk, run,
                               [&](RandomStream& rng, std::uint64_t begin, std::uint64_t end) {
    ChannelDraw draw;
    std::uint64_t count = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      draw_fading(b, mode, phase, rng, draw);
      count += equivalent_snr(draw, b) < gth ? 1 : 0;
    }
    return count;
  });
  return OutageEstimate::from_counts(hits, trials);
}

double af_gain(const LinkBudget& b, std::complex<double> h_r1r2) {
  return std::sqrt(b.power(Node::r2) /
                   (b.power(Node::r1) * std::norm(h_r1r2) + b.noise(Link::r1r2)));
}

namespace {

// Coherent BPSK decision: bit 0 <-> +1, bit 1 <-> -1.
bool decide(std::complex<double> y, std::complex<double> h) {
  return (y * std::conj(h)).real() < 0.0;
}

double bpsk(bool bit) { return bit ? -1.0 : 1.0; }

// One symbol through the chain; returns true on a bit error at D1.
bool transmit_symbol(const LinkBudget& b, const ChannelDraw& d, RandomStream& rng) {
  const bool m1 = rng.bit();
  const bool m2 = rng.bit();
  const double x1 = bpsk(m1);
  const double x2 = bpsk(m2);

  const auto h = [&](Link l) { return d.h[static_cast<std::size_t>(l)]; };
  const auto n = [&](Link l) { return d.n[static_cast<std::size_t>(l)]; };

  // R1 decodes both sources, XORs, re-modulates.
  const auto y_s1r1 = std::sqrt(b.power(Node::s1)) * h(Link::s1r1) * x1 + n(Link::s1r1);
  const auto y_s2r1 = std::sqrt(b.power(Node::s2)) * h(Link::s2r1) * x2 + n(Link::s2r1);
  const bool coded = decide(y_s1r1, h(Link::s1r1)) != decide(y_s2r1, h(Link::s2r1));

  // R2 amplifies what it hears from R1 and forwards it to D1.
  const auto y_r1r2 = std::sqrt(b.power(Node::r1)) * h(Link::r1r2) * bpsk(coded) + n(Link::r1r2);
  const double beta = af_gain(b, h(Link::r1r2));
  const auto y_r2d1 = h(Link::r2d1) * beta * y_r1r2 + n(Link::r2d1);
  // Positive real scalings (beta, sqrt P) do not change the decision.
  const bool coded_at_d1 = decide(y_r2d1, h(Link::r2d1) * h(Link::r1r2));

  const auto y_s2d1 = std::sqrt(b.power(Node::s2)) * h(Link::s2d1) * x2 + n(Link::s2d1);
  const bool side_at_d1 = decide(y_s2d1, h(Link::s2d1));

  return (coded_at_d1 != side_at_d1) != m1;
}

}  // namespace

BerEstimate mc_ber(const LinkBudget& b, const BerOptions& opts, const RunOptions& run) {
  b.validate();
  detail::require(opts.symbols_per_block >= 1, "mc_ber: symbols_per_block must be >= 1");
  detail::require(opts.blocks >= 1, "mc_ber: blocks must be >= 1");
  const bool per_symbol = opts.granularity == FadingGranularity::per_symbol;

  const auto errors = run_chunks(opts.blocks, 1, run,
                                 [&](RandomStream& rng, std::uint64_t, std::uint64_t) {
    ChannelDraw draw;
    if (!per_symbol) draw_fading(b, SnrMode::independent_links, PhaseMode::uniform, rng, draw);
    std::uint64_t count = 0;
    for (std::uint64_t s = 0; s < opts.symbols_per_block; ++s) {
      if (per_symbol) draw_fading(b, SnrMode::independent_links, PhaseMode::uniform, rng, draw);
      draw_noise(b, rng, draw);
      count += transmit_symbol(b, draw, rng) ? 1 : 0;
    }
    return count;
  });
  return BerEstimate::from_counts(errors, opts.blocks * opts.symbols_per_block);
}

}  // namespace montecarlo
}  // namespace nakanc
