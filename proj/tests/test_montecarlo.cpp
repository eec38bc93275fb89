#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "nakanc/analytic.hpp"
#include "nakanc/error.hpp"
#include "nakanc/montecarlo.hpp"

using namespace nakanc;
using namespace nakanc::montecarlo;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

double db(double v) { return std::pow(10.0, v / 10.0); }

RunOptions serial(std::uint64_t seed) { return {seed, 1, Execution::serial}; }

ChannelDraw unit_draw(double amplitude) {
  ChannelDraw d;
  d.h.fill({amplitude, 0.0});
  return d;
}

// Outage of the shared-coefficient equivalent SNR. The SNR is increasing in
// the common gain g, so the event is g < g*, with g* found by bisection and
// the Gamma(m, 1/m) CDF written out for integer m.
double shared_outage_oracle(int m, double power, double noise, double gth) {
  auto f = [&](double g) {
    const double pg = power * g;
    return pg * (1.0 + 2.0 * pg * pg) / (noise * (2.0 + pg + 2.0 * pg * pg));
  };
  double lo = 0.0;
  double hi = 1.0;
  while (f(hi) < gth) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < gth ? lo : hi) = mid;
  }
  const double x = m * 0.5 * (lo + hi);
  double tail = 0.0;
  double term = 1.0;
  for (int k = 0; k < m; ++k) {
    tail += term;
    term *= x / (k + 1);
  }
  return 1.0 - std::exp(-x) * tail;
}

}  // namespace

TEST_CASE("link budget construction") {
  const auto u = LinkBudget::uniform(2.0, 50.0);
  for (auto l : kAllLinks) {
    CHECK(rel(u.mean_snr(l), 50.0) < 1e-15);
    CHECK(u.params(l).m == 2.0);
  }
  const TwoPairLinks links{{1.0, 3.0}, {2.0, 5.0}, {0.5, 7.0}, {4.0, 11.0}, {1.5, 13.0}};
  const auto b = LinkBudget::from_links(links, 2.0, 0.5);
  CHECK(rel(b.mean_snr(Link::r1r2), 7.0) < 1e-15);
  CHECK(b.fading(Link::s2d1).m == 1.5);
  CHECK_NOTHROW(b.check_consistent(links));
  auto off = links;
  off.r2d1.mean_snr *= 1.0 + 1e-6;
  CHECK_THROWS_AS(b.check_consistent(off), ConfigError);
  CHECK_NOTHROW(b.check_consistent(links, 1e-9));
  auto bad = b;
  bad.tx_power[2] = -1.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  CHECK(transmitter(Link::s2d1) == Node::s2);
  CHECK(std::string(link_name(Link::r2d1)) == "R2->D1");
}

TEST_CASE("binomial estimate") {
  const auto e = BinomialEstimate::from_counts(25, 100);
  CHECK(e.p_hat == 0.25);
  CHECK(rel(e.std_err, std::sqrt(0.25 * 0.75 / 100.0)) < 1e-15);
  CHECK(BinomialEstimate::from_counts(0, 1000).zero_event_bound() == 0.003);
  CHECK_THROWS_AS(BinomialEstimate::from_counts(0, 0), DomainError);
  CHECK_THROWS_AS(BinomialEstimate::from_counts(5, 4), DomainError);
}

TEST_CASE("af_gain examples") {
  const auto b = LinkBudget::uniform(1.0, 1.0);
  CHECK(rel(af_gain(b, {1.0, 0.0}), std::sqrt(0.5)) < 1e-15);
  CHECK(af_gain(b, {1e12, 0.0}) < 1e-11);
  auto quiet = b;
  quiet.noise_var.fill(0.0);
  CHECK(af_gain(quiet, std::polar(1.0, 0.7)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("equivalent SNR examples") {
  const auto b = LinkBudget::uniform(1.0, 1.0);
  CHECK(rel(equivalent_snr(unit_draw(1.0), b), 0.6) < 1e-15);
  CHECK(rel(equivalent_snr_shared(1.0, 1.0, 1.0), 0.6) < 1e-15);
  CHECK(equivalent_snr(unit_draw(0.0), b) == 0.0);
  // Large power: gamma_eq / (P / N0) -> 1.
  for (double p : {1e3, 1e6}) CHECK(rel(equivalent_snr_shared(1.0, p, 1.0) / p, 1.0) < 2.0 / p);
}

TEST_CASE("shared form equals the general form on equal coefficients") {
  for (double g : {0.01, 0.3, 1.0, 4.0, 50.0}) {
    for (double p : {0.5, 1.0, 10.0}) {
      for (double n0 : {0.01, 1.0}) {
        LinkBudget b;
        b.tx_power.fill(p);
        b.noise_var.fill(n0);
        CHECK(rel(equivalent_snr(unit_draw(std::sqrt(g)), b), equivalent_snr_shared(g, p, n0)) < 1e-13);
      }
    }
  }
}

TEST_CASE("fading draws have the configured moments") {
  LinkBudget b;
  b.channel = {{{0.5, 2.0}, {1.0, 1.0}, {2.0, 3.0}, {4.0, 0.5}, {1.3, 1.7}}};
  b.noise_var = {0.1, 0.2, 0.4, 0.8, 1.6};
  RandomStream rng(3);
  ChannelDraw d;
  constexpr int kDraws = 400000;
  std::array<double, kLinkCount> power{};
  std::array<double, kLinkCount> noise_re{};
  std::array<double, kLinkCount> noise_im{};
  for (int i = 0; i < kDraws; ++i) {
    draw_fading(b, SnrMode::independent_links, PhaseMode::uniform, rng, d);
    draw_noise(b, rng, d);
    for (std::size_t k = 0; k < kLinkCount; ++k) {
      power[k] += d.gain(kAllLinks[k]);
      noise_re[k] += d.n[k].real() * d.n[k].real();
      noise_im[k] += d.n[k].imag() * d.n[k].imag();
    }
  }
  for (std::size_t k = 0; k < kLinkCount; ++k) {
    const auto& c = b.channel[k];
    const double se = c.mu / std::sqrt(c.m * kDraws);
    CHECK(std::abs(power[k] / kDraws - c.mu) < 4.0 * se);
    const double half = 0.5 * b.noise_var[k];
    const double nse = half * std::sqrt(2.0 / kDraws);
    CHECK(std::abs(noise_re[k] / kDraws - half) < 4.0 * nse);
    CHECK(std::abs(noise_im[k] / kDraws - half) < 4.0 * nse);
  }
}

TEST_CASE("shared mode applies one coefficient to every link") {
  auto b = LinkBudget::uniform(2.0, 10.0);
  RandomStream rng(8);
  ChannelDraw d;
  for (int i = 0; i < 100; ++i) {
    draw_fading(b, SnrMode::shared_h, PhaseMode::uniform, rng, d);
    for (auto l : kAllLinks) CHECK(d.coeff(l) == d.coeff(Link::s1r1));
  }
  b.channel[3].m = 4.0;
  CHECK_THROWS_AS(mc_snr_outage(b, {1.0}, 100, serial(1), SnrMode::shared_h), ConfigError);
}

TEST_CASE("event outage extremes") {
  const auto strong = TwoPairLinks::uniform({1.0, 1e12});
  CHECK(mc_event_outage(strong, {1.0}, 20000, {}).p_hat == 0.0);
  const auto dead = TwoPairLinks::uniform({1.0, 1e-12});
  CHECK(mc_event_outage(dead, {1.0}, 20000, {}).p_hat == 1.0);
  CHECK_THROWS_AS(mc_event_outage(strong, {1.0}, 0, {}), DomainError);
}

TEST_CASE("event outage matches the exact union") {
  struct Cell {
    double m;
    double snr_db;
    double rt;
  };
  for (const Cell c : {Cell{1.0, 10.0, 1.0}, Cell{0.5, 15.0, 2.0}, Cell{2.0, 5.0, 0.5}, Cell{4.0, 5.0, 2.0}}) {
    const auto links = TwoPairLinks::uniform({c.m, db(c.snr_db)});
    const double exact = analytic::outage_two_pair(links, {c.rt}, UnionMode::exact_union);
    const auto est = mc_event_outage(links, {c.rt}, 1'000'000, {.seed = 17});
    const double sigma = std::sqrt(exact * (1.0 - exact) / est.trials);
    INFO("m = " << c.m << ", snr = " << c.snr_db << " dB, rt = " << c.rt);
    CHECK(std::abs(est.p_hat - exact) < 3.0 * sigma);
  }
}

TEST_CASE("event outage on an extended topology matches its exact union") {
  auto t = ExtendedTopology::uniform(3, 3, {1.0, db(3.0)});
  t.set({LinkKind::relay_relay, 2}, {0.5, db(6.0)});
  t.set({LinkKind::source_dest, 3}, {2.0, db(1.0)});
  const double exact = analytic::outage_generalized(t, {1.0}, UnionMode::exact_union);
  const auto est = mc_event_outage(t, {1.0}, 1'000'000, {.seed = 4});
  CHECK(std::abs(est.p_hat - exact) < 3.0 * std::sqrt(exact * (1.0 - exact) / est.trials));
}

TEST_CASE("event outage matches the sum form in its validity region") {
  const auto links = TwoPairLinks::uniform({1.0, db(15.5)});
  const double q = analytic::link_outage(links.s1r1, 1.0);
  REQUIRE(q < 0.05);
  REQUIRE(q > 0.02);
  const double sum = analytic::outage_two_pair(links, {1.0}, UnionMode::paper_sum);
  const auto est = mc_event_outage(links, {1.0}, 1'000'000, {.seed = 2});
  REQUIRE(est.events > 1000);
  CHECK(std::abs(est.p_hat - sum) < std::max(3.0 * est.std_err, 0.05 * sum));
}

TEST_CASE("shared-coefficient SNR outage matches its one-dimensional oracle") {
  for (int m : {1, 2}) {
    for (double snr_db : {0.0, 5.0, 10.0}) {
      const auto b = LinkBudget::uniform(m, db(snr_db));
      const double want = shared_outage_oracle(m, 1.0, 1.0 / db(snr_db), 1.0);
      const auto est = mc_snr_outage(b, {1.0}, 400'000, {.seed = 9}, SnrMode::shared_h);
      INFO("m = " << m << ", snr = " << snr_db);
      CHECK(std::abs(est.p_hat - want) < 3.0 * std::sqrt(want * (1.0 - want) / est.trials));
    }
  }
}

TEST_CASE("SNR outage limits") {
  auto b = LinkBudget::uniform(1.0, 10.0);
  b.noise_var.fill(0.0);
  CHECK(mc_snr_outage(b, {1.0}, 10000, {}).p_hat == 0.0);
  CHECK(mc_snr_outage(LinkBudget::uniform(1.0, 1e-9), {1.0}, 10000, {}).p_hat == 1.0);
}

TEST_CASE("SNR outage decreases with SNR for both modes") {
  for (auto mode : {SnrMode::independent_links, SnrMode::shared_h}) {
    double prev = 1.1;
    for (double snr_db = 0.0; snr_db <= 20.0; snr_db += 5.0) {
      const auto est = mc_snr_outage(LinkBudget::uniform(1.0, db(snr_db)), {1.0}, 200'000, {.seed = 5}, mode);
      CHECK(est.p_hat < prev);
      prev = est.p_hat;
    }
  }
}

TEST_CASE("phase never changes the SNR outage") {
  for (auto mode : {SnrMode::independent_links, SnrMode::shared_h}) {
    const auto b = LinkBudget::uniform(1.5, db(8.0));
    const auto a = mc_snr_outage(b, {1.0}, 100'000, {.seed = 21}, mode, PhaseMode::uniform);
    const auto z = mc_snr_outage(b, {1.0}, 100'000, {.seed = 21}, mode, PhaseMode::zero);
    CHECK(a.events == z.events);
  }
}

TEST_CASE("serial reference and parallel runs agree bit for bit") {
  const auto links = TwoPairLinks::uniform({1.0, db(5.0)});
  const auto b = LinkBudget::uniform(1.0, db(5.0));
  const BerOptions ber{.symbols_per_block = 500, .blocks = 37};
  const auto ref_event = mc_event_outage(links, {1.0}, 100'003, serial(77));
  const auto ref_snr = mc_snr_outage(b, {1.0}, 100'003, serial(77));
  const auto ref_ber = mc_ber(b, ber, serial(77));
  for (int workers : {0, 1, 2, 3, 8}) {
    const RunOptions par{77, workers, Execution::parallel};
    CHECK(mc_event_outage(links, {1.0}, 100'003, par).events == ref_event.events);
    CHECK(mc_snr_outage(b, {1.0}, 100'003, par).events == ref_snr.events);
    CHECK(mc_ber(b, ber, par).events == ref_ber.events);
  }
  CHECK(mc_event_outage(links, {1.0}, 100'003, serial(78)).events != ref_event.events);
}

TEST_CASE("binomial standard error agrees with the batch-variance estimate") {
  const auto links = TwoPairLinks::uniform({1.0, db(8.0)});
  constexpr int kBatches = 10;
  constexpr std::uint64_t kPerBatch = 100'000;
  std::vector<double> p(kBatches);
  double mean = 0.0;
  for (int i = 0; i < kBatches; ++i) {
    p[i] = mc_event_outage(links, {1.0}, kPerBatch, {.seed = 1000 + static_cast<std::uint64_t>(i)}).p_hat;
    mean += p[i] / kBatches;
  }
  double var = 0.0;
  for (double v : p) var += (v - mean) * (v - mean) / (kBatches - 1);
  const double batch_se = std::sqrt(var / kBatches);
  const double binomial_se = BinomialEstimate::from_counts(
      static_cast<std::uint64_t>(std::llround(mean * kBatches * kPerBatch)), kBatches * kPerBatch).std_err;
  CHECK(batch_se < 2.0 * binomial_se);
  CHECK(batch_se > 0.5 * binomial_se);
}

TEST_CASE("BER chain: noiseless links never err") {
  auto b = LinkBudget::uniform(1.0, 1.0);
  b.noise_var.fill(0.0);
  for (auto g : {FadingGranularity::per_symbol, FadingGranularity::per_block}) {
    const auto e = mc_ber(b, {.symbols_per_block = 2000, .blocks = 20, .granularity = g}, {});
    CHECK(e.events == 0);
  }
}

TEST_CASE("BER chain: silent transmitters give coin flips") {
  auto b = LinkBudget::uniform(1.0, 1.0);
  b.tx_power.fill(0.0);
  const auto e = mc_ber(b, {.symbols_per_block = 10000, .blocks = 20}, {.seed = 3});
  CHECK(std::abs(e.p_hat - 0.5) < 3.0 * std::sqrt(0.25 / e.trials));
}

TEST_CASE("BER chain decreases with SNR and with m") {
  const BerOptions opts{.symbols_per_block = 2000, .blocks = 50};
  double prev = 1.0;
  for (double snr_db = 0.0; snr_db <= 20.0; snr_db += 10.0) {
    const auto e = mc_ber(LinkBudget::uniform(1.0, db(snr_db)), opts, {.seed = 6});
    CHECK(e.p_hat < prev);
    prev = e.p_hat;
  }
  const auto low_m = mc_ber(LinkBudget::uniform(0.5, db(15.0)), opts, {.seed = 6});
  const auto high_m = mc_ber(LinkBudget::uniform(2.0, db(15.0)), opts, {.seed = 6});
  CHECK(high_m.p_hat < low_m.p_hat);
}

TEST_CASE("BER chain validation") {
  const auto b = LinkBudget::uniform(1.0, 1.0);
  CHECK_THROWS_AS(mc_ber(b, {.symbols_per_block = 0, .blocks = 1}, {}), DomainError);
  CHECK_THROWS_AS(mc_ber(b, {.symbols_per_block = 1, .blocks = 0}, {}), DomainError);
}
