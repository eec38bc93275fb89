#include "nakanc/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "nakanc/analytic.hpp"
#include "nakanc/fading.hpp"
#include "nakanc/montecarlo.hpp"
#include "nakanc/special.hpp"

namespace nakanc {
namespace {

double rel_err(double got, double want) {
  if (want == 0.0) return std::abs(got);
  return std::abs(got - want) / std::abs(want);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

SuiteResult sampler_moments(const SelftestOptions& opts) {
  const std::uint64_t draws = std::max<std::uint64_t>(opts.trials * 10, 1000);
  RandomStream rng(derive_seed(opts.seed, 1));
  for (double m : {0.5, 1.0, 2.0, 4.0}) {
    const NakagamiParams p{m, 1.7};
    double sum = 0.0;
    for (std::uint64_t i = 0; i < draws; ++i) {
      const double x = fading::sample_amplitude(p, rng);
      sum += x * x;
    }
    const double mean = sum / static_cast<double>(draws);
    const double sd = p.mu / std::sqrt(m * static_cast<double>(draws));
    if (std::abs(mean - p.mu) > 3.0 * sd)
      return {"sampler-moments", false, fmt("m=%g: E[X^2]=%.6g, want %.6g within 3 sd", m, mean, p.mu)};
  }
  return {"sampler-moments", true, "E[X^2] = mu within 3 sd for m in {0.5,1,2,4}"};
}

SuiteResult analytic_reductions() {
  for (double m : {0.5, 1.0, 2.5, 4.0}) {
    for (double snr_db : {0.0, 10.0, 25.0}) {
      const double snr = std::pow(10.0, snr_db / 10.0);
      const RateTarget r{1.0};
      const LinkFading l{m, snr};
      const double iid = analytic::outage_iid(m, snr, r);
      const double two = analytic::outage_two_pair(TwoPairLinks::uniform(l), r);
      const double ext = analytic::outage_extended_iid(2, 2, m, snr, r);
      const double gen = analytic::outage_generalized(ExtendedTopology::uniform(2, 2, l), r);
      const double ext33 = analytic::outage_extended_iid(3, 3, m, snr, r);
      const double gen33 = analytic::outage_generalized(ExtendedTopology::uniform(3, 3, l), r);
      if (rel_err(two, iid) > 1e-14 || rel_err(ext, iid) > 1e-14 || rel_err(gen, iid) > 1e-14 ||
          rel_err(gen33, ext33) > 1e-14)
        return {"analytic-reductions", false, fmt("reduction chain broken at m=%g, snr=%g dB", m, snr_db)};
    }
  }
  for (double snr_db : {0.0, 20.0, 40.0}) {
    const double snr = std::pow(10.0, snr_db / 10.0);
    const double p = -std::expm1(-1.0 / snr);
    const double want = p * p * (2.0 + p);
    if (rel_err(analytic::outage_iid(1.0, snr, {1.0}), want) > 1e-12)
      return {"analytic-reductions", false, fmt("Rayleigh closed form mismatch at %g dB", snr_db)};
  }
  return {"analytic-reductions", true, "two-pair = i.i.d. = extended = generalized; Rayleigh collapse"};
}

SuiteResult mc_agreement(const SelftestOptions& opts) {
  RunOptions run{opts.seed, opts.workers, Execution::parallel};
  for (double m : {1.0, 2.0}) {
    for (double snr_db : {0.0, 5.0}) {
      const LinkFading l{m, std::pow(10.0, snr_db / 10.0)};
      const auto links = TwoPairLinks::uniform(l);
      const RateTarget r{1.0};
      const double exact = analytic::outage_two_pair(links, r, UnionMode::exact_union);
      const auto est = montecarlo::mc_event_outage(links, r, opts.trials, run);
      const double sd = std::sqrt(exact * (1.0 - exact) / static_cast<double>(opts.trials));
      if (std::abs(est.p_hat - exact) > 3.0 * std::max(sd, est.std_err))
        return {"mc-vs-analytic", false,
                fmt("m=%g: mc %.6g vs exact %.6g beyond 3 sd", m, est.p_hat, exact)};
    }
  }
  return {"mc-vs-analytic", true, "event Monte-Carlo within 3 sd of exact union"};
}

SuiteResult determinism(const SelftestOptions& opts) {
  const auto links = TwoPairLinks::uniform({2.0, 3.0});
  RunOptions par{opts.seed, opts.workers, Execution::parallel};
  RunOptions ser{opts.seed, 1, Execution::serial};
  const auto a = montecarlo::mc_event_outage(links, {1.0}, opts.trials, par);
  const auto b = montecarlo::mc_event_outage(links, {1.0}, opts.trials, ser);
  if (a.events != b.events) return {"determinism", false, "parallel and serial runs differ"};
  return {"determinism", true, "parallel == serial"};
}

}  // namespace

SuiteResult check_gamma_identities(const std::function<double(double, double)>& q) {
  for (int i = 0; i <= 40; ++i) {
    const double x = std::pow(10.0, -2.0 + 4.0 * i / 40.0);
    if (rel_err(q(1.0, x), std::exp(-x)) > 1e-12)
      return {"special-identities", false, fmt("Q(1,%g) != exp(-x)", x)};
    if (rel_err(q(0.5, x), std::erfc(std::sqrt(x))) > 1e-12)
      return {"special-identities", false, fmt("Q(1/2,%g) != erfc(sqrt x)", x)};
    for (double a : {0.5, 1.3, 2.0, 4.7, 10.0}) {
      const double rhs = q(a, x) + std::exp(a * std::log(x) - x - special::log_gamma(a + 1.0));
      if (rel_err(q(a + 1.0, x), rhs) > 1e-10)
        return {"special-identities", false, fmt("recurrence fails at a=%g, x=%g", a, x)};
    }
  }
  return {"special-identities", true, "Q(1,x), Q(1/2,x) and recurrence hold"};
}

std::vector<SuiteResult> run_selftest(const SelftestOptions& opts) {
  std::function<double(double, double)> q = special::reg_upper_gamma;
  if (opts.inject_fault) q = [](double a, double x) { return special::reg_upper_gamma(a, x) * (1.0 + 1e-6); };
  return {check_gamma_identities(q), sampler_moments(opts), analytic_reductions(),
          mc_agreement(opts), determinism(opts)};
}

}  // namespace nakanc
