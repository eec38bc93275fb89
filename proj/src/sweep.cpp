#include "nakanc/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "nakanc/analytic.hpp"
#include "nakanc/error.hpp"

namespace nakanc {
namespace {

constexpr std::array<std::pair<Estimator, const char*>, 6> kEstimatorNames = {{
    {Estimator::analytic_paper, "analytic_paper"},
    {Estimator::analytic_union, "analytic_union"},
    {Estimator::mc_event, "mc_event"},
    {Estimator::mc_snr_shared, "mc_snr_shared"},
    {Estimator::mc_snr_indep, "mc_snr_indep"},
    {Estimator::mc_ber, "mc_ber"},
}};

double parse_double(std::string_view text, const std::string& key) {
  const auto first = text.find_first_not_of(" \t");
  const auto last = text.find_last_not_of(" \t");
  if (first == std::string_view::npos) throw ConfigError(key + ": empty number");
  text = text.substr(first, last - first + 1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
    throw ConfigError(key + ": not a number: '" + std::string(text) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  for (;;) {
    const auto pos = text.find(sep, begin);
    parts.push_back(text.substr(begin, pos - begin));
    if (pos == std::string_view::npos) break;
    begin = pos + 1;
  }
  return parts;
}

bool needs_two_pair(Estimator e) {
  return e == Estimator::mc_snr_shared || e == Estimator::mc_snr_indep || e == Estimator::mc_ber;
}

}  // namespace

const char* estimator_name(Estimator e) noexcept {
  for (const auto& [id, name] : kEstimatorNames)
    if (id == e) return name;
  return "?";
}

Estimator parse_estimator(std::string_view name) {
  for (const auto& [id, n] : kEstimatorNames)
    if (name == n) return id;
  throw ConfigError("estimators: unknown estimator '" + std::string(name) + "'");
}

bool is_monte_carlo(Estimator e) noexcept {
  return e != Estimator::analytic_paper && e != Estimator::analytic_union;
}

std::string MSpec::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ';';
    out += format_number(values[i]);
  }
  return out;
}

MSpec MSpec::parse(std::string_view text) {
  MSpec spec;
  for (auto part : split(text, ';')) spec.values.push_back(parse_double(part, "m"));
  if (spec.values.size() != 1 && spec.values.size() != kLinkCount)
    throw ConfigError("m: expected a scalar or 5 per-link values s1r1;s2r1;r1r2;r2d1;s2d1, got '" +
                      std::string(text) + "'");
  for (double v : spec.values)
    if (v < 0.5) throw ConfigError("m: shape factor must be >= 0.5, got " + format_number(v));
  return spec;
}

std::vector<double> SnrGrid::points() const {
  std::vector<double> out;
  const auto steps = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  for (long i = 0; i <= steps; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

SnrGrid SnrGrid::parse(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) {
    const double v = parse_double(parts[0], "snr");
    return {v, v, 1.0};
  }
  if (parts.size() != 3) throw ConfigError("snr: expected start:step:stop, got '" + std::string(text) + "'");
  SnrGrid g{parse_double(parts[0], "snr"), parse_double(parts[2], "snr"), parse_double(parts[1], "snr")};
  if (g.step <= 0.0) throw ConfigError("snr: step must be > 0");
  if (g.start > g.stop) throw ConfigError("snr: start must be <= stop");
  return g;
}

void SweepSpec::validate() const {
  if (!(snr_grid_db.step > 0.0)) throw ConfigError("snr: step must be > 0");
  if (snr_grid_db.start > snr_grid_db.stop) throw ConfigError("snr: start must be <= stop");
  if (rt_values.empty()) throw ConfigError("rt: at least one target rate is required");
  for (double rt : rt_values)
    if (!(rt > 0.0) || !std::isfinite(rt)) throw ConfigError("rt: target rate must be > 0");
  if (m_values.empty()) throw ConfigError("m: at least one shape factor is required");
  if (estimators.empty()) throw ConfigError("estimators: at least one estimator is required");
  const bool any_mc = std::any_of(estimators.begin(), estimators.end(), is_monte_carlo);
  if (any_mc && trials < 1) throw ConfigError("trials: must be >= 1 with Monte-Carlo estimators");
  if (ber.blocks < 1) throw ConfigError("ber-blocks: must be >= 1");
  if (ber.symbols_per_block < 1) throw ConfigError("ber-symbols: must be >= 1");
}

void NetworkScenario::validate() const {
  if (n_pairs < 2) throw ConfigError("pairs: N must be >= 2");
  if (m_relays < 2) throw ConfigError("relays: M must be >= 2");
  if (!(tx_power > 0.0) || !std::isfinite(tx_power)) throw ConfigError("tx-power: must be > 0");
  for (double g : link_gain_db)
    if (!std::isfinite(g)) throw ConfigError("link-gain-db: values must be finite");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

std::uint64_t cell_seed(std::uint64_t root, Estimator e, const MSpec& m, double rt) {
  const std::string key =
      std::string(estimator_name(e)) + "|" + m.to_string() + "|" + format_number(rt);
  return derive_seed(root, stable_hash(key));
}

LinkBudget cell_budget(const NetworkScenario& s, const MSpec& m, double snr_db) {
  LinkBudget b;
  b.tx_power.fill(s.tx_power);
  b.noise_var.fill(s.tx_power / db_to_linear(snr_db));
  for (std::size_t i = 0; i < kLinkCount; ++i)
    b.channel[i] = {m.at(kAllLinks[i]), db_to_linear(s.link_gain_db[i])};
  b.validate();
  return b;
}

namespace {

SweepRow evaluate_cell(const SweepSpec& spec, const NetworkScenario& s, double snr_db, double rt,
                       const MSpec& m, Estimator e) {
  SweepRow row{snr_db, rt, m, e, 0.0, 0.0, 0, 0, false};
  const RateTarget target{rt};
  const bool two_pair = s.n_pairs == 2 && s.m_relays == 2;

  auto topology = [&] {
    if (two_pair) return ExtendedTopology::from_two_pair(cell_budget(s, m, snr_db).links());
    return ExtendedTopology::uniform(s.n_pairs, s.m_relays, {m.values.front(), db_to_linear(snr_db)});
  };

  if (!is_monte_carlo(e)) {
    const auto mode = e == Estimator::analytic_paper ? UnionMode::paper_sum : UnionMode::exact_union;
    row.p_out = two_pair ? analytic::outage_two_pair(cell_budget(s, m, snr_db).links(), target, mode)
                         : analytic::outage_generalized(topology(), target, mode);
    row.warn_gt1 = row.p_out > 1.0;
    return row;
  }

  RunOptions run;
  run.seed = spec.seed_mode == SeedMode::direct ? spec.seed : cell_seed(spec.seed, e, m, rt);
  run.workers = spec.workers;
  row.seed = run.seed;

  BinomialEstimate est;
  switch (e) {
    case Estimator::mc_event:
      est = montecarlo::mc_event_outage(topology(), target, spec.trials, run);
      break;
    case Estimator::mc_snr_shared:
      est = montecarlo::mc_snr_outage(cell_budget(s, m, snr_db), target, spec.trials, run,
                                      SnrMode::shared_h);
      break;
    case Estimator::mc_snr_indep:
      est = montecarlo::mc_snr_outage(cell_budget(s, m, snr_db), target, spec.trials, run,
                                      SnrMode::independent_links);
      break;
    case Estimator::mc_ber:
      est = montecarlo::mc_ber(cell_budget(s, m, snr_db), spec.ber, run);
      break;
    default:
      break;
  }
  row.p_out = est.p_hat;
  row.trials = est.trials;
  row.std_err = est.events == 0 ? est.zero_event_bound() : est.std_err;
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const NetworkScenario& scenario) {
  spec.validate();
  scenario.validate();
  const bool two_pair = scenario.n_pairs == 2 && scenario.m_relays == 2;

  auto rts = spec.rt_values;
  std::sort(rts.begin(), rts.end());
  rts.erase(std::unique(rts.begin(), rts.end()), rts.end());
  auto ms = spec.m_values;
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  auto ests = spec.estimators;
  std::sort(ests.begin(), ests.end());
  ests.erase(std::unique(ests.begin(), ests.end()), ests.end());

  for (const auto& m : ms) {
    if (!two_pair && m.per_link())
      throw ConfigError("m: per-link shape lists need the two-pair topology (pairs=2, relays=2)");
    for (Estimator e : ests) {
      if (e == Estimator::mc_snr_shared && m.per_link() &&
          std::any_of(m.values.begin(), m.values.end(), [&](double v) { return v != m.values[0]; }))
        throw ConfigError("m: mc_snr_shared needs the same m on every link");
    }
  }
  for (Estimator e : ests)
    if (!two_pair && needs_two_pair(e))
      throw ConfigError(std::string("estimators: ") + estimator_name(e) +
                        " supports only pairs=2, relays=2");
  if (!two_pair &&
      std::any_of(scenario.link_gain_db.begin(), scenario.link_gain_db.end(), [](double g) { return g != 0.0; }))
    throw ConfigError("link-gain-db: per-link gains need the two-pair topology");

  std::vector<SweepRow> rows;
  for (double snr : spec.snr_grid_db.points())
    for (double rt : rts)
      for (const auto& m : ms)
        for (Estimator e : ests) rows.push_back(evaluate_cell(spec, scenario, snr, rt, m, e));
  return rows;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(std::ostream& out, std::span<const SweepRow> rows) {
  const bool warn = std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.warn_gt1; });
  out << kCsvHeader << (warn ? ",warn_gt1" : "") << '\n';
  for (const auto& r : rows) {
    out << format_number(r.snr_db) << ',' << format_number(r.rt) << ',' << r.m.to_string() << ','
        << estimator_name(r.estimator) << ',' << format_number(r.p_out) << ','
        << format_number(r.std_err) << ',' << r.trials << ',' << r.seed;
    if (warn) out << ',' << (r.warn_gt1 ? "warn_gt1" : "");
    out << '\n';
  }
}

}  // namespace nakanc
