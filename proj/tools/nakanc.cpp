// nakanc: outage probabilities of network-coded cooperative networks over
// Nakagami-m fading, with Monte-Carlo validators. Emits CSV.
//
// Exit status: 0 success, 1 configuration error, 2 selftest failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nakanc/diversity.hpp"
#include "nakanc/error.hpp"
#include "nakanc/selftest.hpp"
#include "nakanc/sweep.hpp"

namespace {

using namespace nakanc;

constexpr int kExitConfig = 1;
constexpr int kExitSelftest = 2;

// Raw option values as typed on the command line or in the config file.
struct Options {
  std::string snr = "0:2:30";
  std::string rt = "1";
  std::string m = "1";
  std::string estimators = "analytic_paper";
  std::string estimator = "mc_event";
  std::string mode = "paper_sum";
  std::string granularity = "per_symbol";
  std::string link_gain_db = "0;0;0;0;0";
  std::string window = "30:45";
  std::string out;
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 42;
  std::uint64_t blocks = 1000;
  std::uint64_t symbols = 10000;
  double step = 1.0;
  double tx_power = 1.0;
  int pairs = 2;
  int relays = 2;
  int workers = 0;
  std::uint64_t selftest_trials = 10000;
  std::uint64_t selftest_seed = 7;
  bool inject_fault = false;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  if (parts.empty()) throw ConfigError("empty list: '" + text + "'");
  return parts;
}

double to_double(const std::string& text, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": not a number: '" + text + "'");
  }
}

FadingGranularity parse_granularity(const std::string& g) {
  if (g == "per_symbol") return FadingGranularity::per_symbol;
  if (g == "per_block") return FadingGranularity::per_block;
  throw ConfigError("granularity: expected per_symbol or per_block, got '" + g + "'");
}

NetworkScenario scenario_from(const Options& o) {
  NetworkScenario s;
  s.n_pairs = o.pairs;
  s.m_relays = o.relays;
  s.tx_power = o.tx_power;
  std::vector<double> g;
  std::stringstream ss(o.link_gain_db);
  std::string item;
  while (std::getline(ss, item, ';')) g.push_back(to_double(item, "link-gain-db"));
  if (g.size() != kLinkCount)
    throw ConfigError("link-gain-db: expected 5 values s1r1;s2r1;r1r2;r2d1;s2d1");
  std::copy(g.begin(), g.end(), s.link_gain_db.begin());
  return s;
}

SweepSpec base_spec(const Options& o) {
  SweepSpec spec;
  spec.snr_grid_db = SnrGrid::parse(o.snr);
  spec.rt_values.clear();
  for (const auto& r : split_list(o.rt)) spec.rt_values.push_back(to_double(r, "rt"));
  spec.m_values.clear();
  for (const auto& m : split_list(o.m)) spec.m_values.push_back(MSpec::parse(m));
  spec.trials = o.trials;
  spec.seed = o.seed;
  spec.workers = o.workers;
  spec.ber.blocks = o.blocks;
  spec.ber.symbols_per_block = o.symbols;
  spec.ber.granularity = parse_granularity(o.granularity);
  return spec;
}

int emit(const std::vector<SweepRow>& rows, const std::string& out_path) {
  std::size_t over = 0;
  for (const auto& r : rows) over += r.warn_gt1 ? 1 : 0;
  if (over > 0)
    std::cerr << "warning: " << over
              << " paper_sum value(s) exceed 1; the sum form is outside its validity region there\n";
  if (out_path.empty()) {
    write_csv(std::cout, rows);
    return 0;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw ConfigError("out: cannot open '" + out_path + "' for writing");
  write_csv(f, rows);
  return 0;
}

void add_scenario_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--snr", o.snr, "SNR grid in dB, start:step:stop or a single value")
      ->capture_default_str();
  cmd->add_option("--rt", o.rt, "Target rates R_t (bit/s/Hz), comma separated")->capture_default_str();
  cmd->add_option("--m", o.m, "Shape factors, comma separated; per-link as s1r1;s2r1;r1r2;r2d1;s2d1")
      ->capture_default_str();
  cmd->add_option("--pairs", o.pairs, "Number of S-D pairs N")->capture_default_str();
  cmd->add_option("--relays", o.relays, "Number of relays M")->capture_default_str();
  cmd->add_option("--tx-power", o.tx_power, "Transmit power of every node")->capture_default_str();
  cmd->add_option("--link-gain-db", o.link_gain_db, "Per-link SNR offsets in dB (5 values, ';')")
      ->capture_default_str();
  cmd->add_option("--out", o.out, "Output CSV path (default stdout)");
}

void add_workers(CLI::App* cmd, Options& o) {
  cmd->add_option("--workers", o.workers, "Worker threads (0: all cores); results do not depend on it")
      ->envname("NAKANC_WORKERS")
      ->capture_default_str();
}

int run_diversity(const Options& o) {
  const auto m = to_double(o.m, "m");
  const auto rt = to_double(o.rt, "rt");
  const auto colon = o.window.find(':');
  if (colon == std::string::npos) throw ConfigError("window: expected lo:hi in dB");
  const DbWindow window{to_double(o.window.substr(0, colon), "window"),
                        to_double(o.window.substr(colon + 1), "window")};
  if (!(window.hi > window.lo)) throw ConfigError("window: hi must exceed lo");
  UnionMode mode = UnionMode::paper_sum;
  if (o.mode == "exact_union") mode = UnionMode::exact_union;
  else if (o.mode != "paper_sum") throw ConfigError("mode: expected paper_sum or exact_union");
  const auto curve = diversity::analytic_curve(o.pairs, o.relays, m, RateTarget{rt}, window, o.step, mode);
  const auto fit = diversity::estimate_diversity(curve, window);
  const auto pred = diversity::predicted_diversity(o.pairs, m);
  std::cout << "pairs,relays,m,rt,window_lo_db,window_hi_db,d_hat,d_predicted,residual,integer_m\n"
            << o.pairs << ',' << o.relays << ',' << format_number(m) << ',' << format_number(rt) << ','
            << format_number(window.lo) << ',' << format_number(window.hi) << ','
            << format_number(fit.d_hat) << ',' << format_number(pred.d) << ','
            << format_number(fit.residual) << ',' << (pred.validated ? "true" : "false") << '\n';
  if (!pred.validated)
    std::cerr << "note: d = N m is established for integer m only\n";
  return 0;
}

int run_selftest_cmd(const Options& o) {
  SelftestOptions opts;
  opts.trials = o.selftest_trials;
  opts.seed = o.selftest_seed;
  opts.workers = o.workers;
  opts.inject_fault = o.inject_fault;
  bool ok = true;
  for (const auto& r : run_selftest(opts)) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    ok = ok && r.passed;
  }
  return ok ? 0 : kExitSelftest;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Outage probability of network-coded cooperative networks over Nakagami-m fading"};
  app.set_config("--config", "", "Config file (TOML/INI); command-line flags take precedence");
  app.require_subcommand(1);
  Options o;

  auto* analytic = app.add_subcommand("analytic", "Closed-form outage probability");
  add_scenario_options(analytic, o);
  analytic->add_option("--mode", o.mode, "paper_sum, exact_union or both")->capture_default_str();

  auto* mc = app.add_subcommand("mc", "Monte-Carlo outage estimate");
  add_scenario_options(mc, o);
  add_workers(mc, o);
  mc->add_option("--estimator", o.estimator, "mc_event, mc_snr_shared or mc_snr_indep")
      ->capture_default_str();
  mc->add_option("--trials", o.trials, "Trials per point")->capture_default_str();
  mc->add_option("--seed", o.seed, "Stream seed (used as-is)")->capture_default_str();

  auto* ber = app.add_subcommand("ber", "Symbol-level BER of the BPSK / XOR / AF chain");
  add_scenario_options(ber, o);
  add_workers(ber, o);
  ber->add_option("--blocks", o.blocks, "Realizations")->capture_default_str();
  ber->add_option("--symbols", o.symbols, "Symbols per realization")->capture_default_str();
  ber->add_option("--granularity", o.granularity, "per_symbol or per_block fading")
      ->capture_default_str();
  ber->add_option("--seed", o.seed, "Stream seed (used as-is)")->capture_default_str();

  auto* div = app.add_subcommand("diversity", "Diversity order from the analytic curve");
  div->add_option("--pairs", o.pairs, "Number of S-D pairs N")->capture_default_str();
  div->add_option("--relays", o.relays, "Number of relays M")->capture_default_str();
  div->add_option("--m", o.m, "Shape factor")->capture_default_str();
  div->add_option("--rt", o.rt, "Target rate R_t")->capture_default_str();
  div->add_option("--window", o.window, "Fit window lo:hi in dB")->capture_default_str();
  div->add_option("--step", o.step, "Curve sampling step in dB")->capture_default_str();
  div->add_option("--mode", o.mode, "paper_sum or exact_union")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Grid sweep over SNR, R_t, m and estimators");
  add_scenario_options(sweep, o);
  add_workers(sweep, o);
  sweep->add_option("--estimators", o.estimators,
                    "Comma list of analytic_paper, analytic_union, mc_event, mc_snr_shared, "
                    "mc_snr_indep, mc_ber")
      ->capture_default_str();
  sweep->add_option("--trials", o.trials, "Monte-Carlo trials per cell")->capture_default_str();
  sweep->add_option("--seed", o.seed, "Root seed; each cell derives its own")->capture_default_str();
  sweep->add_option("--ber-blocks", o.blocks, "BER realizations per cell")->capture_default_str();
  sweep->add_option("--ber-symbols", o.symbols, "BER symbols per realization")->capture_default_str();
  sweep->add_option("--granularity", o.granularity, "per_symbol or per_block fading for mc_ber")
      ->capture_default_str();

  auto* self = app.add_subcommand("selftest", "Run the cross-module validation suites");
  add_workers(self, o);
  self->add_option("--trials", o.selftest_trials, "Trials per Monte-Carlo cell")->capture_default_str();
  self->add_option("--seed", o.selftest_seed, "Seed")->capture_default_str();
  self->add_flag("--inject-fault", o.inject_fault, "Perturb Q(a,x) by 1e-6 to exercise detection");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*self) return run_selftest_cmd(o);
    if (*div) return run_diversity(o);

    SweepSpec spec = base_spec(o);
    const NetworkScenario scenario = scenario_from(o);
    if (*analytic) {
      if (o.mode == "paper_sum") spec.estimators = {Estimator::analytic_paper};
      else if (o.mode == "exact_union") spec.estimators = {Estimator::analytic_union};
      else if (o.mode == "both") spec.estimators = {Estimator::analytic_paper, Estimator::analytic_union};
      else throw ConfigError("mode: expected paper_sum, exact_union or both");
    } else if (*mc) {
      const Estimator e = parse_estimator(o.estimator);
      if (e != Estimator::mc_event && e != Estimator::mc_snr_shared && e != Estimator::mc_snr_indep)
        throw ConfigError("estimator: expected mc_event, mc_snr_shared or mc_snr_indep");
      spec.estimators = {e};
      spec.seed_mode = SeedMode::direct;
    } else if (*ber) {
      spec.estimators = {Estimator::mc_ber};
      spec.seed_mode = SeedMode::direct;
    } else {
      spec.estimators.clear();
      for (const auto& e : split_list(o.estimators)) spec.estimators.push_back(parse_estimator(e));
    }
    return emit(run_sweep(spec, scenario), o.out);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  }
}
