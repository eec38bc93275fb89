#pragma once

// Sweep execution and CSV emission for the command-line front end.
//
// CSV schema (header is fixed):
//   snr_db,rt,m_spec,estimator,p_out,std_err,trials,seed
// m_spec is a scalar or the per-link list s1r1;s2r1;r1r2;r2d1;s2d1.
// Numbers use 12 significant digits. When a paper_sum value exceeds 1 the
// table gains a trailing warn_gt1 column, filled only on offending rows.
// Monte-Carlo rows with zero events report p_out = 0 and put the one-sided
// 95% bound 3/trials in std_err.

#include <array>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nakanc/montecarlo.hpp"

namespace nakanc {

enum class Estimator { analytic_paper, analytic_union, mc_event, mc_snr_shared, mc_snr_indep, mc_ber };

const char* estimator_name(Estimator e) noexcept;
Estimator parse_estimator(std::string_view name);
bool is_monte_carlo(Estimator e) noexcept;

/// Shape factor specification: one global value or one per link.
struct MSpec {
  std::vector<double> values;

  bool per_link() const { return values.size() == kLinkCount; }
  double at(Link l) const { return per_link() ? values[static_cast<std::size_t>(l)] : values.front(); }
  std::string to_string() const;

  /// "2" or "2;4;2;2;2".
  static MSpec parse(std::string_view text);

  auto operator<=>(const MSpec&) const = default;
};

/// Inclusive dB grid start:step:stop.
struct SnrGrid {
  double start = 0.0;
  double stop = 30.0;
  double step = 2.0;

  std::vector<double> points() const;

  /// "start:step:stop" or a single value.
  static SnrGrid parse(std::string_view text);
};

/// How the seed column relates to the configured seed.
enum class SeedMode {
  per_cell,  // each (estimator, m, rt) cell gets derive_seed(seed, key)
  direct,    // the configured seed is used as-is (regenerates a single row)
};

struct SweepSpec {
  SnrGrid snr_grid_db;
  std::vector<double> rt_values{1.0};
  std::vector<MSpec> m_values{MSpec{{1.0}}};
  std::vector<Estimator> estimators{Estimator::analytic_paper};
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 42;
  SeedMode seed_mode = SeedMode::per_cell;
  montecarlo::BerOptions ber;
  int workers = 0;

  /// Throws ConfigError naming the offending key.
  void validate() const;
};

struct NetworkScenario {
  int n_pairs = 2;
  int m_relays = 2;
  double tx_power = 1.0;
  /// Per-link offset (dB) on top of the swept SNR, s1r1;s2r1;r1r2;r2d1;s2d1.
  std::array<double, kLinkCount> link_gain_db{};

  void validate() const;
};

struct SweepRow {
  double snr_db;
  double rt;
  MSpec m;
  Estimator estimator;
  double p_out;
  double std_err;
  std::uint64_t trials;
  std::uint64_t seed;
  bool warn_gt1;
};

inline constexpr std::string_view kCsvHeader = "snr_db,rt,m_spec,estimator,p_out,std_err,trials,seed";

double db_to_linear(double db);
double linear_to_db(double linear);

/// Seed of one (estimator, m, rt) cell. The SNR is deliberately excluded so a
/// curve uses common random numbers along its SNR axis.
std::uint64_t cell_seed(std::uint64_t root, Estimator e, const MSpec& m, double rt);

/// Budget and link statistics of one sweep cell (two-pair network).
LinkBudget cell_budget(const NetworkScenario& s, const MSpec& m, double snr_db);

/// One row per (snr, rt, m, estimator), in that sorted order.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const NetworkScenario& scenario);

std::string format_number(double v);
void write_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace nakanc
