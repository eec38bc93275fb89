#include "nakanc/analytic.hpp"

#include <cmath>
#include <initializer_list>
#include <string>

#include "nakanc/error.hpp"

namespace nakanc {

void RateTarget::validate() const {
  detail::require(std::isfinite(rt) && rt > 0.0, [&] {
    return "target rate R_t must be finite and > 0, got " + std::to_string(rt);
  });
}

void TwoPairLinks::validate() const {
  for (const auto* l : {&s1r1, &s2r1, &r1r2, &r2d1, &s2d1}) l->validate();
}

std::string LinkId::name() const {
  switch (kind) {
    case LinkKind::source_relay:
      return "S" + std::to_string(index) + "->R1";
    case LinkKind::relay_relay:
      return "R" + std::to_string(index) + "->R" + std::to_string(index + 1);
    case LinkKind::relay_dest:
      return "R" + std::to_string(index) + "->D1";
    case LinkKind::source_dest:
      return "S" + std::to_string(index) + "->D1";
  }
  return "?";
}

ExtendedTopology::ExtendedTopology(int n_pairs, int m_relays)
    : n_pairs_(n_pairs), m_relays_(m_relays) {
  if (n_pairs < 2) throw ConfigError("topology needs N >= 2 pairs, got " + std::to_string(n_pairs));
  if (m_relays < 2)
    throw ConfigError("topology needs M >= 2 relays, got " + std::to_string(m_relays));
}

ExtendedTopology ExtendedTopology::uniform(int n_pairs, int m_relays, const LinkFading& l) {
  ExtendedTopology t(n_pairs, m_relays);
  for (const auto& id : t.required_links()) t.set(id, l);
  return t;
}

ExtendedTopology ExtendedTopology::from_two_pair(const TwoPairLinks& links) {
  ExtendedTopology t(2, 2);
  t.set({LinkKind::source_relay, 1}, links.s1r1);
  t.set({LinkKind::source_relay, 2}, links.s2r1);
  t.set({LinkKind::relay_relay, 1}, links.r1r2);
  t.set({LinkKind::relay_dest, 2}, links.r2d1);
  t.set({LinkKind::source_dest, 2}, links.s2d1);
  return t;
}

void ExtendedTopology::set(LinkId id, const LinkFading& l) {
  if (id.kind == LinkKind::relay_dest) id.index = m_relays_;
  links_[id] = l;
}

const LinkFading& ExtendedTopology::at(LinkId id) const {
  if (id.kind == LinkKind::relay_dest) id.index = m_relays_;
  const auto it = links_.find(id);
  if (it == links_.end()) throw ConfigError("topology is missing link " + id.name());
  return it->second;
}

std::vector<LinkId> ExtendedTopology::required_links() const {
  std::vector<LinkId> ids;
  for (int k = 1; k <= n_pairs_; ++k) ids.push_back({LinkKind::source_relay, k});
  for (int j = 1; j < m_relays_; ++j) ids.push_back({LinkKind::relay_relay, j});
  ids.push_back({LinkKind::relay_dest, m_relays_});
  for (int i = 2; i <= n_pairs_; ++i) ids.push_back({LinkKind::source_dest, i});
  return ids;
}

void ExtendedTopology::validate() const {
  for (const auto& id : required_links()) at(id).validate();
}

namespace analytic {
namespace {

// 1 - prod(1 - q_i) without cancellation when every q_i is tiny.
double union_of_independent(std::initializer_list<double> qs) {
  double log_none = 0.0;
  for (double q : qs) log_none += std::log1p(-q);
  return -std::expm1(log_none);
}

double relayed_path(double relay_dest, double relay_chain_sum, double relay_chain_log_none,
                    double sources_lost, UnionMode mode) {
  if (mode == UnionMode::paper_sum) return relay_dest + relay_chain_sum + sources_lost;
  const double log_none = std::log1p(-relay_dest) + relay_chain_log_none + std::log1p(-sources_lost);
  return -std::expm1(log_none);
}

}  // namespace

double snr_threshold(const RateTarget& r) {
  r.validate();
  return std::expm1(r.rt * std::log(2.0));
}

double link_outage(const LinkFading& l, double gth) {
  detail::require(std::isfinite(gth) && gth >= 0.0, "link_outage: threshold must be >= 0");
  return fading::snr_cdf(l, gth);
}

double outage_two_pair(const TwoPairLinks& links, const RateTarget& r, UnionMode mode) {
  links.validate();
  const double gth = snr_threshold(r);
  const double s1r1 = link_outage(links.s1r1, gth);
  const double s2r1 = link_outage(links.s2r1, gth);
  const double r1r2 = link_outage(links.r1r2, gth);
  const double r2d1 = link_outage(links.r2d1, gth);
  const double s2d1 = link_outage(links.s2d1, gth);
  if (mode == UnionMode::paper_sum) return s2d1 * (r2d1 + r1r2 + s1r1 * s2r1);
  return s2d1 * union_of_independent({r2d1, r1r2, s1r1 * s2r1});
}

double outage_iid(double m, double mean_snr, const RateTarget& r) {
  const double p = link_outage({m, mean_snr}, snr_threshold(r));
  return p * p * (2.0 + p);
}

double outage_extended_iid(int n_pairs, int m_relays, double m, double mean_snr,
                           const RateTarget& r) {
  if (n_pairs < 2) throw ConfigError("outage_extended_iid: N must be >= 2");
  if (m_relays < 2) throw ConfigError("outage_extended_iid: M must be >= 2");
  const double p = link_outage({m, mean_snr}, snr_threshold(r));
  return std::pow(p, n_pairs) * (m_relays + std::pow(p, n_pairs - 1));
}

double outage_generalized(const ExtendedTopology& t, const RateTarget& r, UnionMode mode) {
  t.validate();
  const double gth = snr_threshold(r);
  const int n = t.n_pairs();
  const int m = t.m_relays();

  double side = 1.0;
  for (int i = 2; i <= n; ++i) side *= link_outage(t.at({LinkKind::source_dest, i}), gth);

  double chain_sum = 0.0;
  double chain_log_none = 0.0;
  for (int j = 1; j < m; ++j) {
    const double q = link_outage(t.at({LinkKind::relay_relay, j}), gth);
    chain_sum += q;
    chain_log_none += std::log1p(-q);
  }

  double sources_lost = 1.0;
  for (int k = 1; k <= n; ++k) sources_lost *= link_outage(t.at({LinkKind::source_relay, k}), gth);

  const double relay_dest = link_outage(t.at({LinkKind::relay_dest, m}), gth);
  return side * relayed_path(relay_dest, chain_sum, chain_log_none, sources_lost, mode);
}

AsymptoticOutage asymptotic_outage(int n_pairs, int m_relays, double p) {
  detail::require(p >= 0.0 && p <= 1.0, "asymptotic_outage: p must lie in [0, 1]");
  const double leading = m_relays * std::pow(p, n_pairs);
  return {leading + std::pow(p, 2 * n_pairs - 1), leading};
}

}  // namespace analytic
}  // namespace nakanc
