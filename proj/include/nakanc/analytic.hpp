#pragma once

// Closed-form outage probabilities for the network-coded cooperative
// network: destination D1 fails when its side link from S2 fails AND the
// relayed path fails (R2->D1 or R1->R2 down, or R1 lost both sources).
//
// UnionMode::paper_sum evaluates the union of the relayed-path events as
// a plain sum of probabilities. That is the literal closed form and can
// exceed 1 at low SNR; values are never clamped. UnionMode::exact_union
// evaluates the same event exactly under link independence.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "nakanc/fading.hpp"

namespace nakanc {

/// Target spectral efficiency R_t in bit/s/Hz.
struct RateTarget {
  double rt;

  void validate() const;
};

enum class UnionMode { paper_sum, exact_union };

/// The five links that carry S1's message to D1 in the two-pair network.
struct TwoPairLinks {
  LinkFading s1r1;
  LinkFading s2r1;
  LinkFading r1r2;
  LinkFading r2d1;
  LinkFading s2d1;

  static TwoPairLinks uniform(const LinkFading& l) { return {l, l, l, l, l}; }
  void validate() const;
};

enum class LinkKind { source_relay, relay_relay, relay_dest, source_dest };

/// A directed link of the extended topology.
///   source_relay k: S_k -> R_1        (k = 1..N)
///   relay_relay j:  R_j -> R_{j+1}    (j = 1..M-1)
///   relay_dest:     R_M -> D_1        (index ignored, stored as M)
///   source_dest i:  S_i -> D_1        (i = 2..N)
struct LinkId {
  LinkKind kind;
  int index;

  std::string name() const;
  auto operator<=>(const LinkId&) const = default;
};

/// N source-destination pairs, M relays in series; R_1 network-codes,
/// R_2..R_M amplify and forward.
class ExtendedTopology {
 public:
  ExtendedTopology(int n_pairs, int m_relays);

  static ExtendedTopology uniform(int n_pairs, int m_relays, const LinkFading& l);
  static ExtendedTopology from_two_pair(const TwoPairLinks& links);

  int n_pairs() const { return n_pairs_; }
  int m_relays() const { return m_relays_; }

  void set(LinkId id, const LinkFading& l);
  /// Throws ConfigError naming the link when it has not been set.
  const LinkFading& at(LinkId id) const;

  /// Every link the declared topology requires, in canonical order:
  /// S_k->R_1, R_j->R_{j+1}, R_M->D_1, S_i->D_1.
  std::vector<LinkId> required_links() const;

  /// Throws ConfigError on the first missing link, DomainError on bad params.
  void validate() const;

 private:
  int n_pairs_;
  int m_relays_;
  std::map<LinkId, LinkFading> links_;
};

namespace analytic {

/// gamma_th = 2^R_t - 1.
double snr_threshold(const RateTarget& r);

/// Outage of one link: P(gamma < gth).
double link_outage(const LinkFading& l, double gth);

double outage_two_pair(const TwoPairLinks& links, const RateTarget& r,
                       UnionMode mode = UnionMode::paper_sum);

/// All five links share (m, mean_snr): p^2 (2 + p).
double outage_iid(double m, double mean_snr, const RateTarget& r);

/// N pairs, M relays, i.i.d. links: p^N (M + p^(N-1)).
double outage_extended_iid(int n_pairs, int m_relays, double m, double mean_snr,
                           const RateTarget& r);

/// Per-link generalization over an ExtendedTopology.
double outage_generalized(const ExtendedTopology& t, const RateTarget& r,
                          UnionMode mode = UnionMode::paper_sum);

struct AsymptoticOutage {
  double exact;    // M p^N + p^(2N-1)
  double leading;  // M p^N
};

AsymptoticOutage asymptotic_outage(int n_pairs, int m_relays, double p);

}  // namespace analytic
}  // namespace nakanc
