#pragma once

// D_A = {a, b}: names of a are the characteristic sequence of A with finitely
// many 1s turned into 0s, names of b the same for ℕ \ A. Discrete, and
// Hausdorff only for suitable A; the diagonalizer builds A against a list of
// candidate Hausdorff witnesses.

#include <set>

#include "ctop/oracles.hpp"
#include "ctop/spaces.hpp"
#include "ctop/stage_log.hpp"

namespace ctop::examples {

enum class DAPoint { A, B };

/// Characteristic sequence of the point's set with the positions in
/// `flipped` forced to 0.
inline Name da_name(const OracleSet& a, DAPoint point, std::set<Nat> flipped = {}) {
  return Name::stream([a, point, flipped = std::move(flipped)](Nat k) -> Nat {
    if (flipped.count(k)) return 0;
    return a.contains(k) == (point == DAPoint::A) ? 1 : 0;
  });
}

/// Confirms once both names show a 1 at a common position.
inline DiscretenessWitness da_discreteness(const OracleSet& /*unused*/) {
  return {open_on_pairs([](WordView l, WordView r, Nat) {
    for (std::size_t k = 0; k < std::min(l.size(), r.size()); ++k)
      if (l[k] != 0 && r[k] != 0) return true;
    return false;
  })};
}

inline Space da_space(OracleSet a) {
  auto point_of = [a](const Name& p) -> std::optional<DAPoint> {
    const Word w = p.prefix(kMetaFuel, kMetaFuel);
    bool under_a = true, under_b = true, late_one = false;
    for (Nat k = 0; k < w.size(); ++k) {
      if (w[k] == 0) continue;
      (a.contains(k) ? under_b : under_a) = false;
      late_one = late_one || k >= w.size() / 2;
    }
    if (!late_one) return std::nullopt;
    if (under_a) return DAPoint::A;
    if (under_b) return DAPoint::B;
    return std::nullopt;
  };
  return make_space(
      SpaceTag::DA, "D_A", [point_of](const Name& p) { return point_of(p).has_value(); },
      [point_of](const Name& p, const Name& q) { return point_of(p) == point_of(q); });
}

// ---------------------------------------------------------------------------
// Candidate Hausdorff witnesses

/// A candidate witness for D_A: an enumeration of rectangles [w_i] × [u_i]
/// meant to cover exactly the pairs of distinct points. Pair i is visible
/// from fuel i+1.
struct WitnessCandidate {
  std::string label;
  std::function<std::optional<std::pair<Word, Word>>(Nat i)> pair_at;

  static WitnessCandidate from_pairs(std::string label, std::vector<std::pair<Word, Word>> pairs) {
    return {std::move(label), [pairs = std::move(pairs)](Nat i) -> std::optional<std::pair<Word, Word>> {
              if (i >= pairs.size()) return std::nullopt;
              return pairs[i];
            }};
  }

  /// The candidate read as an open set of pair names.
  HausdorffWitness witness() const {
    return {open_on_pairs([pair_at = pair_at](WordView l, WordView r, Nat budget) {
      for (Nat i = 0; i < budget; ++i) {
        const auto p = pair_at(i);
        if (!p) return false;
        if (is_prefix(p->first, l) && is_prefix(p->second, r)) return true;
      }
      return false;
    })};
  }
};

enum class DACertificateKind { Separation, Omission };

inline const char* to_string(DACertificateKind k) { return k == DACertificateKind::Separation ? "separation" : "omission"; }

/// Separation: the candidate confirms (p, q) at `step`, though both are names
/// of a. Omission: no pair compatible with 0^start appeared among the first
/// `pairs_checked`, so the two points named from 0^start on stay uncovered.
struct DACertificate {
  DACertificateKind kind = DACertificateKind::Omission;
  Nat stage = 0;
  std::size_t candidate = 0;
  Nat start = 0;
  Nat pair_index = 0;
  Word w, u;
  Nat step = 0;
  Nat pairs_checked = 0;
};

struct DAConstruction {
  std::vector<bool> prefix;  // A ∩ [0, |prefix|)
  std::vector<DACertificate> certificates;
  std::vector<std::pair<std::size_t, Nat>> stalls;  // (candidate, stage)
  StageLog log;

  /// Beyond the prefix A continues 1, 0, 1, 0, ...
  bool contains(Nat k) const { return k < prefix.size() ? prefix[k] : (k - prefix.size()) % 2 == 0; }
  OracleSet oracle() const {
    return OracleSet([self = *this](Nat k) { return self.contains(k); });
  }

  /// w followed by the characteristic sequence of A.
  Name name_after(const Word& w) const {
    return Name::stream([w, self = *this](Nat k) -> Nat {
      if (k < w.size()) return w[k];
      return self.contains(k) ? 1 : 0;
    });
  }
};

namespace detail {

/// Confirmation fuel of rectangle i on the product name of (p, q): the
/// interleaved prefix must hold |w| left and |u| right symbols, and the
/// budget must reach pair i.
inline Nat rectangle_step(Nat i, const Word& w, const Word& u) {
  const Nat left = w.empty() ? 1 : 2 * static_cast<Nat>(w.size()) - 1;
  return std::max({i + 1, left, 2 * static_cast<Nat>(u.size())});
}

inline bool zero_below(const Word& w, Nat start) {
  for (Nat k = 0; k < std::min<Nat>(w.size(), start); ++k)
    if (w[k] != 0) return false;
  return true;
}

}  // namespace detail

/// Stage s attacks candidate s mod |candidates|, with A decided below
/// `next`. The first pair (w, u) among the first `fuel` that is 0 on
/// [0, next) is absorbed: its 1-positions enter A, the rest of
/// [next, m) stays out, m enters and m+1 stays out, with
/// m = max(|w|, |u|, next). Then w·A and u·A both name a, and the candidate
/// separates them; A is then fixed on every position the confirmation read. Without such a pair, next enters A and next+1 stays out.
inline DAConstruction da_diagonalize(const std::vector<WitnessCandidate>& candidates, Nat fuel, Nat min_stages = 0) {
  DAConstruction c;
  const Nat stages = std::max<Nat>(min_stages, candidates.size());
  for (Nat s = 0; s < stages; ++s) {
    const Nat next = c.prefix.size();
    if (candidates.empty()) {
      c.prefix.push_back(true);
      c.prefix.push_back(false);
      c.log.append(s, "no-pair", {{"next", next}});
      continue;
    }
    const std::size_t ci = s % candidates.size();
    const auto& cand = candidates[ci];
    std::optional<Nat> found;
    Nat checked = 0;
    for (Nat i = 0; i < fuel; ++i) {
      const auto p = cand.pair_at(i);
      if (!p) break;
      ++checked;
      if (detail::zero_below(p->first, next) && detail::zero_below(p->second, next)) {
        found = i;
        break;
      }
    }
    if (!found) {
      c.prefix.push_back(true);
      c.prefix.push_back(false);
      c.certificates.push_back({DACertificateKind::Omission, s, ci, next, 0, {}, {}, 0, checked});
      c.log.append(s, "omission", {{"candidate", cand.label}, {"next", next}, {"pairs_checked", checked}});
      continue;
    }
    const auto [w, u] = *cand.pair_at(*found);
    const Nat m = std::max<Nat>({w.size(), u.size(), next});
    for (Nat k = next; k < m; ++k)
      c.prefix.push_back((k < w.size() && w[k] != 0) || (k < u.size() && u[k] != 0));
    c.prefix.push_back(true);
    c.prefix.push_back(false);
    const Verdict v = cand.witness().distinct(c.name_after(w), c.name_after(u)).observe(fuel);
    if (!v.confirmed) {
      c.stalls.emplace_back(ci, s);
      c.log.append(s, "stall", {{"candidate", cand.label}, {"pair", *found}});
      continue;
    }
    // Freeze A on everything the confirmation read, so later stages keep it.
    while (c.prefix.size() < v.step) c.prefix.push_back(c.contains(c.prefix.size()));
    c.certificates.push_back({DACertificateKind::Separation, s, ci, next, *found, w, u, v.step, checked});
    c.log.append(s, "separation",
                 {{"candidate", cand.label}, {"next", next}, {"pair", *found}, {"step", v.step}, {"a_until", c.prefix.size()}});
  }
  return c;
}

/// Replays a certificate without the construction's search. Separation: both
/// names are names of a, and the earliest matching rectangle of the
/// candidate confirms at exactly the recorded step. Omission: the first
/// `pairs_checked` pairs are all incompatible with 0^start, and start ∈ A,
/// start+1 ∉ A.
inline bool verify_da_certificate(const DAConstruction& c, const DACertificate& cert,
                                  const WitnessCandidate& cand) {
  if (cert.kind == DACertificateKind::Omission) {
    for (Nat i = 0; i < cert.pairs_checked; ++i) {
      const auto p = cand.pair_at(i);
      if (!p) return false;
      if (detail::zero_below(p->first, cert.start) && detail::zero_below(p->second, cert.start)) return false;
    }
    return c.contains(cert.start) && !c.contains(cert.start + 1);
  }
  const Name p = c.name_after(cert.w), q = c.name_after(cert.u);
  const Nat horizon = std::max<Nat>(c.prefix.size(), cert.step) + 4;
  const Word pw = p.prefix(horizon, horizon), qw = q.prefix(horizon, horizon);
  for (Nat k = 0; k < horizon; ++k)
    if ((pw[k] && !c.contains(k)) || (qw[k] && !c.contains(k))) return false;
  Nat best = kInfinity;
  for (Nat i = 0; i < cert.step; ++i) {
    const auto r = cand.pair_at(i);
    if (!r) break;
    if (is_prefix(r->first, pw) && is_prefix(r->second, qw)) best = std::min(best, detail::rectangle_step(i, r->first, r->second));
  }
  return best == cert.step;
}

// ---------------------------------------------------------------------------
// Partition variant

/// Points a, b_0, b_1, ...: names of b_i are the characteristic sequence of
/// the i-th block of ℕ \ A with finitely many 1s turned off. `block_of`
/// returns nullopt on A.
struct DAPartition {
  std::function<std::optional<Nat>(Nat)> block_of;

  /// Point 0 is a, point i+1 is b_i.
  Name name(Nat point, std::set<Nat> flipped = {}) const {
    return Name::stream([bo = block_of, point, flipped = std::move(flipped)](Nat k) -> Nat {
      if (flipped.count(k)) return 0;
      const auto b = bo(k);
      return (point == 0 ? !b.has_value() : b && *b + 1 == point) ? 1 : 0;
    });
  }

  Space space() const {
    return make_space(
        SpaceTag::DA, "D_A/partition",
        [](const Name& p) { return meta_infinitely_many_ones(p); },
        [bo = block_of](const Name& p, const Name& q) {
          auto point = [&](const Name& x) -> std::optional<Nat> {
            const Word w = x.prefix(kMetaFuel, kMetaFuel);
            for (Nat k = w.size(); k-- > 0;)
              if (w[k]) {
                const auto b = bo(k);
                return b ? *b + 1 : 0;
              }
            return std::nullopt;
          };
          return point(p) == point(q);
        });
  }

  /// Blocks are disjoint, so a shared 1 still means the same point.
  DiscretenessWitness discreteness() const { return da_discreteness(OracleSet()); }
};

inline DAPartition da_partition_variant(std::function<std::optional<Nat>(Nat)> block_of) {
  return {std::move(block_of)};
}

}  // namespace ctop::examples
