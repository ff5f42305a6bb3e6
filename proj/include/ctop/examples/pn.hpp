#pragma once

// pℕ: the point n has the single name 0^n 1 p for a fixed oracle stream p.
// ℕ′: δ(q) = q(bb(q(0))) for a busy-beaver table bb.

#include "ctop/oracles.hpp"
#include "ctop/spaces.hpp"

namespace ctop::examples {

/// p is read from a finite word, continued by 0s.
class PNSpace {
 public:
  explicit PNSpace(Word p) : p_(std::move(p)) {}

  const Word& oracle() const { return p_; }
  Name name(Nat n) const {
    Word head(n, 0);
    head.push_back(1);
    head.insert(head.end(), p_.begin(), p_.end());
    return Name::padded(std::move(head));
  }

  /// Position of the first 1, if the prefix shows it.
  static std::optional<Nat> zero_run(WordView w) {
    for (Nat k = 0; k < w.size(); ++k)
      if (w[k] == 1) return k;
    return std::nullopt;
  }

  static DiscretenessWitness discreteness() {
    return {open_on_pairs([](WordView l, WordView r, Nat) {
      const auto a = zero_run(l), b = zero_run(r);
      return a && b && *a == *b;
    })};
  }

  /// Distinct as soon as one run has ended where the other has not.
  static HausdorffWitness hausdorff() {
    return {open_on_pairs([](WordView l, WordView r, Nat) {
      const auto a = zero_run(l), b = zero_run(r);
      return (a && r.size() > *a && b != a) || (b && l.size() > *b && a != b);
    })};
  }

  /// Relative to p: feeds 0^n 1 p into the open, dovetailing over n.
  OvertCode overt() const {
    return {[self = *this](const OpenSetCode& u) {
      return Observation([self, u](Nat fuel) -> Verdict {
        const auto hit = dovetail_search([&](Nat n) { return u.member(self.name(n)); }, fuel);
        return hit ? Verdict::at(hit->step) : Verdict::not_yet();
      });
    }};
  }

  /// Index of the probe that confirmed, with its fuel.
  std::optional<DovetailHit> overt_probe(const OpenSetCode& u, Nat fuel) const {
    return dovetail_search([&](Nat n) { return u.member(name(n)); }, fuel);
  }

  Space space() const {
    return make_space(
        SpaceTag::PN, "pN",
        [p = p_](const Name& q) {
          const Word w = q.prefix(kMetaFuel, kMetaFuel);
          const auto n = zero_run(w);
          if (!n) return false;
          for (Nat k = *n + 1; k < w.size(); ++k) {
            const Nat i = k - *n - 1;
            if (w[k] != (i < p.size() ? p[i] : 0)) return false;
          }
          return true;
        },
        [](const Name& a, const Name& b) {
          return zero_run(a.prefix(kMetaFuel, kMetaFuel)) == zero_run(b.prefix(kMetaFuel, kMetaFuel));
        });
  }

 private:
  Word p_;
};

inline PNSpace pn_space(Word p) { return PNSpace(std::move(p)); }

/// ℕ′ over an audited busy-beaver table.
class NPrimeSpace {
 public:
  explicit NPrimeSpace(BBTable bb) : bb_(std::move(bb)) {}

  const BBTable& bb() const { return bb_; }

  /// q(bb(q(0))); throws CutoffExceeded past the table.
  std::optional<Nat> decode(const Name& q, Nat fuel) const {
    const auto m = q.at(0, fuel);
    if (!m) return std::nullopt;
    return q.at(bb_.at(*m), fuel);
  }

  /// n^ω names n whatever bb(n) is.
  static Name encode(Nat n) { return Name::constant(n); }

  /// Realizer of U = {0}: accepts q once q(bb(q(0))) = 0 is readable.
  OpenSetCode canonical_zero_realizer() const {
    return OpenSetCode([bb = bb_](WordView w, Nat) {
      if (w.empty()) return false;
      const Nat pos = bb.at(w[0]);
      return w.size() > pos && w[pos] == 0;
    });
  }

  /// Confirmation fuel of m n^ω, claimed as an upper bound for BB(m) when
  /// U is neither empty nor everything and n ∈ U.
  static std::optional<Nat> bound_extractor(const OpenSetCode& u, Nat m, Nat n, Nat fuel) {
    const Verdict v = u.member(Name::word_then({m}, Name::constant(n))).observe(fuel);
    return v.confirmed ? std::optional<Nat>(v.step) : std::nullopt;
  }

  Space space() const {
    return make_space(
        SpaceTag::NPrime, "N'", [bb = bb_](const Name& q) { return q.at(0, kMetaFuel) && *q.at(0, kMetaFuel) <= bb.cutoff; },
        [self = *this](const Name& a, const Name& b) { return self.decode(a, kMetaFuel) == self.decode(b, kMetaFuel); });
  }

 private:
  BBTable bb_;
};

inline NPrimeSpace nprime_space(BBTable bb) { return NPrimeSpace(std::move(bb)); }

}  // namespace ctop::examples
