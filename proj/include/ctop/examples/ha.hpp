#pragma once

// H_A = {a, b}. A name is a head n followed by a tail in γ format (0 pauses,
// v+1 lists v). If n ∉ A the tail enumerates A and the name denotes a; if
// n ∈ A the tail enumerates some subset of ℕ \ A and the name denotes b.

#include "ctop/oracles.hpp"
#include "ctop/spaces.hpp"

namespace ctop::examples {

inline Name ha_name(Nat head, Name tail) { return Name::word_then({head}, std::move(tail)); }

namespace detail {

inline bool enumerates(WordView e, Nat v) { return std::find(e.begin(), e.end(), v + 1) != e.end(); }

inline bool tail_lists(WordView w, Nat v) {
  for (std::size_t k = 1; k < w.size(); ++k)
    if (w[k] == v + 1) return true;
  return false;
}

}  // namespace detail

/// H_A with A nonempty and proper, both checked on [0, kMetaFuel).
class HASpace {
 public:
  explicit HASpace(OracleSet a) : a_(std::move(a)) {
    for (Nat n = 0; n < kMetaFuel && (!member_ || !non_member_); ++n)
      (a_.contains(n) ? member_ : non_member_) = n;
    if (!member_) throw PreconditionViolated("H_A needs A nonempty");
    if (!non_member_) throw PreconditionViolated("H_A needs A proper");
  }

  const OracleSet& oracle() const { return a_; }

  /// Head n ∉ A, tail listing A in increasing order.
  Name canonical_a() const { return ha_name(*non_member_, a_.enumeration()); }
  /// Head n ∈ A, empty tail.
  Name canonical_b() const { return ha_name(*member_, Name::constant(0)); }

  Name a_name(Nat head, Name enumeration_of_a) const {
    if (a_.contains(head)) throw PreconditionViolated("head of an a-name lies in A");
    return ha_name(head, std::move(enumeration_of_a));
  }
  Name b_name(Nat head, std::set<Nat> tail = {}) const {
    if (!a_.contains(head)) throw PreconditionViolated("head of a b-name lies outside A");
    for (Nat v : tail)
      if (a_.contains(v)) throw PreconditionViolated("tail of a b-name meets A");
    return ha_name(head, gamma_encode(tail));
  }

  Space space() const {
    return make_space(
        SpaceTag::HA, "H_A",
        [a = a_](const Name& p) {
          const Word w = p.prefix(kMetaFuel, kMetaFuel);
          if (w.empty()) return false;
          const bool in_a = a.contains(w[0]);
          for (std::size_t k = 1; k < w.size(); ++k)
            if (w[k] != 0 && a.contains(w[k] - 1) != !in_a) return false;
          return true;
        },
        [a = a_](const Name& p, const Name& q) { return a.contains(meta_head(p)) == a.contains(meta_head(q)); });
  }

 private:
  OracleSet a_;
  std::optional<Nat> member_, non_member_;
};

inline HASpace ha_space(OracleSet a) { return HASpace(std::move(a)); }

/// Confirms once one head is listed in the other tail.
inline HausdorffWitness ha_hausdorff(const HASpace& /*unused*/) {
  return {open_on_pairs([](WordView l, WordView r, Nat) {
    if (l.empty() || r.empty()) return false;
    return detail::tail_lists(l, r[0]) || detail::tail_lists(r, l[0]);
  })};
}

/// Enumerations of A and open codes of {b} translate into each other.
struct HAMedvedev {
  HASpace space;

  /// Accepts (n, V) once n shows up in the enumeration of A.
  OpenSetCode forward(Name enumeration_of_a) const {
    return OpenSetCode::on_head([e = std::move(enumeration_of_a)](Nat n, Nat budget) {
      return detail::enumerates(e.prefix(budget, budget), n);
    });
  }

  /// Lists n at stage t when the code accepts (n, empty tail) within t.
  Name reverse(const OpenSetCode& singleton_b) const {
    return enumeration_name([singleton_b](Nat n, Nat t) {
      return singleton_b.member(ha_name(n, Name::constant(0))).observe(t).confirmed;
    });
  }
};

inline HAMedvedev ha_medvedev(OracleSet a) { return {HASpace(std::move(a))}; }

/// U_k accepts (n, V) once n is listed by the complement enumeration and k
/// is listed in V. U_k meets H_A iff k ∈ A, so probing U_k with the overt
/// code enumerates A: k appears at ⟨k, t⟩ when the probe confirms within t.
inline Name ha_overt_to_cototal(const OvertCode& overt, const Name& complement_enumeration) {
  if (!has_nonzero(complement_enumeration.prefix(kMetaFuel, kMetaFuel)))
    throw PreconditionViolated("complement enumeration lists nothing: A is not proper");
  auto u = [complement_enumeration](Nat k) {
    return OpenSetCode([k, ce = complement_enumeration](WordView w, Nat budget) {
      if (w.empty() || !detail::tail_lists(w, k)) return false;
      return detail::enumerates(ce.prefix(budget, budget), w[0]);
    });
  };
  return enumeration_name([overt, u](Nat k, Nat t) { return overt.meets(u(k), t).confirmed; });
}

/// Overt code of H_A that probes the two canonical names.
inline OvertCode ha_reference_overt(const HASpace& h) {
  return {[a = h.canonical_a(), b = h.canonical_b()](const OpenSetCode& u) { return either(u.member(a), u.member(b)); }};
}

/// Candidate Hausdorff witness sequence built from an enumeration that may
/// list only part of A: {b} is approximated by "head listed", {a} by "tail
/// lists something listed". Rectangle 0 is {a} × {b}, rectangle 1 the
/// transpose; every other index is empty.
inline HausdorffWitnessSequence ha_witness_sequence(Name partial_enumeration) {
  auto listed = [e = std::move(partial_enumeration)](Nat v, Nat budget) {
    return detail::enumerates(e.prefix(budget, budget), v);
  };
  const OpenSetCode b_open = OpenSetCode::on_head([listed](Nat n, Nat budget) { return listed(n, budget); });
  const OpenSetCode a_open([listed](WordView w, Nat budget) {
    for (std::size_t k = 1; k < w.size(); ++k)
      if (w[k] != 0 && listed(w[k] - 1, budget)) return true;
    return false;
  });
  return {[a_open, b_open](Nat i) { return i == 0 ? a_open : (i == 1 ? b_open : OpenSetCode::nothing()); },
          [a_open, b_open](Nat i) { return i == 0 ? b_open : (i == 1 ? a_open : OpenSetCode::nothing()); }};
}

}  // namespace ctop::examples
