#pragma once

// Finite spaces: injections into {0..n-1} from fibre-overtness, and from a
// bijection plus a discreteness or Hausdorff witness.

#include <variant>

#include "ctop/spaces.hpp"

namespace ctop::examples {

/// Cylinder [w] of Baire space.
inline OpenSetCode cylinder(Word w) {
  return OpenSetCode([w = std::move(w)](WordView p, Nat) { return p.size() >= w.size() && is_prefix(w, p); });
}

/// x ↦ the unique i such that x has a name extending prefixes[i], found by
/// asking the fibre of x about each cylinder. The earliest confirmation
/// wins; ties go to the lower index.
inline std::function<Nat(const Name&, Nat)> finite_injection(FibreOvertRep rep, std::vector<Word> prefixes) {
  return [rep = std::move(rep), prefixes = std::move(prefixes)](const Name& x, Nat fuel) -> Nat {
    if (prefixes.size() == 1) return 0;
    const OvertCode fibre = rep.fibre_closure(rep.preimage(x));
    std::optional<std::pair<Nat, Nat>> best;  // (step, index)
    for (Nat i = 0; i < prefixes.size(); ++i) {
      const Verdict v = fibre.meets(cylinder(prefixes[i]), fuel);
      if (v.confirmed && (!best || v.step < best->first)) best = std::pair{v.step, i};
    }
    if (!best) throw FuelExhausted("no cylinder confirmed within fuel " + std::to_string(fuel));
    return best->second;
  };
}

using SeparationWitness = std::variant<DiscretenessWitness, HausdorffWitness>;

/// x ↦ s⁻¹(x). Discrete: the first i with s(i) = x confirmed. Hausdorff: the
/// one index left after n-1 inequalities are confirmed.
inline std::function<Nat(const Name&, Nat)> bijection_upgrade(std::vector<Name> s, SeparationWitness witness) {
  return [s = std::move(s), witness = std::move(witness)](const Name& x, Nat fuel) -> Nat {
    const Nat n = s.size();
    if (n == 1) return 0;
    if (const auto* d = std::get_if<DiscretenessWitness>(&witness)) {
      std::optional<std::pair<Nat, Nat>> best;
      for (Nat i = 0; i < n; ++i) {
        const Verdict v = d->equal(s[i], x).observe(fuel);
        if (v.confirmed && (!best || v.step < best->first)) best = std::pair{v.step, i};
      }
      if (!best) throw FuelExhausted("no equality confirmed within fuel " + std::to_string(fuel));
      return best->second;
    }
    const auto& h = std::get<HausdorffWitness>(witness);
    std::vector<Nat> left;
    for (Nat j = 0; j < n; ++j)
      if (!h.distinct(s[j], x).observe(fuel).confirmed) left.push_back(j);
    if (left.size() != 1)
      throw FuelExhausted(std::to_string(n - left.size()) + " of " + std::to_string(n - 1) +
                          " inequalities confirmed within fuel " + std::to_string(fuel));
    return left.front();
  };
}

}  // namespace ctop::examples
