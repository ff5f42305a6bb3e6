#pragma once

// Ideal spaces of c.e. transitive relations: prefix validation and the
// ideals induced by a ceer.

#include <array>
#include <set>
#include <utility>
#include <vector>

#include "ctop/ceers.hpp"

namespace ctop {

using NatPair = std::pair<Nat, Nat>;

/// x ≪ y pairs enumerated within fuel; monotone in fuel.
class RelationPresentation {
 public:
  using Source = std::function<std::set<NatPair>(Nat fuel)>;

  RelationPresentation() : RelationPresentation([](Nat) { return std::set<NatPair>{}; }) {}
  explicit RelationPresentation(Source source) : source_(std::move(source)) {}

  std::set<NatPair> pairs(Nat fuel) const { return source_(fuel); }

  /// The i-th pair is visible from fuel i+1.
  static RelationPresentation from_pairs(std::vector<NatPair> list) {
    return RelationPresentation([list = std::move(list)](Nat fuel) {
      std::set<NatPair> out;
      for (Nat i = 0; i < list.size() && i < fuel; ++i) out.insert(list[i]);
      return out;
    });
  }

 private:
  Source source_;
};

/// Triples x ≪ y ≪ z seen at fuel without x ≪ z.
inline std::vector<std::array<Nat, 3>> transitivity_violations(const RelationPresentation& rel, Nat fuel) {
  const auto ps = rel.pairs(fuel);
  std::vector<std::array<Nat, 3>> out;
  for (const auto& [x, y] : ps)
    for (auto it = ps.lower_bound({y, 0}); it != ps.end() && it->first == y; ++it)
      if (!ps.count({x, it->second})) out.push_back({x, y, it->second});
  return out;
}

/// Outstanding obligations of the set S enumerated by a prefix.
///   pending_down: x ≪ y with y ∈ S and x ∉ S.
///   pending_directed: x < y in S without a seen z ∈ S above both.
struct IdealObligations {
  std::set<NatPair> pending_down;
  std::set<NatPair> pending_directed;
  bool empty_set = true;

  bool no_violation() const { return pending_down.empty() && pending_directed.empty(); }
  /// Nonempty with nothing outstanding.
  bool settled() const { return no_violation() && !empty_set; }
};

/// I = { p(k) | k }: a prefix enumerates the set of its symbols.
inline IdealObligations validate_ideal_prefix(const RelationPresentation& rel, WordView prefix, Nat fuel) {
  const std::set<Nat> s(prefix.begin(), prefix.end());
  const auto ps = rel.pairs(fuel);
  IdealObligations ob;
  ob.empty_set = s.empty();
  for (const auto& [x, y] : ps)
    if (s.count(y) && !s.count(x)) ob.pending_down.insert({x, y});
  for (auto a = s.begin(); a != s.end(); ++a)
    for (auto b = std::next(a); b != s.end(); ++b) {
      const bool bounded = std::any_of(s.begin(), s.end(), [&](Nat z) { return ps.count({*a, z}) && ps.count({*b, z}); });
      if (!bounded) ob.pending_directed.insert({*a, *b});
    }
  return ob;
}

/// ≪ := R: at fuel f, (n, n) for n < f and every pair within a class of the
/// saturation at f. Its ideals are exactly the R-classes.
inline RelationPresentation ceer_to_ideal_space(const CeerPresentation& pres) {
  return RelationPresentation([pres](Nat fuel) {
    std::set<NatPair> out;
    for (Nat n = 0; n < fuel; ++n) out.insert({n, n});
    for (const auto& [root, members] : saturate(pres, fuel).classes())
      for (Nat a : members)
        for (Nat b : members) out.insert({a, b});
    return out;
  });
}

}  // namespace ctop
