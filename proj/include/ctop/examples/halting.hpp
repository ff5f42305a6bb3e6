#pragma once

// The complement of the halting problem, and the diagonalizer against
// computable injections of discrete Hausdorff spaces into ℕ.

#include <set>

#include "ctop/spaces.hpp"
#include "ctop/stage_log.hpp"

namespace ctop::examples {

/// Confirms once program n halts on input n, refuting n ∈ ℍᶜ.
inline Observation halting_complement_refute(Nat n) {
  return Observation([prog = enumerate_program(n), n](Nat fuel) {
    const auto r = interpret(prog, n, fuel);
    return r ? Verdict::at(r->steps) : Verdict::not_yet();
  });
}

/// ℍᶜ as a subspace of ℕ; validity is approximated at the meta fuel.
inline Space halting_complement_space() {
  return make_space(
      SpaceTag::HaltingComplement, "Hc",
      [](const Name& p) {
        const auto n = p.at(0, kMetaFuel);
        return n && !halting_complement_refute(*n).observe(kMetaFuel).confirmed;
      },
      [](const Name& p, const Name& q) { return meta_head(p) == meta_head(q); });
}

// ---------------------------------------------------------------------------
// Injection diagonalizer

/// Bitmask of a finite set, or nullopt when an element does not fit.
inline std::optional<Nat> set_mask(const std::set<Nat>& s) {
  Nat mask = 0;
  for (Nat a : s) {
    if (a >= 63) return std::nullopt;
    mask |= Nat{1} << a;
  }
  return mask;
}

inline std::set<Nat> mask_set(Nat mask, Nat offset = 0) {
  std::set<Nat> out;
  for (Nat b = 0; b < 64; ++b)
    if (mask & (Nat{1} << b)) out.insert(b + offset);
  return out;
}

/// How a program acts on γ-names: at stage k ≥ 1 it is run for k steps on
/// the bitmask of the set enumerated by the first k symbols; the first
/// stage at which it halts gives the output.
struct CandidateRun {
  Nat output = 0;
  Nat stage = 0;
  friend bool operator==(const CandidateRun&, const CandidateRun&) = default;
};

inline std::optional<CandidateRun> run_candidate_on_enumeration(const ToyProgram& prog, const Name& name, Nat fuel) {
  const Word w = name.prefix(fuel, fuel);
  std::set<Nat> seen;
  for (Nat k = 1; k <= w.size(); ++k) {
    if (w[k - 1] != 0) seen.insert(w[k - 1] - 1);
    const auto mask = set_mask(seen);
    if (!mask) continue;
    if (const auto r = interpret(prog, *mask, k)) return CandidateRun{r->output, k};
  }
  return std::nullopt;
}

inline Observation candidate_halts(const ToyProgram& prog, const Name& name) {
  return Observation([prog, name](Nat fuel) {
    const auto r = run_candidate_on_enumeration(prog, name, fuel);
    return r ? Verdict::at(r->stage) : Verdict::not_yet();
  });
}

/// Names enumerating all of `all_of` denote a different point than names
/// enumerating `other`.
struct HausdorffClause {
  std::set<Nat> all_of;
  Nat other = 0;
  int phase = 0;
};

enum class DiagonalOutcome { Undefined, ConstantOrPartial, NonExtensional };

inline const char* to_string(DiagonalOutcome o) {
  switch (o) {
    case DiagonalOutcome::Undefined: return "undefined-everywhere";
    case DiagonalOutcome::ConstantOrPartial: return "constant";
    default: return "non-extensional";
  }
}

struct InjectionDiagonalization {
  Nat candidate = 0;
  int phase = 1;
  std::set<Nat> j, k, i;
  Nat m = 0, ell = 0;
  /// Two names of I on which the candidate halts with m and ℓ.
  Word name_m_prefix, name_l_prefix;
  std::vector<HausdorffClause> clauses;
  StageLog log;

  DiagonalOutcome outcome() const {
    return phase == 1 ? DiagonalOutcome::Undefined
                      : (phase == 2 ? DiagonalOutcome::ConstantOrPartial : DiagonalOutcome::NonExtensional);
  }

  /// Confirms on pairs of γ-names separated by one of the active clauses.
  HausdorffWitness witness() const {
    return {open_on_pairs([clauses = clauses](WordView l, WordView r, Nat) {
      std::set<Nat> sl, sr;
      for (Nat v : l)
        if (v) sl.insert(v - 1);
      for (Nat v : r)
        if (v) sr.insert(v - 1);
      auto covers = [](const std::set<Nat>& s, const std::set<Nat>& all) {
        return std::includes(s.begin(), s.end(), all.begin(), all.end());
      };
      for (const auto& c : clauses) {
        if (covers(sl, c.all_of) && sr.count(c.other)) return true;
        if (covers(sr, c.all_of) && sl.count(c.other)) return true;
      }
      return false;
    })};
  }

  Name name_m() const { return Name::padded(name_m_prefix); }
  Name name_l() const { return Name::padded(name_l_prefix); }
};

namespace detail {

/// γ-name listing the elements of s once, then pausing.
inline Name listing(const std::set<Nat>& s) {
  Word w;
  for (Nat a : s) w.push_back(a + 1);
  return Name::padded(std::move(w));
}

inline Word listing_word(const std::set<Nat>& s) {
  Word w;
  for (Nat a : s) w.push_back(a + 1);
  return w;
}

inline nlohmann::ordered_json set_json(const std::set<Nat>& s) { return nlohmann::ordered_json(std::vector<Nat>(s.begin(), s.end())); }

}  // namespace detail

/// Phase 1 searches nonempty finite J (by bitmask 1, 2, ...) on which the
/// candidate outputs some m; phase 2 proclaims I = {0..max J+1} and searches
/// finite nonempty K above I with an output ℓ ≠ m; phase 3 revises I to
/// J ∪ K. Both searches are dovetailed; phase 2 gets the fuel phase 1 left.
inline InjectionDiagonalization injection_diagonalizer(Nat candidate, Nat fuel) {
  const ToyProgram prog = enumerate_program(candidate);
  InjectionDiagonalization d;
  d.candidate = candidate;
  d.log.append(0, "phase", {{"phase", 1}, {"space", "{N}"}});

  const auto hit_j = dovetail_search(
      [&](Nat idx) { return candidate_halts(prog, detail::listing(mask_set(idx + 1))); }, fuel);
  if (!hit_j) {
    d.log.append(fuel, "stall", {{"phase", 1}, {"reason", "no output on any finite J"}});
    return d;
  }
  d.j = mask_set(hit_j->index + 1);
  const auto run_j = run_candidate_on_enumeration(prog, detail::listing(d.j), hit_j->inner_step);
  d.m = run_j->output;
  d.name_m_prefix = detail::listing(d.j).prefix(run_j->stage, run_j->stage);
  const Nat top = *d.j.rbegin() + 1;
  for (Nat a = 0; a <= top; ++a) d.i.insert(a);
  d.phase = 2;
  d.clauses.push_back({d.i, top + 1, 2});
  d.log.append(hit_j->step, "phase",
               {{"phase", 2}, {"J", detail::set_json(d.j)}, {"m", d.m}, {"I", detail::set_json(d.i)}, {"clause_other", top + 1}});

  const Nat offset = top + 1;
  const Nat left = fuel - hit_j->step;
  const auto hit_k = dovetail_search(
      [&](Nat idx) {
        const Name n = detail::listing(mask_set(idx + 1, offset));
        return Observation([&prog, n, m = d.m](Nat f) {
          const auto r = run_candidate_on_enumeration(prog, n, f);
          return r && r->output != m ? Verdict::at(r->stage) : Verdict::not_yet();
        });
      },
      left);
  if (!hit_k) {
    d.log.append(fuel, "stall", {{"phase", 2}, {"reason", "constant m on every K searched"}, {"m", d.m}});
    return d;
  }
  d.k = mask_set(hit_k->index + 1, offset);
  const auto run_k = run_candidate_on_enumeration(prog, detail::listing(d.k), hit_k->inner_step);
  d.ell = run_k->output;
  d.name_l_prefix = detail::listing(d.k).prefix(run_k->stage, run_k->stage);
  d.i = d.j;
  d.i.insert(d.k.begin(), d.k.end());
  d.phase = 3;
  d.clauses.push_back({d.i, *d.k.rbegin() + 1, 3});
  // Extend both read prefixes to names of I = J ∪ K.
  for (Nat a : d.k) d.name_m_prefix.push_back(a + 1);
  for (Nat a : d.j) d.name_l_prefix.push_back(a + 1);
  d.log.append(hit_j->step + hit_k->step, "phase",
               {{"phase", 3}, {"K", detail::set_json(d.k)}, {"l", d.ell}, {"I", detail::set_json(d.i)},
                {"clause_other", *d.k.rbegin() + 1}});
  return d;
}

/// Replays a phase-3 certificate: both names enumerate I, the candidate
/// halts on them with m ≠ ℓ.
inline bool verify_injection_certificate(const InjectionDiagonalization& d, Nat fuel) {
  if (d.phase != 3) return false;
  const ToyProgram prog = enumerate_program(d.candidate);
  const auto a = run_candidate_on_enumeration(prog, d.name_m(), fuel);
  const auto b = run_candidate_on_enumeration(prog, d.name_l(), fuel);
  auto enumerated = [](const Word& w) {
    std::set<Nat> s;
    for (Nat v : w)
      if (v) s.insert(v - 1);
    return s;
  };
  return a && b && a->output == d.m && b->output == d.ell && d.m != d.ell && enumerated(d.name_m_prefix) == d.i &&
         enumerated(d.name_l_prefix) == d.i;
}

}  // namespace ctop::examples
