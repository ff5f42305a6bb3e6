#pragma once

// Ceer presentations, saturation, quotient spaces ℕ/R and the constructions
// around discreteness of countable spaces.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "ctop/kernel.hpp"
#include "ctop/spaces.hpp"

namespace ctop {

// ---------------------------------------------------------------------------
// Presentations

/// Generator pair that becomes visible once fuel reaches `step`.
struct TimedPair {
  Nat m = 0;
  Nat n = 0;
  Nat step = 0;
  friend bool operator==(const TimedPair&, const TimedPair&) = default;
};

/// A stream of generator pairs. generators(f) lists every pair with step
/// ≤ f, ordered by step and then by emission order; generators(f) is a
/// prefix of generators(f') for f ≤ f'.
class CeerPresentation {
 public:
  using Source = std::function<std::vector<TimedPair>(Nat fuel)>;

  CeerPresentation() : CeerPresentation([](Nat) { return std::vector<TimedPair>{}; }) {}
  explicit CeerPresentation(Source source) : source_(std::make_shared<Source>(std::move(source))) {}

  std::vector<TimedPair> generators(Nat fuel) const { return (*source_)(fuel); }

  /// The i-th pair is visible from fuel i+1.
  static CeerPresentation from_pairs(std::vector<std::pair<Nat, Nat>> pairs) {
    return CeerPresentation([pairs = std::move(pairs)](Nat fuel) {
      std::vector<TimedPair> out;
      for (Nat i = 0; i < pairs.size() && i < fuel; ++i) out.push_back({pairs[i].first, pairs[i].second, i + 1});
      return out;
    });
  }

  /// Runs the program on inputs 0, 1, 2, ... under the dovetail schedule;
  /// each halting run contributes unpair(output).
  static CeerPresentation from_program(ToyProgram prog) {
    prog.validate();
    return CeerPresentation([prog = std::move(prog)](Nat fuel) {
      std::vector<std::pair<Nat, TimedPair>> found;
      for (Nat i = 0; i + 2 <= fuel; ++i) {
        const auto r = interpret(prog, i, dovetail_share(fuel, i));
        if (!r) continue;
        const auto [m, n] = unpair(r->output);
        found.push_back({i, TimedPair{m, n, dovetail_cost(i, r->steps)}});
      }
      std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        return a.second.step != b.second.step ? a.second.step < b.second.step : a.first < b.first;
      });
      std::vector<TimedPair> out;
      for (const auto& [i, p] : found) out.push_back(p);
      return out;
    });
  }

 private:
  std::shared_ptr<Source> source_;
};

// ---------------------------------------------------------------------------
// Closure engine

/// Union-find over the naturals seen so far. Class roots are class minima,
/// so the representative of a class does not depend on merge order.
class ClosureState {
 public:
  Nat find(Nat n) const {
    Nat root = n;
    for (auto it = parent_.find(root); it != parent_.end() && it->second != root; it = parent_.find(root))
      root = it->second;
    // path compression
    for (Nat cur = n; cur != root;) {
      Nat& p = parent_[cur];
      const Nat next = p;
      p = root;
      cur = next;
    }
    return root;
  }

  bool same(Nat a, Nat b) const { return find(a) == find(b); }

  /// Consumes one generator; returns whether two classes merged.
  bool consume(const TimedPair& g) {
    ++cursor_;
    log_.push_back("fuel=" + std::to_string(g.step) + " merge " + std::to_string(g.m) + " " + std::to_string(g.n));
    seen_.insert(g.m);
    seen_.insert(g.n);
    const Nat a = find(g.m), b = find(g.n);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    parent_.try_emplace(std::min(a, b), std::min(a, b));
    return true;
  }

  /// Generators consumed so far.
  Nat cursor() const { return cursor_; }
  const std::vector<std::string>& event_log() const { return log_; }

  /// Nontrivial classes among the naturals that occurred in generators,
  /// keyed by their minimum.
  std::map<Nat, std::vector<Nat>> classes() const {
    std::map<Nat, std::vector<Nat>> out;
    for (Nat n : seen_) out[find(n)].push_back(n);
    return out;
  }

 private:
  mutable std::map<Nat, Nat> parent_;
  std::set<Nat> seen_;
  Nat cursor_ = 0;
  std::vector<std::string> log_;
};

/// Closure of the generators visible at `fuel`.
inline ClosureState saturate(const CeerPresentation& pres, Nat fuel) {
  ClosureState s;
  for (const auto& g : pres.generators(fuel)) s.consume(g);
  return s;
}

/// Confirmed at the step of the generator whose union first puts n and m
/// in one class. Saturation bound: if (a,b) and (b,c) confirm by fuel f then
/// (a,c) confirms by f.
inline Observation ceer_equal(const CeerPresentation& pres, Nat n, Nat m) {
  if (n == m) return Observation::confirmed_at(0);
  return Observation([pres, n, m](Nat fuel) {
    ClosureState s;
    for (const auto& g : pres.generators(fuel)) {
      s.consume(g);
      if (s.same(n, m)) return Verdict::at(g.step);
    }
    return Verdict::not_yet();
  });
}

// ---------------------------------------------------------------------------
// Quotient spaces

/// ℕ/R: any p with p(0) R n names [n].
inline Space quotient_space(const CeerPresentation& pres, Nat meta_fuel = kMetaFuel) {
  return make_space(
      SpaceTag::CeerQuotient, "N/R", [](const Name& p) { return p.at(0, kMetaFuel).has_value(); },
      [pres, meta_fuel](const Name& p, const Name& q) {
        return ceer_equal(pres, meta_head(p), meta_head(q)).observe(meta_fuel).confirmed;
      });
}

/// {[m]}, open because ℕ/R is discrete.
inline OpenSetCode quotient_singleton(const CeerPresentation& pres, Nat m) {
  return OpenSetCode::on_head([pres, m](Nat head, Nat budget) { return ceer_equal(pres, head, m).observe(budget).confirmed; });
}

inline DiscretenessWitness quotient_discreteness(const CeerPresentation& pres) {
  return {open_on_pairs([pres](WordView l, WordView r, Nat budget) {
    return !l.empty() && !r.empty() && ceer_equal(pres, l[0], r[0]).observe(budget).confirmed;
  })};
}

/// Neighbourhood filter of a point, as a map O(X) → 𝕊.
using FilterCode = std::function<Observation(const OpenSetCode&)>;

/// Filter of [n] read off the name n^ω.
inline FilterCode canonical_filter(Nat n) {
  return [n](const OpenSetCode& u) { return u.member(nat_name(n)); };
}

/// Searches some m with {[m]} in the filter; the first one confirmed under
/// the dovetail schedule is returned.
inline Nat quotient_admissibility_decode(const CeerPresentation& pres, const FilterCode& filter, Nat fuel) {
  const auto hit = dovetail_search([&](Nat m) { return filter(quotient_singleton(pres, m)); }, fuel);
  if (!hit) throw FuelExhausted("no class accepted by the filter within fuel " + std::to_string(fuel));
  return hit->index;
}

// ---------------------------------------------------------------------------
// Countable discrete spaces with total representations

/// Words w, in code order, on which E writes its first 1 while reading
/// (w, w): the run on the interleaving of (w, w) has a 1 and the run on
/// that of (w', w') for the one-shorter prefix w' has none.
inline std::vector<Word> extract_equality_prefixes(const Transducer& e, Nat fuel) {
  std::vector<Word> out;
  auto fires = [&](WordView w) { return has_nonzero(e.run(interleave_words(w, w), fuel)); };
  for (Nat j = 0; j < fuel; ++j) {
    const Word w = decode_word(j);
    if (w.empty() || w.size() > fuel) continue;
    if (fires(w) && !fires(WordView(w).first(w.size() - 1))) out.push_back(w);
  }
  return out;
}

/// i ↦ the point named by w_i 0^ω.
using Surjection = std::function<Name(Nat)>;

inline Surjection surjection_from_prefixes(std::vector<Word> ws) {
  return [ws = std::move(ws)](Nat i) {
    if (i >= ws.size())
      throw IndexUnavailable("prefix " + std::to_string(i) + " not emitted (" + std::to_string(ws.size()) + " available)");
    return Name::padded(ws[i], 0);
  };
}

/// ℕ/≅ ≅ X for n ≅ m iff s(n) = s(m).
struct QuotientIso {
  Surjection s;
  DiscretenessWitness d;

  Name phi(Nat n) const { return s(n); }

  /// Some n with s(n) = x, first confirmed under the dovetail schedule.
  Nat phi_inverse(const Name& x, Nat fuel) const {
    const auto hit = dovetail_search([&](Nat n) { return d.equal(s(n), x); }, fuel);
    if (!hit) throw FuelExhausted("no preimage found within fuel " + std::to_string(fuel));
    return hit->index;
  }

  /// The ceer ≅ itself.
  Observation equivalent(Nat n, Nat m) const { return d.equal(s(n), s(m)); }
};

inline QuotientIso iso_with_quotient(Surjection s, DiscretenessWitness d) { return {std::move(s), std::move(d)}; }

/// S = { n | s(i) ≠ s(n) for all i < n } from a total equality table on
/// indices; points are given by s-indices.
class DecidableInjection {
 public:
  DecidableInjection(std::function<bool(Nat, Nat)> eq, Nat search_bound)
      : eq_(std::move(eq)), bound_(search_bound) {}

  bool in_s(Nat n) const {
    for (Nat i = 0; i < n; ++i)
      if (eq_(i, n)) return false;
    return true;
  }

  /// The k-th element of S.
  Nat sigma(Nat k) const {
    Nat count = 0;
    for (Nat n = 0; n < bound_; ++n) {
      if (!in_s(n)) continue;
      if (count == k) return n;
      ++count;
    }
    throw NotInfinite("S has only " + std::to_string(count) + " elements below " + std::to_string(bound_));
  }

  /// ι(s(n)): the element of S denoting the same point.
  Nat iota(Nat n) const {
    for (Nat i = 0; i <= n; ++i)
      if (eq_(i, n)) return i;
    return n;
  }

  /// |S ∩ [0, bound)|.
  Nat size_below_bound() const {
    Nat count = 0;
    for (Nat n = 0; n < bound_; ++n) count += in_s(n) ? 1 : 0;
    return count;
  }

 private:
  std::function<bool(Nat, Nat)> eq_;
  Nat bound_;
};

inline DecidableInjection injection_when_decidable(std::function<bool(Nat, Nat)> eq, Nat search_bound) {
  return DecidableInjection(std::move(eq), search_bound);
}

// ---------------------------------------------------------------------------
// A ceer whose quotient has no nontrivial decidable property

/// Outcome of the two-stage search for vertex n.
struct DiagonalVertex {
  std::optional<Halted> own;       // P_n on n
  std::optional<Nat> target;       // m with n R m
  std::optional<Halted> at_target; // P_n on m
  Nat search_step = 0;             // dovetail step of the chosen m
};

namespace detail {

/// Candidate order for the second stage: every m ≠ n, increasing.
inline Nat diagonal_candidate(Nat n, Nat j) { return j < n ? j : j + 1; }

inline DiagonalVertex diagonal_vertex(Nat n, Nat budget) {
  DiagonalVertex v;
  const ToyProgram prog = enumerate_program(n);
  v.own = interpret(prog, n, budget);
  if (!v.own) return v;
  const Nat a_n = v.own->output;
  const auto hit = dovetail_search(
      [&](Nat j) {
        const Nat m = diagonal_candidate(n, j);
        return Observation([&prog, m, a_n](Nat f) {
          const auto r = interpret(prog, m, f);
          return r && r->output != a_n ? Verdict::at(r->steps) : Verdict::not_yet();
        });
      },
      budget);
  if (!hit) return v;
  v.target = diagonal_candidate(n, hit->index);
  v.at_target = interpret(prog, *v.target, budget);
  v.search_step = hit->step;
  return v;
}

}  // namespace detail

/// Edges n → m of the ceer; vertex n is searched with `vertex_budget` and
/// its edge becomes visible at stream fuel n+1. Results are memoized.
class DiagonalCeer {
 public:
  explicit DiagonalCeer(Nat vertex_budget) : state_(std::make_shared<State>()) { state_->budget = vertex_budget; }

  Nat vertex_budget() const { return state_->budget; }

  const DiagonalVertex& vertex(Nat n) const {
    std::lock_guard lock(state_->mutex);
    auto& memo = state_->memo;
    auto it = memo.find(n);
    if (it == memo.end()) it = memo.emplace(n, detail::diagonal_vertex(n, state_->budget)).first;
    return it->second;
  }

  CeerPresentation presentation() const {
    return CeerPresentation([self = *this](Nat fuel) {
      std::vector<TimedPair> out;
      for (Nat n = 0; n < fuel; ++n) {
        const auto& v = self.vertex(n);
        if (v.target) out.push_back({n, *v.target, n + 1});
      }
      return out;
    });
  }

 private:
  struct State {
    Nat budget = 0;
    std::mutex mutex;
    std::map<Nat, DiagonalVertex> memo;
  };
  std::shared_ptr<State> state_;
};

inline CeerPresentation example35_ceer(Nat vertex_budget) { return DiagonalCeer(vertex_budget).presentation(); }

enum class CertificateKind { NonTotal, Constant, NonExtensional, Inconclusive };

inline const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::NonTotal: return "NonTotal";
    case CertificateKind::Constant: return "Constant";
    case CertificateKind::NonExtensional: return "NonExtensional";
    default: return "Inconclusive";
  }
}

/// Why candidate P_c is not a nonconstant decidable property of ℕ/R.
///   NonTotal: P_c does not halt on `point` within `fuel`.
///   Constant: P_c outputs `value` on every m in [0, samples).
///   NonExtensional: point R other, P_c gives `value` and `other_value`.
struct FailureCertificate {
  CertificateKind kind = CertificateKind::Inconclusive;
  Nat candidate = 0;
  Nat point = 0;
  Nat other = 0;
  Nat value = 0;
  Nat other_value = 0;
  Nat samples = 0;
  Nat fuel = 0;
  Nat merge_step = 0;
};

inline FailureCertificate check_no_decidable_property(const DiagonalCeer& ceer, Nat candidate, Nat samples) {
  FailureCertificate c;
  c.candidate = candidate;
  c.point = candidate;
  c.fuel = ceer.vertex_budget();
  const auto& v = ceer.vertex(candidate);
  if (!v.own) {
    c.kind = CertificateKind::NonTotal;
    return c;
  }
  c.value = v.own->output;
  if (v.target && v.at_target) {
    c.kind = CertificateKind::NonExtensional;
    c.other = *v.target;
    c.other_value = v.at_target->output;
    c.merge_step = ceer_equal(ceer.presentation(), c.point, c.other).observe(candidate + 1).step;
    return c;
  }
  const ToyProgram prog = enumerate_program(candidate);
  for (Nat m = 0; m < samples; ++m) {
    const auto r = interpret(prog, m, c.fuel);
    if (!r || r->output != c.value) return c;  // Inconclusive
  }
  c.kind = CertificateKind::Constant;
  c.samples = samples;
  return c;
}

/// Re-derives a certificate from the interpreter and the closure engine.
inline bool verify_certificate(const DiagonalCeer& ceer, const FailureCertificate& c) {
  const ToyProgram prog = enumerate_program(c.candidate);
  switch (c.kind) {
    case CertificateKind::NonTotal:
      return !interpret(prog, c.point, c.fuel).has_value();
    case CertificateKind::Constant:
      for (Nat m = 0; m < c.samples; ++m) {
        const auto r = interpret(prog, m, c.fuel);
        if (!r || r->output != c.value) return false;
      }
      return c.samples > 0;
    case CertificateKind::NonExtensional: {
      const auto a = interpret(prog, c.point, c.fuel), b = interpret(prog, c.other, c.fuel);
      const Verdict merged = ceer_equal(ceer.presentation(), c.point, c.other).observe(std::max(c.point, c.other) + 1);
      return a && b && a->output == c.value && b->output == c.other_value && a->output != b->output &&
             merged.confirmed && merged.step == c.merge_step;
    }
    default:
      return true;
  }
}

// ---------------------------------------------------------------------------
// Inseparability probe

enum class SeparatorVerdict { SeparatorNonTotal, SeparatorNonExtensional, SeparatesOnSamples };

inline const char* to_string(SeparatorVerdict v) {
  switch (v) {
    case SeparatorVerdict::SeparatorNonTotal: return "SeparatorNonTotal";
    case SeparatorVerdict::SeparatorNonExtensional: return "SeparatorNonExtensional";
    default: return "SeparatesOnSamples";
  }
}

struct SeparatorReport {
  SeparatorVerdict verdict = SeparatorVerdict::SeparatesOnSamples;
  Nat n = 0;                  // non-halting point, or first of a merged pair
  Nat m = 0;
  std::vector<Nat> class_a;   // sampled members of [a]
  std::vector<Nat> class_b;
  bool separates = false;     // outputs 0 on class_a and 1 on class_b
};

/// Runs P_sep on the members of [a] and [b] below `samples` that are merged
/// at `fuel`.
inline SeparatorReport inseparability_probe(const CeerPresentation& pres, Nat a, Nat b, Nat separator, Nat fuel,
                                            Nat samples) {
  if (ceer_equal(pres, a, b).observe(fuel).confirmed)
    throw PreconditionViolated("classes " + std::to_string(a) + " and " + std::to_string(b) + " are merged");
  const ClosureState closure = saturate(pres, fuel);
  const ToyProgram prog = enumerate_program(separator);
  SeparatorReport rep;
  for (Nat k = 0; k < samples; ++k) {
    if (closure.same(k, a)) rep.class_a.push_back(k);
    if (closure.same(k, b)) rep.class_b.push_back(k);
  }
  std::map<Nat, Nat> outputs;
  for (const auto& members : {rep.class_a, rep.class_b}) {
    std::optional<std::pair<Nat, Nat>> first;
    for (Nat k : members) {
      const auto r = interpret(prog, k, fuel);
      if (!r) {
        rep.verdict = SeparatorVerdict::SeparatorNonTotal;
        rep.n = k;
        return rep;
      }
      outputs[k] = r->output;
      if (!first) first = {k, r->output};
      else if (first->second != r->output) {
        rep.verdict = SeparatorVerdict::SeparatorNonExtensional;
        rep.n = first->first;
        rep.m = k;
        return rep;
      }
    }
  }
  rep.separates = !rep.class_a.empty() && !rep.class_b.empty() && outputs[rep.class_a.front()] == 0 &&
                  outputs[rep.class_b.front()] == 1;
  return rep;
}

}  // namespace ctop
