#pragma once

// S_A = {(n, ⊤) | n ∈ A} ∪ {(n, ⊥) | n ∉ A} as a subspace of ℕ × 𝕊.
// Names interleave an ℕ-name with a Sierpinski flag.

#include "ctop/oracles.hpp"
#include "ctop/spaces.hpp"
#include "ctop/stage_log.hpp"

namespace ctop::examples {

inline Name sa_name(Nat n, Name flag) { return interleave(nat_name(n), std::move(flag)); }
inline Name sa_bottom(Nat n) { return sa_name(n, sierpinski_bottom()); }
inline Name sa_top(Nat n) { return sa_name(n, sierpinski_top()); }

/// The point of n in S_A, flag delayed by `delay` positions when ⊤.
inline Name sa_point(const OracleSet& a, Nat n, Nat delay = 0) {
  return sa_name(n, a.contains(n) ? sierpinski_top_after(delay) : sierpinski_bottom());
}

namespace detail {

inline std::optional<Nat> sa_head(WordView w) {
  if (w.empty()) return std::nullopt;
  return w[0];
}

/// The flag shows a 1 among the first `limit` flag positions of w.
inline bool sa_flag_shown(WordView w, std::size_t limit = SIZE_MAX) {
  for (std::size_t i = 1, k = 0; i < w.size() && k < limit; i += 2, ++k)
    if (w[i] != 0) return true;
  return false;
}

}  // namespace detail

inline Space sa_space(OracleSet a) {
  return make_space(
      SpaceTag::SA, "S_A",
      [a](const Name& p) {
        const auto n = p.at(0, kMetaFuel);
        return n && a.contains(*n) == meta_sierpinski_top(project(p, Side::Right));
      },
      [](const Name& p, const Name& q) { return meta_head(p) == meta_head(q); });
}

/// The projection to ℕ is injective on S_A, so both witnesses only compare
/// first coordinates.
inline std::pair<DiscretenessWitness, HausdorffWitness> sa_witnesses(const OracleSet& /*unused*/) {
  auto heads = [](WordView l, WordView r) -> std::optional<std::pair<Nat, Nat>> {
    const auto a = detail::sa_head(l), b = detail::sa_head(r);
    if (!a || !b) return std::nullopt;
    return std::pair{*a, *b};
  };
  return {DiscretenessWitness{open_on_pairs([heads](WordView l, WordView r, Nat) {
            const auto h = heads(l, r);
            return h && h->first == h->second;
          })},
          HausdorffWitness{open_on_pairs([heads](WordView l, WordView r, Nat) {
            const auto h = heads(l, r);
            return h && h->first != h->second;
          })}};
}

/// Observation of the flag of an S_A name; confirms at the fuel at which
/// the first 1 becomes readable.
inline Observation sa_flag(const Name& name) {
  return Observation::from_monotone([name](Nat fuel) { return detail::sa_flag_shown(name.prefix(fuel, fuel)); });
}

/// ℕ ≅ S_A for c.e. A. The flag of n is 1 at position t once n is among the
/// first t+1 symbols of the enumeration.
struct SAIso {
  Name enumeration;

  Name forward(Nat n) const {
    return sa_name(n, Name([e = enumeration, n](Nat pos, Nat fuel) -> std::optional<Nat> {
      if (fuel <= pos) return std::nullopt;
      const Word w = e.prefix(pos + 1, fuel);
      if (w.size() < pos + 1) return std::nullopt;
      return std::find(w.begin(), w.end(), n + 1) != w.end() ? 1 : 0;
    }));
  }

  Name backward(const Name& p) const { return project(p, Side::Left); }
};

inline SAIso sa_iso_when_ce(Name enumeration) { return {std::move(enumeration)}; }

// ---------------------------------------------------------------------------
// Norm and d.c.e. sets

/// Norm realizer for S_A built from a d.c.e. stage table. With (t1, t2) the
/// flip stages of n, a name with head n is handled in three windows:
///   [0, t1)   race on (n, ⊥), all names;
///   [t1, t2)  race on (n, ⊤), names whose flag shows a 1 inside the window;
///   [t2, ∞)   race on (n, ⊥), all names.
/// A race puts the name in U when "∉ B" confirms strictly before "∉ A", and
/// in V symmetrically; it observes at most up to the window's end and is
/// consulted once the budget reaches the window's start. The first decided
/// window wins.
inline SeparationRealizer reference_norm_realizer(StageTable table) {
  return [table = std::move(table)](const ClosedSetCode& a, const ClosedSetCode& b) {
    auto side = [table, ca = a.complement, cb = b.complement](bool want_u) {
      return OpenSetCode([table, ca, cb, want_u](WordView w, Nat budget) {
        const auto n = detail::sa_head(w);
        if (!n) return false;
        const auto [t1, t2] = table.flip_stages(*n);
        struct Window {
          Nat lo, hi;
          bool top;
        };
        const Window windows[] = {{0, t1, false}, {t1, t2, true}, {t2, kInfinity, false}};
        for (const auto& win : windows) {
          if (win.lo >= win.hi) continue;
          if (budget < win.lo) break;
          if (win.top && !detail::sa_flag_shown(w, win.hi == kInfinity ? SIZE_MAX : win.hi)) continue;
          const Nat cap = std::min(budget, win.hi - 1);
          const Name probe = win.top ? sa_top(*n) : sa_bottom(*n);
          const Verdict not_a = ca.member(probe).observe(cap);
          const Verdict not_b = cb.member(probe).observe(cap);
          const bool u = not_b.confirmed && (!not_a.confirmed || not_b.step < not_a.step);
          const bool v = not_a.confirmed && (!not_b.confirmed || not_a.step < not_b.step);
          if (u || v) return want_u ? u : v;
        }
        return false;
      });
    };
    return OpenPair{side(true), side(false)};
  };
}

/// At most two proclamations: n enters A at `enter`, leaves at `leave`.
struct Proclamation {
  Nat n = 0;
  Nat enter = kInfinity;
  Nat leave = kInfinity;
  StageLog log;

  bool bit(Nat stage) const { return stage >= enter && stage < leave; }
  bool final_bit() const { return enter != kInfinity && leave == kInfinity; }
  Nat flips() const { return (enter != kInfinity) + (leave != kInfinity); }
};

/// First query: A1 = {n} × 𝕊 against B1 = {(n, ⊥)}; flip to n ∈ A when U
/// accepts (n, ⊤). Second query, same run: A1 is replaced by ∅ from the
/// flip on; flip back when V accepts (n, ⊥).
inline Proclamation norm_to_dce(const SeparationRealizer& norm, Nat n, Nat fuel) {
  Proclamation p;
  p.n = n;
  p.log.append(0, "proclaim", {{"n", n}, {"bit", 0}});
  const ClosedSetCode a1{OpenSetCode([n](WordView w, Nat) { return !w.empty() && w[0] != n; })};
  const ClosedSetCode b1{OpenSetCode([n](WordView w, Nat) { return !w.empty() && (w[0] != n || detail::sa_flag_shown(w)); })};
  const auto [u1, v1] = norm(a1, b1);
  const Verdict up = u1.member(sa_top(n)).observe(fuel);
  if (!up.confirmed) return p;
  p.enter = up.step;
  p.log.append(up.step, "proclaim", {{"n", n}, {"bit", 1}, {"query", 1}});

  const ClosedSetCode a2{OpenSetCode([n, t = up.step](WordView w, Nat budget) { return !w.empty() && (w[0] != n || budget >= t); })};
  const auto [u2, v2] = norm(a2, b1);
  const Verdict down = v2.member(sa_bottom(n)).observe(fuel);
  if (!down.confirmed) return p;
  p.leave = std::max(down.step, p.enter + 1);
  p.log.append(p.leave, "proclaim", {{"n", n}, {"bit", 0}, {"query", 2}});
  return p;
}

// ---------------------------------------------------------------------------
// Embedding S_A into ℕ × [0,1]

/// [lo, hi] · 2^-precision.
struct DyadicInterval {
  Nat lo = 0, hi = 0;
  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
  bool within(const DyadicInterval& outer) const { return outer.lo <= lo && hi <= outer.hi; }
};

/// ι for a d.c.e. A at a fixed precision. A name with head n first
/// approaches (n, 0); from t1 on it jumps to (n, ε) once its flag shows, and
/// otherwise pauses; from t2 on paused names approach (n, 0) again.
class SAEmbedding {
 public:
  SAEmbedding(StageTable table, Nat precision) : table_(std::move(table)), precision_(precision) {
    if (precision_ > 62) throw PrecisionExhausted("precision above 62 bits");
    if (!table_.is_dce()) throw PreconditionViolated("stage table is not d.c.e.");
  }

  Nat precision() const { return precision_; }

  /// ε = 2^-(t1-1): the largest dyadic inside every interval emitted before
  /// t1. Needs t1 < precision so that ε/2 is above the grid.
  std::optional<Nat> epsilon(Nat n) const {
    const Nat t1 = table_.flip_stages(n).first;
    if (t1 == kInfinity) return std::nullopt;
    if (t1 >= precision_)
      throw PrecisionExhausted("epsilon for " + std::to_string(n) + " needs precision above " + std::to_string(t1));
    return Nat{1} << (precision_ - (t1 == 0 ? 0 : t1 - 1));
  }

  /// Intervals emitted at stages 0..horizon for an S_A name.
  std::vector<DyadicInterval> trace(const Name& name, Nat horizon) const {
    const Word w = name.prefix(2 * horizon + 2, 2 * horizon + 2);
    if (w.empty()) return {};
    const Nat n = w[0];
    const auto [t1, t2] = table_.flip_stages(n);
    const auto eps = epsilon(n);
    std::vector<DyadicInterval> out;
    bool committed = false;
    for (Nat t = 0; t <= horizon; ++t) {
      if (!committed && t >= t1 && t < t2 && detail::sa_flag_shown(w, t + 1)) committed = true;
      if (committed) {
        out.push_back({*eps, *eps});
      } else if (t >= t1 && t < t2) {
        out.push_back(out.empty() ? DyadicInterval{0, Nat{1} << precision_} : out.back());
      } else {
        out.push_back({0, Nat{1} << (precision_ - std::min(t, precision_))});
      }
    }
    return out;
  }

  /// ι⁻¹ on (n, x ∈ [lo, hi]): ⊤ when lo > ε/2, ⊥ when hi < ε/2.
  std::optional<bool> inverse(Nat n, const DyadicInterval& x) const {
    const auto eps = epsilon(n);
    if (!eps) return false;
    if (2 * x.lo > *eps) return true;
    if (2 * x.hi < *eps) return false;
    return std::nullopt;
  }

  const StageTable& table() const { return table_; }

 private:
  StageTable table_;
  Nat precision_;
};

inline SAEmbedding dce_to_embedding(StageTable table, Nat precision) { return SAEmbedding(std::move(table), precision); }

// ---------------------------------------------------------------------------
// Δ⁰₂ subspace description

/// One conjunct of the Π⁰₂ description of S_A inside ℕ × 𝕊, for (n, t):
///   P: head = n ∧ flag = ⊤ ⇒ ∃ s ≥ t. a_s(n) = 1
///   Q: head = n ⇒ flag = ⊤ ∨ ∃ s ≥ t. a_s(n) = 0
struct SubspaceConjunct {
  enum class Kind { P, Q } kind;
  Nat n = 0;
  Nat t = 0;
};

class Delta02Description {
 public:
  explicit Delta02Description(StageTable limit) : limit_(std::move(limit)) {}

  /// Some stage s ≥ t has approximation `bit` at n.
  bool recurs(Nat n, Nat t, bool bit) const {
    if (limit_.bit(n, t) == bit) return true;
    for (const auto& c : limit_.changes(n))
      if (c.stage >= t && c.bit == bit) return true;
    return false;
  }

  bool holds(const SubspaceConjunct& c, Nat head, bool flag) const {
    if (head != c.n) return true;
    if (c.kind == SubspaceConjunct::Kind::P) return !flag || recurs(c.n, c.t, true);
    return flag || recurs(c.n, c.t, false);
  }

  /// Stage after which every conjunct for n repeats the last one.
  Nat horizon(Nat n) const {
    const auto& cs = limit_.changes(n);
    return cs.empty() ? 0 : cs.back().stage + 1;
  }

  std::vector<SubspaceConjunct> conjuncts(Nat n, Nat t_max) const {
    std::vector<SubspaceConjunct> out;
    for (Nat t = 0; t <= t_max; ++t) {
      out.push_back({SubspaceConjunct::Kind::P, n, t});
      out.push_back({SubspaceConjunct::Kind::Q, n, t});
    }
    return out;
  }

  /// (n, flag) satisfies every conjunct; exact, since the table is finite.
  bool in_subspace(Nat n, bool flag) const {
    for (const auto& c : conjuncts(n, horizon(n)))
      if (!holds(c, n, flag)) return false;
    return true;
  }

  const StageTable& limit() const { return limit_; }

 private:
  StageTable limit_;
};

inline Delta02Description delta02_subspace_code(StageTable limit) { return Delta02Description(std::move(limit)); }

}  // namespace ctop::examples
