#pragma once

// Represented spaces, open/closed/overt codes, separation witnesses,
// effective bases and fibre-overt representations.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ctop/kernel.hpp"

namespace ctop {

// ---------------------------------------------------------------------------
// Space descriptors

enum class SpaceTag {
  Nat,
  Sierpinski,
  Product,
  AdjoinedBottom,
  CeerQuotient,
  IdealSpace,
  SA,
  DA,
  HA,
  PN,
  NPrime,
  HaltingComplement,
  Custom,
};

/// Fuel at which meta-level predicates inspect names.
inline constexpr Nat kMetaFuel = 4096;

/// Describes a represented space. The meta predicates approximate name
/// validity and equality of denoted points; they exist for the test harness
/// and are never consulted by realizers.
struct SpaceDescriptor {
  SpaceTag tag = SpaceTag::Custom;
  std::string label;
  std::function<bool(const Name&)> meta_valid;
  std::function<bool(const Name&, const Name&)> meta_equal;
};

using Space = std::shared_ptr<const SpaceDescriptor>;

struct Point {
  Space space;
  Name name;
};

inline Space make_space(SpaceTag tag, std::string label, std::function<bool(const Name&)> valid,
                        std::function<bool(const Name&, const Name&)> equal) {
  return std::make_shared<const SpaceDescriptor>(
      SpaceDescriptor{tag, std::move(label), std::move(valid), std::move(equal)});
}

inline Nat meta_head(const Name& p) { return p.at(0, kMetaFuel).value_or(kInfinity); }

inline bool meta_sierpinski_top(const Name& p) { return has_nonzero(p.prefix(kMetaFuel, kMetaFuel)); }

/// ℕ with δ(p) = p(0).
inline Space nat_space() {
  return make_space(
      SpaceTag::Nat, "N", [](const Name& p) { return p.at(0, kMetaFuel).has_value(); },
      [](const Name& p, const Name& q) { return meta_head(p) == meta_head(q); });
}

/// 𝕊 with δ(0^ω) = ⊥ and δ(p) = ⊤ otherwise.
inline Space sierpinski_space() {
  return make_space(
      SpaceTag::Sierpinski, "S", [](const Name&) { return true; },
      [](const Name& p, const Name& q) { return meta_sierpinski_top(p) == meta_sierpinski_top(q); });
}

inline Space product_space(Space x, Space y) {
  return make_space(
      SpaceTag::Product, "(" + x->label + " x " + y->label + ")",
      [x, y](const Name& p) {
        return x->meta_valid(project(p, Side::Left)) && y->meta_valid(project(p, Side::Right));
      },
      [x, y](const Name& p, const Name& q) {
        return x->meta_equal(project(p, Side::Left), project(q, Side::Left)) &&
               y->meta_equal(project(p, Side::Right), project(q, Side::Right));
      });
}

inline Name nat_name(Nat n) { return Name::constant(n); }
inline Name sierpinski_top() { return Name::constant(1); }
inline Name sierpinski_bottom() { return Name::constant(0); }
/// ⊤ named by zeros until `delay`, then ones.
inline Name sierpinski_top_after(Nat delay) {
  return Name::stream([delay](Nat i) { return i >= delay ? Nat{1} : Nat{0}; });
}

// ---------------------------------------------------------------------------
// Open, closed and overt codes

/// Membership code of an open set: a Sierpinski-valued transducer on names,
/// built from a monotone semitest. Extensionality is a contract on the
/// constructor, sampled by the tests.
class OpenSetCode {
 public:
  OpenSetCode() : OpenSetCode([](WordView, Nat) { return false; }) {}
  explicit OpenSetCode(SemiTest test) : test_(std::move(test)), code_(Transducer::from_semitest(test_)) {}

  const SemiTest& test() const { return test_; }
  const Transducer& code() const { return code_; }

  /// Confirmed at fuel f iff the test accepts the prefix readable at f.
  Observation member(const Name& name) const {
    return Observation::from_monotone([test = test_, name](Nat fuel) {
      const Word w = name.prefix(fuel, fuel);
      return !w.empty() && test(w, w.size());
    });
  }

  static OpenSetCode everything() {
    return OpenSetCode([](WordView w, Nat) { return !w.empty(); });
  }
  static OpenSetCode nothing() { return OpenSetCode(); }

  /// Test on the first symbol only (subsets of ℕ under δ(p) = p(0)).
  static OpenSetCode on_head(std::function<bool(Nat head, Nat budget)> pred) {
    return OpenSetCode([pred = std::move(pred)](WordView w, Nat budget) { return !w.empty() && pred(w[0], budget); });
  }

  friend OpenSetCode open_union(const OpenSetCode& a, const OpenSetCode& b) {
    return OpenSetCode([ta = a.test_, tb = b.test_](WordView w, Nat budget) { return ta(w, budget) || tb(w, budget); });
  }
  friend OpenSetCode open_intersection(const OpenSetCode& a, const OpenSetCode& b) {
    return OpenSetCode([ta = a.test_, tb = b.test_](WordView w, Nat budget) { return ta(w, budget) && tb(w, budget); });
  }

 private:
  SemiTest test_;
  Transducer code_;
};

inline Verdict open_member(const OpenSetCode& u, const Point& x, Nat fuel) { return u.member(x.name).observe(fuel); }

/// A closed set, given by its complement.
struct ClosedSetCode {
  OpenSetCode complement;

  static ClosedSetCode empty() { return {OpenSetCode::everything()}; }
  static ClosedSetCode whole() { return {OpenSetCode::nothing()}; }
};

/// Element of V(X) as a point of O(O(X)): confirms that an open meets the set.
struct OvertCode {
  std::function<Observation(const OpenSetCode&)> probe;

  Verdict meets(const OpenSetCode& u, Nat fuel) const { return probe(u).observe(fuel); }
};

/// Semitest on product names, evaluated on the split coordinates.
using PairTest = std::function<bool(WordView left, WordView right, Nat budget)>;

inline OpenSetCode open_on_pairs(PairTest test) {
  return OpenSetCode([test = std::move(test)](WordView w, Nat budget) {
    const auto [left, right] = split_word(w);
    return test(left, right, budget);
  });
}

/// Confirms on product names whose coordinates denote equal points.
struct DiscretenessWitness {
  OpenSetCode on_pairs;

  Observation equal(const Name& p, const Name& q) const { return on_pairs.member(interleave(p, q)); }
};

/// Confirms on product names whose coordinates denote distinct points.
struct HausdorffWitness {
  OpenSetCode on_pairs;

  Observation distinct(const Name& p, const Name& q) const { return on_pairs.member(interleave(p, q)); }
};

/// Computable sequences (U_i), (V_i) whose rectangles cover the complement of
/// the diagonal.
struct HausdorffWitnessSequence {
  std::function<OpenSetCode(Nat)> u;
  std::function<OpenSetCode(Nat)> v;
};

/// ℕ-style witnesses comparing heads.
inline DiscretenessWitness head_equality_witness() {
  return {open_on_pairs([](WordView l, WordView r, Nat) { return !l.empty() && !r.empty() && l[0] == r[0]; })};
}
inline HausdorffWitness head_inequality_witness() {
  return {open_on_pairs([](WordView l, WordView r, Nat) { return !l.empty() && !r.empty() && l[0] != r[0]; })};
}

// ---------------------------------------------------------------------------
// Enumerations of subsets of ℕ (the γ representation of O(ℕ))

/// γ-name of the set of all a with seen_by(a, t) for some t: position
/// ⟨a, t⟩ carries a+1 when seen_by(a, t) holds and 0 otherwise.
inline Name enumeration_name(std::function<bool(Nat element, Nat stage)> seen_by) {
  return Name::stream([seen_by = std::move(seen_by)](Nat k) -> Nat {
    const auto [a, t] = unpair(k);
    return seen_by(a, t) ? a + 1 : 0;
  });
}

/// {n | ∃k p(k) = n+1}, reading positions available at `fuel`.
inline std::set<Nat> gamma_decode(const Name& p, Nat fuel) {
  std::set<Nat> out;
  for (Nat v : p.prefix(fuel, fuel))
    if (v != 0) out.insert(v - 1);
  return out;
}

inline Name gamma_encode(const std::set<Nat>& finite) {
  Word head;
  for (Nat a : finite) head.push_back(a + 1);
  return Name::padded(std::move(head), 0);
}

inline Name gamma_encode(std::function<bool(Nat element, Nat stage)> seen_by) {
  return enumeration_name(std::move(seen_by));
}

// ---------------------------------------------------------------------------
// Effective bases

/// (B_n) together with a multi-valued right inverse O(X) → V(ℕ), the latter
/// returned as a γ-name of the index set.
struct EffectiveBasis {
  std::function<OpenSetCode(Nat)> basis_at;
  std::function<Name(const OpenSetCode&)> decompose;
};

/// Cylinder B_⟨w⟩ = { p | w ⊑ p } of Baire space.
inline OpenSetCode baire_basis(Nat index) {
  return OpenSetCode([w = decode_word(index)](WordView prefix, Nat) {
    return !prefix.empty() && prefix.size() >= w.size() && is_prefix(w, prefix);
  });
}

/// Basis of ℕ: B_0 = ℕ and B_{n+1} = {n}.
inline EffectiveBasis nat_basis() {
  EffectiveBasis b;
  b.basis_at = [](Nat index) {
    if (index == 0) return OpenSetCode::everything();
    return OpenSetCode::on_head([n = index - 1](Nat head, Nat) { return head == n; });
  };
  b.decompose = [](const OpenSetCode& u) {
    return enumeration_name([u](Nat index, Nat stage) {
      return index > 0 && u.member(nat_name(index - 1)).observe(stage).confirmed;
    });
  };
  return b;
}

/// i(x) = { n | x ∈ B_n } as a γ-name.
inline Name embed_into_opens_of_nat(const EffectiveBasis& basis, const Point& x) {
  return enumeration_name([basis, name = x.name](Nat n, Nat stage) {
    return basis.basis_at(n).member(name).observe(stage).confirmed;
  });
}

/// Neighbourhood filter recovered from i(x): U is in it iff the index set of
/// U meets i(x).
inline std::function<Observation(const OpenSetCode&)> filter_from_opens_of_nat(const EffectiveBasis& basis,
                                                                               Name embedded) {
  return [basis, embedded](const OpenSetCode& u) {
    const Name indices = basis.decompose(u);
    return Observation::from_monotone([indices, embedded](Nat fuel) {
      const std::set<Nat> a = gamma_decode(indices, fuel), b = gamma_decode(embedded, fuel);
      return std::any_of(a.begin(), a.end(), [&](Nat n) { return b.count(n) > 0; });
    });
  };
}

// ---------------------------------------------------------------------------
// Adjoining a bottom point

/// X' = X ⊎ {⊥}: ⟨p, q⟩ names ⊥ when p has infinitely many 1s and δ_X(q)
/// when p has finitely many. X' is indiscrete and overt, hence effectively
/// countably based with the single basic open X'.
struct AdjoinedSpace {
  Space space;
  EffectiveBasis basis;

  static Name embed(Name q) { return interleave(Name::constant(0), std::move(q)); }
  static Name bottom() { return interleave(Name::constant(1), Name::constant(0)); }
};

/// Meta approximation of "infinitely many 1s": a 1 occurs in the second half
/// of the inspected window. Exact for the eventually periodic names the
/// tests construct.
inline bool meta_infinitely_many_ones(const Name& p) {
  const Word w = p.prefix(kMetaFuel, kMetaFuel);
  return std::find(w.begin() + static_cast<std::ptrdiff_t>(w.size() / 2), w.end(), 1) != w.end();
}

inline AdjoinedSpace adjoin_bottom(const Space& x) {
  auto is_bottom = [](const Name& p) { return meta_infinitely_many_ones(project(p, Side::Left)); };
  AdjoinedSpace out;
  out.space = make_space(
      SpaceTag::AdjoinedBottom, x->label + "+bot",
      [x, is_bottom](const Name& p) { return is_bottom(p) || x->meta_valid(project(p, Side::Right)); },
      [x, is_bottom](const Name& p, const Name& q) {
        const bool bp = is_bottom(p), bq = is_bottom(q);
        if (bp || bq) return bp && bq;
        return x->meta_equal(project(p, Side::Right), project(q, Side::Right));
      });
  out.basis.basis_at = [](Nat) { return OpenSetCode::everything(); };
  // Every nonempty open is X', and it is nonempty iff it contains ⊥.
  out.basis.decompose = [](const OpenSetCode& u) {
    const Observation hits_bottom = u.member(AdjoinedSpace::bottom());
    return enumeration_name([hits_bottom](Nat index, Nat stage) {
      return index == 0 && hits_bottom.observe(stage).confirmed;
    });
  };
  return out;
}

// ---------------------------------------------------------------------------
// Fibre-overt representations and open extension

/// Effectively fibre-overt representation of Y: `cylinder_test(w, y, b)`
/// semidecides, from a prefix of a name of y, whether some name of y extends
/// w. Names are their own preimages.
struct FibreOvertRep {
  Space space;
  std::function<bool(WordView cylinder, WordView point_prefix, Nat budget)> cylinder_test;

  Name preimage(const Name& y) const { return y; }

  /// The closure of the fibre of y as an overt subset of Baire space. The
  /// probe dovetails over cylinders ⟨w⟩ on which the given open code already
  /// accepts and asks whether the fibre meets them.
  OvertCode fibre_closure(const Name& y) const {
    auto test = cylinder_test;
    return OvertCode{[test, y](const OpenSetCode& baire_open) {
      return Observation::from_monotone([test, y, baire_open](Nat fuel) {
        const Word yp = y.prefix(fuel, fuel);
        return fibre_meets(test, baire_open, yp, fuel);
      });
    }};
  }

  static bool fibre_meets(const std::function<bool(WordView, WordView, Nat)>& test, const OpenSetCode& baire_open,
                          WordView point_prefix, Nat budget) {
    for (Nat j = 0; j < budget; ++j) {
      const Word w = decode_word(j);
      if (w.size() > budget) continue;
      if (!baire_open.test()(w, budget)) continue;
      if (test(w, point_prefix, budget)) return true;
    }
    return false;
  }
};

/// Fibre-overt representation of ℕ under δ(p) = p(0).
inline FibreOvertRep nat_fibre_rep() {
  return {nat_space(), [](WordView w, WordView y, Nat) { return w.empty() || (!y.empty() && w[0] == y[0]); }};
}

/// Fibre-overt representation of ℕ × 𝕊 with interleaved names ⟨p, q⟩.
inline FibreOvertRep nat_times_sierpinski_rep() {
  return {product_space(nat_space(), sierpinski_space()), [](WordView w, WordView y, Nat) {
            const auto [wl, wr] = split_word(w);
            const auto [yl, yr] = split_word(y);
            if (!wl.empty() && (yl.empty() || wl[0] != yl[0])) return false;
            // a nonzero flag symbol in w needs y = (n, ⊤)
            return !has_nonzero(wr) || has_nonzero(yr);
          }};
}

/// Right inverse of restriction O(Y) → O(X): U = { y | the fibre of y meets
/// the Baire open coded by V }.
inline OpenSetCode extend_open(const FibreOvertRep& y, const OpenSetCode& v) {
  return OpenSetCode([test = y.cylinder_test, v](WordView point_prefix, Nat budget) {
    return FibreOvertRep::fibre_meets(test, v, point_prefix, budget);
  });
}

// ---------------------------------------------------------------------------
// Regularity and normality

/// Discrete and Hausdorff give Reg: ignore A and return ({x}, X \ {x}).
inline std::pair<OpenSetCode, OpenSetCode> reg_from_discrete_hausdorff(const DiscretenessWitness& d,
                                                                       const HausdorffWitness& h, const Point& x,
                                                                       const ClosedSetCode& /*unused*/) {
  auto with_x = [name = x.name](const OpenSetCode& on_pairs) {
    return OpenSetCode([name, test = on_pairs.test()](WordView y, Nat budget) {
      const Word xp = name.prefix(y.size(), budget);
      return test(interleave_words(xp, y), budget);
    });
  };
  return {with_x(d.on_pairs), with_x(h.on_pairs)};
}

using OpenPair = std::pair<OpenSetCode, OpenSetCode>;
/// Norm and HeNorm share this shape: (A, B) ↦ (U, V).
using SeparationRealizer = std::function<OpenPair(const ClosedSetCode&, const ClosedSetCode&)>;
/// NormSub: (Y, A, B) ↦ (U, V).
using SubspaceSeparationRealizer =
    std::function<OpenPair(const OpenSetCode&, const ClosedSetCode&, const ClosedSetCode&)>;

/// Any HeNorm answer already solves NormSub(Y, A, B).
inline SubspaceSeparationRealizer henorm_to_normsub(SeparationRealizer henorm) {
  return [henorm = std::move(henorm)](const OpenSetCode&, const ClosedSetCode& a, const ClosedSetCode& b) {
    return henorm(a, b);
  };
}

/// Y := X \ (A ∩ B), then (Y ∩ U, Y ∩ V) for (U, V) ∈ NormSub(Y, A, B).
inline SeparationRealizer normsub_to_henorm(SubspaceSeparationRealizer normsub) {
  return [normsub = std::move(normsub)](const ClosedSetCode& a, const ClosedSetCode& b) {
    const OpenSetCode y = open_union(a.complement, b.complement);
    auto [u, v] = normsub(y, a, b);
    return OpenPair{open_intersection(y, u), open_intersection(y, v)};
  };
}

/// Races the two complement codes on the canonical name n^ω of the head:
/// n goes to U when "n ∉ B" is confirmed strictly before "n ∉ A", and to V in
/// the opposite case. HeNorm realizer for ℕ.
inline SeparationRealizer nat_henorm_realizer() {
  return [](const ClosedSetCode& a, const ClosedSetCode& b) {
    auto side = [ca = a.complement, cb = b.complement](bool want_u) {
      return OpenSetCode::on_head([ca, cb, want_u](Nat n, Nat budget) {
        const Verdict not_a = ca.member(nat_name(n)).observe(budget);
        const Verdict not_b = cb.member(nat_name(n)).observe(budget);
        const Verdict& first = want_u ? not_b : not_a;
        const Verdict& second = want_u ? not_a : not_b;
        return first.confirmed && (!second.confirmed || first.step < second.step);
      });
    };
    return OpenPair{side(true), side(false)};
  };
}

/// ℕ-closed set given by a finite complement-free listing: A = members.
inline ClosedSetCode nat_closed(std::set<Nat> members) {
  return {OpenSetCode::on_head([members = std::move(members)](Nat n, Nat) { return members.count(n) == 0; })};
}

// ---------------------------------------------------------------------------
// Separation by dyadic balls in [0,1]^d (sup norm)

/// Coordinates numerator / 2^exponent.
struct DyadicPoint {
  std::vector<std::int64_t> coords;
  Nat exponent = 0;
};

/// Closed ball { x | ‖x - centre‖∞ ≤ radius / 2^exponent }; the open ball
/// uses strict inequality.
struct DyadicBall {
  std::vector<std::int64_t> centre;
  std::int64_t radius = 0;
  Nat exponent = 0;
};

using BallStream = std::function<std::optional<DyadicBall>(Nat index)>;

namespace detail {

/// max_i |x_i - c_i| compared against r, all brought to a common exponent.
inline int compare_distance(const DyadicPoint& x, const DyadicBall& b) {
  const Nat e = std::max(x.exponent, b.exponent);
  const auto scale = [e](std::int64_t v, Nat own) { return static_cast<__int128>(v) << (e - own); };
  __int128 dist = 0;
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    __int128 d = scale(x.coords[i], x.exponent) - scale(b.centre[i], b.exponent);
    if (d < 0) d = -d;
    dist = std::max(dist, d);
  }
  const __int128 r = scale(b.radius, b.exponent);
  return dist < r ? -1 : (dist == r ? 0 : 1);
}

}  // namespace detail

inline bool in_open_ball(const DyadicPoint& x, const DyadicBall& b) { return detail::compare_distance(x, b) < 0; }
inline bool in_closed_ball(const DyadicPoint& x, const DyadicBall& b) { return detail::compare_distance(x, b) <= 0; }

/// U = ∪_n (U_n \ ∪_{k<n} V̂_k) and V = ∪_m (V_m \ ∪_{k≤m} Û_k), where (Û_n)
/// lists closed balls missing B and (V̂_n) closed balls missing A.
class SeparatedRegions {
 public:
  SeparatedRegions(Nat dim, std::vector<DyadicBall> missing_a, std::vector<DyadicBall> missing_b)
      : dim_(dim), missing_a_(std::move(missing_a)), missing_b_(std::move(missing_b)) {}

  Nat dimension() const { return dim_; }
  const std::vector<DyadicBall>& balls_missing_a() const { return missing_a_; }
  const std::vector<DyadicBall>& balls_missing_b() const { return missing_b_; }

  bool in_u(const DyadicPoint& x) const {
    const Nat n = first_index(x, missing_b_, true);
    return n != kInfinity && n <= first_index(x, missing_a_, false);
  }

  bool in_v(const DyadicPoint& x) const {
    const Nat m = first_index(x, missing_a_, true);
    return m != kInfinity && m < first_index(x, missing_b_, false);
  }

  /// Both regions on the grid { i / 2^level }^d, one slice per value of
  /// the first coordinate; within a slice the remaining coordinates are
  /// row-major with the last fastest. Balls are painted as index boxes into
  /// first-index arrays and the comparisons of in_u / in_v are applied.
  template <class Fn>
  void for_each_slice(Nat level, Fn&& fn) const {
    const std::int64_t side = (std::int64_t{1} << level) + 1;
    std::size_t area = 1;
    for (Nat i = 1; i < dim_; ++i) area *= static_cast<std::size_t>(side);
    const auto boxes = [&](const std::vector<DyadicBall>& balls, bool open) {
      std::vector<IndexBox> out;
      for (const auto& b : balls) out.push_back(index_box(b, open, level, side));
      return out;
    };
    const auto open_a = boxes(missing_a_, true), closed_a = boxes(missing_a_, false);
    const auto open_b = boxes(missing_b_, true), closed_b = boxes(missing_b_, false);
    std::vector<Nat> fa(area), ca(area), fb(area), cb(area);
    std::vector<bool> u(area), v(area);
    for (std::int64_t slice = 0; slice < (dim_ == 0 ? 1 : side); ++slice) {
      paint(open_a, slice, side, fa);
      paint(closed_a, slice, side, ca);
      paint(open_b, slice, side, fb);
      paint(closed_b, slice, side, cb);
      for (std::size_t k = 0; k < area; ++k) {
        u[k] = fb[k] != kInfinity && fb[k] <= ca[k];
        v[k] = fa[k] != kInfinity && fa[k] < cb[k];
      }
      fn(static_cast<Nat>(slice), u, v);
    }
  }

  /// Whole-grid version of for_each_slice.
  std::pair<std::vector<bool>, std::vector<bool>> rasterize(Nat level) const {
    std::vector<bool> u, v;
    for_each_slice(level, [&](Nat, const std::vector<bool>& su, const std::vector<bool>& sv) {
      u.insert(u.end(), su.begin(), su.end());
      v.insert(v.end(), sv.begin(), sv.end());
    });
    return {std::move(u), std::move(v)};
  }

 private:
  struct IndexBox {
    std::vector<std::int64_t> lo, hi;
    bool empty = false;
  };

  static Nat first_index(const DyadicPoint& x, const std::vector<DyadicBall>& balls, bool open) {
    for (Nat n = 0; n < balls.size(); ++n)
      if (open ? in_open_ball(x, balls[n]) : in_closed_ball(x, balls[n])) return n;
    return kInfinity;
  }

  /// Grid indices g with |g/2^level - c| < r (open) or <= r (closed), per axis.
  IndexBox index_box(const DyadicBall& b, bool open, Nat level, std::int64_t side) const {
    IndexBox box{std::vector<std::int64_t>(dim_), std::vector<std::int64_t>(dim_)};
    const Nat e = std::max(level, b.exponent);
    const __int128 d = static_cast<__int128>(1) << (e - level);
    const auto floor_div = [d](__int128 v) { return v >= 0 ? v / d : -((-v + d - 1) / d); };
    const auto ceil_div = [&](__int128 v) { return -floor_div(-v); };
    for (Nat i = 0; i < dim_; ++i) {
      const __int128 c = static_cast<__int128>(b.centre[i]) << (e - b.exponent);
      const __int128 r = static_cast<__int128>(b.radius) << (e - b.exponent);
      __int128 lo = open ? floor_div(c - r) + 1 : ceil_div(c - r);
      __int128 hi = open ? ceil_div(c + r) - 1 : floor_div(c + r);
      lo = std::max<__int128>(lo, 0);
      hi = std::min<__int128>(hi, side - 1);
      if (lo > hi) box.empty = true;
      box.lo[i] = static_cast<std::int64_t>(lo);
      box.hi[i] = static_cast<std::int64_t>(hi);
    }
    return box;
  }

  void paint(const std::vector<IndexBox>& boxes, std::int64_t slice, std::int64_t side, std::vector<Nat>& idx) const {
    std::fill(idx.begin(), idx.end(), kInfinity);
    for (Nat n = boxes.size(); n-- > 0;) {
      const IndexBox& b = boxes[n];
      if (b.empty || (dim_ > 0 && (slice < b.lo[0] || slice > b.hi[0]))) continue;
      // later balls are painted first so lower indices overwrite them
      std::vector<std::int64_t> cur(b.lo.begin() + (dim_ > 0 ? 1 : 0), b.lo.end());
      const std::size_t rest = cur.size();
      while (true) {
        std::size_t flat = 0;
        for (std::size_t i = 0; i < rest; ++i) flat = flat * static_cast<std::size_t>(side) + static_cast<std::size_t>(cur[i]);
        idx[flat] = n;
        std::size_t axis = rest;
        bool done = true;
        while (axis > 0) {
          --axis;
          if (++cur[axis] <= b.hi[axis + 1]) {
            done = false;
            break;
          }
          cur[axis] = b.lo[axis + 1];
        }
        if (done) break;
      }
    }
  }

  Nat dim_;
  std::vector<DyadicBall> missing_a_;
  std::vector<DyadicBall> missing_b_;
};

/// Consumes at most `fuel` balls from each stream.
inline SeparatedRegions separate_by_balls(Nat dim, const BallStream& missing_a, const BallStream& missing_b,
                                          Nat fuel) {
  auto take = [&](const BallStream& s) {
    std::vector<DyadicBall> out;
    for (Nat i = 0; i < fuel; ++i) {
      auto b = s(i);
      if (!b) break;
      if (b->centre.size() != dim)
        throw DimensionMismatch("ball " + std::to_string(i) + " has dimension " + std::to_string(b->centre.size()) +
                                ", expected " + std::to_string(dim));
      out.push_back(std::move(*b));
    }
    return out;
  };
  return SeparatedRegions(dim, take(missing_a), take(missing_b));
}

/// Closed box ∏ [lo_i, hi_i] / 2^exponent.
struct DyadicBox {
  std::vector<std::int64_t> lo;
  std::vector<std::int64_t> hi;
  Nat exponent = 0;

  bool contains(const DyadicPoint& x) const {
    const Nat e = std::max(x.exponent, exponent);
    for (std::size_t i = 0; i < lo.size(); ++i) {
      const __int128 v = static_cast<__int128>(x.coords[i]) << (e - x.exponent);
      if (v < (static_cast<__int128>(lo[i]) << (e - exponent)) || v > (static_cast<__int128>(hi[i]) << (e - exponent)))
        return false;
    }
    return true;
  }
};

/// Closed balls of radius 2^-L centred on the 2^-L grid of [0,1]^d, for
/// L = 1..max_level, keeping those disjoint from the box. Their open
/// interiors cover every point whose distance from the box exceeds
/// 3 * 2^-(max_level+1).
inline BallStream balls_missing_box(Nat dim, DyadicBox box, Nat max_level) {
  auto balls = std::make_shared<std::vector<DyadicBall>>();
  for (Nat level = 1; level <= max_level; ++level) {
    const std::int64_t side = (std::int64_t{1} << level) + 1;
    std::vector<std::int64_t> c(dim, 0);
    const Nat e = std::max(level, box.exponent);
    while (true) {
      bool disjoint = false;
      for (Nat i = 0; i < dim && !disjoint; ++i) {
        const __int128 ci = static_cast<__int128>(c[i]) << (e - level);
        const __int128 r = static_cast<__int128>(1) << (e - level);
        const __int128 lo = static_cast<__int128>(box.lo[i]) << (e - box.exponent);
        const __int128 hi = static_cast<__int128>(box.hi[i]) << (e - box.exponent);
        disjoint = ci + r < lo || ci - r > hi;
      }
      if (disjoint) balls->push_back(DyadicBall{c, 1, level});
      Nat axis = dim;
      bool done = true;
      while (axis > 0) {
        --axis;
        if (++c[axis] < side) {
          done = false;
          break;
        }
        c[axis] = 0;
      }
      if (done) break;
    }
  }
  return [balls](Nat index) -> std::optional<DyadicBall> {
    if (index >= balls->size()) return std::nullopt;
    return (*balls)[index];
  };
}

// ---------------------------------------------------------------------------
// Witness-sequence audit

struct WitnessSequenceRow {
  std::size_t sample = 0;
  bool meta_equal = false;
  std::optional<Nat> index;  // covering rectangle (unequal) or violating one (equal)
  Nat step = 0;
  bool ok = false;
};

struct WitnessSequenceReport {
  std::vector<WitnessSequenceRow> rows;
  std::size_t coverage_failures = 0;
  std::size_t violations = 0;
  bool ok() const { return coverage_failures == 0 && violations == 0; }
};

inline WitnessSequenceReport check_hausdorff_witness_sequence(const HausdorffWitnessSequence& ws,
                                                              const std::vector<std::pair<Point, Point>>& samples,
                                                              Nat fuel) {
  WitnessSequenceReport report;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto& [x, y] = samples[s];
    WitnessSequenceRow row;
    row.sample = s;
    row.meta_equal = x.space->meta_equal(x.name, y.name);
    const auto hit = dovetail_search(
        [&](Nat i) { return both(ws.u(i).member(x.name), ws.v(i).member(y.name)); }, fuel);
    if (hit) {
      row.index = hit->index;
      row.step = hit->step;
    }
    row.ok = row.meta_equal ? !hit.has_value() : hit.has_value();
    if (!row.ok) ++(row.meta_equal ? report.violations : report.coverage_failures);
    report.rows.push_back(row);
  }
  return report;
}

/// Singleton rectangles {a} × {b} for a ≠ b, indexed by ⟨a, b⟩.
inline HausdorffWitnessSequence nat_witness_sequence() {
  auto single = [](bool left) {
    return [left](Nat i) {
      const auto [a, b] = unpair(i);
      if (a == b) return OpenSetCode::nothing();
      const Nat target = left ? a : b;
      return OpenSetCode::on_head([target](Nat head, Nat) { return head == target; });
    };
  };
  return {single(true), single(false)};
}

}  // namespace ctop
