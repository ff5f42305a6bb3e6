#pragma once

// Sampled points and pairwise witness tables shared by the space and
// example commands.

#include "cli.hpp"
#include "ctop/examples.hpp"

namespace ctop::cli {

struct Sample {
  std::string label;
  Name name;
};

struct SampleSpace {
  Space space;
  std::vector<Sample> points;
};

inline OracleSet evens() {
  return OracleSet([](Nat k) { return k % 2 == 0; });
}

inline OracleSet load_oracle(Report& r, const std::string& key, const std::string& path) {
  return io::parse_oracle(load_input(r, key, path)).oracle();
}

/// The stream p as the word of its table entries.
inline Word load_p(Report& r, const std::string& path) {
  if (path.empty()) throw ParseError("--p is required for pN");
  const auto f = io::parse_oracle(load_input(r, "p", path));
  const Nat len = f.table.empty() ? 0 : f.table.rbegin()->first + 1;
  const OracleSet o = f.oracle();
  Word w;
  for (Nat k = 0; k < len; ++k) w.push_back(o.contains(k) ? 1 : 0);
  return w;
}

inline Nat least(const OracleSet& a, bool member) {
  for (Nat k = 0; k < kMetaFuel; ++k)
    if (a.contains(k) == member) return k;
  throw PreconditionViolated(member ? "A has no member below the meta bound" : "A has no non-member below the meta bound");
}

inline SampleSpace nat_samples(Nat max) {
  SampleSpace s{nat_space(), {}};
  for (Nat n = 0; n <= max; ++n) {
    s.points.push_back({std::to_string(n), nat_name(n)});
    s.points.push_back({std::to_string(n) + "/tail0", Name::word_then({n}, Name::constant(0))});
  }
  return s;
}

inline SampleSpace pn_samples(const examples::PNSpace& pn, Nat max) {
  SampleSpace s{pn.space(), {}};
  for (Nat n = 0; n <= max; ++n) s.points.push_back({std::to_string(n), pn.name(n)});
  return s;
}

inline SampleSpace da_samples(const OracleSet& a) {
  using examples::DAPoint;
  const Nat in = least(a, true), out = least(a, false);
  return {examples::da_space(a),
          {{"a", examples::da_name(a, DAPoint::A)},
           {"a/off" + std::to_string(in), examples::da_name(a, DAPoint::A, {in})},
           {"b", examples::da_name(a, DAPoint::B)},
           {"b/off" + std::to_string(out), examples::da_name(a, DAPoint::B, {out})}}};
}

inline SampleSpace ha_samples(const examples::HASpace& h, Nat max) {
  const OracleSet& a = h.oracle();
  SampleSpace s{h.space(), {{"a", h.canonical_a()}}};
  for (Nat n = 0; n <= max; ++n) {
    if (a.contains(n))
      s.points.push_back({"b(" + std::to_string(n) + ")", h.b_name(n)});
    else if (n != least(a, false))
      s.points.push_back({"a(" + std::to_string(n) + ")", h.a_name(n, a.enumeration())});
  }
  return s;
}

inline json labels(const SampleSpace& s) {
  json j = json::array();
  for (const auto& p : s.points) j.push_back(p.label);
  return j;
}

/// Refuted beats inconclusive beats verified.
inline Outcome worst(Outcome a, Outcome b) {
  auto rank = [](Outcome k) { return k == Outcome::Refuted ? 2 : (k == Outcome::Inconclusive ? 1 : 0); };
  return rank(a) >= rank(b) ? a : b;
}

struct PairwiseResult {
  bool wrong = false;   // confirmed on the wrong side: a refutation
  bool missed = false;  // expected confirmation not seen within fuel

  Outcome outcome() const { return wrong ? Outcome::Refuted : (missed ? Outcome::Inconclusive : Outcome::Verified); }
};

/// Runs a pair test on every ordered pair of samples and stores the table
/// under `key`. With want_equal the test should confirm exactly the equal
/// pairs, otherwise exactly the distinct ones.
inline PairwiseResult pairwise(Report& r, const SampleSpace& s, const OpenSetCode& on_pairs, bool want_equal, Nat fuel,
                               const std::string& key) {
  PairwiseResult res;
  json rows = json::array();
  for (std::size_t i = 0; i < s.points.size(); ++i)
    for (std::size_t j = 0; j < s.points.size(); ++j) {
      const bool eq = s.space->meta_equal(s.points[i].name, s.points[j].name);
      const Verdict v = on_pairs.member(interleave(s.points[i].name, s.points[j].name)).observe(fuel);
      const bool should = eq == want_equal;
      if (v.confirmed) r.fuel_used = std::max(r.fuel_used, v.step);
      if (v.confirmed && !should) {
        res.wrong = true;
        r.certificates.push_back({{"kind", "false-confirmation"}, {"table", key}, {"x", s.points[i].label},
                                  {"y", s.points[j].label}, {"step", v.step}});
      }
      if (!v.confirmed && should) res.missed = true;
      rows.push_back({{"x", i}, {"y", j}, {"meta_equal", eq}, {"verdict", verdict_json(v)}});
    }
  r.results[key] = {{"points", labels(s)}, {"rows", rows}};
  r.check(key + ": no confirmation on the wrong side", !res.wrong);
  r.check(key + ": every expected pair confirmed within fuel", !res.missed);
  return res;
}

}  // namespace ctop::cli
