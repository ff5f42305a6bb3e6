#include <catch_amalgamated.hpp>

#include "ctop/ceers.hpp"
#include "support.hpp"

using namespace ctop;

namespace {

std::vector<std::pair<Nat, Nat>> random_pairs(std::mt19937_64& rng, Nat max_pairs, Nat universe) {
  std::vector<std::pair<Nat, Nat>> out(rng() % (max_pairs + 1));
  for (auto& [a, b] : out) {
    a = rng() % universe;
    b = rng() % universe;
  }
  return out;
}

constexpr Nat kFull = 1000;

}  // namespace

TEST_CASE("saturation", "[ceers][closure]") {
  SECTION("no generators gives the identity") {
    const ClosureState s = saturate(CeerPresentation::from_pairs({}), kFull);
    CHECK(s.classes().empty());
    CHECK_FALSE(s.same(0, 1));
    CHECK(s.same(4, 4));
  }
  SECTION("chains collapse") {
    const ClosureState s = saturate(CeerPresentation::from_pairs({{0, 1}, {1, 2}}), kFull);
    CHECK(s.same(0, 2));
    CHECK(s.classes() == std::map<Nat, std::vector<Nat>>{{0, {0, 1, 2}}});
  }
  SECTION("disjoint pairs stay apart") {
    const ClosureState s = saturate(CeerPresentation::from_pairs({{0, 1}, {2, 3}}), kFull);
    CHECK(s.same(2, 3));
    CHECK_FALSE(s.same(1, 2));
  }
  SECTION("fuel bounds consumption") {
    const auto pres = CeerPresentation::from_pairs({{0, 1}, {1, 2}, {5, 6}});
    CHECK(saturate(pres, 0).cursor() == 0);
    CHECK(saturate(pres, 2).cursor() == 2);
    CHECK_FALSE(saturate(pres, 2).same(5, 6));
    CHECK(saturate(pres, 3).event_log() ==
          std::vector<std::string>{"fuel=1 merge 0 1", "fuel=2 merge 1 2", "fuel=3 merge 5 6"});
  }
}

TEST_CASE("saturation agrees with the brute-force closure", "[ceers][closure][property]") {
  std::mt19937_64 rng(testing::kSeed);
  for (int trial = 0; trial < 200; ++trial) {
    const Nat universe = 2 + rng() % 39;
    const auto gens = random_pairs(rng, 25, universe);
    const auto oracle = testing::brute_closure(gens, universe);
    const ClosureState s = saturate(CeerPresentation::from_pairs(gens), kFull);
    for (Nat a = 0; a < universe; ++a)
      for (Nat b = 0; b < universe; ++b) REQUIRE(s.same(a, b) == oracle[a][b]);
  }
}

TEST_CASE("find is idempotent and partitions ignore merge order", "[ceers][closure][property]") {
  std::mt19937_64 rng(testing::kSeed + 1);
  for (int trial = 0; trial < 100; ++trial) {
    auto gens = random_pairs(rng, 20, 30);
    const ClosureState a = saturate(CeerPresentation::from_pairs(gens), kFull);
    std::shuffle(gens.begin(), gens.end(), rng);
    const ClosureState b = saturate(CeerPresentation::from_pairs(gens), kFull);
    for (Nat n = 0; n < 30; ++n) {
      CHECK(a.find(a.find(n)) == a.find(n));
      CHECK(a.find(n) == b.find(n));
    }
  }
}

TEST_CASE("ceer equality", "[ceers][equal]") {
  const auto chain = CeerPresentation::from_pairs({{0, 1}, {1, 2}});
  CHECK(ceer_equal(chain, 7, 7).observe(0) == Verdict::at(0));
  CHECK(ceer_equal(chain, 0, 2).observe(kFull) == Verdict::at(2));
  CHECK_FALSE(ceer_equal(chain, 0, 2).observe(1).confirmed);
  const auto single = CeerPresentation::from_pairs({{0, 1}});
  for (Nat f : {0, 1, 10, 10000}) CHECK_FALSE(ceer_equal(single, 0, 2).observe(f).confirmed);

  SECTION("symmetric, and transitive within the saturation bound") {
    std::mt19937_64 rng(testing::kSeed + 2);
    for (int trial = 0; trial < 50; ++trial) {
      const auto pres = CeerPresentation::from_pairs(random_pairs(rng, 15, 12));
      const Nat f = rng() % 16;
      for (Nat a = 0; a < 12; ++a)
        for (Nat b = 0; b < 12; ++b) {
          const Verdict ab = ceer_equal(pres, a, b).observe(f);
          CHECK(ab == ceer_equal(pres, b, a).observe(f));
          if (!ab.confirmed) continue;
          for (Nat c = 0; c < 12; ++c)
            if (ceer_equal(pres, b, c).observe(f).confirmed) CHECK(ceer_equal(pres, a, c).observe(f).confirmed);
        }
    }
  }
}

TEST_CASE("program presentations", "[ceers][presentation]") {
  // input i yields unpair(i+1)
  const auto pres = CeerPresentation::from_program(programs::add(1));
  const auto gens = pres.generators(40);
  REQUIRE_FALSE(gens.empty());
  for (std::size_t i = 1; i < gens.size(); ++i) CHECK(gens[i - 1].step <= gens[i].step);
  const auto later = pres.generators(80);
  REQUIRE(later.size() >= gens.size());
  CHECK(std::equal(gens.begin(), gens.end(), later.begin()));
  // input 0 outputs 1 = pair(0, 1)
  CHECK(saturate(pres, 40).same(0, 1));
}

TEST_CASE("quotient admissibility", "[ceers][quotient]") {
  const auto identity = CeerPresentation::from_pairs({});
  CHECK(quotient_admissibility_decode(identity, canonical_filter(5), 200) == 5);

  const auto merged = CeerPresentation::from_pairs({{0, 1}});
  const Nat m = quotient_admissibility_decode(merged, canonical_filter(1), 200);
  CHECK(ceer_equal(merged, m, 1).observe(kFull).confirmed);

  const FilterCode nothing = [](const OpenSetCode&) { return Observation::never(); };
  CHECK_THROWS_AS(quotient_admissibility_decode(identity, nothing, 500), FuelExhausted);
}

TEST_CASE("equality prefixes and surjections", "[ceers][surjection]") {
  SECTION("first-symbol matching") {
    const Transducer e =
        open_on_pairs([](WordView l, WordView r, Nat) { return !l.empty() && !r.empty() && l[0] == r[0]; }).code();
    const auto ws = extract_equality_prefixes(e, 200);
    REQUIRE(ws.size() >= 5);
    for (std::size_t i = 0; i < ws.size(); ++i) CHECK(ws[i] == Word{i});
    const Surjection s = surjection_from_prefixes(ws);
    CHECK(s(3).at(0, 1) == 3);
    CHECK_THROWS_AS(s(ws.size()), IndexUnavailable);
  }
  SECTION("a realizer that never confirms") {
    const Transducer never = OpenSetCode::nothing().code();
    CHECK(extract_equality_prefixes(never, 300).empty());
    CHECK_THROWS_AS(surjection_from_prefixes({})(0), IndexUnavailable);
  }
  SECTION("quotient equality realizer: delta is constant on each emitted cylinder") {
    const auto pres = CeerPresentation::from_pairs({{0, 1}, {2, 4}});
    const Space q = quotient_space(pres, 100);
    const auto ws = extract_equality_prefixes(quotient_discreteness(pres).on_pairs.code(), 200);
    REQUIRE_FALSE(ws.empty());
    std::mt19937_64 rng(testing::kSeed);
    for (const Word& w : ws) {
      const Name a = Name::padded(w, 0);
      const Name b = Name::word_then(w, Name::stream([r = rng()](Nat i) { return (r >> (i % 50)) % 9; }));
      CHECK(q->meta_equal(a, b));
    }
  }
}

TEST_CASE("isomorphism with a quotient of N", "[ceers][iso][property]") {
  SECTION("identity") {
    const QuotientIso iso = iso_with_quotient([](Nat n) { return nat_name(n); }, head_equality_witness());
    for (Nat n = 0; n < 10; ++n) CHECK(iso.phi_inverse(iso.phi(n), 200) == n);
  }
  SECTION("random small ceers round trip") {
    std::mt19937_64 rng(testing::kSeed + 3);
    for (int trial = 0; trial < 50; ++trial) {
      const auto gens = random_pairs(rng, 20, 41);
      const auto oracle = testing::brute_closure(gens, 41);
      const auto pres = CeerPresentation::from_pairs(gens);
      const QuotientIso iso = iso_with_quotient([](Nat n) { return nat_name(n); }, quotient_discreteness(pres));
      for (Nat n = 0; n <= 40; ++n) REQUIRE(oracle[iso.phi_inverse(iso.phi(n), 4000)][n]);
    }
  }
  SECTION("no preimage") {
    const QuotientIso iso = iso_with_quotient([](Nat n) { return nat_name(2 * n); }, head_equality_witness());
    CHECK_THROWS_AS(iso.phi_inverse(nat_name(7), 300), FuelExhausted);
  }
}

TEST_CASE("injection from a decidable equality table", "[ceers][injection]") {
  const auto id = injection_when_decidable([](Nat a, Nat b) { return a == b; }, 100);
  for (Nat k = 0; k < 20; ++k) CHECK(id.sigma(k) == k);

  const auto glued = injection_when_decidable([](Nat a, Nat b) { return a == b || (a <= 1 && b <= 1); }, 100);
  CHECK(glued.in_s(0));
  CHECK_FALSE(glued.in_s(1));
  CHECK(glued.sigma(1) == 2);
  CHECK(glued.iota(1) == 0);

  const auto finite = injection_when_decidable([](Nat a, Nat b) { return a % 3 == b % 3; }, 100);
  CHECK(finite.size_below_bound() == 3);
  CHECK_THROWS_AS(finite.sigma(3), NotInfinite);

  SECTION("exhaustive on random decidable tables") {
    std::mt19937_64 rng(testing::kSeed + 4);
    for (int trial = 0; trial < 30; ++trial) {
      const auto oracle = testing::brute_closure(random_pairs(rng, 25, 41), 41);
      const auto inj = injection_when_decidable([&](Nat a, Nat b) { return bool(oracle[a][b]); }, 41);
      for (Nat a = 0; a <= 40; ++a) {
        CHECK(oracle[inj.iota(a)][a]);
        CHECK(inj.in_s(inj.iota(a)));
        for (Nat b = 0; b <= 40; ++b) CHECK((inj.iota(a) == inj.iota(b)) == bool(oracle[a][b]));
      }
    }
  }
}

TEST_CASE("diagonalizing ceer", "[ceers][diagonal]") {
  const DiagonalCeer ceer(2000);
  SECTION("echo program: first m with a differing output") {
    // index 0 is HALT, which outputs its input
    const auto& v = ceer.vertex(0);
    REQUIRE(v.own);
    CHECK(v.own->output == 0);
    REQUIRE(v.target);
    CHECK(*v.target == 1);
  }
  SECTION("never-halting program has no edge") {
    const Nat n = program_index(programs::loop());
    CHECK_FALSE(ceer.vertex(n).own);
    CHECK_FALSE(ceer.vertex(n).target);
  }
  SECTION("constant program has no edge") {
    // clearing r0 takes 2n+2 steps on input n = 28201
    const DiagonalCeer slow(100000);
    const Nat n = program_index(programs::constant_zero());
    CHECK(slow.vertex(n).own);
    CHECK_FALSE(slow.vertex(n).target);
  }
  SECTION("out-degree at most one in the event log") {
    const ClosureState s = saturate(ceer.presentation(), 60);
    std::map<std::string, int> out_degree;
    for (const auto& line : s.event_log()) {
      std::istringstream in(line);
      std::string fuel, merge, from;
      in >> fuel >> merge >> from;
      CHECK(++out_degree[from] == 1);
    }
  }
  SECTION("edges are simulated independently") {
    for (Nat n = 0; n < 40; ++n) {
      const auto& v = ceer.vertex(n);
      if (!v.target) continue;
      const ToyProgram p = enumerate_program(n);
      const auto own = testing::reference_run(p, n, 2000);
      const auto there = testing::reference_run(p, *v.target, 2000);
      REQUIRE(own);
      REQUIRE(there);
      CHECK(own->output != there->output);
      CHECK(*v.target != n);
    }
  }
}

TEST_CASE("no decidable property certificates", "[ceers][diagonal]") {
  const DiagonalCeer ceer(2000);
  const auto nontotal = check_no_decidable_property(ceer, program_index(programs::loop()), 8);
  CHECK(nontotal.kind == CertificateKind::NonTotal);
  CHECK(verify_certificate(ceer, nontotal));

  const DiagonalCeer slow(100000);
  const auto constant = check_no_decidable_property(slow, program_index(programs::constant_zero()), 8);
  CHECK(constant.kind == CertificateKind::Constant);
  CHECK(constant.value == 0);
  CHECK(verify_certificate(slow, constant));

  const auto echo = check_no_decidable_property(ceer, 0, 8);
  REQUIRE(echo.kind == CertificateKind::NonExtensional);
  CHECK(echo.other == 1);
  CHECK(verify_certificate(ceer, echo));

  auto forged = echo;
  forged.other = 2;
  forged.other_value = 2;
  CHECK_FALSE(verify_certificate(ceer, forged));
}

TEST_CASE("inseparability probe", "[ceers][inseparable]") {
  const auto pres = CeerPresentation::from_pairs({{0, 2}, {1, 3}, {2, 4}});
  const auto zero = inseparability_probe(pres, 0, 1, program_index(programs::constant_zero()), 1000, 6);
  CHECK(zero.verdict == SeparatorVerdict::SeparatesOnSamples);
  CHECK_FALSE(zero.separates);
  CHECK(zero.class_a == std::vector<Nat>{0, 2, 4});

  const auto loop = inseparability_probe(pres, 0, 1, program_index(programs::loop()), 1000, 6);
  CHECK(loop.verdict == SeparatorVerdict::SeparatorNonTotal);

  const auto echo = inseparability_probe(pres, 0, 1, 0, 1000, 6);
  CHECK(echo.verdict == SeparatorVerdict::SeparatorNonExtensional);
  CHECK(echo.n == 0);
  CHECK(echo.m == 2);

  // parity separates these two classes
  const ToyProgram parity = parse_program("DECJZ r0 5\nDECJZ r0 4\nGOTO 0\nHALT\nINC r0\nHALT");
  const auto par = inseparability_probe(pres, 0, 1, program_index(parity), 1000, 6);
  CHECK(par.verdict == SeparatorVerdict::SeparatesOnSamples);
  CHECK(par.separates);

  CHECK_THROWS_AS(inseparability_probe(pres, 0, 4, 0, 1000, 6), PreconditionViolated);
}
