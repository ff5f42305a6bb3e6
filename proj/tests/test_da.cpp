#include <catch_amalgamated.hpp>

#include "ctop/examples/da.hpp"
#include "support.hpp"

using namespace ctop;
using namespace ctop::examples;

namespace {

Word zeros_then_one(Nat k) {
  Word w(k, 0);
  w.push_back(1);
  return w;
}

WitnessCandidate diagonal_ones(Nat count) {
  std::vector<std::pair<Word, Word>> pairs;
  for (Nat k = 0; k < count; ++k) pairs.emplace_back(zeros_then_one(k), zeros_then_one(k));
  return WitnessCandidate::from_pairs("diagonal-ones", pairs);
}

/// Procedural candidate: pair i is (0^i 1, 0^(i+1) 1), never ending.
WitnessCandidate staggered() {
  return {"staggered", [](Nat i) -> std::optional<std::pair<Word, Word>> {
            return std::pair{zeros_then_one(i), zeros_then_one(i + 1)};
          }};
}

}  // namespace

TEST_CASE("D_A discreteness", "[examples][da]") {
  const auto evens = OracleSet([](Nat n) { return n % 2 == 0; });
  const auto d = da_discreteness(evens);
  const auto first = d.equal(da_name(evens, DAPoint::A), da_name(evens, DAPoint::A)).observe(100);
  REQUIRE(first.confirmed);
  CHECK(first.step == 2);
  CHECK_FALSE(d.equal(da_name(evens, DAPoint::A), da_name(evens, DAPoint::B)).observe(100000).confirmed);
  CHECK(d.equal(da_name(evens, DAPoint::A, {0, 2}), da_name(evens, DAPoint::A, {4, 6})).observe(100).confirmed);
  const auto space = da_space(evens);
  CHECK(space->meta_valid(da_name(evens, DAPoint::B, {1, 3})));
  CHECK(space->meta_equal(da_name(evens, DAPoint::A, {0}), da_name(evens, DAPoint::A, {2})));
  CHECK_FALSE(space->meta_equal(da_name(evens, DAPoint::A), da_name(evens, DAPoint::B)));
}

TEST_CASE("D_A diagonalizer", "[examples][da]") {
  SECTION("no candidates") {
    const auto c = da_diagonalize({}, 100, 4);
    CHECK(c.prefix == std::vector<bool>{true, false, true, false, true, false, true, false});
    CHECK(c.certificates.empty());
  }
  SECTION("silent candidate is certified per stage") {
    const std::vector<WitnessCandidate> cands{WitnessCandidate::from_pairs("silent", {})};
    const auto c = da_diagonalize(cands, 100, 3);
    REQUIRE(c.certificates.size() == 3);
    for (const auto& cert : c.certificates) {
      CHECK(cert.kind == DACertificateKind::Omission);
      CHECK(verify_da_certificate(c, cert, cands[0]));
    }
  }
  SECTION("diagonal ones are caught separating two names of a") {
    const std::vector<WitnessCandidate> cands{diagonal_ones(100)};
    const auto c = da_diagonalize(cands, 10000, 5);
    REQUIRE(c.certificates.size() == 5);
    for (const auto& cert : c.certificates) {
      REQUIRE(cert.kind == DACertificateKind::Separation);
      CHECK(cert.w == cert.u);
      CHECK(verify_da_certificate(c, cert, cands[0]));
      // both names are names of a in the finished A
      const auto space = da_space(c.oracle());
      CHECK(space->meta_equal(c.name_after(cert.w), c.name_after(cert.u)));
      CHECK(space->meta_equal(c.name_after(cert.w), da_name(c.oracle(), DAPoint::A)));
    }
    CHECK(c.certificates[0].step == 2);
  }
  SECTION("tampered certificates fail replay") {
    const std::vector<WitnessCandidate> cands{staggered()};
    const auto c = da_diagonalize(cands, 10000, 3);
    REQUIRE(c.certificates.size() == 3);
    auto bad = c.certificates[1];
    REQUIRE(verify_da_certificate(c, bad, cands[0]));
    bad.step += 1;
    CHECK_FALSE(verify_da_certificate(c, bad, cands[0]));
    bad = c.certificates[1];
    bad.w = Word{1};
    CHECK_FALSE(verify_da_certificate(c, bad, cands[0]));
  }
  SECTION("every stage adds a member and a non-member") {
    const std::vector<WitnessCandidate> cands{diagonal_ones(8), staggered(), WitnessCandidate::from_pairs("silent", {})};
    const auto c = da_diagonalize(cands, 10000, 12);
    std::vector<Nat> starts;
    for (const auto& cert : c.certificates) starts.push_back(cert.start);
    starts.push_back(c.prefix.size());
    for (std::size_t i = 0; i + 1 < starts.size(); ++i) {
      bool in = false, out = false;
      for (Nat k = starts[i]; k < starts[i + 1]; ++k) (c.prefix[k] ? in : out) = true;
      CHECK((in && out));
    }
    for (const auto& cert : c.certificates) CHECK(verify_da_certificate(c, cert, cands[cert.candidate]));
  }
}

TEST_CASE("D_A partition variant", "[examples][da]") {
  // A = evens; odd multiples of 3 form block 0, other odds block 1
  const auto part = da_partition_variant([](Nat n) -> std::optional<Nat> {
    if (n % 2 == 0) return std::nullopt;
    return n % 3 == 0 ? 0 : 1;
  });
  const auto d = part.discreteness();
  const auto space = part.space();
  for (Nat x = 0; x < 3; ++x)
    for (Nat y = 0; y < 3; ++y) {
      const Name p = part.name(x, {1, 2, 3}), q = part.name(y, {5, 9});
      CHECK(d.equal(p, q).observe(200).confirmed == (x == y));
      CHECK(space->meta_equal(p, q) == (x == y));
    }
  const auto single = da_partition_variant([](Nat n) -> std::optional<Nat> {
    if (n % 2 == 0) return std::nullopt;
    return 0;
  });
  const auto evens = OracleSet([](Nat n) { return n % 2 == 0; });
  CHECK(single.name(1).prefix(20, 20) == da_name(evens, DAPoint::B).prefix(20, 20));
  CHECK(single.name(0).prefix(20, 20) == da_name(evens, DAPoint::A).prefix(20, 20));
}
