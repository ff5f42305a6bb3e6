#include <catch_amalgamated.hpp>

#include "ctop/io.hpp"
#include "support.hpp"

using namespace ctop;
using namespace ctop::io;

TEST_CASE("ceer files", "[io]") {
  const auto f = parse_ceer("ceer v1\n# three pairs\npairs\n0 1\n1 2\n\n5 7\n");
  CHECK(f.pairs == std::vector<NatPair>{{0, 1}, {1, 2}, {5, 7}});
  CHECK(parse_ceer(to_text(f)).pairs == f.pairs);
  CHECK(ceer_equal(f.presentation(), 0, 2).observe(10).confirmed);

  const auto g = parse_ceer("ceer v1\nprog\nHALT\n");
  REQUIRE(g.program);
  CHECK(to_text(g) == "ceer v1\nprog\nHALT\n");

  CHECK_THROWS_AS(parse_ceer("ceer v2\npairs\n"), ParseError);
  CHECK_THROWS_AS(parse_ceer("ceer v1\npairs\n0\n"), ParseError);
  CHECK_THROWS_AS(parse_ceer("ceer v1\npairs\n0 -1\n"), ParseError);
  CHECK_THROWS_AS(parse_ceer("ceer v1\nprog\nJUMP 3\n"), ParseError);
  CHECK_THROWS_AS(parse_ceer("ceer v1\n"), ParseError);
  CHECK(parse_pair_list("0 1,1 2") == std::vector<NatPair>{{0, 1}, {1, 2}});
  CHECK(parse_pair_list("").empty());
  CHECK_THROWS_AS(parse_pair_list("0 1 2"), ParseError);
}

TEST_CASE("relation files", "[io]") {
  const auto r = parse_relation("rel v1\npairs\n0 1\n");
  CHECK(r == std::vector<NatPair>{{0, 1}});
  CHECK(parse_relation(relation_to_text(r)) == r);
  CHECK_THROWS_AS(parse_relation("ceer v1\npairs\n"), ParseError);
}

TEST_CASE("oracle and stage files", "[io]") {
  const auto o = parse_oracle("oracle v1\n0 1\n3 1\n4 0\n");
  CHECK(o.oracle().members_below(10) == std::set<Nat>{0, 3});
  CHECK(parse_oracle("oracle v1\ndefault 1\n2 0\n").oracle().members_below(4) == std::set<Nat>{0, 1, 3});
  CHECK(to_text(parse_oracle(to_text(o))) == to_text(o));
  CHECK_THROWS_AS(parse_oracle("oracle v1\n1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_oracle("oracle v1\n1 1\n1 0\n"), ParseError);

  const auto d = parse_dce("dce v1\n9 2 0\n3 2 1\n4 1 1\n");
  CHECK(d.flip_stages(2) == std::pair<Nat, Nat>{3, 9});
  CHECK(d.flip_stages(1) == std::pair<Nat, Nat>{4, kInfinity});
  CHECK(stage_table_to_text(d, "dce") == "dce v1\n3 2 1\n4 1 1\n9 2 0\n");
  CHECK_THROWS_AS(parse_dce("dce v1\n1 0 1\n2 0 0\n3 0 1\n"), ParseError);
  const auto l = parse_lim("lim v1\n1 0 1\n2 0 0\n3 0 1\n");
  CHECK(l.final_bit(0));
  CHECK_THROWS_AS(parse_lim("lim v1\n1 0\n"), ParseError);
}

TEST_CASE("witness candidate files", "[io]") {
  const auto c = parse_hwit("hwit v1\npair 0 1 | 0 1\npair | 1\n", "demo");
  CHECK(c.label == "demo");
  REQUIRE(c.pair_at(1));
  CHECK(c.pair_at(0)->first == Word{0, 1});
  CHECK(c.pair_at(1)->first.empty());
  CHECK(c.pair_at(1)->second == Word{1});
  CHECK_FALSE(c.pair_at(2));
  CHECK(hwit_to_text({{{0, 1}, {0, 1}}, {{}, {1}}}) == "hwit v1\npair 0 1 | 0 1\npair | 1\n");
  CHECK_THROWS_AS(parse_hwit("hwit v1\npair 0 2 | 1\n", "x"), ParseError);
  CHECK_THROWS_AS(parse_hwit("hwit v1\npair 0 1\n", "x"), ParseError);
  CHECK_THROWS_AS(parse_hwit("hwit v1\npair 0 | 1 | 1\n", "x"), ParseError);
}

TEST_CASE("busy-beaver files", "[io]") {
  const auto t = compute_bb_table(3, 1000, 2);
  const auto text = to_text(t);
  CHECK(text == "bb v1\ncutoff 3\nfuel 1000\nregisters 2\n0 0\n1 1\n2 2\n3 4\n");
  const auto back = parse_bb(text);
  CHECK(back.entries == t.entries);
  CHECK(back.fuel == 1000);
  CHECK_THROWS_AS(parse_bb("bb v1\ncutoff 1\nfuel 5\nregisters 1\n0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_bb("bb v1\ncutoff 1\nfuel 5\nregisters 1\n0 3\n1 1\n"), ParseError);
}

TEST_CASE("open codes as programs", "[io]") {
  // halts with output = input, so accepts any prefix whose code is nonzero
  const auto o = parse_open("open v1\nparam 2\nprog\nHALT\n");
  CHECK(o.param == Word{2});
  CHECK(o.code().member(Name::constant(0)).observe(5).confirmed);
  CHECK(parse_open(to_text(o)).param == o.param);
  const auto never = parse_open("open v1\nprog\nGOTO 0\n");
  CHECK_FALSE(never.code().member(Name::constant(1)).observe(200).confirmed);
  CHECK_THROWS_AS(parse_open("open v1\nparam 1\n"), ParseError);
}
