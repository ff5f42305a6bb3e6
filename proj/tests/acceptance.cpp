// Acceptance run: one [PASS]/[FAIL] line per criterion.
//
//   acceptance CTOP SOURCE_DIR [--regen]
//
// CTOP is the CLI binary; goldens live in SOURCE_DIR/tests/golden and the CLI
// runs from SOURCE_DIR so that relative data paths in the reports are stable.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

#include "ctop/ctop.hpp"
#include "support.hpp"

using namespace ctop;
using namespace ctop::examples;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (!o.ok) ++failures;
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << (o.ok ? "[PASS] " : "[FAIL] ") << id << " " << title << ": " << o.detail << " (" << secs << " s)";
  std::cout << line.str() << std::endl;
}

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<std::pair<Nat, Nat>> random_pairs(std::mt19937_64& rng, Nat max_pairs, Nat universe) {
  std::vector<std::pair<Nat, Nat>> out(rng() % (max_pairs + 1));
  for (auto& [a, b] : out) {
    a = rng() % universe;
    b = rng() % universe;
  }
  return out;
}

/// Plain union-find over [0, n), independent of ClosureState.
struct UnionFind {
  std::vector<std::size_t> up;
  explicit UnionFind(std::size_t n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  std::size_t root(std::size_t x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  }
  void join(std::size_t a, std::size_t b) { up[root(a)] = root(b); }
};

// 1 ------------------------------------------------------------------------

Outcome kernel_monotonicity() {
  std::mt19937_64 rng(testing::kSeed);
  std::uniform_int_distribution<Nat> fuel(0, 40);
  const auto t0 = Clock::now();
  int violations = 0;
  constexpr int kChecks = 10000;
  for (int trial = 0; trial < kChecks; ++trial) {
    const Transducer t = testing::random_transducer(rng);
    const Word w2 = testing::random_word(rng, 24, 6);
    std::uniform_int_distribution<std::size_t> cut(0, w2.size());
    const Word w1(w2.begin(), w2.begin() + static_cast<std::ptrdiff_t>(cut(rng)));
    Nat f1 = fuel(rng), f2 = fuel(rng);
    if (f1 > f2) std::swap(f1, f2);
    const Word o1 = t.run(w1, f1);
    if (!is_prefix(o1, t.run(w2, f2))) ++violations;
    if (!is_prefix(o1, t.run(w1, f2))) ++violations;
    if (!is_prefix(o1, t.run(w2, f1))) ++violations;
  }
  const double secs = since(t0);
  return {violations == 0 && secs < 10,
          std::to_string(kChecks) + " checks, " + std::to_string(violations) + " violations"};
}

// 2 ------------------------------------------------------------------------

Outcome ceer_oracle_equivalence() {
  std::mt19937_64 rng(testing::kSeed + 1);
  const auto t0 = Clock::now();
  int disagreements = 0;
  long compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Nat universe = 2 + rng() % 39;
    const auto gens = random_pairs(rng, 25, universe);
    UnionFind uf(40);
    for (auto [a, b] : gens) uf.join(a, b);
    const auto pres = CeerPresentation::from_pairs(gens);
    const Nat saturation = gens.size();
    for (Nat a = 0; a < 40; ++a)
      for (Nat b = a + 1; b < 40; ++b) {
        ++compared;
        if (ceer_equal(pres, a, b).observe(saturation).confirmed != (uf.root(a) == uf.root(b))) ++disagreements;
      }
  }
  const double secs = since(t0);
  return {disagreements == 0 && secs < 30,
          std::to_string(compared) + " pairs, " + std::to_string(disagreements) + " disagreements"};
}

// 3 ------------------------------------------------------------------------

Outcome quotient_round_trip() {
  std::mt19937_64 rng(testing::kSeed + 2);
  int bad_round_trips = 0, bad_injections = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto gens = random_pairs(rng, 20, 41);
    const auto pres = CeerPresentation::from_pairs(gens);
    const auto oracle = testing::brute_closure(gens, 41);
    const QuotientIso iso = iso_with_quotient([](Nat n) { return nat_name(n); }, quotient_discreteness(pres));
    for (Nat n = 0; n <= 40; ++n) {
      const Nat back = iso.phi_inverse(iso.phi(n), 4000);
      if (!ceer_equal(pres, back, n).observe(gens.size()).confirmed || !oracle[back][n]) ++bad_round_trips;
    }
  }
  for (int trial = 0; trial < 50; ++trial) {
    const auto oracle = testing::brute_closure(random_pairs(rng, 25, 41), 41);
    const auto inj = injection_when_decidable([&](Nat a, Nat b) { return bool(oracle[a][b]); }, 41);
    for (Nat a = 0; a <= 40; ++a)
      for (Nat b = 0; b <= 40; ++b)
        if ((inj.iota(a) == inj.iota(b)) != bool(oracle[a][b])) ++bad_injections;
  }
  return {bad_round_trips == 0 && bad_injections == 0,
          "50 ceers x 41 round trips: " + std::to_string(bad_round_trips) + " bad; 50 tables x 41^2 iota pairs: " +
              std::to_string(bad_injections) + " bad"};
}

// 4 ------------------------------------------------------------------------

Outcome example35_audit() {
  const DiagonalCeer ceer(100000);
  const auto pres = ceer.presentation();
  std::map<CertificateKind, int> kinds;
  int invalid = 0;
  for (Nat candidate = 0; candidate < 200; ++candidate) {
    const auto c = check_no_decidable_property(ceer, candidate, 20);
    ++kinds[c.kind];
    if (c.kind == CertificateKind::Inconclusive) continue;
    bool ok = verify_certificate(ceer, c);
    if (c.kind == CertificateKind::NonExtensional) {
      const ToyProgram p = enumerate_program(candidate);
      const auto x = testing::reference_run(p, c.point, ceer.vertex_budget());
      const auto y = testing::reference_run(p, c.other, ceer.vertex_budget());
      ok = ok && ceer_equal(pres, c.point, c.other).observe(c.merge_step).confirmed && x && y && x->output != y->output;
    }
    if (!ok) ++invalid;
  }
  // the full edge log up to the largest candidate and every target it names
  Nat horizon = 200;
  for (const auto& g : pres.generators(200)) horizon = std::max(horizon, std::max(g.m, g.n) + 1);
  std::map<Nat, int> out_degree;
  int max_degree = 0;
  for (const auto& g : pres.generators(horizon)) max_degree = std::max(max_degree, ++out_degree[g.m]);
  std::ostringstream d;
  d << "NonTotal " << kinds[CertificateKind::NonTotal] << ", Constant " << kinds[CertificateKind::Constant]
    << ", NonExtensional " << kinds[CertificateKind::NonExtensional] << ", Inconclusive "
    << kinds[CertificateKind::Inconclusive] << "; " << invalid << " failed replay; max out-degree " << max_degree;
  return {invalid == 0 && max_degree <= 1, d.str()};
}

// 5 ------------------------------------------------------------------------

Outcome da_diagonalizer(const fs::path& src) {
  std::vector<WitnessCandidate> cands;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(src / "data" / "hwit"))
    if (e.path().extension() == ".hwit") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) cands.push_back(io::parse_hwit(io::read_file(f.string()), f.stem().string()));
  const auto c = da_diagonalize(cands, 10000);
  std::vector<bool> defeated(cands.size(), false);
  int bad = 0;
  for (const auto& cert : c.certificates) {
    if (verify_da_certificate(c, cert, cands[cert.candidate]))
      defeated[cert.candidate] = true;
    else
      ++bad;
  }
  std::vector<Nat> starts;
  for (const auto& cert : c.certificates) starts.push_back(cert.start);
  starts.push_back(c.prefix.size());
  int thin_stages = 0;
  for (std::size_t i = 0; i + 1 < starts.size(); ++i) {
    bool in = false, out = false;
    for (Nat k = starts[i]; k < starts[i + 1]; ++k) (c.prefix[k] ? in : out) = true;
    if (!(in && out)) ++thin_stages;
  }
  const auto n_defeated = std::count(defeated.begin(), defeated.end(), true);
  std::ostringstream d;
  d << n_defeated << "/" << cands.size() << " candidates defeated, " << bad << " failed replay, " << c.stalls.size()
    << " stalls, " << thin_stages << " stages lacking a member or non-member";
  return {files.size() == 10 && n_defeated == 10 && bad == 0 && c.stalls.empty() && thin_stages == 0, d.str()};
}

// 6 ------------------------------------------------------------------------

std::set<Nat> below(const std::set<Nat>& s, Nat bound) { return {s.begin(), s.lower_bound(bound + 1)}; }

Outcome ha_suite() {
  std::mt19937_64 rng(testing::kSeed + 6);
  const auto a = OracleSet::of({2, 5, 9});
  const auto h = ha_space(a);
  const auto w = ha_hausdorff(h);
  const auto space = h.space();
  int distinct = 0, equal = 0, wrong = 0;
  while (distinct < 100 || equal < 100) {
    auto sample = [&]() {
      if (rng() % 2) {
        Nat head;
        do head = rng() % 30;
        while (a.contains(head));
        return h.a_name(head, rng() % 2 ? a.enumeration() : gamma_encode({9, 2, 5}));
      }
      const Nat heads[] = {2, 5, 9};
      std::set<Nat> tail;
      for (Nat k = rng() % 3; k > 0; --k) tail.insert(10 + rng() % 10);
      return h.b_name(heads[rng() % 3], tail);
    };
    const Name p = sample(), q = sample();
    const bool same = space->meta_equal(p, q);
    if ((same && equal >= 100) || (!same && distinct >= 100)) continue;
    (same ? equal : distinct) += 1;
    if (w.distinct(p, q).observe(100000).confirmed == same) ++wrong;
  }

  int bad_medvedev = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::set<Nat> members;
    for (Nat k = 1 + rng() % 8; k > 0; --k) members.insert(rng() % 101);
    const auto med = ha_medvedev(OracleSet::of(members));
    Word listing;
    for (Nat v : members) {
      listing.insert(listing.end(), rng() % 4, 0);
      listing.push_back(v + 1);
    }
    std::shuffle(listing.begin(), listing.end(), rng);
    const Name back = med.reverse(med.forward(Name::padded(listing)));
    if (below(gamma_decode(back, pair(100, listing.size() + 2) + 1), 100) != members) ++bad_medvedev;
  }

  const auto co = OracleSet::cofinite({0, 3, 7, 40});
  const Name out = ha_overt_to_cototal(ha_reference_overt(ha_space(co)), co.enumeration(true));
  const bool cototal = below(gamma_decode(out, pair(50, 60) + 1), 50) == co.members_below(51);

  std::ostringstream d;
  d << wrong << " wrong verdicts on 100 distinct + 100 equal pairs; " << bad_medvedev
    << "/20 Medvedev round trips bad; cototal emission " << (cototal ? "exact" : "wrong");
  return {wrong == 0 && bad_medvedev == 0 && cototal, d.str()};
}

// 7 ------------------------------------------------------------------------

StageTable random_dce(std::mt19937_64& rng, Nat count) {
  StageTable t;
  for (Nat n = 0; n < count; ++n) {
    const Nat pattern = n % 3;
    if (pattern == 0) continue;
    const Nat t1 = 1 + rng() % 8;
    t.record(t1, n, true);
    if (pattern == 2) t.record(t1 + 1 + rng() % 5, n, false);
  }
  return t;
}

Outcome sa_suite() {
  std::mt19937_64 rng(testing::kSeed + 7);
  const auto evens = OracleSet([](Nat n) { return n % 2 == 0; });
  const auto iso = sa_iso_when_ce(evens.enumeration());
  int bad_iso = 0;
  for (Nat n = 0; n <= 50; ++n) {
    const Name x = iso.forward(n);
    if (sa_flag(x).observe(400).confirmed != (n % 2 == 0)) ++bad_iso;
    if (iso.backward(x).at(0, 10) != n) ++bad_iso;
  }

  int bad_norm = 0;
  std::set<Nat> norm_patterns;
  for (int trial = 0; trial < 3; ++trial) {
    const auto t = random_dce(rng, 51);
    const auto norm = reference_norm_realizer(t);
    for (Nat n = 0; n <= 50; ++n) {
      const auto p = norm_to_dce(norm, n, 200);
      norm_patterns.insert(t.changes(n).size());
      if (p.final_bit() != t.final_bit(n) || p.flips() > 2) ++bad_norm;
    }
  }

  int bad_embed = 0;
  std::set<Nat> phases;
  const auto t = random_dce(rng, 12);
  const auto a = t.final_set();
  const auto emb = dce_to_embedding(t, 16);
  for (Nat n = 0; n < 12; ++n)
    for (Nat delay : {0, 2, 4, 7}) {
      const auto tr = emb.trace(sa_point(a, n, delay), 60);
      for (std::size_t i = 1; i < tr.size(); ++i)
        if (!tr[i].within(tr[i - 1])) ++bad_embed;
      if (emb.inverse(n, tr.back()) != a.contains(n)) ++bad_embed;
      phases.insert(t.changes(n).size());
    }

  std::ostringstream d;
  d << bad_iso << " iso failures on n<=50; " << bad_norm << " norm mismatches over flip patterns {";
  for (Nat k : norm_patterns) d << k << (k == *norm_patterns.rbegin() ? "" : ",");
  d << "}; " << bad_embed << " embedding failures at precision 2^-16 over " << phases.size() << " phases";
  return {bad_iso == 0 && bad_norm == 0 && norm_patterns.size() == 3 && bad_embed == 0 && phases.size() == 3, d.str()};
}

// 8 ------------------------------------------------------------------------

/// Sup-norm distance from grid point g (level 8) to a box, in units of 2^-8.
std::int64_t sup_distance(const std::vector<std::int64_t>& g, const DyadicBox& box) {
  const int shift = 8 - static_cast<int>(box.exponent);
  std::int64_t d = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const std::int64_t lo = box.lo[i] << shift, hi = box.hi[i] << shift;
    d = std::max(d, std::max<std::int64_t>({0, lo - g[i], g[i] - hi}));
  }
  return d;
}

Outcome ball_separation() {
  std::mt19937_64 rng(testing::kSeed + 8);
  constexpr Nat kLevel = 8;
  const auto t0 = Clock::now();
  int overlaps = 0, missed = 0, instances = 0, short_pools = 0;
  const Nat dims[] = {1, 2, 3, 1, 2, 3, 1, 2, 3, 2};
  for (Nat dim : dims) {
    const Nat max_level = dim == 3 ? 4 : 5;
    // boxes over 2^-3, possibly overlapping
    auto random_box = [&](std::int64_t from, std::int64_t to) {
      DyadicBox b{std::vector<std::int64_t>(dim), std::vector<std::int64_t>(dim), 3};
      for (Nat i = 0; i < dim; ++i) {
        b.lo[i] = from + static_cast<std::int64_t>(rng() % static_cast<Nat>(to - from));
        b.hi[i] = std::min<std::int64_t>(8, b.lo[i] + 1 + static_cast<std::int64_t>(rng() % 3));
      }
      return b;
    };
    const DyadicBox a = random_box(0, 4), b = random_box(3, 7);
    const auto sep = separate_by_balls(dim, balls_missing_box(dim, a, max_level), balls_missing_box(dim, b, max_level),
                                       Nat{1} << 20);
    const std::int64_t side = (std::int64_t{1} << kLevel) + 1;
    std::vector<std::vector<std::int64_t>> pool_a, pool_b;
    const std::int64_t margin = std::int64_t{3} << (kLevel - max_level - 1);
    sep.for_each_slice(kLevel, [&](Nat slice, const std::vector<bool>& u, const std::vector<bool>& v) {
      std::vector<std::int64_t> g(dim);
      for (std::size_t k = 0; k < u.size(); ++k) {
        overlaps += u[k] && v[k];
        std::size_t rem = k;
        for (Nat i = dim; i-- > 1;) {
          g[i] = static_cast<std::int64_t>(rem % static_cast<std::size_t>(side));
          rem /= static_cast<std::size_t>(side);
        }
        g[0] = static_cast<std::int64_t>(slice);
        if (sup_distance(g, a) == 0 && sup_distance(g, b) > margin) pool_a.push_back(g);
        if (sup_distance(g, b) == 0 && sup_distance(g, a) > margin) pool_b.push_back(g);
      }
    });
    if (pool_a.empty() || pool_b.empty()) {
      ++short_pools;
      continue;
    }
    for (int s = 0; s < 50; ++s) {
      missed += !sep.in_u(DyadicPoint{pool_a[rng() % pool_a.size()], kLevel});
      missed += !sep.in_v(DyadicPoint{pool_b[rng() % pool_b.size()], kLevel});
    }
    ++instances;
  }
  const double secs = since(t0);
  std::ostringstream d;
  d << instances << " instances (d<=3, level 8): " << overlaps << " overlapping cells, " << missed
    << " of 100 samples each uncovered in total, " << short_pools << " instances without samples";
  return {instances == 10 && overlaps == 0 && missed == 0 && secs < 60, d.str()};
}

// 9 ------------------------------------------------------------------------

/// Busy-beaver values by recursive enumeration over the same instruction
/// alphabet, run on the reference machine.
std::vector<Nat> reference_bb(Nat cutoff, Nat fuel, Nat registers) {
  std::vector<Nat> out(cutoff + 1, 0);
  for (Nat len = 1; len <= cutoff; ++len) {
    std::vector<Instruction> alphabet{{Op::Halt, 0, 0}};
    for (Nat r = 0; r < registers; ++r) alphabet.push_back({Op::Inc, r, 0});
    for (Nat target = 0; target < len; ++target) {
      alphabet.push_back({Op::Goto, 0, target});
      for (Nat r = 0; r < registers; ++r) alphabet.push_back({Op::DecJz, r, target});
    }
    ToyProgram prog{std::vector<Instruction>(len)};
    Nat best = out[len - 1];
    std::function<void(Nat)> fill = [&](Nat i) {
      if (i == len) {
        if (const auto r = testing::reference_run(prog, 0, fuel)) best = std::max(best, r->steps);
        return;
      }
      for (const auto& ins : alphabet) {
        prog.code[i] = ins;
        fill(i + 1);
      }
    };
    fill(0);
    out[len] = best;
  }
  return out;
}

Outcome nprime_suite() {
  const auto bb = compute_bb_table(4, 10000, 2);
  const auto expected = reference_bb(4, 10000, 2);
  const auto np = nprime_space(bb);
  int bad = 0;
  for (Nat m = 0; m <= bb.cutoff; ++m) {
    if (np.decode(NPrimeSpace::encode(m), 100) != m) ++bad;
    const auto bound = NPrimeSpace::bound_extractor(np.canonical_zero_realizer(), m, 0, 1000);
    if (!bound || *bound < bb.at(m)) ++bad;
  }
  std::ostringstream d;
  d << "table {";
  for (std::size_t i = 0; i < bb.entries.size(); ++i) d << (i ? "," : "") << bb.entries[i];
  d << "} " << (bb.entries == expected ? "matches" : "differs from") << " the reference enumeration; " << bad
    << " failures of decode or bound over m <= 4";
  return {bb.entries == expected && bad == 0, d.str()};
}

// 10 -----------------------------------------------------------------------

struct GoldenCommand {
  std::string name;
  std::string args;
  int exit_code;
};

const std::vector<GoldenCommand>& golden_commands() {
  static const std::vector<GoldenCommand> cmds{
      {"ceer-closure", "ceer closure --ceer data/chain.ceer", 0},
      {"ceer-equal", "ceer equal --ceer data/chain.ceer 0 9", 0},
      {"ceer-equal-open", "ceer equal --ceer data/chain.ceer 0 5", 2},
      {"ceer-iso", "ceer iso --ceer data/chain.ceer --max 12", 0},
      {"ceer-example35", "ceer example35", 0},
      {"ceer-probe", "ceer probe --pairs '0 1,2 3' 0 2 --separator 7", 1},
      {"space-discrete-nat", "space discrete --space nat", 0},
      {"space-discrete-pn", "space discrete --space pn --p data/p.oracle", 0},
      {"space-discrete-da", "space discrete --space da", 0},
      {"space-discrete-ceer", "space discrete --space ceer --ceer data/chain.ceer", 0},
      {"space-hausdorff-ha", "space hausdorff --space ha --oracle data/ha.oracle", 0},
      {"space-witness-seq", "space witness-seq --space nat", 0},
      {"space-witness-seq-ha", "space witness-seq --space ha --oracle data/ha.oracle --max 10", 2},
      {"space-witness-seq-ha-partial",
       "space witness-seq --space ha --oracle data/ha.oracle --max 10 --partial data/ha_partial.oracle", 2},
      {"space-witness-seq-ha-full", "space witness-seq --space ha --oracle data/ha.oracle --max 10 --partial data/ha.oracle",
       0},
      {"space-extend-open", "space extend-open", 0},
      {"space-separate-balls", "space separate-balls --dim 2 --level 6", 0},
      {"sa-witnesses", "example sa --oracle data/sa.oracle witnesses", 0},
      {"sa-iso", "example sa --oracle data/sa.oracle --max 10 iso", 0},
      {"sa-norm", "example sa --dce data/sa.dce norm", 0},
      {"sa-embed", "example sa --dce data/sa.dce embed", 0},
      {"sa-delta02", "example sa --lim data/sa.lim delta02", 0},
      {"da-discrete", "example da discrete", 0},
      {"da-partition", "example da partition", 0},
      {"diag-da",
       "example diag-da --witnesses data/hwit/01-diagonal-ones.hwit --witnesses data/hwit/02-silent.hwit "
       "--witnesses data/hwit/03-short.hwit --witnesses data/hwit/04-long.hwit --witnesses data/hwit/05-zero-words.hwit "
       "--witnesses data/hwit/06-everything.hwit --witnesses data/hwit/07-staggered.hwit --witnesses data/hwit/08-mixed.hwit "
       "--witnesses data/hwit/09-alternating.hwit --witnesses data/hwit/10-random.hwit",
       1},
      {"ha-hausdorff", "example ha --oracle data/ha.oracle hausdorff", 0},
      {"ha-medvedev", "example ha --oracle data/ha.oracle medvedev", 0},
      {"ha-cototal", "example ha --oracle data/cofinite.oracle cototal", 0},
      {"pn", "example pn --p data/p.oracle", 0},
      {"nprime-table", "example nprime table --cutoff 4 --registers 2", 0},
      {"nprime-extract", "example nprime --bb data/bb.table extract 3", 0},
      {"nprime-decode", "example nprime --bb data/bb.table decode", 0},
      {"diag-inj", "example diag-inj --candidate 5", 1},
      {"verify-example35", "--verify tests/golden/ceer-example35.json", 0},
  };
  return cmds;
}

struct Run {
  std::string out;
  int code = -1;
};

Run run_cli(const std::string& cli, const fs::path& src, const std::string& args) {
  const std::string cmd = "cd '" + src.string() + "' && '" + cli + "' " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Outcome determinism(const std::string& cli, const fs::path& src, bool regen) {
  const fs::path dir = src / "tests" / "golden";
  int unstable = 0, mismatched = 0, wrong_code = 0;
  std::string first_bad;
  for (const auto& c : golden_commands()) {
    const fs::path golden = dir / (c.name + ".json");
    const Run a = run_cli(cli, src, c.args);
    if (regen) {
      std::ofstream(golden, std::ios::binary) << a.out;
    }
    const Run b = run_cli(cli, src, c.args);
    const bool stable = a.out == b.out && a.code == b.code;
    const bool matches = fs::exists(golden) && io::read_file(golden.string()) == a.out;
    unstable += !stable;
    mismatched += !matches;
    wrong_code += a.code != c.exit_code;
    if ((!stable || !matches || a.code != c.exit_code) && first_bad.empty()) first_bad = c.name;
  }
  std::ostringstream d;
  d << golden_commands().size() << " commands run twice: " << unstable << " unstable, " << mismatched
    << " differ from goldens, " << wrong_code << " unexpected exit codes";
  if (!first_bad.empty()) d << " (first: " << first_bad << ")";
  return {unstable == 0 && mismatched == 0 && wrong_code == 0, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance CTOP SOURCE_DIR [--regen]\n";
    return 2;
  }
  const std::string cli = fs::absolute(argv[1]).string();
  const fs::path src = fs::absolute(argv[2]);
  const bool regen = argc > 3 && std::string(argv[3]) == "--regen";

  report(1, "kernel monotonicity", kernel_monotonicity);
  report(2, "ceer oracle equivalence", ceer_oracle_equivalence);
  report(3, "quotient round trip and decidable injection", quotient_round_trip);
  report(4, "diagonal ceer audit", example35_audit);
  report(5, "D_A diagonalizer", [&] { return da_diagonalizer(src); });
  report(6, "H_A suite", ha_suite);
  report(7, "S_A suite", sa_suite);
  report(8, "ball separation", ball_separation);
  report(9, "N' over busy-beaver tables", nprime_suite);
  report(10, "CLI determinism", [&] { return determinism(cli, src, regen); });
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed") << std::endl;
  return failures ? 1 : 0;
}
