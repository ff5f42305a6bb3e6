#include "ctop/ceers.hpp"
#include "sampling.hpp"

namespace ctop::cli {

namespace {

using namespace ctop::examples;

struct SpaceOptions {
  std::string space = "nat";
  std::string oracle;
  std::string p;
  Nat max = 10;
  CeerInput ceer;

  void add(CLI::App* cmd, const std::vector<std::string>& kinds, Nat default_max) {
    max = default_max;
    cmd->add_option("--space", space, "space to sample")->check(CLI::IsMember(kinds));
    cmd->add_option("--oracle", oracle, "oracle file for A");
    cmd->add_option("--p", p, "oracle file for the stream p");
    cmd->add_option("--max", max, "largest sampled index");
    ceer.add_options(cmd);
  }
};

Report finish(Report r, const SampleSpace& s, const OpenSetCode& on_pairs, bool want_equal, Nat fuel) {
  r.outcome = pairwise(r, s, on_pairs, want_equal, fuel, want_equal ? "discreteness" : "hausdorff").outcome();
  return r;
}

Report discrete(const Context& ctx, const SpaceOptions& o) {
  const Nat fuel = ctx.run.fuel_or(2000);
  Report r = ctx.start("space discrete", fuel);
  r.config["space"] = o.space;
  r.config["max"] = o.max;
  if (o.space == "nat") return finish(std::move(r), nat_samples(o.max), head_equality_witness().on_pairs, true, fuel);
  if (o.space == "pn") {
    const PNSpace pn(load_p(r, o.p));
    return finish(std::move(r), pn_samples(pn, o.max), PNSpace::discreteness().on_pairs, true, fuel);
  }
  if (o.space == "da") {
    const OracleSet a = o.oracle.empty() ? evens() : load_oracle(r, "oracle", o.oracle);
    if (o.oracle.empty()) r.config["inputs"]["oracle"] = "evens";
    return finish(std::move(r), da_samples(a), da_discreteness(a).on_pairs, true, fuel);
  }
  const auto pres = o.ceer.load(r);
  SampleSpace s{quotient_space(pres), {}};
  for (Nat n = 0; n <= o.max; ++n) s.points.push_back({std::to_string(n), nat_name(n)});
  return finish(std::move(r), s, quotient_discreteness(pres).on_pairs, true, fuel);
}

Report hausdorff(const Context& ctx, const SpaceOptions& o) {
  const Nat fuel = ctx.run.fuel_or(2000);
  Report r = ctx.start("space hausdorff", fuel);
  r.config["space"] = o.space;
  r.config["max"] = o.max;
  if (o.space == "nat") return finish(std::move(r), nat_samples(o.max), head_inequality_witness().on_pairs, false, fuel);
  if (o.space == "pn") {
    const PNSpace pn(load_p(r, o.p));
    return finish(std::move(r), pn_samples(pn, o.max), PNSpace::hausdorff().on_pairs, false, fuel);
  }
  if (o.oracle.empty()) throw ParseError("--oracle is required for H_A");
  const HASpace h(load_oracle(r, "oracle", o.oracle));
  return finish(std::move(r), ha_samples(h, o.max), ha_hausdorff(h).on_pairs, false, fuel);
}

Report witness_seq(const Context& ctx, const SpaceOptions& o, const std::string& partial) {
  const Nat fuel = ctx.run.fuel_or(4000);
  Report r = ctx.start("space witness-seq", fuel);
  r.config["space"] = o.space;
  r.config["max"] = o.max;
  SampleSpace s;
  HausdorffWitnessSequence ws;
  if (o.space == "nat") {
    s = {nat_space(), {}};
    for (Nat n = 0; n <= o.max; ++n) s.points.push_back({std::to_string(n), nat_name(n)});
    ws = nat_witness_sequence();
  } else {
    if (o.oracle.empty()) throw ParseError("--oracle is required for H_A");
    const HASpace h(load_oracle(r, "oracle", o.oracle));
    s = ha_samples(h, o.max);
    // with no enumeration supplied nothing is ever listed
    ws = ha_witness_sequence(partial.empty() ? OracleSet().enumeration()
                                             : load_oracle(r, "partial", partial).enumeration());
    r.config["enumeration"] = partial.empty() ? "none" : "partial";
  }
  std::vector<std::pair<Point, Point>> samples;
  for (const auto& x : s.points)
    for (const auto& y : s.points) samples.push_back({{s.space, x.name}, {s.space, y.name}});
  const auto rep = check_hausdorff_witness_sequence(ws, samples, fuel);
  const std::size_t k = s.points.size();
  json rows = json::array();
  for (const auto& row : rep.rows) {
    const auto& x = s.points[row.sample / k];
    const auto& y = s.points[row.sample % k];
    rows.push_back({{"x", x.label}, {"y", y.label}, {"meta_equal", row.meta_equal}, {"index", opt_json(row.index)},
                    {"step", row.index ? json(row.step) : json(nullptr)}, {"ok", row.ok}});
    if (row.index) r.fuel_used = std::max(r.fuel_used, row.step);
    if (!row.ok && row.meta_equal)
      r.certificates.push_back({{"kind", "diagonal-covered"}, {"x", x.label}, {"y", y.label}, {"index", *row.index},
                                {"step", row.step}});
  }
  r.results["points"] = labels(s);
  r.results["rows"] = rows;
  r.results["coverage_failures"] = rep.coverage_failures;
  r.results["violations"] = rep.violations;
  r.check("no rectangle meets the diagonal", rep.violations == 0);
  r.check("every distinct pair covered within fuel", rep.coverage_failures == 0);
  r.outcome = rep.violations ? Outcome::Refuted : (rep.coverage_failures ? Outcome::Inconclusive : Outcome::Verified);
  return r;
}

Report extend(const Context& ctx, const std::string& open_path, Nat max) {
  const Nat fuel = ctx.run.fuel_or(200);
  Report r = ctx.start("space extend-open", fuel);
  r.config["max"] = max;
  const io::ProgramOpen v = open_path.empty() ? io::parse_open("open v1\nprog\nHALT\n")
                                              : io::parse_open(load_input(r, "open", open_path));
  if (open_path.empty()) r.config["inputs"]["open"] = "everything";
  const OpenSetCode vc = v.code();
  const OpenSetCode u = extend_open(nat_times_sierpinski_rep(), vc);
  json rows = json::array();
  bool extensional = true, restricts = true;
  for (Nat n = 0; n <= max; ++n)
    for (const bool top : {false, true}) {
      std::optional<bool> first;
      for (const Nat delay : {Nat{0}, Nat{3}}) {
        const Name flag = top ? sierpinski_top_after(delay) : Name::constant(0);
        if (!top && delay > 0) continue;
        const Name y = interleave(nat_name(n), flag);
        const Verdict in_u = u.member(y).observe(fuel);
        const Verdict in_v = vc.member(y).observe(fuel);
        if (in_u.confirmed) r.fuel_used = std::max(r.fuel_used, in_u.step);
        if (first && *first != in_u.confirmed) extensional = false;
        first = in_u.confirmed;
        if (in_v.confirmed && !in_u.confirmed) restricts = false;
        rows.push_back({{"n", n}, {"flag", top ? "top" : "bottom"}, {"delay", delay}, {"in_U", verdict_json(in_u)},
                        {"in_V", verdict_json(in_v)}});
      }
    }
  r.results["rows"] = rows;
  r.check("names of one point agree", extensional);
  r.check("V on a name implies U on its point", restricts);
  r.outcome = r.all_checks_ok() ? Outcome::Verified : Outcome::Refuted;
  return r;
}

struct BallOptions {
  Nat dim = 1;
  Nat level = 8;
  Nat max_level = 5;
  Nat box_exp = 3;
  std::vector<std::int64_t> box_a{0, 2};
  std::vector<std::int64_t> box_b{6, 8};
};

/// Sup distance from the grid point g / 2^level to a box, in units of
/// 2^-e with e = max(level, box exponent).
__int128 box_distance(const std::vector<std::int64_t>& g, Nat level, const DyadicBox& box, Nat e) {
  __int128 d = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const __int128 x = static_cast<__int128>(g[i]) << (e - level);
    const __int128 lo = static_cast<__int128>(box.lo[i]) << (e - box.exponent);
    const __int128 hi = static_cast<__int128>(box.hi[i]) << (e - box.exponent);
    d = std::max({d, lo - x, x - hi});
  }
  return d;
}

Report separate_balls(const Context& ctx, const BallOptions& o) {
  const Nat fuel = ctx.run.fuel_or(Nat{1} << 20);
  Report r = ctx.start("space separate-balls", fuel);
  if (o.dim == 0 || o.dim > 3) throw ParseError("--dim must be 1, 2 or 3");
  if (o.box_a.size() != 2 || o.box_b.size() != 2) throw ParseError("boxes are given as two numbers: lo hi");
  r.config["dim"] = o.dim;
  r.config["level"] = o.level;
  r.config["max_level"] = o.max_level;
  r.config["box_exp"] = o.box_exp;
  r.config["box_a"] = o.box_a;
  r.config["box_b"] = o.box_b;
  const DyadicBox a{std::vector<std::int64_t>(o.dim, o.box_a[0]), std::vector<std::int64_t>(o.dim, o.box_a[1]), o.box_exp};
  const DyadicBox b{std::vector<std::int64_t>(o.dim, o.box_b[0]), std::vector<std::int64_t>(o.dim, o.box_b[1]), o.box_exp};
  const auto sep = separate_by_balls(o.dim, balls_missing_box(o.dim, a, o.max_level),
                                     balls_missing_box(o.dim, b, o.max_level), fuel);
  const Nat e = std::max({o.level, o.box_exp, o.max_level + 1});
  // points farther than 3 * 2^-(max_level+1) from a box are covered by its balls
  const __int128 margin = static_cast<__int128>(3) << (e - o.max_level - 1);
  const std::int64_t side = (std::int64_t{1} << o.level) + 1;
  std::size_t u_cells = 0, v_cells = 0, overlap = 0, a_only = 0, b_only = 0, a_missed = 0, b_missed = 0;
  std::string row;
  sep.for_each_slice(o.level, [&](Nat slice, const std::vector<bool>& u, const std::vector<bool>& v) {
    std::vector<std::int64_t> g(o.dim, 0);
    for (std::size_t k = 0; k < u.size(); ++k) {
      std::size_t rem = k;
      for (Nat i = o.dim; i-- > 1;) {
        g[i] = static_cast<std::int64_t>(rem % static_cast<std::size_t>(side));
        rem /= static_cast<std::size_t>(side);
      }
      g[0] = static_cast<std::int64_t>(slice);
      u_cells += u[k];
      v_cells += v[k];
      overlap += u[k] && v[k];
      const DyadicPoint x{g, o.level};
      if (a.contains(x) && box_distance(g, o.level, b, e) > margin) {
        ++a_only;
        a_missed += !u[k];
      }
      if (b.contains(x) && box_distance(g, o.level, a, e) > margin) {
        ++b_only;
        b_missed += !v[k];
      }
      if (o.dim == 1) row += u[k] ? 'U' : (v[k] ? 'V' : '.');
    }
  });
  r.results["balls_missing_a"] = sep.balls_missing_a().size();
  r.results["balls_missing_b"] = sep.balls_missing_b().size();
  r.results["grid_side"] = side;
  r.results["u_cells"] = u_cells;
  r.results["v_cells"] = v_cells;
  r.results["overlap_cells"] = overlap;
  r.results["a_minus_b_cells"] = a_only;
  r.results["b_minus_a_cells"] = b_only;
  if (o.dim == 1) r.results["grid"] = row;
  r.check("U and V disjoint on the grid", overlap == 0);
  r.check("A minus B inside U away from B", a_missed == 0, {{"missed", a_missed}});
  r.check("B minus A inside V away from A", b_missed == 0, {{"missed", b_missed}});
  r.fuel_used = sep.balls_missing_a().size() + sep.balls_missing_b().size();
  r.outcome = r.all_checks_ok() ? Outcome::Verified : Outcome::Refuted;
  return r;
}

}  // namespace

void register_space(CLI::App& app, Context& ctx) {
  auto* space = app.add_subcommand("space", "separation witnesses on sampled points");
  space->require_subcommand(1);

  auto* d = space->add_subcommand("discrete", "equality semidecided on samples");
  auto od = std::make_shared<SpaceOptions>();
  od->add(d, {"nat", "pn", "da", "ceer"}, 10);
  d->callback([&ctx, od] { ctx.job = [&ctx, od] { return discrete(ctx, *od); }; });

  auto* h = space->add_subcommand("hausdorff", "inequality semidecided on samples");
  auto oh = std::make_shared<SpaceOptions>();
  oh->add(h, {"nat", "pn", "ha"}, 10);
  h->callback([&ctx, oh] { ctx.job = [&ctx, oh] { return hausdorff(ctx, *oh); }; });

  auto* w = space->add_subcommand("witness-seq", "audit a Hausdorff witness sequence");
  auto ow = std::make_shared<SpaceOptions>();
  auto partial = std::make_shared<std::string>();
  ow->add(w, {"nat", "ha"}, 20);
  w->add_option("--partial", *partial, "oracle file enumerated by the H_A sequence (default: nothing)");
  w->callback([&ctx, ow, partial] { ctx.job = [&ctx, ow, partial] { return witness_seq(ctx, *ow, *partial); }; });

  auto* e = space->add_subcommand("extend-open", "extend an open of the name space to N x S");
  auto open = std::make_shared<std::string>();
  auto emax = std::make_shared<Nat>(4);
  e->add_option("--open", *open, "open file (default: everything)");
  e->add_option("--max", *emax, "largest n");
  e->callback([&ctx, open, emax] { ctx.job = [&ctx, open, emax] { return extend(ctx, *open, *emax); }; });

  auto* b = space->add_subcommand("separate-balls", "separate two boxes in [0,1]^d by dyadic balls");
  auto ob = std::make_shared<BallOptions>();
  b->add_option("--dim", ob->dim, "dimension 1..3");
  b->add_option("--level", ob->level, "grid level L (cells 2^-L)");
  b->add_option("--max-level", ob->max_level, "finest ball level");
  b->add_option("--box-exp", ob->box_exp, "box coordinates are over 2^box-exp");
  b->add_option("--box-a", ob->box_a, "A as lo hi, the same on every axis")->expected(2);
  b->add_option("--box-b", ob->box_b, "B as lo hi")->expected(2);
  b->callback([&ctx, ob] { ctx.job = [&ctx, ob] { return separate_balls(ctx, *ob); }; });
}

}  // namespace ctop::cli
