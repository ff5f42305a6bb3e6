#include <map>

#include "cli.hpp"
#include "ctop/ceers.hpp"

namespace ctop::cli {

namespace {

json timed_pair_json(const TimedPair& g) { return json::array({g.step, g.m, g.n}); }

json certificate_json(const FailureCertificate& c, bool valid) {
  json j;
  j["kind"] = to_string(c.kind);
  j["candidate"] = c.candidate;
  j["point"] = c.point;
  j["other"] = c.other;
  j["value"] = c.value;
  j["other_value"] = c.other_value;
  j["samples"] = c.samples;
  j["fuel"] = c.fuel;
  j["merge_step"] = c.merge_step;
  j["valid"] = valid;
  return j;
}

Report closure(const Context& ctx, const CeerInput& in) {
  const Nat fuel = ctx.run.fuel_or(1000);
  Report r = ctx.start("ceer closure", fuel);
  const auto pres = in.load(r);
  const ClosureState s = saturate(pres, fuel);
  json classes = json::array();
  for (const auto& [root, members] : s.classes()) classes.push_back(members);
  r.results["generators_consumed"] = s.cursor();
  r.results["classes"] = classes;
  r.certificates.push_back({{"kind", "closure-log"}, {"events", s.event_log()}});
  const auto gens = pres.generators(fuel);
  bool closed = true;
  for (const auto& g : gens) closed = closed && s.same(g.m, g.n);
  r.check("every consumed pair lies in one class", closed);
  r.fuel_used = gens.empty() ? 0 : gens.back().step;
  return r;
}

Report equal(const Context& ctx, const CeerInput& in, Nat m, Nat n) {
  const Nat fuel = ctx.run.fuel_or(1000);
  Report r = ctx.start("ceer equal", fuel);
  r.config["m"] = m;
  r.config["n"] = n;
  const auto pres = in.load(r);
  const Verdict v = ceer_equal(pres, m, n).observe(fuel);
  r.results["observation"] = v.confirmed ? "Confirmed" : "NotYet";
  r.results["step"] = v.confirmed ? json(v.step) : json(nullptr);
  r.fuel_used = v.confirmed ? v.step : fuel;
  if (!v.confirmed) {
    r.outcome = Outcome::Inconclusive;
    return r;
  }
  json trace = json::array();
  ClosureState s;
  for (const auto& g : pres.generators(v.step)) {
    trace.push_back(timed_pair_json(g));
    s.consume(g);
  }
  r.check("trace merges m and n", s.same(m, n));
  r.certificates.push_back({{"kind", "merge-trace"}, {"m", m}, {"n", n}, {"step", v.step}, {"trace", trace}});
  r.outcome = r.all_checks_ok() ? Outcome::Verified : Outcome::Inconclusive;
  return r;
}

Report iso(const Context& ctx, const CeerInput& in, Nat max) {
  const Nat fuel = ctx.run.fuel_or(4000);
  Report r = ctx.start("ceer iso", fuel);
  r.config["max"] = max;
  const auto pres = in.load(r);
  const auto q = iso_with_quotient([](Nat n) { return nat_name(n); }, quotient_discreteness(pres));
  json table = json::array();
  bool all = true;
  for (Nat n = 0; n <= max; ++n) {
    json row;
    row["n"] = n;
    try {
      const Nat k = q.phi_inverse(q.phi(n), fuel);
      const Verdict merged = ceer_equal(pres, n, k).observe(fuel);
      row["phi_inverse"] = k;
      row["merge"] = verdict_json(merged);
      all = all && merged.confirmed;
      if (merged.confirmed) r.fuel_used = std::max(r.fuel_used, merged.step);
    } catch (const FuelExhausted&) {
      row["phi_inverse"] = nullptr;
      row["merge"] = verdict_json(Verdict::not_yet());
      all = false;
    }
    table.push_back(row);
  }
  r.results["round_trips"] = table.size();
  r.check("phi_inverse(phi(n)) merged with n for every n", all);
  r.certificates.push_back({{"kind", "round-trip-table"}, {"rows", table}});
  r.outcome = all ? Outcome::Verified : Outcome::Inconclusive;
  return r;
}

Report example35(const Context& ctx, Nat count, Nat samples) {
  const Nat fuel = ctx.run.fuel_or(100000);
  Report r = ctx.start("ceer example35", fuel);
  r.config["count"] = count;
  r.config["samples"] = samples;
  const DiagonalCeer ceer(fuel);
  std::map<std::string, Nat> kinds;
  std::map<Nat, Nat> out_degree;
  json edges = json::array();
  bool all_valid = true;
  for (Nat c = 0; c < count; ++c) {
    const auto cert = check_no_decidable_property(ceer, c, samples);
    const bool valid = cert.kind == CertificateKind::Inconclusive || verify_certificate(ceer, cert);
    all_valid = all_valid && valid;
    ++kinds[to_string(cert.kind)];
    r.certificates.push_back(certificate_json(cert, valid));
    const auto& v = ceer.vertex(c);
    if (v.target) {
      edges.push_back(json::array({c, *v.target}));
      ++out_degree[c];
    }
  }
  Nat max_degree = 0;
  for (const auto& [vertex, d] : out_degree) max_degree = std::max(max_degree, d);
  r.results["kinds"] = kinds;
  r.results["edges"] = edges;
  r.results["max_out_degree"] = max_degree;
  r.check("every certificate replays", all_valid);
  r.check("out-degree at most 1", max_degree <= 1);
  r.fuel_used = fuel * count;
  if (!r.all_checks_ok() || kinds.count("Inconclusive")) r.outcome = Outcome::Inconclusive;
  return r;
}

Report probe(const Context& ctx, const CeerInput& in, Nat a, Nat b, Nat separator, Nat samples) {
  const Nat fuel = ctx.run.fuel_or(2000);
  Report r = ctx.start("ceer probe", fuel);
  r.config["a"] = a;
  r.config["b"] = b;
  r.config["separator"] = separator;
  r.config["samples"] = samples;
  const auto pres = in.given() ? in.load(r) : example35_ceer(fuel);
  if (!in.given()) r.config["inputs"]["ceer"] = "example35";
  const auto rep = inseparability_probe(pres, a, b, separator, fuel, samples);
  r.results["verdict"] = to_string(rep.verdict);
  r.results["class_a"] = rep.class_a;
  r.results["class_b"] = rep.class_b;
  r.results["separates_on_samples"] = rep.separates;
  r.fuel_used = fuel;
  json cert;
  cert["separator"] = separator;
  switch (rep.verdict) {
    case SeparatorVerdict::SeparatorNonTotal:
      cert["kind"] = "SeparatorNonTotal";
      cert["point"] = rep.n;
      cert["fuel"] = fuel;
      r.outcome = Outcome::Refuted;
      break;
    case SeparatorVerdict::SeparatorNonExtensional:
      cert["kind"] = "SeparatorNonExtensional";
      cert["point"] = rep.n;
      cert["other"] = rep.m;
      cert["fuel"] = fuel;
      r.outcome = Outcome::Refuted;
      break;
    default:
      if (!rep.separates) {
        cert["kind"] = "NotSeparating";
        cert["class_a"] = rep.class_a;
        cert["class_b"] = rep.class_b;
        cert["fuel"] = fuel;
        r.outcome = Outcome::Refuted;
      } else {
        r.outcome = Outcome::Inconclusive;
      }
  }
  if (r.outcome == Outcome::Refuted) r.certificates.push_back(cert);
  return r;
}

}  // namespace

void register_ceer(CLI::App& app, Context& ctx) {
  auto* ceer = app.add_subcommand("ceer", "ceer presentations and quotients");
  ceer->require_subcommand(1);

  auto* c = ceer->add_subcommand("closure", "saturate the generators");
  auto in_c = std::make_shared<CeerInput>();
  in_c->add_options(c);
  c->callback([&ctx, in_c] { ctx.job = [&ctx, in_c] { return closure(ctx, *in_c); }; });

  auto* e = ceer->add_subcommand("equal", "semidecide m R n");
  auto in_e = std::make_shared<CeerInput>();
  auto mn = std::make_shared<std::pair<Nat, Nat>>();
  in_e->add_options(e);
  e->add_option("m", mn->first)->required();
  e->add_option("n", mn->second)->required();
  e->callback([&ctx, in_e, mn] { ctx.job = [&ctx, in_e, mn] { return equal(ctx, *in_e, mn->first, mn->second); }; });

  auto* i = ceer->add_subcommand("iso", "round trip through the quotient isomorphism");
  auto in_i = std::make_shared<CeerInput>();
  auto max = std::make_shared<Nat>(40);
  in_i->add_options(i);
  i->add_option("--max", *max, "largest n in the table");
  i->callback([&ctx, in_i, max] { ctx.job = [&ctx, in_i, max] { return iso(ctx, *in_i, *max); }; });

  auto* x = ceer->add_subcommand("example35", "diagonal ceer without decidable properties");
  auto counts = std::make_shared<std::pair<Nat, Nat>>(200, 20);
  x->add_option("--count", counts->first, "candidate programs");
  x->add_option("--samples", counts->second, "inputs sampled for constancy");
  x->callback([&ctx, counts] { ctx.job = [&ctx, counts] { return example35(ctx, counts->first, counts->second); }; });

  auto* p = ceer->add_subcommand("probe", "run a candidate separator on two classes");
  auto in_p = std::make_shared<CeerInput>();
  auto ab = std::make_shared<std::array<Nat, 4>>(std::array<Nat, 4>{0, 0, 0, 40});
  in_p->add_options(p);
  p->add_option("a", (*ab)[0])->required();
  p->add_option("b", (*ab)[1])->required();
  p->add_option("--separator", (*ab)[2], "program index")->required();
  p->add_option("--samples", (*ab)[3], "class members sampled below this bound");
  p->callback([&ctx, in_p, ab] {
    ctx.job = [&ctx, in_p, ab] { return probe(ctx, *in_p, (*ab)[0], (*ab)[1], (*ab)[2], (*ab)[3]); };
  });
}

}  // namespace ctop::cli
