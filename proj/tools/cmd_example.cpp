#include <fstream>

#include "sampling.hpp"

namespace ctop::cli {

namespace {

using namespace ctop::examples;

json stage_log_json(const StageLog& log) {
  json out = json::array();
  for (const auto& e : log.events()) out.push_back({{"stage", e.stage}, {"event", e.event}, {"data", e.data}});
  return out;
}

json inf_json(Nat v) { return v == kInfinity ? json(nullptr) : json(v); }

json interval_json(const DyadicInterval& x) { return json::array({x.lo, x.hi}); }

StageTable load_table(Report& r, const std::string& key, const std::string& path, bool dce) {
  if (path.empty()) throw ParseError("--" + key + " is required");
  const std::string text = load_input(r, key, path);
  return dce ? io::parse_dce(text) : io::parse_lim(text);
}

/// Largest touched index plus two, so untouched points appear too.
Nat default_max(const StageTable& t, Nat max) {
  if (max != kInfinity) return max;
  const auto touched = t.touched();
  return touched.empty() ? 2 : touched.back() + 2;
}

// ---------------------------------------------------------------------------
// S_A

struct SAOptions {
  std::string oracle, dce, lim;
  Nat max = kInfinity;
  Nat horizon = 60;
};

Report sa_witnesses_cmd(const Context& ctx, const SAOptions& o) {
  const Nat fuel = ctx.run.fuel_or(2000);
  Report r = ctx.start("example sa witnesses", fuel);
  if (o.oracle.empty()) throw ParseError("--oracle is required");
  const OracleSet a = load_oracle(r, "oracle", o.oracle);
  const Nat max = o.max == kInfinity ? 6 : o.max;
  r.config["max"] = max;
  SampleSpace s{sa_space(a), {}};
  for (Nat n = 0; n <= max; ++n) {
    s.points.push_back({std::to_string(n), sa_point(a, n)});
    if (a.contains(n)) s.points.push_back({std::to_string(n) + "/late3", sa_point(a, n, 3)});
  }
  const auto [d, h] = sa_witnesses(a);
  const auto rd = pairwise(r, s, d.on_pairs, true, fuel, "discreteness");
  const auto rh = pairwise(r, s, h.on_pairs, false, fuel, "hausdorff");
  r.outcome = worst(rd.outcome(), rh.outcome());
  return r;
}

Report sa_iso_cmd(const Context& ctx, const SAOptions& o) {
  const Nat fuel = ctx.run.fuel_or(2000);
  Report r = ctx.start("example sa iso", fuel);
  if (o.oracle.empty()) throw ParseError("--oracle is required");
  const OracleSet a = load_oracle(r, "oracle", o.oracle);
  const Nat max = o.max == kInfinity ? 50 : o.max;
  r.config["max"] = max;
  const SAIso iso = sa_iso_when_ce(a.enumeration());
  const Space space = sa_space(a);
  json rows = json::array();
  bool flags_ok = true, back_ok = true, valid = true;
  for (Nat n = 0; n <= max; ++n) {
    const Name x = iso.forward(n);
    const Verdict flag = sa_flag(x).observe(fuel);
    const auto back = iso.backward(x).at(0, fuel);
    flags_ok = flags_ok && flag.confirmed == a.contains(n);
    back_ok = back_ok && back == n;
    valid = valid && space->meta_valid(x);
    if (flag.confirmed) r.fuel_used = std::max(r.fuel_used, flag.step);
    rows.push_back({{"n", n}, {"in_A", a.contains(n)}, {"flag", verdict_json(flag)}, {"back", opt_json(back)}});
  }
  r.results["rows"] = rows;
  r.check("flag confirmed exactly on A", flags_ok);
  r.check("backward(forward(n)) = n", back_ok);
  r.check("forward names are valid", valid);
  r.certificates.push_back({{"kind", "round-trip-table"}, {"rows", rows.size()}});
  r.outcome = r.all_checks_ok() ? Outcome::Verified : Outcome::Inconclusive;
  return r;
}

Report sa_norm_cmd(const Context& ctx, const SAOptions& o) {
  const Nat fuel = ctx.run.fuel_or(300);
  Report r = ctx.start("example sa norm", fuel);
  const StageTable t = load_table(r, "dce", o.dce, true);
  const Nat max = default_max(t, o.max);
  r.config["max"] = max;
  const auto norm = reference_norm_realizer(t);
  json rows = json::array();
  bool finals = true, bounded = true;
  for (Nat n = 0; n <= max; ++n) {
    const Proclamation p = norm_to_dce(norm, n, fuel);
    finals = finals && p.final_bit() == t.final_bit(n);
    bounded = bounded && p.flips() <= 2 && (p.flips() < 2 || p.enter < p.leave);
    rows.push_back({{"n", n}, {"enter", inf_json(p.enter)}, {"leave", inf_json(p.leave)}, {"flips", p.flips()},
                    {"final", p.final_bit()}, {"table_final", t.final_bit(n)}});
    for (const auto& e : p.log.events()) r.log.push_back({{"stage", e.stage}, {"event", e.event}, {"data", e.data}});
    if (p.leave != kInfinity) r.fuel_used = std::max(r.fuel_used, p.leave);
    else if (p.enter != kInfinity) r.fuel_used = std::max(r.fuel_used, p.enter);
  }
  r.results["rows"] = rows;
  r.check("final proclamation matches the table", finals);
  r.check("at most two flips, in order", bounded);
  r.outcome = r.all_checks_ok() ? Outcome::Verified : Outcome::Refuted;
  return r;
}

Report sa_embed_cmd(const Context& ctx, const SAOptions& o) {
  const Nat fuel = ctx.run.fuel_or(o.horizon);
  Report r = ctx.start("example sa embed", fuel);
  const StageTable t = load_table(r, "dce", o.dce, true);
  const Nat max = default_max(t, o.max);
  r.config["max"] = max;
  r.config["horizon"] = o.horizon;
  const SAEmbedding emb = dce_to_embedding(t, ctx.run.precision);
  const OracleSet a = t.final_set();
  json rows = json::array();
  bool refines = true, round_trip = true;
  std::set<Nat> phases;
  for (Nat n = 0; n <= max; ++n) {
    const auto eps = emb.epsilon(n);
    phases.insert(static_cast<Nat>(t.changes(n).size()));
    for (const Nat delay : {Nat{0}, Nat{2}, Nat{4}, Nat{7}}) {
      if (!a.contains(n) && delay > 0) continue;
      const auto tr = emb.trace(sa_point(a, n, delay), o.horizon);
      bool mono = true;
      for (std::size_t i = 1; i < tr.size(); ++i) mono = mono && tr[i].within(tr[i - 1]);
      const auto back = emb.inverse(n, tr.back());
      refines = refines && mono;
      round_trip = round_trip && back == a.contains(n);
      const auto [t1, t2] = t.flip_stages(n);
      rows.push_back({{"n", n}, {"delay", delay}, {"t1", inf_json(t1)}, {"t2", inf_json(t2)}, {"epsilon", opt_json(eps)},
                      {"final", interval_json(tr.back())}, {"inverse", back ? json(*back) : json(nullptr)},
                      {"in_A", a.contains(n)}, {"refines", mono}});
    }
  }
  r.results["precision"] = ctx.run.precision;
  r.results["rows"] = rows;
  r.results["flip_patterns"] = phases;
  r.check("every trace refines", refines);
  r.check("inverse recovers membership", round_trip);
  r.check("all three flip patterns exercised", phases.count(0) && phases.count(1) && phases.count(2));
  r.certificates.push_back({{"kind", "embedding-round-trip"}, {"rows", rows}});
  r.fuel_used = o.horizon;
  r.outcome = r.all_checks_ok() ? Outcome::Verified : Outcome::Inconclusive;
  return r;
}

Report sa_delta02_cmd(const Context& ctx, const SAOptions& o) {
  const Nat fuel = ctx.run.fuel_or(1);
  Report r = ctx.start("example sa delta02", fuel);
  const StageTable t = load_table(r, "lim", o.lim, false);
  const Nat max = default_max(t, o.max);
  r.config["max"] = max;
  const auto code = delta02_subspace_code(t);
  json rows = json::array();
  bool exact = true;
  for (Nat n = 0; n <= max; ++n) {
    const bool top = code.in_subspace(n, true), bottom = code.in_subspace(n, false);
    exact = exact && top == t.final_bit(n) && bottom == !t.final_bit(n);
    rows.push_back({{"n", n}, {"limit", t.final_bit(n)}, {"changes", t.changes(n).size()}, {"top_in", top},
                    {"bottom_in", bottom}, {"conjuncts", 2 * (code.horizon(n) + 1)}});
  }
  r.results["rows"] = rows;
  r.check("exactly the flag matching the limit survives", exact);
  r.outcome = exact ? Outcome::Verified : Outcome::Refuted;
  return r;
}

// ---------------------------------------------------------------------------
// D_A

struct DAOptions {
  std::string oracle;
  std::vector<std::string> witnesses;
  Nat stages = 0;
};

Report da_discrete_cmd(const Context& ctx, const DAOptions& o) {
  const Nat fuel = ctx.run.fuel_or(2000);
  Report r = ctx.start("example da discrete", fuel);
  const OracleSet a = o.oracle.empty() ? evens() : load_oracle(r, "oracle", o.oracle);
  if (o.oracle.empty()) r.config["inputs"]["oracle"] = "evens";
  r.outcome = pairwise(r, da_samples(a), da_discreteness(a).on_pairs, true, fuel, "discreteness").outcome();
  return r;
}

/// A = evens; the odd numbers split into blocks by (k / 2) mod 2.
Report da_partition_cmd(const Context& ctx) {
  const Nat fuel = ctx.run.fuel_or(2000);
  Report r = ctx.start("example da partition", fuel);
  r.config["inputs"]["blocks"] = "evens | 1 mod 4 | 3 mod 4";
  const auto part = da_partition_variant([](Nat k) -> std::optional<Nat> {
    if (k % 2 == 0) return std::nullopt;
    return (k / 2) % 2;
  });
  SampleSpace s{part.space(), {}};
  const Nat first_one[] = {0, 1, 3};
  for (Nat point = 0; point < 3; ++point) {
    s.points.push_back({"p" + std::to_string(point), part.name(point)});
    s.points.push_back({"p" + std::to_string(point) + "/off" + std::to_string(first_one[point]),
                        part.name(point, {first_one[point]})});
  }
  r.outcome = pairwise(r, s, part.discreteness().on_pairs, true, fuel, "discreteness").outcome();
  return r;
}

std::string bits(const std::vector<bool>& v) {
  std::string s;
  for (bool b : v) s += b ? '1' : '0';
  return s;
}

Report da_diag_cmd(const Context& ctx, const DAOptions& o, const std::string& command) {
  const Nat fuel = ctx.run.fuel_or(10000);
  Report r = ctx.start(command, fuel);
  if (o.witnesses.empty()) throw ParseError("at least one --witnesses file is required");
  r.config["stages"] = o.stages;
  std::vector<WitnessCandidate> cands;
  for (std::size_t i = 0; i < o.witnesses.size(); ++i)
    cands.push_back(io::parse_hwit(load_input(r, "witnesses[" + std::to_string(i) + "]", o.witnesses[i]), o.witnesses[i]));
  const DAConstruction c = da_diagonalize(cands, fuel, o.stages);
  std::vector<bool> defeated(cands.size(), false);
  bool replay = true;
  for (const auto& cert : c.certificates) {
    const bool ok = verify_da_certificate(c, cert, cands[cert.candidate]);
    replay = replay && ok;
    defeated[cert.candidate] = defeated[cert.candidate] || ok;
    json j{{"kind", to_string(cert.kind)}, {"stage", cert.stage}, {"candidate", cert.candidate},
           {"label", cands[cert.candidate].label}, {"start", cert.start}};
    if (cert.kind == DACertificateKind::Separation) {
      j["pair_index"] = cert.pair_index;
      j["w"] = word_json(cert.w);
      j["u"] = word_json(cert.u);
      j["step"] = cert.step;
      r.fuel_used = std::max(r.fuel_used, cert.step);
    }
    j["pairs_checked"] = cert.pairs_checked;
    j["valid"] = ok;
    r.certificates.push_back(j);
  }
  // each stage decides a block [next, following next) holding a member and a non-member
  std::vector<Nat> starts;
  for (const auto& e : c.log.events())
    if (e.data.contains("next")) starts.push_back(e.data.at("next").get<Nat>());
  bool both = !starts.empty();
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const Nat end = i + 1 < starts.size() ? starts[i + 1] : c.prefix.size();
    bool in = false, out = false;
    for (Nat k = starts[i]; k < end; ++k) (c.contains(k) ? in : out) = true;
    both = both && in && out;
  }
  json stalls = json::array();
  for (const auto& [cand, stage] : c.stalls) stalls.push_back({{"candidate", cand}, {"stage", stage}});
  r.results["a_prefix"] = bits(c.prefix);
  r.results["tail"] = "1010...";
  r.results["stalls"] = stalls;
  r.log = stage_log_json(c.log);
  const bool all_defeated = std::all_of(defeated.begin(), defeated.end(), [](bool b) { return b; });
  r.check("every certificate replays", replay);
  r.check("every candidate defeated", all_defeated);
  r.check("each stage adds a member and a non-member", both);
  r.outcome = r.all_checks_ok() ? Outcome::Refuted : Outcome::Inconclusive;
  return r;
}

// ---------------------------------------------------------------------------
// H_A

struct HAOptions {
  std::string oracle;
  Nat max = kInfinity;
};

Report ha_hausdorff_cmd(const Context& ctx, const HAOptions& o) {
  const Nat fuel = ctx.run.fuel_or(2000);
  Report r = ctx.start("example ha hausdorff", fuel);
  if (o.oracle.empty()) throw ParseError("--oracle is required");
  const HASpace h(load_oracle(r, "oracle", o.oracle));
  const Nat max = o.max == kInfinity ? 10 : o.max;
  r.config["max"] = max;
  r.outcome = pairwise(r, ha_samples(h, max), ha_hausdorff(h).on_pairs, false, fuel, "hausdorff").outcome();
  return r;
}

std::set<Nat> below(const std::set<Nat>& s, Nat max) { return {s.begin(), s.upper_bound(max)}; }

Report ha_medvedev_cmd(const Context& ctx, const HAOptions& o) {
  const Nat max = o.max == kInfinity ? 100 : o.max;
  const Nat fuel = ctx.run.fuel_or(pair(max, max + 3) + 1);
  Report r = ctx.start("example ha medvedev", fuel);
  if (o.oracle.empty()) throw ParseError("--oracle is required");
  const OracleSet a = load_oracle(r, "oracle", o.oracle);
  r.config["max"] = max;
  const auto med = ha_medvedev(a);
  const Name back = med.reverse(med.forward(a.enumeration()));
  const auto found = below(gamma_decode(back, fuel), max);
  const auto expected = a.members_below(max + 1);
  r.results["recovered"] = found;
  r.results["expected"] = expected;
  r.check("reverse(forward(A)) lists A on [0, max]", found == expected);
  r.fuel_used = fuel;
  r.outcome = found == expected ? Outcome::Verified : Outcome::Inconclusive;
  return r;
}

Report ha_cototal_cmd(const Context& ctx, const HAOptions& o) {
  const Nat max = o.max == kInfinity ? 50 : o.max;
  const Nat fuel = ctx.run.fuel_or(pair(max, max + 10) + 1);
  Report r = ctx.start("example ha cototal", fuel);
  if (o.oracle.empty()) throw ParseError("--oracle is required");
  const OracleSet a = load_oracle(r, "oracle", o.oracle);
  r.config["max"] = max;
  const HASpace h(a);
  const Name out = ha_overt_to_cototal(ha_reference_overt(h), a.enumeration(true));
  const auto found = below(gamma_decode(out, fuel), max);
  const auto expected = a.members_below(max + 1);
  r.results["emitted"] = found;
  r.results["expected"] = expected;
  r.check("emits exactly A on [0, max]", found == expected);
  r.fuel_used = fuel;
  r.outcome = found == expected ? Outcome::Verified : Outcome::Inconclusive;
  return r;
}

// ---------------------------------------------------------------------------
// pN and N'

Report pn_cmd(const Context& ctx, const std::string& p, Nat max, Nat target) {
  const Nat fuel = ctx.run.fuel_or(2000);
  Report r = ctx.start("example pn", fuel);
  r.config["max"] = max;
  r.config["target"] = target;
  const PNSpace pn(load_p(r, p));
  const auto s = pn_samples(pn, max);
  const auto rd = pairwise(r, s, PNSpace::discreteness().on_pairs, true, fuel, "discreteness");
  const auto rh = pairwise(r, s, PNSpace::hausdorff().on_pairs, false, fuel, "hausdorff");
  const OpenSetCode only([target](WordView w, Nat) { return PNSpace::zero_run(w) == target; });
  const auto hit = pn.overt_probe(only, fuel);
  r.results["overt_probe"] = hit ? json{{"index", hit->index}, {"step", hit->step}} : json(nullptr);
  r.check("overt probe finds the target", hit && hit->index == target);
  if (hit) r.fuel_used = std::max(r.fuel_used, hit->step);
  const bool wrong = rd.wrong || rh.wrong;
  r.outcome = wrong ? Outcome::Refuted : (r.all_checks_ok() ? Outcome::Verified : Outcome::Inconclusive);
  return r;
}

BBTable load_bb(Report& r, const std::string& path) {
  if (path.empty()) throw ParseError("--bb is required");
  return io::parse_bb(load_input(r, "bb", path));
}

Report nprime_extract_cmd(const Context& ctx, const std::string& bb_path, Nat m) {
  const Nat fuel = ctx.run.fuel_or(1000);
  Report r = ctx.start("example nprime extract", fuel);
  r.config["m"] = m;
  const NPrimeSpace np(load_bb(r, bb_path));
  const Nat entry = np.bb().at(m);
  const auto bound = NPrimeSpace::bound_extractor(np.canonical_zero_realizer(), m, 0, fuel);
  r.results["entry"] = entry;
  r.results["bound"] = opt_json(bound);
  if (!bound) {
    r.outcome = Outcome::Inconclusive;
    r.fuel_used = fuel;
    return r;
  }
  r.fuel_used = *bound;
  r.check("bound at least the table entry", *bound >= entry);
  r.certificates.push_back({{"kind", "bound"}, {"m", m}, {"n", 0}, {"bound", *bound}, {"entry", entry}});
  r.outcome = r.all_checks_ok() ? Outcome::Verified : Outcome::Refuted;
  return r;
}

Report nprime_decode_cmd(const Context& ctx, const std::string& bb_path) {
  const Nat fuel = ctx.run.fuel_or(1000);
  Report r = ctx.start("example nprime decode", fuel);
  const NPrimeSpace np(load_bb(r, bb_path));
  json rows = json::array();
  bool ok = true;
  for (Nat m = 0; m <= np.bb().cutoff; ++m) {
    const auto back = np.decode(NPrimeSpace::encode(m), fuel);
    ok = ok && back == m;
    rows.push_back({{"m", m}, {"bb", np.bb().at(m)}, {"decoded", opt_json(back)}});
  }
  r.results["rows"] = rows;
  r.check("decode(encode(m)) = m up to the cutoff", ok);
  r.fuel_used = np.bb().entries.empty() ? 0 : np.bb().entries.back() + 1;
  r.outcome = ok ? Outcome::Verified : Outcome::Inconclusive;
  return r;
}

Report nprime_table_cmd(const Context& ctx, Nat cutoff, Nat registers, const std::string& write) {
  const Nat fuel = ctx.run.fuel_or(10000);
  Report r = ctx.start("example nprime table", fuel);
  r.config["cutoff"] = cutoff;
  r.config["registers"] = registers;
  const BBTable t = compute_bb_table(cutoff, fuel, registers);
  const std::string text = io::to_text(t);
  r.results["entries"] = t.entries;
  r.results["text"] = text;
  r.results["fnv1a64"] = hex(fnv1a(text));
  bool monotone = true;
  for (std::size_t i = 1; i < t.entries.size(); ++i) monotone = monotone && t.entries[i - 1] <= t.entries[i];
  r.check("entries non-decreasing", monotone);
  if (!write.empty()) {
    std::ofstream f(write, std::ios::binary);
    if (!f) throw ParseError("cannot write " + write);
    f << text;
  }
  r.fuel_used = fuel;
  return r;
}

// ---------------------------------------------------------------------------
// Halting complement

Report diag_inj_cmd(const Context& ctx, Nat candidate) {
  const Nat fuel = ctx.run.fuel_or(10000);
  Report r = ctx.start("example diag-inj", fuel);
  r.config["candidate"] = candidate;
  const auto d = injection_diagonalizer(candidate, fuel);
  auto set = [](const std::set<Nat>& s) { return json(std::vector<Nat>(s.begin(), s.end())); };
  r.results["outcome"] = to_string(d.outcome());
  r.results["phase"] = d.phase;
  r.results["I"] = set(d.i);
  r.log = stage_log_json(d.log);
  r.fuel_used = d.log.events().empty() ? 0 : d.log.events().back().stage;
  if (d.phase != 3) {
    r.outcome = Outcome::Inconclusive;
    return r;
  }
  const bool ok = verify_injection_certificate(d, fuel);
  r.check("certificate replays", ok);
  r.certificates.push_back({{"kind", "non-extensional"}, {"candidate", candidate}, {"J", set(d.j)}, {"K", set(d.k)},
                            {"I", set(d.i)}, {"m", d.m}, {"l", d.ell}, {"name_m", word_json(d.name_m_prefix)},
                            {"name_l", word_json(d.name_l_prefix)}, {"fuel", fuel}, {"valid", ok}});
  r.outcome = ok ? Outcome::Refuted : Outcome::Inconclusive;
  return r;
}

}  // namespace

void register_example(CLI::App& app, Context& ctx) {
  auto* ex = app.add_subcommand("example", "the worked examples");
  ex->require_subcommand(1);

  auto* sa = ex->add_subcommand("sa", "S_A inside N x S");
  sa->require_subcommand(1);
  auto so = std::make_shared<SAOptions>();
  sa->add_option("--oracle", so->oracle, "oracle file for A");
  sa->add_option("--dce", so->dce, "d.c.e. stage table");
  sa->add_option("--lim", so->lim, "limit stage table");
  sa->add_option("--max", so->max, "largest n");
  sa->add_option("--horizon", so->horizon, "stages traced by embed");
  const std::pair<const char*, Report (*)(const Context&, const SAOptions&)> sa_cmds[] = {
      {"witnesses", sa_witnesses_cmd}, {"iso", sa_iso_cmd},       {"norm", sa_norm_cmd},
      {"embed", sa_embed_cmd},         {"delta02", sa_delta02_cmd}};
  for (const auto& [name, fn] : sa_cmds) {
    auto* c = sa->add_subcommand(name);
    c->callback([&ctx, so, fn = fn] { ctx.job = [&ctx, so, fn] { return fn(ctx, *so); }; });
  }

  auto dopts = std::make_shared<DAOptions>();
  auto add_diag_options = [dopts](CLI::App* c) {
    c->add_option("--witnesses", dopts->witnesses, "candidate witness file (repeatable)");
    c->add_option("--stages", dopts->stages, "minimum number of stages");
  };
  auto* da = ex->add_subcommand("da", "D_A");
  da->require_subcommand(1);
  da->add_option("--oracle", dopts->oracle, "oracle file for A (default: evens)");
  da->add_subcommand("discrete")->callback([&ctx, dopts] { ctx.job = [&ctx, dopts] { return da_discrete_cmd(ctx, *dopts); }; });
  da->add_subcommand("partition")->callback([&ctx] { ctx.job = [&ctx] { return da_partition_cmd(ctx); }; });
  auto* diag = da->add_subcommand("diag", "diagonalize against candidate witnesses");
  add_diag_options(diag);
  diag->callback([&ctx, dopts] { ctx.job = [&ctx, dopts] { return da_diag_cmd(ctx, *dopts, "example da diag"); }; });
  auto* diag_da = ex->add_subcommand("diag-da", "same as: da diag");
  add_diag_options(diag_da);
  diag_da->callback([&ctx, dopts] { ctx.job = [&ctx, dopts] { return da_diag_cmd(ctx, *dopts, "example diag-da"); }; });

  auto* ha = ex->add_subcommand("ha", "H_A");
  ha->require_subcommand(1);
  auto ho = std::make_shared<HAOptions>();
  ha->add_option("--oracle", ho->oracle, "oracle file for A");
  ha->add_option("--max", ho->max, "largest index checked");
  const std::pair<const char*, Report (*)(const Context&, const HAOptions&)> ha_cmds[] = {
      {"hausdorff", ha_hausdorff_cmd}, {"medvedev", ha_medvedev_cmd}, {"cototal", ha_cototal_cmd}};
  for (const auto& [name, fn] : ha_cmds) {
    auto* c = ha->add_subcommand(name);
    c->callback([&ctx, ho, fn = fn] { ctx.job = [&ctx, ho, fn] { return fn(ctx, *ho); }; });
  }

  auto* pn = ex->add_subcommand("pn", "pN witnesses and relative overtness");
  auto po = std::make_shared<std::tuple<std::string, Nat, Nat>>("", 10, 2);
  pn->add_option("--p", std::get<0>(*po), "oracle file for p")->required();
  pn->add_option("--max", std::get<1>(*po), "largest n");
  pn->add_option("--target", std::get<2>(*po), "point found by the overt probe");
  pn->callback([&ctx, po] {
    ctx.job = [&ctx, po] { return pn_cmd(ctx, std::get<0>(*po), std::get<1>(*po), std::get<2>(*po)); };
  });

  auto* np = ex->add_subcommand("nprime", "N' over a busy-beaver table");
  np->require_subcommand(1);
  auto bb = std::make_shared<std::string>();
  np->add_option("--bb", *bb, "busy-beaver table file");
  auto* extract = np->add_subcommand("extract", "bound from the realizer of {0}");
  auto m = std::make_shared<Nat>(0);
  extract->add_option("m", *m)->required();
  extract->callback([&ctx, bb, m] { ctx.job = [&ctx, bb, m] { return nprime_extract_cmd(ctx, *bb, *m); }; });
  np->add_subcommand("decode", "decode(encode(m)) up to the cutoff")->callback([&ctx, bb] {
    ctx.job = [&ctx, bb] { return nprime_decode_cmd(ctx, *bb); };
  });
  auto* table = np->add_subcommand("table", "compute a table by brute force");
  auto tab = std::make_shared<std::tuple<Nat, Nat, std::string>>(4, 2, "");
  table->add_option("--cutoff", std::get<0>(*tab), "largest instruction count");
  table->add_option("--registers", std::get<1>(*tab), "registers per program");
  table->add_option("--write", std::get<2>(*tab), "also write the table file");
  table->callback([&ctx, tab] {
    ctx.job = [&ctx, tab] { return nprime_table_cmd(ctx, std::get<0>(*tab), std::get<1>(*tab), std::get<2>(*tab)); };
  });

  auto* inj = ex->add_subcommand("diag-inj", "defeat a candidate injection of the halting complement");
  auto cand = std::make_shared<Nat>(0);
  inj->add_option("--candidate", *cand, "program index")->required();
  inj->callback([&ctx, cand] { ctx.job = [&ctx, cand] { return diag_inj_cmd(ctx, *cand); }; });
}

}  // namespace ctop::cli
