// Replays the certificates embedded in a report. Searches are not rerun:
// each certificate names its witnesses, and only those are re-evaluated.

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "cli.hpp"
#include "ctop/ceers.hpp"
#include "ctop/examples.hpp"

namespace ctop::cli {

namespace {

using namespace ctop::examples;

struct Replay {
  json entries = json::array();
  bool ok = true;

  void record(std::size_t index, const json& cert, bool good, std::string note = {}) {
    json e{{"index", index}, {"kind", cert.value("kind", "")}, {"ok", good}};
    if (!note.empty()) e["note"] = std::move(note);
    entries.push_back(std::move(e));
    ok = ok && good;
  }
};

/// Input text, checked against the recorded hash.
std::string input_text(const json& config, const std::string& key) {
  const auto& in = config.at("inputs").at(key);
  const std::string text = io::read_file(in.at("path").get<std::string>());
  if (hex(fnv1a(text)) != in.at("fnv1a64").get<std::string>()) throw ParseError("input " + key + " changed since the run");
  return text;
}

CeerPresentation ceer_of(const json& config) {
  const auto& in = config.at("inputs");
  if (in.contains("pairs")) return CeerPresentation::from_pairs(io::parse_pair_list(in.at("pairs").get<std::string>()));
  if (in.contains("ceer") && in.at("ceer").is_string()) return example35_ceer(config.at("fuel").get<Nat>());
  return io::parse_ceer(input_text(config, "ceer")).presentation();
}

/// Union-find replay of a list of merges.
bool merges_connect(const json& trace, Nat m, Nat n) {
  ClosureState s;
  for (const auto& g : trace) s.consume({g.at(1).get<Nat>(), g.at(2).get<Nat>(), g.at(0).get<Nat>()});
  return s.same(m, n);
}

void closure_log(const json& report, Replay& out) {
  const auto& cert = report.at("certificates").at(0);
  ClosureState s;
  for (const auto& line : cert.at("events")) {
    std::istringstream in(line.get<std::string>());
    std::string fuel, word;
    Nat m = 0, n = 0;
    in >> fuel >> word >> m >> n;
    if (!in || word != "merge") throw ParseError("bad closure event: " + line.get<std::string>());
    s.consume({m, n, 0});
  }
  json classes = json::array();
  for (const auto& [root, members] : s.classes()) classes.push_back(members);
  out.record(0, cert, classes == report.at("results").at("classes"));
}

void merge_trace(const json& report, Replay& out) {
  const auto& config = report.at("config");
  std::set<std::pair<Nat, Nat>> given;
  const bool listed = config.at("inputs").contains("pairs");
  if (listed)
    for (const auto& p : io::parse_pair_list(config.at("inputs").at("pairs").get<std::string>())) given.insert(p);
  for (std::size_t i = 0; i < report.at("certificates").size(); ++i) {
    const auto& c = report.at("certificates").at(i);
    bool ok = merges_connect(c.at("trace"), c.at("m").get<Nat>(), c.at("n").get<Nat>());
    if (listed)
      for (const auto& g : c.at("trace")) ok = ok && given.count({g.at(1).get<Nat>(), g.at(2).get<Nat>()});
    out.record(i, c, ok);
  }
}

void round_trips(const json& report, Replay& out) {
  const auto pres = ceer_of(report.at("config"));
  const auto& c = report.at("certificates").at(0);
  bool ok = true;
  for (const auto& row : c.at("rows")) {
    if (row.at("phi_inverse").is_null() || !row.at("merge").at("confirmed").get<bool>()) continue;
    const Verdict v = ceer_equal(pres, row.at("n").get<Nat>(), row.at("phi_inverse").get<Nat>())
                          .observe(row.at("merge").at("step").get<Nat>());
    ok = ok && v.confirmed;
  }
  out.record(0, c, ok);
}

FailureCertificate failure_of(const json& c) {
  FailureCertificate f;
  const std::string kind = c.at("kind").get<std::string>();
  f.kind = kind == "NonTotal" ? CertificateKind::NonTotal
           : kind == "Constant" ? CertificateKind::Constant
           : kind == "NonExtensional" ? CertificateKind::NonExtensional
                                      : CertificateKind::Inconclusive;
  f.candidate = c.at("candidate").get<Nat>();
  f.point = c.at("point").get<Nat>();
  f.other = c.at("other").get<Nat>();
  f.value = c.at("value").get<Nat>();
  f.other_value = c.at("other_value").get<Nat>();
  f.samples = c.at("samples").get<Nat>();
  f.fuel = c.at("fuel").get<Nat>();
  f.merge_step = c.at("merge_step").get<Nat>();
  return f;
}

void example35(const json& report, Replay& out) {
  const DiagonalCeer ceer(report.at("config").at("fuel").get<Nat>());
  for (std::size_t i = 0; i < report.at("certificates").size(); ++i) {
    const auto& c = report.at("certificates").at(i);
    const auto f = failure_of(c);
    if (f.kind == CertificateKind::Inconclusive) {
      out.record(i, c, true, "no claim");
      continue;
    }
    out.record(i, c, verify_certificate(ceer, f));
  }
}

void probe(const json& report, Replay& out) {
  const auto& config = report.at("config");
  const ToyProgram prog = enumerate_program(config.at("separator").get<Nat>());
  for (std::size_t i = 0; i < report.at("certificates").size(); ++i) {
    const auto& c = report.at("certificates").at(i);
    const std::string kind = c.at("kind").get<std::string>();
    const Nat fuel = c.at("fuel").get<Nat>();
    bool ok = false;
    if (kind == "SeparatorNonTotal") {
      ok = !interpret(prog, c.at("point").get<Nat>(), fuel).has_value();
    } else if (kind == "SeparatorNonExtensional") {
      const Nat p = c.at("point").get<Nat>(), q = c.at("other").get<Nat>();
      const auto a = interpret(prog, p, fuel), b = interpret(prog, q, fuel);
      ok = a && b && a->output != b->output && ceer_equal(ceer_of(config), p, q).observe(fuel).confirmed;
    } else if (kind == "NotSeparating") {
      const auto& ca = c.at("class_a");
      const auto& cb = c.at("class_b");
      if (ca.empty() || cb.empty()) {
        ok = true;
      } else {
        const auto a = interpret(prog, ca.at(0).get<Nat>(), fuel), b = interpret(prog, cb.at(0).get<Nat>(), fuel);
        ok = a && b && !(a->output == 0 && b->output == 1);
      }
    }
    out.record(i, c, ok);
  }
}

void da_diag(const json& report, Replay& out) {
  const auto& config = report.at("config");
  std::vector<WitnessCandidate> cands;
  for (std::size_t i = 0; config.at("inputs").contains("witnesses[" + std::to_string(i) + "]"); ++i) {
    const std::string key = "witnesses[" + std::to_string(i) + "]";
    cands.push_back(io::parse_hwit(input_text(config, key), config.at("inputs").at(key).at("path").get<std::string>()));
  }
  DAConstruction c;
  for (char b : report.at("results").at("a_prefix").get<std::string>()) c.prefix.push_back(b == '1');
  for (std::size_t i = 0; i < report.at("certificates").size(); ++i) {
    const auto& j = report.at("certificates").at(i);
    DACertificate cert;
    cert.kind = j.at("kind").get<std::string>() == "separation" ? DACertificateKind::Separation : DACertificateKind::Omission;
    cert.stage = j.at("stage").get<Nat>();
    cert.candidate = j.at("candidate").get<std::size_t>();
    cert.start = j.at("start").get<Nat>();
    cert.pairs_checked = j.at("pairs_checked").get<Nat>();
    if (cert.kind == DACertificateKind::Separation) {
      cert.pair_index = j.at("pair_index").get<Nat>();
      cert.w = j.at("w").get<Word>();
      cert.u = j.at("u").get<Word>();
      cert.step = j.at("step").get<Nat>();
    }
    out.record(i, j, cert.candidate < cands.size() && verify_da_certificate(c, cert, cands[cert.candidate]));
  }
}

void diag_inj(const json& report, Replay& out) {
  for (std::size_t i = 0; i < report.at("certificates").size(); ++i) {
    const auto& j = report.at("certificates").at(i);
    InjectionDiagonalization d;
    d.phase = 3;
    d.candidate = j.at("candidate").get<Nat>();
    for (Nat v : j.at("I").get<std::vector<Nat>>()) d.i.insert(v);
    d.m = j.at("m").get<Nat>();
    d.ell = j.at("l").get<Nat>();
    d.name_m_prefix = j.at("name_m").get<Word>();
    d.name_l_prefix = j.at("name_l").get<Word>();
    out.record(i, j, verify_injection_certificate(d, j.at("fuel").get<Nat>()));
  }
}

void nprime_bound(const json& report, Replay& out) {
  const NPrimeSpace np(io::parse_bb(input_text(report.at("config"), "bb")));
  for (std::size_t i = 0; i < report.at("certificates").size(); ++i) {
    const auto& j = report.at("certificates").at(i);
    const Nat m = j.at("m").get<Nat>(), bound = j.at("bound").get<Nat>();
    const Verdict v = np.canonical_zero_realizer().member(Name::word_then({m}, Name::constant(0))).observe(bound);
    out.record(i, j, v.confirmed && bound >= np.bb().at(m) && j.at("entry").get<Nat>() == np.bb().at(m));
  }
}

/// ι⁻¹ is pure arithmetic on the recorded interval and ε.
void embedding(const json& report, Replay& out) {
  const auto& c = report.at("certificates").at(0);
  bool ok = true;
  for (const auto& row : c.at("rows")) {
    const Nat lo = row.at("final").at(0).get<Nat>(), hi = row.at("final").at(1).get<Nat>();
    std::optional<bool> back;
    if (row.at("epsilon").is_null()) {
      back = false;
    } else {
      const Nat eps = row.at("epsilon").get<Nat>();
      if (2 * lo > eps) back = true;
      else if (2 * hi < eps) back = false;
    }
    ok = ok && back && *back == row.at("in_A").get<bool>();
  }
  out.record(0, c, ok);
}

void bookkeeping(const json& report, Replay& out) {
  for (std::size_t i = 0; i < report.at("certificates").size(); ++i)
    out.record(i, report.at("certificates").at(i), true, "recorded only; no replay for this command");
}

const std::map<std::string, std::function<void(const json&, Replay&)>>& replayers() {
  static const std::map<std::string, std::function<void(const json&, Replay&)>> table{
      {"ceer closure", closure_log},         {"ceer equal", merge_trace},
      {"ceer iso", round_trips},             {"ceer example35", example35},
      {"ceer probe", probe},                 {"example da diag", da_diag},
      {"example diag-da", da_diag},          {"example diag-inj", diag_inj},
      {"example nprime extract", nprime_bound}, {"example sa embed", embedding}};
  return table;
}

}  // namespace

int verify_report(const std::string& path, std::ostream& os) {
  json report;
  try {
    report = json::parse(io::read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("report is not JSON: ") + e.what());
  }
  Report stored;
  stored.config = report.at("config");
  const bool hash_ok = stored.config_hash() == report.at("config_hash").get<std::string>();

  Replay replay;
  const std::string command = report.at("command").get<std::string>();
  const auto it = replayers().find(command);
  if (report.at("certificates").empty()) {
    // nothing to replay
  } else if (it != replayers().end()) {
    it->second(report, replay);
  } else {
    bookkeeping(report, replay);
  }

  bool checks_ok = true;
  for (const auto& c : report.at("checks")) checks_ok = checks_ok && c.at("ok").get<bool>();
  const std::string verdict = report.at("verdict").get<std::string>();
  const bool consistent = !(verdict == "verified" && !checks_ok);

  json out;
  out["command"] = "verify";
  out["report"] = path;
  out["verified_command"] = command;
  out["config_hash_ok"] = hash_ok;
  out["verdict_consistent"] = consistent;
  out["certificates"] = replay.entries;
  const bool ok = hash_ok && consistent && replay.ok;
  out["verdict"] = ok ? "verified" : "refuted";
  os << out.dump(2) << "\n";
  return static_cast<int>(ok ? Outcome::Verified : Outcome::Refuted);
}

}  // namespace ctop::cli
