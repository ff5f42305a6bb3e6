#pragma once

// Command registration plumbing. Each group registers its subcommands and
// leaves a job in the context; main runs the job after parsing.

#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctop/io.hpp"
#include "report.hpp"

namespace ctop::cli {

struct Context {
  RunConfig run;
  std::vector<std::string> args;
  std::function<Report()> job;

  /// Fresh report with the shared configuration filled in.
  Report start(std::string command, Nat fuel) const {
    Report r;
    r.command = std::move(command);
    r.args = args;
    r.config["fuel"] = fuel;
    r.config["precision"] = run.precision;
    r.config["seed"] = kSeed;
    r.config["inputs"] = json::object();
    return r;
  }
};

/// Reads a file and records its path and content hash in the report.
inline std::string load_input(Report& r, const std::string& key, const std::string& path) {
  std::string text = io::read_file(path);
  r.config["inputs"][key] = {{"path", path}, {"fnv1a64", hex(fnv1a(text))}};
  return text;
}

inline json verdict_json(const Verdict& v) {
  json j;
  j["confirmed"] = v.confirmed;
  j["step"] = v.confirmed ? json(v.step) : json(nullptr);
  return j;
}

inline json word_json(WordView w) { return json(Word(w.begin(), w.end())); }

inline json opt_json(const std::optional<Nat>& v) { return v ? json(*v) : json(nullptr); }

/// The ceer given by --pairs or --ceer; both empty means none.
struct CeerInput {
  std::string pairs;
  std::string file;
  bool pairs_given = false;

  void add_options(CLI::App* cmd) {
    cmd->add_option_function<std::string>(
           "--pairs", [this](const std::string& s) { pairs = s, pairs_given = true; },
           "generator pairs, e.g. \"0 1,1 2\"");
    cmd->add_option("--ceer", file, "ceer file");
  }

  bool given() const { return pairs_given || !file.empty(); }

  CeerPresentation load(Report& r) const {
    if (pairs_given && !file.empty()) throw ParseError("give either --pairs or --ceer, not both");
    if (pairs_given) {
      r.config["inputs"]["pairs"] = pairs;
      return CeerPresentation::from_pairs(io::parse_pair_list(pairs));
    }
    if (file.empty()) throw ParseError("a ceer is required: --pairs or --ceer");
    return io::parse_ceer(load_input(r, "ceer", file)).presentation();
  }
};

void register_ceer(CLI::App& app, Context& ctx);
void register_space(CLI::App& app, Context& ctx);
void register_example(CLI::App& app, Context& ctx);

/// Re-checks the certificates of a stored report; returns the exit code.
int verify_report(const std::string& path, std::ostream& out);

}  // namespace ctop::cli
