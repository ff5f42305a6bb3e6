#pragma once

// Text formats: ceer and relation files, oracle / d.c.e. / limit tables,
// witness candidates, busy-beaver tables and serialized open codes. Every
// format starts with a `<kind> v1` header; `#` starts a comment.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ctop/ceers.hpp"
#include "ctop/examples/da.hpp"
#include "ctop/ideals.hpp"
#include "ctop/oracles.hpp"
#include "ctop/spaces.hpp"

namespace ctop::io {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

/// Lines with comments stripped and surrounding blanks trimmed; empty lines
/// dropped. Each entry keeps its 1-based line number.
inline std::vector<std::pair<std::size_t, std::string>> content_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    out.emplace_back(no, line.substr(b, e - b + 1));
  }
  return out;
}

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ls(line);
  std::vector<std::string> out;
  for (std::string t; ls >> t;) out.push_back(t);
  return out;
}

inline Nat number(const std::string& tok, std::size_t line) {
  std::size_t used = 0;
  Nat v = 0;
  try {
    v = std::stoull(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || tok.empty() || tok[0] == '-')
    throw ParseError("line " + std::to_string(line) + ": expected a natural number, got '" + tok + "'");
  return v;
}

inline bool bit(const std::string& tok, std::size_t line) {
  if (tok != "0" && tok != "1") throw ParseError("line " + std::to_string(line) + ": expected 0 or 1, got '" + tok + "'");
  return tok == "1";
}

/// Checks the header and returns the remaining lines.
inline std::vector<std::pair<std::size_t, std::string>> body(std::string_view text, const std::string& kind) {
  auto lines = content_lines(text);
  if (lines.empty() || lines.front().second != kind + " v1")
    throw ParseError("expected header '" + kind + " v1'");
  lines.erase(lines.begin());
  return lines;
}

inline std::vector<NatPair> pair_lines(const std::vector<std::pair<std::size_t, std::string>>& lines, std::size_t from) {
  std::vector<NatPair> out;
  for (std::size_t i = from; i < lines.size(); ++i) {
    const auto t = tokens(lines[i].second);
    if (t.size() != 2) throw ParseError("line " + std::to_string(lines[i].first) + ": expected 'm n'");
    out.emplace_back(number(t[0], lines[i].first), number(t[1], lines[i].first));
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Ceers and relations

struct CeerFile {
  std::vector<NatPair> pairs;
  std::optional<ToyProgram> program;

  CeerPresentation presentation() const {
    return program ? CeerPresentation::from_program(*program) : CeerPresentation::from_pairs(pairs);
  }
};

inline CeerFile parse_ceer(std::string_view text) {
  const auto lines = detail::body(text, "ceer");
  if (lines.empty()) throw ParseError("ceer file: expected 'pairs' or 'prog'");
  CeerFile f;
  if (lines[0].second == "pairs") {
    f.pairs = detail::pair_lines(lines, 1);
  } else if (lines[0].second == "prog") {
    std::string prog;
    for (std::size_t i = 1; i < lines.size(); ++i) prog += lines[i].second + "\n";
    f.program = parse_program(prog);
  } else {
    throw ParseError("line " + std::to_string(lines[0].first) + ": expected 'pairs' or 'prog'");
  }
  return f;
}

inline std::string to_text(const CeerFile& f) {
  std::string out = "ceer v1\n";
  if (f.program) return out + "prog\n" + ctop::to_text(*f.program);
  out += "pairs\n";
  for (const auto& [m, n] : f.pairs) out += std::to_string(m) + " " + std::to_string(n) + "\n";
  return out;
}

/// `rel v1`, then `pairs` and one `x y` line per x ≪ y.
inline std::vector<NatPair> parse_relation(std::string_view text) {
  const auto lines = detail::body(text, "rel");
  if (lines.empty() || lines[0].second != "pairs") throw ParseError("relation file: expected 'pairs'");
  return detail::pair_lines(lines, 1);
}

inline std::string relation_to_text(const std::vector<NatPair>& pairs) {
  std::string out = "rel v1\npairs\n";
  for (const auto& [m, n] : pairs) out += std::to_string(m) + " " + std::to_string(n) + "\n";
  return out;
}

/// "0 1,1 2" as used by --pairs.
inline std::vector<NatPair> parse_pair_list(const std::string& text) {
  std::vector<NatPair> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto t = detail::tokens(item);
    if (t.empty()) continue;
    if (t.size() != 2) throw ParseError("pair list: expected 'm n', got '" + item + "'");
    out.emplace_back(detail::number(t[0], 0), detail::number(t[1], 0));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Oracle tables

/// `oracle v1`, lines `n bit`, and optionally `default <bit>` for numbers
/// not listed (0 when absent).
struct OracleFile {
  std::map<Nat, bool> table;
  bool default_bit = false;

  OracleSet oracle() const { return OracleSet(table, default_bit); }
};

inline OracleFile parse_oracle(std::string_view text) {
  OracleFile f;
  for (const auto& [no, line] : detail::body(text, "oracle")) {
    const auto t = detail::tokens(line);
    if (t.size() == 2 && t[0] == "default") {
      f.default_bit = detail::bit(t[1], no);
      continue;
    }
    if (t.size() != 2) throw ParseError("line " + std::to_string(no) + ": expected 'n bit'");
    const Nat n = detail::number(t[0], no);
    if (f.table.count(n)) throw ParseError("line " + std::to_string(no) + ": " + std::to_string(n) + " listed twice");
    f.table[n] = detail::bit(t[1], no);
  }
  return f;
}

inline std::string to_text(const OracleFile& f) {
  std::string out = "oracle v1\n";
  if (f.default_bit) out += "default 1\n";
  for (const auto& [n, b] : f.table) out += std::to_string(n) + " " + (b ? "1" : "0") + "\n";
  return out;
}

namespace detail {

inline StageTable stage_lines(std::string_view text, const std::string& kind) {
  struct Row {
    Nat stage, n;
    bool bit;
  };
  std::vector<Row> rows;
  for (const auto& [no, line] : body(text, kind)) {
    const auto t = tokens(line);
    if (t.size() != 3) throw ParseError("line " + std::to_string(no) + ": expected 'stage n bit'");
    rows.push_back({number(t[0], no), number(t[1], no), bit(t[2], no)});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.stage < b.stage; });
  StageTable table;
  for (const auto& r : rows) table.record(r.stage, r.n, r.bit);
  return table;
}

}  // namespace detail

/// `dce v1`, lines `stage n bit`; each n may change at most twice, 0 → 1 → 0.
inline StageTable parse_dce(std::string_view text) {
  StageTable t = detail::stage_lines(text, "dce");
  if (!t.is_dce()) throw ParseError("dce table: some number changes more than twice");
  return t;
}

/// `lim v1`, lines `stage n bit`. A finite table converges by construction.
inline StageTable parse_lim(std::string_view text) { return detail::stage_lines(text, "lim"); }

inline std::string stage_table_to_text(const StageTable& t, const std::string& kind) {
  std::vector<std::tuple<Nat, Nat, bool>> rows;
  for (Nat n : t.touched())
    for (const auto& c : t.changes(n)) rows.emplace_back(c.stage, n, c.bit);
  std::sort(rows.begin(), rows.end());
  std::string out = kind + " v1\n";
  for (const auto& [s, n, b] : rows) out += std::to_string(s) + " " + std::to_string(n) + " " + (b ? "1" : "0") + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Witness candidates

/// `hwit v1`, lines `pair <w> | <u>` with space-separated bits; one
/// candidate per file.
inline examples::WitnessCandidate parse_hwit(std::string_view text, std::string label) {
  std::vector<std::pair<Word, Word>> pairs;
  for (const auto& [no, line] : detail::body(text, "hwit")) {
    const auto t = detail::tokens(line);
    if (t.empty() || t[0] != "pair") throw ParseError("line " + std::to_string(no) + ": expected 'pair <w> | <u>'");
    const auto bar = std::find(t.begin(), t.end(), "|");
    if (bar == t.end() || std::find(bar + 1, t.end(), "|") != t.end())
      throw ParseError("line " + std::to_string(no) + ": expected exactly one '|'");
    Word w, u;
    for (auto it = t.begin() + 1; it != bar; ++it) w.push_back(detail::bit(*it, no));
    for (auto it = bar + 1; it != t.end(); ++it) u.push_back(detail::bit(*it, no));
    pairs.emplace_back(std::move(w), std::move(u));
  }
  return examples::WitnessCandidate::from_pairs(std::move(label), std::move(pairs));
}

inline std::string hwit_to_text(const std::vector<std::pair<Word, Word>>& pairs) {
  std::string out = "hwit v1\n";
  for (const auto& [w, u] : pairs) {
    out += "pair";
    for (Nat b : w) out += " " + std::to_string(b);
    out += " |";
    for (Nat b : u) out += " " + std::to_string(b);
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Busy-beaver tables

/// `bb v1`, then `cutoff s`, `fuel f`, `registers r` and lines `m value` for
/// every m ≤ s.
inline BBTable parse_bb(std::string_view text) {
  BBTable t;
  std::optional<Nat> cutoff, fuel, registers;
  std::map<Nat, Nat> entries;
  for (const auto& [no, line] : detail::body(text, "bb")) {
    const auto tk = detail::tokens(line);
    if (tk.size() != 2) throw ParseError("line " + std::to_string(no) + ": expected two fields");
    if (tk[0] == "cutoff") cutoff = detail::number(tk[1], no);
    else if (tk[0] == "fuel") fuel = detail::number(tk[1], no);
    else if (tk[0] == "registers") registers = detail::number(tk[1], no);
    else entries[detail::number(tk[0], no)] = detail::number(tk[1], no);
  }
  if (!cutoff || !fuel || !registers) throw ParseError("bb table: cutoff, fuel and registers are required");
  t.cutoff = *cutoff;
  t.fuel = *fuel;
  t.registers = *registers;
  for (Nat m = 0; m <= t.cutoff; ++m) {
    if (!entries.count(m)) throw ParseError("bb table: missing entry " + std::to_string(m));
    t.entries.push_back(entries[m]);
    if (m > 0 && t.entries[m] < t.entries[m - 1]) throw ParseError("bb table: entries must not decrease");
  }
  if (entries.size() != t.cutoff + 1) throw ParseError("bb table: entry beyond cutoff");
  return t;
}

inline std::string to_text(const BBTable& t) {
  std::string out = "bb v1\ncutoff " + std::to_string(t.cutoff) + "\nfuel " + std::to_string(t.fuel) + "\nregisters " +
                    std::to_string(t.registers) + "\n";
  for (Nat m = 0; m <= t.cutoff; ++m) out += std::to_string(m) + " " + std::to_string(t.entries[m]) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Open codes as programs

/// An open code given by a toy program and a parameter word q: a prefix w is
/// accepted once, for some nonempty w' ⊑ w, the program halts on
/// encode_word(q w') within the budget with a nonzero output.
struct ProgramOpen {
  ToyProgram program;
  Word param;

  OpenSetCode code() const {
    return OpenSetCode([prog = program, param = param](WordView w, Nat budget) {
      Word input = param;
      for (Nat v : w) {
        input.push_back(v);
        Nat code = 0;
        try {
          code = encode_word(input);
        } catch (const std::overflow_error&) {
          return false;
        }
        const auto r = interpret(prog, code, budget);
        if (r && r->output != 0) return true;
      }
      return false;
    });
  }
};

/// `open v1`, `param <symbols>`, `prog`, then the program text.
inline ProgramOpen parse_open(std::string_view text) {
  const auto lines = detail::body(text, "open");
  ProgramOpen o;
  std::size_t i = 0;
  if (i < lines.size() && lines[i].second.rfind("param", 0) == 0) {
    const auto t = detail::tokens(lines[i].second);
    if (t[0] != "param") throw ParseError("line " + std::to_string(lines[i].first) + ": expected 'param'");
    for (std::size_t k = 1; k < t.size(); ++k) o.param.push_back(detail::number(t[k], lines[i].first));
    ++i;
  }
  if (i >= lines.size() || lines[i].second != "prog") throw ParseError("open code: expected 'prog'");
  std::string prog;
  for (++i; i < lines.size(); ++i) prog += lines[i].second + "\n";
  o.program = parse_program(prog);
  return o;
}

inline std::string to_text(const ProgramOpen& o) {
  std::string out = "open v1\nparam";
  for (Nat v : o.param) out += " " + std::to_string(v);
  return out + "\nprog\n" + ctop::to_text(o.program);
}

}  // namespace ctop::io
