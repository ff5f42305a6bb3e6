#pragma once

// Fuel-indexed partial computation: names, observations, transducers,
// pairing, dovetailing and the counter-machine interpreter that stands in
// for "the n-th machine".

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ctop {

using Nat = std::uint64_t;
using Word = std::vector<Nat>;
using WordView = std::span<const Nat>;

inline constexpr Nat kInfinity = std::numeric_limits<Nat>::max();

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CTOP_DEFINE_ERROR(name)          \
  class name : public Error {            \
   public:                               \
    using Error::Error;                  \
  };

CTOP_DEFINE_ERROR(InvalidProgram)
CTOP_DEFINE_ERROR(ParseError)
CTOP_DEFINE_ERROR(FuelExhausted)
CTOP_DEFINE_ERROR(DimensionMismatch)
CTOP_DEFINE_ERROR(IndexUnavailable)
CTOP_DEFINE_ERROR(NotInfinite)
CTOP_DEFINE_ERROR(PrecisionExhausted)
CTOP_DEFINE_ERROR(CutoffExceeded)
CTOP_DEFINE_ERROR(CandidateStalls)
CTOP_DEFINE_ERROR(PreconditionViolated)

#undef CTOP_DEFINE_ERROR

// ---------------------------------------------------------------------------
// Words

inline bool is_prefix(WordView prefix, WordView word) {
  return prefix.size() <= word.size() && std::equal(prefix.begin(), prefix.end(), word.begin());
}

inline bool has_nonzero(WordView w) {
  return std::any_of(w.begin(), w.end(), [](Nat v) { return v != 0; });
}

inline Word concat(WordView a, WordView b) {
  Word out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Product names: even positions carry the left name, odd positions the right.
inline Word interleave_words(WordView left, WordView right) {
  Word out;
  const std::size_t n = std::min(left.size(), right.size());
  out.reserve(2 * n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(left[i]);
    out.push_back(right[i]);
  }
  if (left.size() > n) out.push_back(left[n]);
  return out;
}

inline std::pair<Word, Word> split_word(WordView w) {
  Word left, right;
  for (std::size_t i = 0; i < w.size(); ++i) (i % 2 == 0 ? left : right).push_back(w[i]);
  return {std::move(left), std::move(right)};
}

// ---------------------------------------------------------------------------
// Verdicts and Sierpinski observations

struct Verdict {
  bool confirmed = false;
  Nat step = 0;  // least confirming fuel when confirmed

  static Verdict not_yet() { return {}; }
  static Verdict at(Nat step) { return {true, step}; }
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// A monotone semidecision process. Once confirmed at some fuel, every larger
/// fuel reports the same least confirming step.
class Observation {
 public:
  using Fn = std::function<Verdict(Nat fuel)>;

  Observation() : fn_([](Nat) { return Verdict::not_yet(); }) {}
  explicit Observation(Fn fn) : fn_(std::move(fn)) {}

  Verdict observe(Nat fuel) const { return fn_(fuel); }

  static Observation never() { return Observation(); }

  static Observation confirmed_at(Nat step) {
    return Observation([step](Nat fuel) { return fuel >= step ? Verdict::at(step) : Verdict::not_yet(); });
  }

  /// Lifts a fuel-monotone predicate; the least confirming fuel is located by
  /// bisection, which is exact because the predicate is monotone.
  static Observation from_monotone(std::function<bool(Nat)> holds) {
    return Observation([holds = std::move(holds)](Nat fuel) {
      if (!holds(fuel)) return Verdict::not_yet();
      Nat lo = 0, hi = fuel;
      while (lo < hi) {
        const Nat mid = lo + (hi - lo) / 2;
        if (holds(mid)) hi = mid; else lo = mid + 1;
      }
      return Verdict::at(lo);
    });
  }

  /// Both confirm; step is the later of the two.
  friend Observation both(Observation a, Observation b) {
    return Observation([a = std::move(a), b = std::move(b)](Nat fuel) {
      const Verdict va = a.observe(fuel);
      if (!va.confirmed) return Verdict::not_yet();
      const Verdict vb = b.observe(fuel);
      if (!vb.confirmed) return Verdict::not_yet();
      return Verdict::at(std::max(va.step, vb.step));
    });
  }

  friend Observation either(Observation a, Observation b) {
    return Observation([a = std::move(a), b = std::move(b)](Nat fuel) {
      const Verdict va = a.observe(fuel);
      const Verdict vb = b.observe(fuel);
      if (va.confirmed && vb.confirmed) return Verdict::at(std::min(va.step, vb.step));
      return va.confirmed ? va : vb;
    });
  }

 private:
  Fn fn_;
};

// ---------------------------------------------------------------------------
// Names

/// A total stream of naturals whose positions become available at some fuel.
class Name {
 public:
  using Producer = std::function<std::optional<Nat>(Nat pos, Nat fuel)>;

  Name() : Name(constant(0)) {}
  explicit Name(Producer producer) : producer_(std::move(producer)) {}

  std::optional<Nat> at(Nat pos, Nat fuel) const { return producer_(pos, fuel); }

  /// Longest contiguous available prefix of length at most `len`.
  Word prefix(Nat len, Nat fuel) const {
    Word out;
    for (Nat pos = 0; pos < len; ++pos) {
      const auto v = at(pos, fuel);
      if (!v) break;
      out.push_back(*v);
    }
    return out;
  }

  /// Position `pos` is available once fuel exceeds `pos`.
  static Name stream(std::function<Nat(Nat)> f) {
    return Name([f = std::move(f)](Nat pos, Nat fuel) -> std::optional<Nat> {
      if (fuel <= pos) return std::nullopt;
      return f(pos);
    });
  }

  static Name constant(Nat v) {
    return stream([v](Nat) { return v; });
  }

  /// `head` followed by `tail`; tail positions keep their own availability
  /// shifted by |head|.
  static Name word_then(Word head, Name tail) {
    return Name([head = std::move(head), tail = std::move(tail)](Nat pos, Nat fuel) -> std::optional<Nat> {
      if (fuel <= pos) return std::nullopt;
      if (pos < head.size()) return head[pos];
      return tail.at(pos - head.size(), fuel);
    });
  }

  static Name padded(Word head, Nat pad = 0) { return word_then(std::move(head), constant(pad)); }

 private:
  Producer producer_;
};

inline Name interleave(Name left, Name right) {
  return Name([left = std::move(left), right = std::move(right)](Nat pos, Nat fuel) {
    return pos % 2 == 0 ? left.at(pos / 2, fuel) : right.at(pos / 2, fuel);
  });
}

enum class Side { Left = 0, Right = 1 };

inline Name project(Name product, Side side) {
  const Nat offset = side == Side::Left ? 0 : 1;
  return Name([product = std::move(product), offset](Nat pos, Nat fuel) { return product.at(2 * pos + offset, fuel); });
}

// ---------------------------------------------------------------------------
// Transducers

/// Monotone in both the prefix and the budget.
using SemiTest = std::function<bool(WordView prefix, Nat budget)>;

/// A monotone, fuel-indexed map from finite input words to finite output
/// words.
class Transducer {
 public:
  using Fn = std::function<Word(WordView input, Nat fuel)>;

  Transducer() : fn_([](WordView, Nat) { return Word{}; }) {}
  explicit Transducer(Fn fn) : fn_(std::move(fn)) {}

  Word run(WordView input, Nat fuel) const { return fn_(input, fuel); }

  /// Sierpinski-valued transducer: output symbol k is test(input[0..k], k+1).
  /// Monotonicity of the test makes the output 0...01...1, so the first 1 is
  /// found by bisection.
  static Transducer from_semitest(SemiTest test) {
    return Transducer([test = std::move(test)](WordView input, Nat fuel) {
      const std::size_t n = static_cast<std::size_t>(std::min<Nat>(input.size(), fuel));
      std::size_t lo = 0, hi = n;
      while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (test(input.first(mid + 1), mid + 1)) hi = mid; else lo = mid + 1;
      }
      Word out(n, 0);
      std::fill(out.begin() + static_cast<std::ptrdiff_t>(lo), out.end(), 1);
      return out;
    });
  }

  /// Wraps a prefix-monotone word function; output is truncated to `fuel`.
  static Transducer from_prefix_map(std::function<Word(WordView)> f) {
    return Transducer([f = std::move(f)](WordView input, Nat fuel) {
      Word out = f(input);
      if (out.size() > fuel) out.resize(static_cast<std::size_t>(fuel));
      return out;
    });
  }

 private:
  Fn fn_;
};

inline Word run_on_name(const Transducer& t, const Name& name, Nat fuel) {
  const Word input = name.prefix(fuel, fuel);
  return t.run(input, fuel);
}

/// Reads a Sierpinski-valued transducer's output on a name as an observation.
inline Observation observe_on_name(Transducer t, Name name) {
  return Observation::from_monotone(
      [t = std::move(t), name = std::move(name)](Nat fuel) { return has_nonzero(run_on_name(t, name, fuel)); });
}

// ---------------------------------------------------------------------------
// Pairing and word coding

inline Nat pair(Nat m, Nat n) {
  const unsigned __int128 s = static_cast<unsigned __int128>(m) + n;
  if (s >= (static_cast<unsigned __int128>(1) << 33)) throw std::overflow_error("pair: result exceeds 64 bits");
  const unsigned __int128 v = s * (s + 1) / 2 + n;
  if (v > std::numeric_limits<Nat>::max()) throw std::overflow_error("pair: result exceeds 64 bits");
  return static_cast<Nat>(v);
}

inline std::pair<Nat, Nat> unpair(Nat k) {
  // w = largest with w(w+1)/2 <= k
  auto tri = [](unsigned __int128 w) { return w * (w + 1) / 2; };
  unsigned __int128 w = 0;
  {
    long double approx = (std::sqrt(8.0L * static_cast<long double>(k) + 1.0L) - 1.0L) / 2.0L;
    w = static_cast<unsigned __int128>(approx);
    while (tri(w) > k) --w;
    while (tri(w + 1) <= k) ++w;
  }
  const Nat n = static_cast<Nat>(k - tri(w));
  const Nat m = static_cast<Nat>(w - n);
  return {m, n};
}

/// Length-prefixed iterated pairing: ε ↦ 0, w ↦ 1 + ⟨|w|-1, ⟨w0, ⟨w1, …⟩⟩⟩.
/// Throws std::overflow_error when the code does not fit in 64 bits.
inline Nat encode_word(WordView w) {
  if (w.empty()) return 0;
  Nat tuple = w.back();
  for (std::size_t i = w.size() - 1; i-- > 0;) tuple = pair(w[i], tuple);
  const Nat code = pair(static_cast<Nat>(w.size() - 1), tuple);
  if (code == kInfinity) throw std::overflow_error("encode_word: code exceeds 64 bits");
  return code + 1;
}

inline Word decode_word(Nat code) {
  if (code == 0) return {};
  auto [len_minus_one, tuple] = unpair(code - 1);
  Word out;
  for (Nat i = 0; i < len_minus_one; ++i) {
    auto [head, rest] = unpair(tuple);
    out.push_back(head);
    tuple = rest;
  }
  out.push_back(tuple);
  return out;
}

// ---------------------------------------------------------------------------
// Dovetailing

using ObservationStream = std::function<Observation(Nat index)>;

struct DovetailHit {
  Nat index = 0;
  Nat step = 0;        // global fuel at which the hit is confirmed
  Nat inner_step = 0;  // the task's own least confirming fuel
};

/// Fuel granted to task `index` when the scheduler holds `fuel`.
inline Nat dovetail_share(Nat fuel, Nat index) { return fuel / (index + 2); }

/// Global fuel at which a task confirming at `inner_step` is noticed.
inline Nat dovetail_cost(Nat index, Nat inner_step) { return (index + 2) * std::max<Nat>(inner_step, 1); }

/// Round-robin with triangular allocation: at fuel f task i has received
/// ⌊f/(i+2)⌋. Returns the hit with the least global step (ties go to the
/// lower index). `task_count` bounds finite task lists.
inline std::optional<DovetailHit> dovetail_search(const ObservationStream& tasks, Nat fuel,
                                                  Nat task_count = kInfinity) {
  std::optional<DovetailHit> best;
  for (Nat i = 0; i < task_count && i + 2 <= fuel; ++i) {
    if (best && i + 2 > best->step) break;
    const Verdict v = tasks(i).observe(dovetail_share(fuel, i));
    if (!v.confirmed) continue;
    const Nat cost = dovetail_cost(i, v.step);
    if (!best || cost < best->step) best = DovetailHit{i, cost, v.step};
  }
  return best;
}

inline Observation dovetail(ObservationStream tasks, Nat task_count = kInfinity) {
  return Observation([tasks = std::move(tasks), task_count](Nat fuel) {
    const auto hit = dovetail_search(tasks, fuel, task_count);
    return hit ? Verdict::at(hit->step) : Verdict::not_yet();
  });
}

// ---------------------------------------------------------------------------
// Counter machines

enum class Op { Inc, DecJz, Goto, Halt };

struct Instruction {
  Op op = Op::Halt;
  Nat reg = 0;
  Nat target = 0;
  friend bool operator==(const Instruction&, const Instruction&) = default;
};

/// Minsky-style counter machine. Input arrives in r0, output is r0 at HALT.
/// Running past the last instruction halts without consuming fuel.
struct ToyProgram {
  std::vector<Instruction> code;

  void validate() const {
    if (code.empty()) throw InvalidProgram("program has no instructions");
    for (std::size_t i = 0; i < code.size(); ++i) {
      const auto& ins = code[i];
      if ((ins.op == Op::DecJz || ins.op == Op::Goto) && ins.target >= code.size())
        throw InvalidProgram("instruction " + std::to_string(i) + ": label " + std::to_string(ins.target) +
                             " out of range");
    }
  }

  friend bool operator==(const ToyProgram&, const ToyProgram&) = default;
};

struct Halted {
  Nat output = 0;
  Nat steps = 0;
  friend bool operator==(const Halted&, const Halted&) = default;
};

/// nullopt means still running at this fuel.
using RunResult = std::optional<Halted>;

inline RunResult interpret(const ToyProgram& prog, Nat input, Nat fuel) {
  prog.validate();
  // Registers are compacted so that huge register indices cost nothing.
  std::vector<Nat> names{0};
  for (const auto& ins : prog.code)
    if (ins.op == Op::Inc || ins.op == Op::DecJz)
      if (std::find(names.begin(), names.end(), ins.reg) == names.end()) names.push_back(ins.reg);
  auto slot = [&](Nat reg) {
    return static_cast<std::size_t>(std::find(names.begin(), names.end(), reg) - names.begin());
  };
  struct Compiled {
    Op op;
    std::size_t reg;
    std::size_t target;
  };
  std::vector<Compiled> code;
  code.reserve(prog.code.size());
  for (const auto& ins : prog.code) code.push_back({ins.op, slot(ins.reg), static_cast<std::size_t>(ins.target)});

  std::vector<Nat> regs(names.size(), 0);
  regs[0] = input;
  std::size_t pc = 0;
  Nat steps = 0;
  while (true) {
    if (pc >= code.size()) return Halted{regs[0], steps};
    if (steps >= fuel) return std::nullopt;
    ++steps;
    const Compiled& ins = code[pc];
    switch (ins.op) {
      case Op::Inc:
        ++regs[ins.reg];
        ++pc;
        break;
      case Op::DecJz:
        if (regs[ins.reg] == 0) {
          pc = ins.target;
        } else {
          --regs[ins.reg];
          ++pc;
        }
        break;
      case Op::Goto:
        pc = ins.target;
        break;
      case Op::Halt:
        return Halted{regs[0], steps};
    }
  }
}

/// Total, surjective enumeration of valid programs. The index is decoded as a
/// word of instruction codes c over program length L = |w| (ε gives HALT):
/// c = 0 is HALT; otherwise c-1 = 3q + r with r = 0: INC r_q, r = 1:
/// GOTO (q mod L), r = 2: DECJZ r_a (b mod L) where ⟨a, b⟩ = q.
inline ToyProgram enumerate_program(Nat index) {
  const Word w = decode_word(index);
  if (w.empty()) return ToyProgram{{Instruction{Op::Halt, 0, 0}}};
  const Nat len = w.size();
  ToyProgram prog;
  for (Nat c : w) {
    if (c == 0) {
      prog.code.push_back({Op::Halt, 0, 0});
      continue;
    }
    const Nat q = (c - 1) / 3;
    switch ((c - 1) % 3) {
      case 0:
        prog.code.push_back({Op::Inc, q, 0});
        break;
      case 1:
        prog.code.push_back({Op::Goto, 0, q % len});
        break;
      default: {
        const auto [reg, label] = unpair(q);
        prog.code.push_back({Op::DecJz, reg, label % len});
      }
    }
  }
  return prog;
}

/// Inverse of enumerate_program on its canonical image.
inline Nat program_index(const ToyProgram& prog) {
  prog.validate();
  if (prog.code.size() == 1 && prog.code[0].op == Op::Halt) return 0;
  Word w;
  for (const auto& ins : prog.code) {
    switch (ins.op) {
      case Op::Halt: w.push_back(0); break;
      case Op::Inc: w.push_back(3 * ins.reg + 1); break;
      case Op::Goto: w.push_back(3 * ins.target + 2); break;
      case Op::DecJz: w.push_back(3 * pair(ins.reg, ins.target) + 3); break;
    }
  }
  return encode_word(w);
}

// Text format: one instruction per line, `#` starts a comment, blank lines
// are skipped and labels index the instruction lines.

inline ToyProgram parse_program(std::string_view text) {
  ToyProgram prog;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto parse_reg = [&](const std::string& tok) -> Nat {
    if (tok.size() < 2 || tok[0] != 'r') throw ParseError("line " + std::to_string(lineno) + ": bad register '" + tok + "'");
    try {
      return std::stoull(tok.substr(1));
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(lineno) + ": bad register '" + tok + "'");
    }
  };
  auto parse_label = [&](const std::string& tok) -> Nat {
    try {
      std::size_t used = 0;
      const Nat v = std::stoull(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(lineno) + ": bad label '" + tok + "'");
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    const std::string& op = toks[0];
    auto arity = [&](std::size_t n) {
      if (toks.size() != n + 1) throw ParseError("line " + std::to_string(lineno) + ": " + op + " takes " + std::to_string(n) + " operand(s)");
    };
    if (op == "HALT") {
      arity(0);
      prog.code.push_back({Op::Halt, 0, 0});
    } else if (op == "INC") {
      arity(1);
      prog.code.push_back({Op::Inc, parse_reg(toks[1]), 0});
    } else if (op == "DECJZ") {
      arity(2);
      prog.code.push_back({Op::DecJz, parse_reg(toks[1]), parse_label(toks[2])});
    } else if (op == "GOTO") {
      arity(1);
      prog.code.push_back({Op::Goto, 0, parse_label(toks[1])});
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": unknown instruction '" + op + "'");
    }
  }
  try {
    prog.validate();
  } catch (const InvalidProgram& e) {
    throw ParseError(e.what());
  }
  return prog;
}

inline std::string to_text(const ToyProgram& prog) {
  std::ostringstream out;
  for (const auto& ins : prog.code) {
    switch (ins.op) {
      case Op::Halt: out << "HALT\n"; break;
      case Op::Inc: out << "INC r" << ins.reg << "\n"; break;
      case Op::DecJz: out << "DECJZ r" << ins.reg << " " << ins.target << "\n"; break;
      case Op::Goto: out << "GOTO " << ins.target << "\n"; break;
    }
  }
  return out.str();
}

/// Small library of programs used across the toolkit and its tests.
namespace programs {

inline ToyProgram halt() { return parse_program("HALT"); }
inline ToyProgram loop() { return parse_program("GOTO 0"); }
/// Clears r0, so the output is 0 on every input.
inline ToyProgram constant_zero() { return parse_program("DECJZ r0 2\nGOTO 0\nHALT"); }
inline ToyProgram add(Nat k) {
  std::string text;
  for (Nat i = 0; i < k; ++i) text += "INC r0\n";
  return parse_program(text + "HALT");
}
/// Halts on 0 and loops on every other input.
inline ToyProgram halt_on_zero() { return parse_program("DECJZ r0 2\nGOTO 1\nHALT"); }

}  // namespace programs

}  // namespace ctop
