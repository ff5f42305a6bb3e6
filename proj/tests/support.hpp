#pragma once

// Test-only helpers: independent oracles and generators of constructed
// objects. Nothing here is used by the library itself.

#include <map>
#include <random>
#include <set>
#include <vector>

#include "ctop/kernel.hpp"

namespace ctop::testing {

inline constexpr unsigned kSeed = 20261016u;

/// Straightforward single-step counter machine, written independently of
/// ctop::interpret (sparse registers, explicit state struct).
struct ReferenceMachine {
  const ToyProgram& prog;
  std::map<Nat, Nat> regs;
  std::size_t pc = 0;
  Nat steps = 0;
  bool halted = false;

  ReferenceMachine(const ToyProgram& p, Nat input) : prog(p) { regs[0] = input; }

  void step() {
    if (halted) return;
    if (pc >= prog.code.size()) {
      halted = true;
      return;
    }
    const Instruction& ins = prog.code[pc];
    ++steps;
    if (ins.op == Op::Halt) {
      halted = true;
    } else if (ins.op == Op::Inc) {
      regs[ins.reg] += 1;
      pc += 1;
    } else if (ins.op == Op::Goto) {
      pc = ins.target;
    } else {
      Nat& r = regs[ins.reg];
      if (r == 0) {
        pc = ins.target;
      } else {
        r -= 1;
        pc += 1;
      }
    }
    if (!halted && pc >= prog.code.size()) halted = true;
  }
};

inline RunResult reference_run(const ToyProgram& prog, Nat input, Nat fuel) {
  ReferenceMachine m(prog, input);
  if (m.pc >= prog.code.size()) return Halted{input, 0};
  while (!m.halted && m.steps < fuel) m.step();
  if (!m.halted) return std::nullopt;
  return Halted{m.regs[0], m.steps};
}

/// Brute-force closure of generator pairs by repeated relaxation on a dense
/// boolean matrix over [0, universe).
inline std::vector<std::vector<bool>> brute_closure(const std::vector<std::pair<Nat, Nat>>& gens, Nat universe) {
  const std::size_t n = static_cast<std::size_t>(universe);
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) rel[i][i] = true;
  for (auto [a, b] : gens) {
    rel[a][b] = true;
    rel[b][a] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (rel[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (rel[k][j]) rel[i][j] = true;
  return rel;
}

/// Random monotone transducers of a few shapes, for property checks.
inline Transducer random_transducer(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 4);
  std::uniform_int_distribution<Nat> small(0, 5);
  switch (kind(rng)) {
    case 0: {
      const Nat target = small(rng);
      return Transducer::from_semitest([target](WordView w, Nat) {
        return std::find(w.begin(), w.end(), target) != w.end();
      });
    }
    case 1: {
      const Nat threshold = small(rng) * 3;
      return Transducer::from_semitest([threshold](WordView w, Nat budget) {
        Nat sum = 0;
        for (Nat v : w) sum += v;
        return sum + budget / 4 > threshold;
      });
    }
    case 2:
      return Transducer::from_prefix_map([](WordView w) {
        Word out;
        for (Nat v : w) out.push_back(v * 2 + 1);
        return out;
      });
    case 3: {
      const Nat k = small(rng) + 1;
      // running maximum, emitted every k symbols
      return Transducer::from_prefix_map([k](WordView w) {
        Word out;
        Nat best = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
          best = std::max(best, w[i]);
          if ((i + 1) % k == 0) out.push_back(best);
        }
        return out;
      });
    }
    default: {
      const ToyProgram prog = enumerate_program(small(rng) * 7 + 1);
      // output a 1 at position k once prog halts on k within k steps
      return Transducer::from_prefix_map([prog](WordView w) {
        Word out;
        bool seen = false;
        for (std::size_t k = 0; k < w.size(); ++k) {
          seen = seen || interpret(prog, w[k], k).has_value();
          out.push_back(seen ? 1 : 0);
        }
        return out;
      });
    }
  }
}

inline Word random_word(std::mt19937_64& rng, std::size_t max_len, Nat max_val) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<Nat> val(0, max_val);
  Word w(len(rng));
  for (auto& v : w) v = val(rng);
  return w;
}

}  // namespace ctop::testing
