#pragma once

// Desk-scale stand-ins for non-computable parameters: oracle sets, stage
// tables of d.c.e. and limit-computable sets, and busy-beaver tables.

#include <map>
#include <set>
#include <vector>

#include "ctop/kernel.hpp"
#include "ctop/spaces.hpp"

namespace ctop {

/// A ⊆ ℕ given by a finite table and a default bit beyond it, or by a
/// procedure.
class OracleSet {
 public:
  OracleSet() : OracleSet(std::map<Nat, bool>{}) {}
  explicit OracleSet(std::map<Nat, bool> table, bool default_bit = false)
      : fn_([table = std::move(table), default_bit](Nat n) {
          const auto it = table.find(n);
          return it == table.end() ? default_bit : it->second;
        }) {}
  explicit OracleSet(std::function<bool(Nat)> membership) : fn_(std::move(membership)) {}

  static OracleSet of(const std::set<Nat>& members) {
    std::map<Nat, bool> t;
    for (Nat n : members) t[n] = true;
    return OracleSet(std::move(t));
  }
  static OracleSet cofinite(const std::set<Nat>& non_members) {
    std::map<Nat, bool> t;
    for (Nat n : non_members) t[n] = false;
    return OracleSet(std::move(t), true);
  }

  bool contains(Nat n) const { return fn_(n); }

  std::set<Nat> members_below(Nat bound) const {
    std::set<Nat> out;
    for (Nat n = 0; n < bound; ++n)
      if (contains(n)) out.insert(n);
    return out;
  }

  /// Characteristic sequence of A (or of its complement).
  Name characteristic(bool complement = false) const {
    return Name::stream([fn = fn_, complement](Nat k) -> Nat { return fn(k) != complement ? 1 : 0; });
  }

  /// γ-name listing A in increasing order, one candidate per position.
  Name enumeration(bool complement = false) const {
    return Name::stream([fn = fn_, complement](Nat k) -> Nat { return fn(k) != complement ? k + 1 : 0; });
  }

 private:
  std::function<bool(Nat)> fn_;
};

/// Stage table: for each n the stages at which its approximated bit changes,
/// starting from 0. bit(n, t) is the value after applying changes with
/// stage ≤ t.
class StageTable {
 public:
  struct Change {
    Nat stage = 0;
    bool bit = false;
  };

  /// Records "from `stage` on, n has `bit`". Redundant records are dropped.
  void record(Nat stage, Nat n, bool bit) {
    auto& cs = changes_[n];
    if (!cs.empty() && stage < cs.back().stage)
      throw ParseError("stage " + std::to_string(stage) + " for " + std::to_string(n) + " out of order");
    if (bit_after(cs, stage) == bit) return;
    cs.push_back({stage, bit});
  }

  bool bit(Nat n, Nat stage) const {
    const auto it = changes_.find(n);
    return it == changes_.end() ? false : bit_after(it->second, stage);
  }

  bool final_bit(Nat n) const { return bit(n, kInfinity); }

  const std::vector<Change>& changes(Nat n) const {
    static const std::vector<Change> none;
    const auto it = changes_.find(n);
    return it == changes_.end() ? none : it->second;
  }

  /// Numbers with a recorded change.
  std::vector<Nat> touched() const {
    std::vector<Nat> out;
    for (const auto& [n, cs] : changes_) out.push_back(n);
    return out;
  }

  /// Stage of the first change to 1 and of the change back to 0.
  std::pair<Nat, Nat> flip_stages(Nat n) const {
    const auto& cs = changes(n);
    return {cs.size() > 0 ? cs[0].stage : kInfinity, cs.size() > 1 ? cs[1].stage : kInfinity};
  }

  /// 0 → 1 → 0 with at most two changes.
  bool is_dce() const {
    for (const auto& [n, cs] : changes_)
      if (cs.size() > 2) return false;
    return true;
  }

  OracleSet final_set() const {
    return OracleSet([self = *this](Nat n) { return self.final_bit(n); });
  }

 private:
  static bool bit_after(const std::vector<Change>& cs, Nat stage) {
    bool b = false;
    for (const auto& c : cs) {
      if (c.stage > stage) break;
      b = c.bit;
    }
    return b;
  }

  std::map<Nat, std::vector<Change>> changes_;
};

// ---------------------------------------------------------------------------
// Busy-beaver table

/// bb(m) = the largest step count of a program with at most m instructions
/// over registers r0..r(R-1) halting on input 0 within `fuel`; bb(0) = 0.
/// Only the audit fuel is claimed, not the true function.
struct BBTable {
  Nat cutoff = 0;
  Nat fuel = 0;
  Nat registers = 0;
  std::vector<Nat> entries;  // entries[m] for m ≤ cutoff

  Nat at(Nat m) const {
    if (m > cutoff) throw CutoffExceeded("size " + std::to_string(m) + " above cutoff " + std::to_string(cutoff));
    return entries[m];
  }
};

/// Exhaustive: every instruction is HALT, INC r, GOTO t or DECJZ r t with
/// r < registers and t < length.
inline BBTable compute_bb_table(Nat cutoff, Nat fuel, Nat registers) {
  BBTable t{cutoff, fuel, registers, std::vector<Nat>(cutoff + 1, 0)};
  for (Nat len = 1; len <= cutoff; ++len) {
    std::vector<Instruction> choices{{Op::Halt, 0, 0}};
    for (Nat r = 0; r < registers; ++r) choices.push_back({Op::Inc, r, 0});
    for (Nat target = 0; target < len; ++target) {
      choices.push_back({Op::Goto, 0, target});
      for (Nat r = 0; r < registers; ++r) choices.push_back({Op::DecJz, r, target});
    }
    ToyProgram prog{std::vector<Instruction>(len, choices[0])};
    std::vector<std::size_t> digit(len, 0);
    Nat best = 0;
    while (true) {
      for (Nat i = 0; i < len; ++i) prog.code[i] = choices[digit[i]];
      if (const auto r = interpret(prog, 0, fuel)) best = std::max(best, r->steps);
      Nat i = 0;
      while (i < len && ++digit[i] == choices.size()) digit[i++] = 0;
      if (i == len) break;
    }
    t.entries[len] = std::max(best, t.entries[len - 1]);
  }
  return t;
}

}  // namespace ctop
