#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "overtake/word.hpp"

namespace overtake {

enum class Sym : std::uint8_t { Zero = 0, One = 1, Blank = 2 };

enum class Dir : std::int8_t { Left = -1, Stay = 0, Right = 1 };

// One table line. state >= 1 is the acting state; next == 0 means the
// machine moves to the final state s0 and stops.
struct Instruction {
  std::uint32_t state;
  Sym scanned;
  Sym write;
  Dir move;
  std::uint32_t next;

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

// A one-tape machine table. n_states counts all states including the final
// state s0, so acting states range over [1, n_states). The empty table
// (n_states == 0) is the trivial machine and acts as the identity.
struct MachineTable {
  std::uint32_t n_states = 0;
  std::vector<Instruction> lines;

  friend bool operator==(const MachineTable&, const MachineTable&) = default;
};

// Reports determinism and state-range violations; empty result means valid.
std::vector<std::string> validate(const MachineTable& table);

// Line reordering; machines that differ by a permutation of their lines
// compute the same function. perm[i] gives the new position of line i.
MachineTable permute(const MachineTable& table,
                     const std::vector<std::size_t>& perm);

// Two-sided infinite tape over {0, 1, blank}; blank everywhere by default.
// The non-blank extent is tracked incrementally.
class Tape {
 public:
  Tape() = default;
  explicit Tape(const Word& w, std::int64_t start = 0);

  Sym at(std::int64_t pos) const;
  void set(std::int64_t pos, Sym s);

  // Extent of non-blank content; meaningful only when has_content().
  bool has_content() const { return nonblank_ > 0; }
  std::int64_t leftmost() const { return lo_; }
  std::int64_t rightmost() const { return hi_; }

  std::uint64_t count_ones() const;

 private:
  void rescan_extent();
  std::vector<Sym> right_;  // positions 0, 1, 2, ...
  std::vector<Sym> left_;   // positions -1, -2, ...
  std::int64_t nonblank_ = 0;
  std::int64_t lo_ = 0, hi_ = 0;
};

// The maximal contiguous non-blank block containing the head cell, or the
// empty word when the head rests on a blank square.
Word read_output(const Tape& tape, std::int64_t head);

struct RunOutcome {
  enum class Status { Halted, BudgetExhausted, LoopDetected };

  Status status;
  std::optional<Word> output;          // present iff halted
  std::optional<std::uint64_t> op_time;  // |input| + steps_used, iff halted
  std::uint64_t steps_used = 0;

  bool halted() const { return status == Status::Halted; }
};

struct RunOptions {
  // Loop detection remembers up to this many configurations (stored up to
  // translation, which is sound: a shifted repeat can never halt). Beyond
  // the window only the budget applies.
  std::size_t loop_window = std::size_t{1} << 16;
  // Configurations wider than this many cells are not recorded; machines
  // with growing tapes fall back to the budget.
  std::int64_t loop_span = 256;
};

// Simulate from state s1 with the head on the leftmost input cell (a blank
// cell for the empty input). The empty table halts immediately as the
// identity. A configuration with no applicable line can never reach s0 and
// is reported as a detected loop.
RunOutcome run(const MachineTable& table, const Word& input,
               std::uint64_t budget, const RunOptions& options = {});

}  // namespace overtake
