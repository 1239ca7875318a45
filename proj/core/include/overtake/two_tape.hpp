#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "overtake/machine.hpp"

namespace overtake {

// One line of a two-tape table; scanned/write/move come in pairs, one per
// tape. Determinism is per (state, scanned1, scanned2).
struct Instruction2 {
  std::uint32_t state;
  Sym scanned1;
  Sym scanned2;
  Sym write1;
  Sym write2;
  Dir move1;
  Dir move2;
  std::uint32_t next;

  friend bool operator==(const Instruction2&, const Instruction2&) = default;
};

struct MachineTable2 {
  std::uint32_t n_states = 0;
  std::vector<Instruction2> lines;

  friend bool operator==(const MachineTable2&, const MachineTable2&) = default;
};

std::vector<std::string> validate(const MachineTable2& table);

// Tape 1 holds the input, tape 2 the parameter word; the output is read
// from tape 1. Semantics otherwise as in the one-tape run().
RunOutcome run_two_tape(const MachineTable2& table, const Word& input,
                        const Word& parameter, std::uint64_t budget,
                        const RunOptions& options = {});

// Lift a one-tape table: all instructions act on tape 1 and leave tape 2
// untouched, so behavior matches run() for every parameter word.
MachineTable2 lift_to_two_tape(const MachineTable& table);

}  // namespace overtake
