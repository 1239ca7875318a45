#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "overtake/machine.hpp"
#include "overtake/nat.hpp"

namespace overtake::regtm {

// A tiny counter-machine language that compiles to one-tape machine tables.
// Registers are 1-based; the input numeral arrives in r1 and the output is
// taken from r1 when the program halts. Dec on a zero register is a no-op
// (programs guard with Jz). Used to build the arithmetic machines of the
// emulation kit: the pairing stage and the unpairing bases.
struct RegOp {
  enum class Kind { Inc, Dec, Jz, Jmp, Halt };
  Kind kind;
  int reg = 0;           // Inc / Dec / Jz
  std::size_t target = 0;  // Jz / Jmp
};

struct RegProgram {
  int n_regs = 1;
  std::vector<RegOp> ops;

  static RegOp inc(int r) { return {RegOp::Kind::Inc, r, 0}; }
  static RegOp dec(int r) { return {RegOp::Kind::Dec, r, 0}; }
  static RegOp jz(int r, std::size_t target) {
    return {RegOp::Kind::Jz, r, target};
  }
  static RegOp jmp(std::size_t target) { return {RegOp::Kind::Jmp, 0, target}; }
  static RegOp halt() { return {RegOp::Kind::Halt, 0, 0}; }
};

// Reference interpreter; the oracle the compiled tables are tested against.
// Returns nullopt if the program does not halt within max_ops operations.
std::optional<Nat> interpret(const RegProgram& program, const Nat& input,
                             std::uint64_t max_ops);

// Compile to a one-tape table. The compiled machine reads its input as a
// canonical word, runs the program on a fenced unary workspace to the right
// of the input, writes the result as a canonical word, erases the
// workspace, and halts with the head on the leftmost output symbol (tidy
// halt, so compiled programs compose).
MachineTable compile(const RegProgram& program);

}  // namespace overtake::regtm
