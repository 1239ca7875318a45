#pragma once

#include <cstdint>
#include <utility>

#include "overtake/machine.hpp"
#include "overtake/nat.hpp"
#include "overtake/two_tape.hpp"
#include "overtake/word.hpp"

namespace overtake::ell {

// A parametric ("labeled") machine: a two-tape base with the canonical word
// of the parameter preloaded on tape 2.
struct LabeledMachine {
  Nat parameter;
  MachineTable2 base;
};

RunOutcome run_labeled(const LabeledMachine& machine, const Word& input,
                       std::uint64_t budget, const RunOptions& options = {});

// Cantor pairing: an onto bijection omega x omega -> omega, polynomial to
// compute, monotone along anti-diagonals.
Nat pairing(const Nat& n, const Nat& x);
std::pair<Nat, Nat> unpair(const Nat& z);

// Compiled one-tape machine computing the constant function x -> n: erases
// the input, writes the canonical word of n, halts on its leftmost symbol.
// Linear time: about |input| + |word(n)| steps.
MachineTable make_constant(const Nat& n);

// Sequential composition. The halt of `first` is rewired through a cleanup
// stage that parks the head on the leftmost symbol of the output block
// before starting `second`. Stages that leave no stray content outside the
// output block (all machines built by this library do) compose exactly:
// run(compose(A, B), x) == B(A(x)).
MachineTable compose(const MachineTable& first, const MachineTable& second);

// Compiled pairing stage: input numeral x becomes pairing(n, x), with the
// parameter n baked in as an unrolled prefix.
MachineTable pairing_stage(const Nat& n);

// Compiled unpairing projections, for bases that decode their paired input.
MachineTable unpair_first_table();
MachineTable unpair_second_table();

// One-tape realization of the labeled machine <n, base'>: the pairing stage
// feeds pairing(n, x) to a base that unpairs its input.
MachineTable emulate_ell(const MachineTable& base, const Nat& n);

// Index of the emulated composite in the table-serialization numbering;
// computable from the base table and the parameter alone.
Nat composition_index(const MachineTable& base, const Nat& n);

// Two-tape machine that writes the tape-2 parameter over the input and
// halts on its leftmost symbol; the labeled machine <n, copier> computes
// the constant function x -> n.
MachineTable2 make_param_copier();

}  // namespace overtake::ell
