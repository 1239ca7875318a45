#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "overtake/factory.hpp"
#include "overtake/machine.hpp"
#include "overtake/nat.hpp"
#include "overtake/word.hpp"

namespace overtake::bb {

// Rado-convention machine: symbols {0, 1} with 0 as the background, a total
// transition function on (state, symbol), and a dedicated halt state (next
// == 0). The halting transition writes and moves like any other.
struct RadoTransition {
  std::uint8_t write;  // 0 or 1
  std::int8_t move;    // -1 left, +1 right
  std::uint16_t next;  // 0 = halt

  friend bool operator==(const RadoTransition&, const RadoTransition&) = default;
};

struct RadoMachine {
  std::uint16_t n_states = 0;
  // rows[s - 1][symbol] for s in [1, n_states]
  std::vector<std::array<RadoTransition, 2>> rows;

  std::string text() const;  // one-line compact form, e.g. "1RB 1LH|..."
  MachineTable to_core_table() const;  // blank read as 0

  friend bool operator==(const RadoMachine&, const RadoMachine&) = default;
};

struct SearchOptions {
  std::uint64_t prover_budget = 8192;  // non-halt prover simulation window
  std::size_t config_window = std::size_t{1} << 14;
  std::uint16_t max_states = 4;
  int shards = 1;
  std::vector<Word> inputs;  // extra starting tapes besides the all-0 tape
};

struct BBResult {
  std::uint64_t value = 0;   // most 1s left by a halter
  bool exact = false;        // no machine left undecided
  std::optional<RadoMachine> witness;
  std::uint64_t cutoff_used = 0;
  std::uint64_t unresolved = 0;
  std::uint64_t machines_enumerated = 0;
  std::uint64_t halted = 0;
};

// Every total N-state machine, one per table assignment; feasible only for
// N <= 2 (64 and 20736 machines). Used to cross-check the pruned search.
std::vector<RadoMachine> enumerate_all(std::uint16_t n_states);

// Exhaustive sigma via tree-normal-form enumeration: undefined cells are
// canonical halt transitions (write 1, move right), children fill the first
// cell a run actually reaches, states are used in first-visit order, and on
// the all-0 tape the first move is right (mirror symmetry). With starting
// inputs the mirror pruning is dropped, since word tapes are not
// mirror-symmetric. exact is set only when every enumerated machine either
// halted within the cutoff or was proven non-halting.
BBResult sigma(std::uint16_t n_states, std::uint64_t cutoff,
               const SearchOptions& options = {});

// Unpruned counterpart over enumerate_all.
BBResult sigma_unpruned(std::uint16_t n_states, std::uint64_t cutoff,
                        const SearchOptions& options = {});

// Number of TNF tree nodes visited; the pruned enumeration is strictly
// smaller than the 64 unpruned 1-state tables.
std::uint64_t count_tnf_nodes(std::uint16_t n_states, std::uint64_t cutoff,
                              const SearchOptions& options = {});

// Least N whose (3N+1) x 4 table matrix (two bits per cell) can serialize
// to a word of canonical index >= m; monotone nondecreasing and unbounded.
std::uint64_t states_of_index(const Nat& m);

// Busy Beaver as a function of table indexes: sigma at states_of_index(m).
BBResult b_of_index(const Nat& m, std::uint64_t cutoff,
                    const SearchOptions& options = {});

// Generalized Busy Beaver: the maximum extends over starting tapes holding
// each input numeral x <= g(m); for uncertified m only the empty word is
// added, so the value coincides with b_of_index. Throws Refusal when the
// state count exceeds the bound, g is unresolved, or g exceeds the input
// budget.
BBResult b_prime(const Nat& m, const factory::Registry& registry,
                 std::uint64_t cutoff, const SearchOptions& options = {},
                 std::uint64_t max_inputs = 64);

struct BPrimeRow {
  Nat m;
  std::uint64_t states = 0;
  std::optional<Nat> g_value;
  std::optional<std::uint64_t> b_value;
  std::optional<std::uint64_t> b_prime_value;
  bool certified = false;
  bool ge_holds = false;  // B'(m) >= B(m)
  std::string refusal;
};

// Finite-window evidence table for "B' dominates g" and "B' >= B".
std::vector<BPrimeRow> bprime_vs_g_report(const std::vector<Nat>& indexes,
                                          const factory::Registry& registry,
                                          std::uint64_t cutoff,
                                          const SearchOptions& options = {});

}  // namespace overtake::bb
