#pragma once

#include <optional>
#include <string>

#include "overtake/machine.hpp"
#include "overtake/two_tape.hpp"
#include "overtake/word.hpp"

namespace overtake {

// Text format, one instruction per line:
//
//     state scanned -> write move next
//
// Symbols are 0, 1 and _ (blank); moves are L, R, S; state 0 is the halt
// state. '#' starts a comment. print_table/parse_table round-trip bit-exact
// for tables in inferred-state-count form (n_states == 1 + highest state
// mentioned, or 0 for the empty table).
std::string print_table(const MachineTable& table);
MachineTable parse_table(const std::string& text);  // throws ValidationError

// Two-tape variant with paired symbol/move columns:
//
//     state scanned1 scanned2 -> write1 write2 move1 move2 next
std::string print_table(const MachineTable2& table);
MachineTable2 parse_table2(const std::string& text);

// Compact binary serialization used for Goedel numbering of tables. The
// empty table serializes to the empty word; otherwise the layout is
//
//     unary(n_states) unary(n_lines) line*
//
// with fixed-width binary fields per line. serialize/parse are mutually
// inverse; parse returns nullopt on anything that is not a serialization.
Word serialize_table(const MachineTable& table);
std::optional<MachineTable> parse_table_word(const Word& w);

Word serialize_table(const MachineTable2& table);
std::optional<MachineTable2> parse_table2_word(const Word& w);

}  // namespace overtake
