#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "overtake/nat.hpp"
#include "overtake/word.hpp"

namespace overtake::codec {

// Canonical enumeration of binary words in length-then-value order:
//   0 -> e, 1 -> 0, 2 -> 1, 3 -> 00, 4 -> 01, 5 -> 10, 6 -> 11, 7 -> 000, ...
// word_of_index and index_of_word are mutually inverse on all inputs.
Word word_of_index(const Nat& index);
Nat index_of_word(const Word& w);

// Each bit written twice: "01" -> "0011". The doubled form is
// self-delimiting from the right, which is what makes pair codes decodable.
Word double_word(const Word& w);
Word halve_word(const Word& w);  // inverse of double_word; input must be doubled

// Pair code for <n, m>:  word(n) + "10" + double(word(m)).
Word encode_pair(const Nat& n, const Nat& m);

// Total decoder. Takes the maximal doubled suffix (equal pairs tiled from
// the right end); if the two symbols before it read "10", the word is a
// valid code and the embedded pair is returned. Every other word decodes to
// <0, 0>, the trivial machine. Never fails.
std::pair<Nat, Nat> decode_word(const Word& w);

// True when w is literally a pair code, i.e. encode_pair(decode_word(w)) == w.
bool is_valid_code(const Word& w);

// Index of the pair code in the canonical enumeration. Strictly increasing
// in n for fixed m; for fixed m the map n -> pair_index(n, m) is exactly
// linear (see linear_law).
Nat ell_index(const Nat& n, const Nat& m);

// The index law for a fixed machine index m: ell_index(n, m) = a*n + b with
// a = 2^(2*|word(m)| + 2).
struct LinearLaw {
  Nat a;
  Nat b;
  Nat m;
};

// Fits (a, b) from consecutive indexes and verifies the law exactly over
// [n_lo, n_hi). Throws ValidationError if the codec ever disagrees with the
// fitted line (which would be a codec bug) or if a mismatches the formula.
LinearLaw linear_law(const Nat& m, const Nat& n_lo, const Nat& n_hi);

// Demonstration map into a table-serialization numbering: decode the index,
// build the emulated one-tape machine for the pair, and take the canonical
// index of its serialized table. The raw map is not monotone, so the
// published value at i is i + max of the raw values up to i, which is
// strictly increasing. Evaluating index i costs all raw values up to i;
// ToStandard keeps the running maximum so a scan over [0, n) is linear.
class ToStandard {
 public:
  // Returns the value at the next index (starting from 0).
  Nat next();
  Nat raw_at(const Nat& i) const;

 private:
  Nat next_index_ = 0;
  Nat running_max_ = 0;
};

Nat to_standard(const Nat& i);  // one-shot form; O(i) raw evaluations

}  // namespace overtake::codec
