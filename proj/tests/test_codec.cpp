#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <vector>

#include "overtake/codec.hpp"
#include "overtake/nat.hpp"
#include "overtake/word.hpp"

using namespace overtake;
using namespace overtake::codec;

namespace {

// Independent enumeration oracle: words by length, lexicographic inside a
// length class. The codec is tested against positions in this list.
std::vector<Word> first_words(std::size_t count) {
  std::vector<Word> words;
  words.push_back(Word{});
  for (std::size_t len = 1; words.size() < count; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      std::string bits;
      for (std::size_t k = len; k-- > 0;) {
        bits.push_back((v >> k) & 1 ? '1' : '0');
      }
      words.push_back(Word::from_bits(bits));
      if (words.size() == count) break;
    }
  }
  return words;
}

}  // namespace

TEST_CASE("canonical enumeration matches the brute-force oracle") {
  const auto words = first_words(5000);
  for (std::size_t i = 0; i < words.size(); ++i) {
    CAPTURE(i);
    CHECK(word_of_index(Nat(i)) == words[i]);
    CHECK(index_of_word(words[i]) == Nat(i));
  }
  // Spot values from the enumeration e, 0, 1, 00, 01, 10, 11, 000, ...
  CHECK(word_of_index(0).bits() == "");
  CHECK(word_of_index(1).bits() == "0");
  CHECK(word_of_index(2).bits() == "1");
  CHECK(word_of_index(3).bits() == "00");
  CHECK(index_of_word(Word::from_bits("000")) == 7);
}

TEST_CASE("round trip on every word of length <= 12") {
  const auto words = first_words(std::size_t{1} << 13);
  for (const Word& w : words) {
    CHECK(word_of_index(index_of_word(w)) == w);
  }
}

TEST_CASE("digit doubling") {
  CHECK(double_word(Word::from_bits("01")).bits() == "0011");
  CHECK(double_word(Word{}).bits() == "");
  CHECK(double_word(Word::from_bits("101")).bits() == "110011");
  CHECK(halve_word(double_word(Word::from_bits("1101"))).bits() == "1101");
}

TEST_CASE("pair codes: hand-worked values") {
  CHECK(encode_pair(0, 0).bits() == "10");
  CHECK(encode_pair(2, 1).bits() == "11000");
  CHECK(encode_pair(1, 1).bits() == "01000");
  CHECK(decode_word(Word::from_bits("11000")) == std::pair<Nat, Nat>(2, 1));
  CHECK(decode_word(Word::from_bits("111")) == std::pair<Nat, Nat>(0, 0));
  // "10" is itself a valid code of the trivial pair, not junk.
  CHECK(decode_word(Word::from_bits("10")) == std::pair<Nat, Nat>(0, 0));
  CHECK(is_valid_code(Word::from_bits("10")));
  CHECK_FALSE(is_valid_code(Word::from_bits("111")));
}

TEST_CASE("decoding is total and inverts encoding on [0,256)^2") {
  for (Nat n = 0; n < 256; ++n) {
    for (Nat m = 0; m < 256; ++m) {
      const Word code = encode_pair(n, m);
      CHECK(decode_word(code) == std::pair<Nat, Nat>(n, m));
    }
  }
  // Totality: every word of length <= 14 decodes to some pair.
  const auto words = first_words(std::size_t{1} << 15);
  for (const Word& w : words) {
    const auto [n, m] = decode_word(w);
    CHECK(n >= 0);
    CHECK(m >= 0);
  }
}

TEST_CASE("no overshoot: the doubled suffix has exactly |word(m)| pairs") {
  for (Nat n = 0; n < 64; ++n) {
    for (Nat m = 0; m < 64; ++m) {
      const Word code = encode_pair(n, m);
      // Count the maximal doubled suffix directly.
      std::size_t i = code.size();
      while (i >= 2 && code.at(i - 2) == code.at(i - 1)) i -= 2;
      CHECK(code.size() - i == 2 * word_of_index(m).size());
    }
  }
}

TEST_CASE("pair index spot values from the enumeration oracle") {
  CHECK(ell_index(0, 0) == 5);  // index of "10"
  CHECK(ell_index(1, 1) == 39);
  CHECK(ell_index(2, 1) == 55);
}

TEST_CASE("index law: exact linearity with ratio 2^(2|word(m)|+2)") {
  for (const Nat& m : {Nat(0), Nat(1), Nat(2), Nat(5)}) {
    const LinearLaw law = linear_law(m, 0, 1000);
    CHECK(law.a == pow2(2 * word_of_index(m).size() + 2));
    for (Nat n = 0; n < 1000; ++n) {
      CHECK(ell_index(n, m) == law.a * n + law.b);
    }
  }
  CHECK(linear_law(1, 0, 10).a == 16);
  CHECK(linear_law(0, 0, 10).a == 4);
  CHECK(linear_law(3, 0, 10).a == 64);  // word(3) = "00"
  CHECK(linear_law(1, 0, 10).b == 23);  // 39 - 16 and 55 - 2*16
}

TEST_CASE("pair index is injective on [0,64)^2") {
  std::map<Nat, std::pair<Nat, Nat>> seen;
  for (Nat n = 0; n < 64; ++n) {
    for (Nat m = 0; m < 64; ++m) {
      const Nat i = ell_index(n, m);
      const auto [it, fresh] = seen.emplace(i, std::make_pair(n, m));
      CHECK(fresh);
    }
  }
}

TEST_CASE("to_standard: strictly increasing demonstration map") {
  ToStandard map;
  Nat prev = map.next();
  std::uint64_t max_bits = 0;
  for (int i = 1; i < 512; ++i) {
    const Nat cur = map.next();
    CHECK(cur > prev);
    prev = cur;
    max_bits = std::max(max_bits, bit_length(cur));
  }
  // Values stay primitive-recursively small: one exponential level above a
  // linear function of the index on the whole tested range.
  CHECK(max_bits < 2'000'000);
}

TEST_CASE("to_standard of a valid code exceeds its pair index") {
  ToStandard map;
  for (Nat n = 0; n < 4; ++n) {
    for (Nat m = 0; m < 4; ++m) {
      const Nat i = ell_index(n, m);
      CHECK(map.raw_at(i) >= i);
    }
  }
  // One-shot form agrees with the incremental scan.
  ToStandard scan;
  Nat at5;
  for (int i = 0; i <= 5; ++i) at5 = scan.next();
  CHECK(to_standard(5) == at5);
}
