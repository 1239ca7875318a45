#include "overtake/codec.hpp"

#include <string>

namespace overtake::codec {

Word word_of_index(const Nat& index) {
  // The binary digits of index + 1 with the leading 1 removed are exactly
  // the canonical word: index + 1 in [2^L, 2^(L+1)) gives the length-L word
  // of value index + 1 - 2^L.
  Nat v = index + 1;
  const std::uint64_t bits = bit_length(v);
  std::string out;
  out.reserve(bits > 0 ? static_cast<std::size_t>(bits - 1) : 0);
  for (std::uint64_t k = bits - 1; k-- > 0;) {
    out.push_back(boost::multiprecision::bit_test(v, static_cast<unsigned>(k))
                      ? '1'
                      : '0');
  }
  return Word::from_bits(std::move(out));
}

Nat index_of_word(const Word& w) {
  Nat value = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    value <<= 1;
    if (w.at(i) == '1') value += 1;
  }
  return (Nat(1) << w.size()) - 1 + value;
}

Word double_word(const Word& w) {
  std::string out;
  out.reserve(2 * w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    out.push_back(w.at(i));
    out.push_back(w.at(i));
  }
  return Word::from_bits(std::move(out));
}

Word halve_word(const Word& w) {
  if (w.size() % 2 != 0) {
    throw ValidationError("halve_word: odd length");
  }
  std::string out;
  out.reserve(w.size() / 2);
  for (std::size_t i = 0; i < w.size(); i += 2) {
    if (w.at(i) != w.at(i + 1)) {
      throw ValidationError("halve_word: not a doubled word");
    }
    out.push_back(w.at(i));
  }
  return Word::from_bits(std::move(out));
}

Word encode_pair(const Nat& n, const Nat& m) {
  Word code = word_of_index(n);
  code.push_back('1');
  code.push_back('0');
  code.append(double_word(word_of_index(m)));
  return code;
}

std::pair<Nat, Nat> decode_word(const Word& w) {
  // Tile equal pairs from the right end; the separator pair "10" is unequal,
  // so on a valid code the tiling stops exactly at the doubled suffix.
  std::size_t i = w.size();
  while (i >= 2 && w.at(i - 2) == w.at(i - 1)) i -= 2;
  if (i < 2 || w.at(i - 2) != '1' || w.at(i - 1) != '0') {
    return {Nat(0), Nat(0)};  // junk maps to the trivial machine
  }
  const Word prefix = w.prefix(i - 2);
  const Word doubled = w.suffix_from(i);
  return {index_of_word(prefix), index_of_word(halve_word(doubled))};
}

bool is_valid_code(const Word& w) {
  auto [n, m] = decode_word(w);
  return encode_pair(n, m) == w;
}

Nat ell_index(const Nat& n, const Nat& m) {
  return index_of_word(encode_pair(n, m));
}

LinearLaw linear_law(const Nat& m, const Nat& n_lo, const Nat& n_hi) {
  if (n_hi <= n_lo) throw ValidationError("linear_law: empty probe range");
  const Nat expected_a = Nat(1) << (2 * word_of_index(m).size() + 2);
  const Nat b = ell_index(0, m);
  Nat a;
  if (n_hi - n_lo >= 2) {
    a = ell_index(n_lo + 1, m) - ell_index(n_lo, m);
  } else {
    a = expected_a;
  }
  if (a != expected_a) {
    throw ValidationError("linear_law: fitted ratio disagrees with formula");
  }
  for (Nat n = n_lo; n < n_hi; ++n) {
    if (ell_index(n, m) != a * n + b) {
      throw ValidationError("linear_law: law violated at n=" + n.str());
    }
  }
  return {a, b, m};
}

}  // namespace overtake::codec
