#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "overtake/nat.hpp"

namespace overtake {

// A finite binary word, possibly empty. Words are the universal currency:
// machine inputs, machine outputs, and pair codes are all Words. The
// bijection with the naturals lives in codec.hpp.
class Word {
 public:
  Word() = default;

  // Throws ValidationError unless every character is '0' or '1'.
  static Word from_bits(std::string bits);
  static std::optional<Word> try_parse(std::string_view text);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  char at(std::size_t i) const { return bits_[i]; }
  const std::string& bits() const { return bits_; }

  void push_back(char bit);
  void append(const Word& other) { bits_ += other.bits_; }
  Word prefix(std::size_t len) const;
  Word suffix_from(std::size_t pos) const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  explicit Word(std::string bits, int) : bits_(std::move(bits)) {}
  std::string bits_;
};

}  // namespace overtake
