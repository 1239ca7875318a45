#include "overtake/word.hpp"

namespace overtake {

Word Word::from_bits(std::string bits) {
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw ValidationError("word contains non-binary character '" +
                            std::string(1, c) + "'");
    }
  }
  return Word(std::move(bits), 0);
}

std::optional<Word> Word::try_parse(std::string_view text) {
  for (char c : text) {
    if (c != '0' && c != '1') return std::nullopt;
  }
  return Word(std::string(text), 0);
}

void Word::push_back(char bit) {
  if (bit != '0' && bit != '1') {
    throw ValidationError("push_back of non-binary character");
  }
  bits_.push_back(bit);
}

Word Word::prefix(std::size_t len) const {
  return Word(bits_.substr(0, len), 0);
}

Word Word::suffix_from(std::size_t pos) const {
  return Word(bits_.substr(pos), 0);
}

}  // namespace overtake
