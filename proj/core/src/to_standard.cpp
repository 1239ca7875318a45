#include "overtake/codec.hpp"
#include "overtake/ell.hpp"
#include "overtake/table_io.hpp"

namespace overtake::codec {

Nat ToStandard::raw_at(const Nat& i) const {
  const auto [n, m] = decode_word(word_of_index(i));
  MachineTable base;  // junk parses to the trivial machine
  if (auto parsed = parse_table_word(word_of_index(m))) {
    base = std::move(*parsed);
  }
  const MachineTable emulated = ell::emulate_ell(base, n);
  return index_of_word(serialize_table(emulated));
}

Nat ToStandard::next() {
  const Nat i = next_index_;
  const Nat raw = raw_at(i);
  if (raw > running_max_) running_max_ = raw;
  ++next_index_;
  return i + running_max_;
}

Nat to_standard(const Nat& i) {
  ToStandard map;
  Nat value = 0;
  for (Nat j = 0; j <= i; ++j) value = map.next();
  return value;
}

}  // namespace overtake::codec
