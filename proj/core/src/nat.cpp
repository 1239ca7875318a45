#include "overtake/nat.hpp"

namespace overtake {

Nat pow_nat(const Nat& base, std::uint64_t exp, std::uint64_t ceiling_bits) {
  if (exp == 0) return 1;  // 0^0 == 1 by convention
  if (base == 0) return 0;
  if (base == 1) return 1;
  // Result has about exp * bit_length(base) bits; refuse before allocating.
  if (bit_length(base) * exp > ceiling_bits + 64) {
    throw OverflowRefusal("pow_nat: result would exceed ceiling");
  }
  Nat acc = 1;
  Nat b = base;
  std::uint64_t e = exp;
  while (e > 0) {
    if (e & 1) acc *= b;
    e >>= 1;
    if (e > 0) b *= b;
    require_bits(acc, ceiling_bits, "pow_nat");
  }
  return acc;
}

Nat nat_from_decimal(const std::string& s) {
  if (s.empty()) throw ValidationError("empty decimal string");
  for (char c : s) {
    if (c < '0' || c > '9') {
      throw ValidationError("bad decimal string: " + s);
    }
  }
  return Nat(s);
}

}  // namespace overtake
