#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace overtake {

// Unbounded non-negative integer. Every natural in this library (word
// indexes, machine outputs, growth-function values) is a Nat; callers keep
// the non-negativity invariant.
using Nat = boost::multiprecision::cpp_int;

// Values above this many bits are refused by the guarded operations below.
inline constexpr std::uint64_t kDefaultCeilingBits = std::uint64_t{1} << 24;

// A computation was declined: out of configured range, value too large, or
// a machine too big to build. Refusals carry a reason and are reported by
// callers, never swallowed.
class Refusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Refusal raised when an intermediate value would exceed the size ceiling.
class OverflowRefusal : public Refusal {
 public:
  using Refusal::Refusal;
};

// Malformed input: invalid machine table, bad permutation, syntax error.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A certified machine broke its own polynomial-time certificate at runtime.
class CertificateViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::uint64_t bit_length(const Nat& v) {
  if (v == 0) return 0;
  return static_cast<std::uint64_t>(boost::multiprecision::msb(v)) + 1;
}

inline void require_bits(const Nat& v, std::uint64_t ceiling_bits,
                         const std::string& what) {
  if (bit_length(v) > ceiling_bits) {
    throw OverflowRefusal(what + ": value exceeds " +
                          std::to_string(ceiling_bits) + "-bit ceiling");
  }
}

// 2^e, refusing instead of allocating when e itself is beyond the ceiling.
inline Nat pow2(std::uint64_t e, std::uint64_t ceiling_bits = kDefaultCeilingBits) {
  if (e + 1 > ceiling_bits) {
    throw OverflowRefusal("pow2: exponent " + std::to_string(e) + " exceeds " +
                          std::to_string(ceiling_bits) + "-bit ceiling");
  }
  return Nat(1) << e;
}

// base^exp with a pre-check on the result size (0^0 == 1).
Nat pow_nat(const Nat& base, std::uint64_t exp,
            std::uint64_t ceiling_bits = kDefaultCeilingBits);

// Parse a decimal string into a Nat; used by the registry and the CLI.
Nat nat_from_decimal(const std::string& s);

}  // namespace overtake
