#include "overtake/growth_function.hpp"

namespace overtake {

namespace {

std::uint64_t small_exponent(const Nat& n, const char* what) {
  if (bit_length(n) > 32) {
    throw OverflowRefusal(std::string(what) + ": exponent too large");
  }
  return n.convert_to<std::uint64_t>();
}

}  // namespace

std::optional<GrowthFunction> lookup_growth_function(const std::string& name) {
  if (name == "ident") {
    return GrowthFunction{"ident", [](const Nat& n) { return n; }, true};
  }
  if (name == "succ") {
    return GrowthFunction{"succ", [](const Nat& n) { return n + 1; }, true};
  }
  if (name == "square") {
    return GrowthFunction{"square", [](const Nat& n) { return n * n; }, true};
  }
  if (name == "cube") {
    return GrowthFunction{"cube", [](const Nat& n) { return n * n * n; }, true};
  }
  if (name == "pow2") {
    return GrowthFunction{
        "pow2",
        [](const Nat& n) { return pow2(small_exponent(n, "pow2")); }, true};
  }
  if (name == "pow2p3") {
    return GrowthFunction{
        "pow2p3",
        [](const Nat& n) { return pow2(small_exponent(n, "pow2p3") + 3); },
        true};
  }
  if (name == "pow4p1") {
    return GrowthFunction{
        "pow4p1",
        [](const Nat& n) {
          return pow2(2 * (small_exponent(n, "pow4p1") + 1));
        },
        true};
  }
  return std::nullopt;
}

}  // namespace overtake
