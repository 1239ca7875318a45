#pragma once

#include <functional>
#include <optional>
#include <string>

#include "overtake/nat.hpp"

namespace overtake {

// A named total function on the naturals with arbitrary-precision values.
// The monotone flag is a promise checked opportunistically by consumers.
struct GrowthFunction {
  std::string name;
  std::function<Nat(const Nat&)> eval;
  bool monotone = false;

  Nat operator()(const Nat& x) const { return eval(x); }
};

// Named functions reachable from the command line. Returns nullopt for
// unknown names; known names: ident, succ, square, cube, pow2, pow2p3,
// pow4p1.
std::optional<GrowthFunction> lookup_growth_function(const std::string& name);

}  // namespace overtake
