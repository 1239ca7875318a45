#pragma once

#include <optional>
#include <vector>

#include "overtake/factory.hpp"
#include "overtake/growth_function.hpp"
#include "overtake/nat.hpp"

namespace overtake::growth {

// Two readings of the mu in "least x with x^m < 2^x": the literal least
// witness, or the point from which the inequality holds forever after.
enum class MuMode { First, Crossover };

// g0(m): mode First returns the least x with x^m < 2^x (0^0 == 1); mode
// Crossover returns the least x such that y^m < 2^y for every y >= x. The
// crossover tail is certified by induction: once y^m < 2^y and
// (y+1)^m <= 2*y^m, the inequality propagates to every larger y because
// (1 + 1/y)^m is nonincreasing in y.
Nat g0(std::uint32_t m, MuMode mode);

// Wainer hierarchy: fgh(0, n) = n+1, fgh(k+1, n) = fgh(k, .) iterated n+1
// times on n; fgh_omega(n) = fgh(n, n). Values above the bit ceiling are
// refused (OverflowRefusal), never silently truncated.
Nat fgh(std::uint32_t k, const Nat& n,
        std::uint64_t ceiling_bits = kDefaultCeilingBits);
Nat fgh_omega(const Nat& n, std::uint64_t ceiling_bits = kDefaultCeilingBits);

// h*(n) = n + max{h(j) : j <= n}: strictly increasing and >= h pointwise.
GrowthFunction monotonize(const GrowthFunction& h);

// h' = h* after fgh_omega; strictly increasing and eventually above any
// index law n -> a*n + b.
GrowthFunction derive_hprime(const GrowthFunction& h,
                             std::uint64_t ceiling_bits = kDefaultCeilingBits);

// Exact finite-window domination check for f >= g. The witness is the
// first point from which f(x) >= g(x) holds through the window's end; no
// witness is reported when failures reach the end (a vacuous tail is not
// evidence). Never a claim beyond the window.
struct DominationReport {
  Nat lo;
  Nat hi;  // inclusive
  std::optional<Nat> witness;
  std::vector<Nat> failures;  // all x in window with f(x) < g(x)
};

DominationReport dominates_on_window(const GrowthFunction& f,
                                     const GrowthFunction& g, const Nat& lo,
                                     const Nat& hi);

struct MuSearchOptions {
  Nat max_x = 4096;                  // unresolved beyond this
  std::uint64_t run_budget = 1 << 22;  // per compiled-table run
};

// g on one certified machine: least x whose output value drops below 2^x.
// Registered quasi-trivial machines take the structural path (threshold +
// 1, after probing the payload); anything else is a literal mu-search.
// Returns nullopt (unresolved) when the budget runs out, never a fake 0.
std::optional<Nat> g_of_machine(const factory::CertifiedMachine& machine,
                                const MuSearchOptions& options = {});

// g over indexes: certified -> g_of_machine, anything else -> 0.
std::optional<Nat> g_at_index(const Nat& index,
                              const factory::Registry& registry,
                              const MuSearchOptions& options = {});

// g* over an explicit (artifact-supplied, non-canonical) enumeration.
std::optional<Nat> g_star(
    const std::vector<factory::CertifiedMachine>& enumeration, std::size_t m,
    const MuSearchOptions& options = {});

// One row of a counterexample family build.
struct CounterexampleRow {
  Nat n;
  bool built = false;
  std::string refusal;     // set when not built
  Nat index;               // N(n)
  Nat h_prime_n;           // h'(n)
  Nat g_value;             // g(N(n)) via the registered machine
  Nat h_at_index;          // h(N(n))
  Nat h_star_at_index;     // h*(N(n))
  bool g_exceeds_h = false;
  bool g_exceeds_h_star = false;
};

struct CounterexampleFamily {
  std::vector<CounterexampleRow> rows;
  // Domination-style report for g(N(.)) > h(N(.)) over the built rows: the
  // witness marks where the family starts beating h, mirroring that no h
  // can dominate g.
  DominationReport g_vs_h;
};

// Build and register the family Q^{h', K, n} with payload K(x) = 4^(x+1),
// verify g(N(n)) = h'(n) + 1 at every built n, and compare g against h and
// h* at the family indexes. Rows whose h'(n) overflows the ceiling are
// recorded as refusals.
CounterexampleFamily build_counterexample_family(
    const GrowthFunction& h, const Nat& n_lo, const Nat& n_hi,
    factory::Registry& registry,
    std::uint64_t ceiling_bits = kDefaultCeilingBits);

}  // namespace overtake::growth
