#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "overtake/codec.hpp"
#include "overtake/factory.hpp"
#include "overtake/growth.hpp"

using namespace overtake;
using namespace overtake::growth;

namespace {

// Brute-force oracles, independent of the implementation under test.
bool below(const Nat& x, std::uint32_t m) {
  return pow_nat(x, m) < pow2(x.convert_to<std::uint64_t>());
}

Nat oracle_first(std::uint32_t m) {
  for (Nat x = 0;; ++x) {
    if (below(x, m)) return x;
  }
}

Nat oracle_crossover(std::uint32_t m) {
  // Last failure within a generous scan, plus one. For m <= 12 every
  // failure sits far below the scan limit.
  Nat last_fail = 0;
  bool any_fail = false;
  for (Nat y = 0; y <= 2048; ++y) {
    if (!below(y, m)) {
      last_fail = y;
      any_fail = true;
    }
  }
  return any_fail ? last_fail + 1 : Nat(0);
}

// Literal Wainer recursion, affordable only for tiny arguments.
Nat fgh_literal(std::uint32_t k, const Nat& n) {
  if (k == 0) return n + 1;
  Nat x = n;
  const std::uint64_t reps = n.convert_to<std::uint64_t>() + 1;
  for (std::uint64_t i = 0; i < reps; ++i) x = fgh_literal(k - 1, x);
  return x;
}

GrowthFunction toy_h() { return *lookup_growth_function("pow2p3"); }
GrowthFunction toy_payload() { return *lookup_growth_function("pow4p1"); }

}  // namespace

TEST_CASE("g0 agrees with brute force in both readings") {
  CHECK(g0(0, MuMode::First) == 1);
  for (std::uint32_t m = 1; m <= 12; ++m) {
    CHECK(g0(m, MuMode::First) == 0);  // 0^m = 0 < 1 = 2^0
  }
  for (std::uint32_t m = 0; m <= 12; ++m) {
    CHECK(g0(m, MuMode::First) == oracle_first(m));
    CHECK(g0(m, MuMode::Crossover) == oracle_crossover(m));
  }
  CHECK(g0(2, MuMode::Crossover) == 5);
  CHECK(g0(3, MuMode::Crossover) == 10);
}

TEST_CASE("fgh matches the literal recursion on small arguments") {
  for (Nat n = 0; n <= 10; ++n) {
    CHECK(fgh(0, n) == n + 1);
    CHECK(fgh(1, n) == 2 * n + 1);
    CHECK(fgh(1, n) == fgh_literal(1, n));
  }
  for (Nat n = 0; n <= 6; ++n) {
    CHECK(fgh(2, n) == fgh_literal(2, n));
  }
  CHECK(fgh(2, 2) == 23);
  CHECK(fgh(3, 0) == 1);
  CHECK(fgh(3, 1) == fgh_literal(3, 1));
  CHECK(fgh_omega(0) == 1);
  CHECK(fgh_omega(1) == 3);
  CHECK(fgh_omega(2) == 23);
}

TEST_CASE("fgh is monotone in both arguments on the evaluable grid") {
  for (std::uint32_t k = 0; k <= 2; ++k) {
    for (Nat n = 0; n <= 10; ++n) {
      CHECK(fgh(k, n) <= fgh(k, n + 1));
      CHECK(fgh(k, n) <= fgh(k + 1, n));
    }
  }
}

TEST_CASE("overflowing values refuse instead of crashing") {
  CHECK_THROWS_AS(fgh_omega(3), OverflowRefusal);
  CHECK_THROWS_AS(fgh(2, Nat(1) << 60), OverflowRefusal);
  CHECK_THROWS_AS(fgh(3, 3), OverflowRefusal);
}

TEST_CASE("monotonize: constants, increasing functions, squares") {
  const GrowthFunction const5{"const5", [](const Nat&) { return Nat(5); },
                              true};
  const GrowthFunction star5 = monotonize(const5);
  for (Nat n = 0; n <= 10; ++n) CHECK(star5.eval(n) == n + 5);

  const GrowthFunction sq = *lookup_growth_function("square");
  const GrowthFunction star_sq = monotonize(sq);
  Nat prev = star_sq.eval(0);
  for (Nat n = 1; n <= 10; ++n) {
    const Nat cur = star_sq.eval(n);
    CHECK(cur == n + n * n);  // increasing h: h*(n) = n + h(n)
    CHECK(cur > prev);        // strictly increasing
    CHECK(cur >= sq.eval(n)); // pointwise dominance
    prev = cur;
  }
}

TEST_CASE("derive_hprime composes the monotonization with fgh_omega") {
  const GrowthFunction ident = *lookup_growth_function("ident");
  CHECK(derive_hprime(ident).eval(2) == 46);  // h*(23) = 2*23
  const GrowthFunction sq = *lookup_growth_function("square");
  CHECK(derive_hprime(sq).eval(1) == 12);  // h*(3) = 3 + 9
  for (const char* name : {"ident", "succ", "square"}) {
    const GrowthFunction h = *lookup_growth_function(name);
    const GrowthFunction hp = derive_hprime(h);
    for (Nat n : {Nat(1), Nat(2), Nat(3)}) {
      if (n == 3) continue;  // fgh_omega(3) refuses by design
      CHECK(hp.eval(n) > h.eval(n));
    }
  }
}

TEST_CASE("domination windows: witness and failure reporting") {
  const GrowthFunction exp2 = *lookup_growth_function("pow2");
  const GrowthFunction sq = *lookup_growth_function("square");
  const DominationReport a = dominates_on_window(exp2, sq, 0, 64);
  REQUIRE(a.witness.has_value());
  CHECK(*a.witness == 4);
  CHECK(a.failures == std::vector<Nat>{3});

  const DominationReport b = dominates_on_window(sq, sq, 0, 32);
  REQUIRE(b.witness.has_value());
  CHECK(*b.witness == 0);
  CHECK(b.failures.empty());

  const GrowthFunction ident = *lookup_growth_function("ident");
  const GrowthFunction succ = *lookup_growth_function("succ");
  const DominationReport c = dominates_on_window(ident, succ, 0, 100);
  CHECK_FALSE(c.witness.has_value());
  CHECK(c.failures.size() == 101);
}

TEST_CASE("g on the nearly trivial machines is 0") {
  CHECK(g_of_machine(factory::make_constant_zero()) == Nat(0));
  // Identity outputs x; at x = 0 the output 0 < 2^0 already.
  CHECK(g_of_machine(factory::make_identity()) == Nat(0));
  CHECK(g_of_machine(factory::make_trivial()) == Nat(0));
}

TEST_CASE("toy family: g equals the threshold plus one on every path") {
  factory::Registry registry;
  std::vector<factory::QuasiTrivialSpec> specs;
  for (Nat n = 0; n <= 4; ++n) {
    specs.push_back(factory::make_quasi_trivial_spec(toy_h(), toy_payload(), n));
  }
  const auto machines = factory::register_family(registry, specs);

  for (std::size_t i = 0; i < machines.size(); ++i) {
    const Nat expected = toy_h().eval(Nat(i)) + 1;  // H(n) + 1
    // Structural path.
    CHECK(g_at_index(machines[i].index, registry) == expected);
    // Semantic mu-search (strip the quasi-trivial tag to force it).
    factory::CertifiedMachine semantic = machines[i];
    semantic.kind = "plain";
    semantic.table.reset();
    CHECK(g_of_machine(semantic) == expected);
  }
  // Compiled-table mu-search for the members that tabulate.
  for (std::size_t i = 0; i <= 1; ++i) {
    factory::CertifiedMachine compiled = machines[i];
    REQUIRE(compiled.table.has_value());
    compiled.kind = "plain";
    compiled.semantic.reset();
    CHECK(g_of_machine(compiled) == toy_h().eval(Nat(i)) + 1);
  }
  // Unregistered indexes score 0.
  CHECK(g_at_index(4, registry) == Nat(0));
  CHECK(g_at_index(1000000, registry) == Nat(0));
}

TEST_CASE("g* follows the supplied enumeration, not index arithmetic") {
  factory::Registry registry;
  const auto machines = factory::register_family(
      registry,
      {factory::make_quasi_trivial_spec(toy_h(), toy_payload(), 0)});
  std::vector<factory::CertifiedMachine> enumeration{
      factory::make_constant_zero(), factory::make_identity(), machines[0]};
  CHECK(g_star(enumeration, 0) == Nat(0));
  CHECK(g_star(enumeration, 2) == Nat(9));  // H(0) + 1
  std::swap(enumeration[0], enumeration[2]);
  CHECK(g_star(enumeration, 0) == Nat(9));
  CHECK(g_star(enumeration, 2) == Nat(0));
  CHECK_THROWS_AS((void)g_star(enumeration, 3), ValidationError);
}

TEST_CASE("counterexample family: identity, refusals, and the witness") {
  for (const char* name : {"succ", "square"}) {
    CAPTURE(name);
    const GrowthFunction h = *lookup_growth_function(name);
    factory::Registry registry;
    const CounterexampleFamily family =
        build_counterexample_family(h, 0, 3, registry);
    REQUIRE(family.rows.size() == 4);

    // n = 0, 1, 2 build; g(N(n)) = h'(n) + 1 exactly at each.
    const GrowthFunction hp = derive_hprime(h);
    for (std::size_t n = 0; n <= 2; ++n) {
      const CounterexampleRow& row = family.rows[n];
      REQUIRE(row.built);
      CHECK(row.g_value == hp.eval(Nat(n)) + 1);
      CHECK(row.g_value == row.h_prime_n + 1);
      CHECK(row.index == codec::ell_index(Nat(n), 0));
    }
    // n = 3 needs fgh_omega(3), which exceeds any ceiling: explicit refusal.
    CHECK_FALSE(family.rows[3].built);
    CHECK_FALSE(family.rows[3].refusal.empty());

    // The family overtakes h at n = 2, where fgh_omega clears the index
    // law; at n = 0, 1 the indexes are still ahead. The report records
    // exactly that window.
    CHECK_FALSE(family.rows[0].g_exceeds_h);
    CHECK_FALSE(family.rows[1].g_exceeds_h);
    CHECK(family.rows[2].g_exceeds_h);
    CHECK(family.rows[2].g_exceeds_h_star);
    REQUIRE(family.g_vs_h.witness.has_value());
    CHECK(*family.g_vs_h.witness == 2);
  }
}

TEST_CASE("counterexample values, worked by hand for h = succ") {
  const GrowthFunction h = *lookup_growth_function("succ");
  factory::Registry registry;
  const CounterexampleFamily family =
      build_counterexample_family(h, 0, 2, registry);
  // h*(n) = 2n + 1, fgh_omega = 1, 3, 23 -> h' = 3, 7, 47.
  CHECK(family.rows[0].h_prime_n == 3);
  CHECK(family.rows[1].h_prime_n == 7);
  CHECK(family.rows[2].h_prime_n == 47);
  CHECK(family.rows[0].g_value == 4);
  CHECK(family.rows[1].g_value == 8);
  CHECK(family.rows[2].g_value == 48);
  // Indexes 5, 9, 13; h(N(2)) = 14 < 48.
  CHECK(family.rows[2].index == 13);
  CHECK(family.rows[2].h_at_index == 14);
}
