#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "overtake/codec.hpp"
#include "overtake/ell.hpp"
#include "overtake/machine.hpp"
#include "overtake/reg_compile.hpp"
#include "overtake/two_tape.hpp"

using namespace overtake;
using codec::index_of_word;
using codec::word_of_index;

namespace {

constexpr std::uint64_t kBudget = 1 << 23;

Nat run_value(const MachineTable& t, const Nat& x,
              std::uint64_t budget = kBudget) {
  const RunOutcome out = run(t, word_of_index(x), budget);
  REQUIRE(out.halted());
  return index_of_word(*out.output);
}

}  // namespace

TEST_CASE("cantor pairing is a bijection with the expected anti-diagonals") {
  CHECK(ell::pairing(0, 0) == 0);
  CHECK(ell::pairing(1, 0) == 1);
  CHECK(ell::pairing(0, 1) == 2);
  // Enumerating anti-diagonals gives the same order.
  Nat expected = 0;
  for (Nat s = 0; s < 20; ++s) {
    for (Nat x = 0; x <= s; ++x) {
      CHECK(ell::pairing(s - x, x) == expected);
      ++expected;
    }
  }
  for (Nat n = 0; n < 100; ++n) {
    for (Nat x = 0; x < 100; ++x) {
      CHECK(ell::unpair(ell::pairing(n, x)) == std::pair<Nat, Nat>(n, x));
    }
  }
}

TEST_CASE("labeled machine with the trivial base is the identity") {
  const ell::LabeledMachine trivial{0, MachineTable2{}};
  for (const char* bits : {"", "1", "0101"}) {
    const Word w = Word::from_bits(bits);
    const RunOutcome out = ell::run_labeled(trivial, w, 1);
    REQUIRE(out.halted());
    CHECK(*out.output == w);
  }
}

TEST_CASE("a lifted one-tape table ignores the parameter") {
  // Flip the first symbol and halt.
  MachineTable flip;
  flip.n_states = 2;
  flip.lines.push_back({1, Sym::Zero, Sym::One, Dir::Stay, 0});
  flip.lines.push_back({1, Sym::One, Sym::Zero, Dir::Stay, 0});
  flip.lines.push_back({1, Sym::Blank, Sym::Blank, Dir::Stay, 0});
  const MachineTable2 lifted = lift_to_two_tape(flip);
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    std::string bits;
    for (std::size_t i = 0, len = rng() % 7; i < len; ++i) {
      bits.push_back(rng() % 2 ? '1' : '0');
    }
    const Word w = Word::from_bits(bits);
    const RunOutcome direct = run(flip, w, 1000);
    for (Nat param : {Nat(0), Nat(7), Nat(100)}) {
      const RunOutcome labeled =
          ell::run_labeled(ell::LabeledMachine{param, lifted}, w, 1000);
      CHECK(direct.status == labeled.status);
      CHECK(direct.output == labeled.output);
    }
  }
}

TEST_CASE("the parameter copier outputs the canonical word of n") {
  const MachineTable2 copier = ell::make_param_copier();
  for (Nat n : {Nat(0), Nat(1), Nat(5), Nat(12), Nat(100)}) {
    for (const char* bits : {"", "1", "000111"}) {
      const RunOutcome out = ell::run_labeled(
          ell::LabeledMachine{n, copier}, Word::from_bits(bits), 1000);
      REQUIRE(out.halted());
      CHECK(*out.output == word_of_index(n));
    }
  }
}

TEST_CASE("make_constant prints n over any input in linear time") {
  for (Nat n : {Nat(0), Nat(5), Nat(12), Nat(300)}) {
    const MachineTable t = ell::make_constant(n);
    CHECK(validate(t).empty());
    for (const char* bits : {"", "1101", "000000000"}) {
      const Word input = Word::from_bits(bits);
      const RunOutcome out = run(t, input, 10000);
      REQUIRE(out.halted());
      CHECK(index_of_word(*out.output) == n);
      // Erase pass plus writer chain: measured linear bound.
      CHECK(*out.op_time <=
            2 * input.size() + word_of_index(n).size() + 2);
    }
  }
}

TEST_CASE("compose: identities, constants, and associativity") {
  const MachineTable empty;
  const MachineTable c3 = ell::make_constant(3);
  const MachineTable c8 = ell::make_constant(8);

  for (Nat x : {Nat(0), Nat(6), Nat(31)}) {
    CHECK(run_value(ell::compose(empty, c3), x) == 3);
    CHECK(run_value(ell::compose(c3, empty), x) == 3);
    CHECK(run_value(ell::compose(c3, c8), x) == 8);
  }

  // Behavior-level associativity on sampled inputs.
  const MachineTable inc = regtm::compile([] {
    regtm::RegProgram p;
    p.n_regs = 1;
    p.ops.push_back(regtm::RegProgram::inc(1));
    p.ops.push_back(regtm::RegProgram::halt());
    return p;
  }());
  const MachineTable left = ell::compose(ell::compose(inc, inc), c3);
  const MachineTable right = ell::compose(inc, ell::compose(inc, c3));
  for (Nat x : {Nat(0), Nat(9)}) {
    CHECK(run_value(left, x) == run_value(right, x));
  }
  const MachineTable twice_l = ell::compose(ell::compose(inc, inc), inc);
  const MachineTable twice_r = ell::compose(inc, ell::compose(inc, inc));
  for (Nat x : {Nat(0), Nat(4), Nat(17)}) {
    CHECK(run_value(twice_l, x) == x + 3);
    CHECK(run_value(twice_r, x) == x + 3);
  }
}

TEST_CASE("compiled register programs agree with the interpreter") {
  using P = regtm::RegProgram;
  P add2;  // r1 += 2 via a worker register
  add2.n_regs = 2;
  add2.ops = {P::inc(2), P::inc(2), P::jz(2, 6), P::dec(2), P::inc(1),
              P::jmp(2), P::halt()};
  const MachineTable t = regtm::compile(add2);
  CHECK(validate(t).empty());
  for (Nat x = 0; x < 24; ++x) {
    CHECK(run_value(t, x) == *regtm::interpret(add2, x, 1 << 20));
    CHECK(run_value(t, x) == x + 2);
  }
}

TEST_CASE("the compiled pairing stage computes pairing(n, .)") {
  for (Nat n = 0; n < 8; ++n) {
    const MachineTable stage = ell::pairing_stage(n);
    CHECK(validate(stage).empty());
    for (Nat x = 0; x < 8; ++x) {
      CHECK(run_value(stage, x) == ell::pairing(n, x));
    }
  }
}

TEST_CASE("the compiled unpairing projections invert the pairing") {
  const MachineTable fst = ell::unpair_first_table();
  const MachineTable snd = ell::unpair_second_table();
  for (Nat z = 0; z < 40; ++z) {
    const auto [n, x] = ell::unpair(z);
    CHECK(run_value(fst, z) == n);
    CHECK(run_value(snd, z) == x);
  }
}

TEST_CASE("emulation: <n, base> realized as a one-tape machine") {
  const MachineTable echo_x = ell::unpair_second_table();
  const MachineTable echo_n = ell::unpair_first_table();
  for (Nat n = 0; n < 10; ++n) {
    const MachineTable via_x = ell::emulate_ell(echo_x, n);
    for (Nat x = 0; x < 10; ++x) {
      CHECK(run_value(via_x, x) == x);
    }
  }
  const MachineTable via_n = ell::emulate_ell(echo_n, 4);
  for (Nat x = 0; x < 10; ++x) {
    CHECK(run_value(via_n, x) == 4);
  }
}

TEST_CASE("composition index is computable from the parts") {
  const MachineTable base = ell::unpair_second_table();
  const Nat a = ell::composition_index(base, 3);
  const Nat b = ell::composition_index(base, 3);
  CHECK(a == b);
  CHECK(a > 0);
  CHECK(ell::composition_index(base, 4) != a);
}
