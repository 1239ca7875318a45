#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "overtake/codec.hpp"
#include "overtake/machine.hpp"
#include "overtake/table_io.hpp"

using namespace overtake;

namespace {

// Deterministic pseudo-random valid tables; plain modulo keeps the values
// identical across standard libraries.
MachineTable random_table(std::mt19937_64& rng) {
  MachineTable t;
  t.n_states = 2 + static_cast<std::uint32_t>(rng() % 4);
  constexpr Sym kSyms[] = {Sym::Zero, Sym::One, Sym::Blank};
  constexpr Dir kDirs[] = {Dir::Left, Dir::Right, Dir::Stay};
  for (std::uint32_t s = 1; s < t.n_states; ++s) {
    for (Sym scanned : kSyms) {
      if (rng() % 4 == 0) continue;  // leave some pairs undefined
      t.lines.push_back({s, scanned, kSyms[rng() % 3], kDirs[rng() % 3],
                         static_cast<std::uint32_t>(rng() % t.n_states)});
    }
  }
  return t;
}

Word random_word(std::mt19937_64& rng, std::size_t max_len) {
  const std::size_t len = rng() % (max_len + 1);
  std::string bits;
  for (std::size_t i = 0; i < len; ++i) {
    bits.push_back(rng() % 2 ? '1' : '0');
  }
  return Word::from_bits(std::move(bits));
}

}  // namespace

TEST_CASE("the empty table is the identity machine") {
  for (Nat i = 0; i < (Nat(1) << 13); ++i) {
    const Word w = codec::word_of_index(i);
    const RunOutcome out = run(MachineTable{}, w, 1);
    REQUIRE(out.halted());
    CHECK(*out.output == w);
    CHECK(out.steps_used == 0);
    CHECK(*out.op_time == w.size());
  }
}

TEST_CASE("zero budget exhausts immediately on any machine with states") {
  MachineTable t;
  t.n_states = 2;
  t.lines.push_back({1, Sym::Blank, Sym::One, Dir::Right, 0});
  const RunOutcome out = run(t, Word::from_bits("01"), 0);
  CHECK(out.status == RunOutcome::Status::BudgetExhausted);
  CHECK(out.steps_used == 0);
}

TEST_CASE("read_output takes the block under the head") {
  Tape tape;
  tape.set(0, Sym::One);
  tape.set(1, Sym::Zero);
  tape.set(2, Sym::One);
  CHECK(read_output(tape, 1).bits() == "101");
  CHECK(read_output(tape, 5).bits() == "");  // head on a blank square
  Tape gaps;
  gaps.set(0, Sym::One);
  gaps.set(2, Sym::One);
  CHECK(read_output(gaps, 0).bits() == "1");  // the gap bounds the block
}

TEST_CASE("halted runs satisfy op_time - steps == |input|") {
  // A machine that walks to the end of the input and halts there.
  MachineTable t;
  t.n_states = 2;
  t.lines.push_back({1, Sym::Zero, Sym::Zero, Dir::Right, 1});
  t.lines.push_back({1, Sym::One, Sym::One, Dir::Right, 1});
  t.lines.push_back({1, Sym::Blank, Sym::Blank, Dir::Left, 0});
  for (const char* input : {"", "1", "0110", "111000111"}) {
    const Word w = Word::from_bits(input);
    const RunOutcome out = run(t, w, 100);
    REQUIRE(out.halted());
    CHECK(*out.op_time - out.steps_used == w.size());
  }
}

TEST_CASE("a blocked configuration is reported as a detected loop") {
  MachineTable t;
  t.n_states = 3;  // line only for (1, blank); any input symbol blocks it
  t.lines.push_back({1, Sym::Blank, Sym::Blank, Dir::Stay, 2});
  const RunOutcome out = run(t, Word::from_bits("1"), 50);
  CHECK(out.status == RunOutcome::Status::LoopDetected);
}

TEST_CASE("an oscillating machine is caught by loop detection") {
  MachineTable t;
  t.n_states = 3;
  t.lines.push_back({1, Sym::Blank, Sym::Blank, Dir::Right, 2});
  t.lines.push_back({2, Sym::Blank, Sym::Blank, Dir::Left, 1});
  const RunOutcome out = run(t, Word{}, 1000);
  CHECK(out.status == RunOutcome::Status::LoopDetected);
  CHECK(out.steps_used < 10);
}

TEST_CASE("a shifted repeat is also a certain loop") {
  // Runs right forever over blanks without writing.
  MachineTable t;
  t.n_states = 2;
  t.lines.push_back({1, Sym::Blank, Sym::Blank, Dir::Right, 1});
  const RunOutcome out = run(t, Word{}, 1000);
  CHECK(out.status == RunOutcome::Status::LoopDetected);
}

TEST_CASE("budget exhaustion is reported when no loop is provable") {
  // Writes 1s forever rightward; the written span grows every step.
  MachineTable t;
  t.n_states = 2;
  t.lines.push_back({1, Sym::Blank, Sym::One, Dir::Right, 1});
  const RunOutcome out = run(t, Word{}, 500);
  CHECK(out.status == RunOutcome::Status::BudgetExhausted);
  CHECK(out.steps_used == 500);
}

TEST_CASE("validation reports the spec'd violations") {
  CHECK(validate(MachineTable{}).empty());
  MachineTable nondet;
  nondet.n_states = 2;
  nondet.lines.push_back({1, Sym::Zero, Sym::One, Dir::Left, 0});
  nondet.lines.push_back({1, Sym::Zero, Sym::Zero, Dir::Right, 0});
  CHECK(validate(nondet).size() == 1);
  MachineTable dangling;
  dangling.n_states = 2;
  dangling.lines.push_back({1, Sym::Zero, Sym::One, Dir::Left, 5});
  CHECK(validate(dangling).size() == 1);
  MachineTable zero;
  zero.lines.push_back({1, Sym::Zero, Sym::One, Dir::Left, 0});
  zero.n_states = 0;
  CHECK_FALSE(validate(zero).empty());
}

TEST_CASE("permutation: identity, inverse, and behavior invariance") {
  std::mt19937_64 rng(20240711);
  const MachineTable t = random_table(rng);
  std::vector<std::size_t> identity(t.lines.size());
  for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = i;
  CHECK(permute(t, identity) == t);

  std::vector<std::size_t> perm = identity;
  for (std::size_t i = perm.size(); i > 1; --i) {
    std::swap(perm[i - 1], perm[rng() % i]);
  }
  std::vector<std::size_t> inverse(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inverse[perm[i]] = i;
  CHECK(permute(permute(t, perm), inverse) == t);

  std::vector<std::size_t> bad(perm.size(), 0);
  if (bad.size() >= 2) CHECK_THROWS_AS(permute(t, bad), ValidationError);
}

TEST_CASE("100 random tables behave identically under line permutation") {
  std::mt19937_64 rng(987654321);
  for (int trial = 0; trial < 100; ++trial) {
    const MachineTable t = random_table(rng);
    std::vector<std::size_t> perm(t.lines.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    for (std::size_t i = perm.size(); i > 1; --i) {
      std::swap(perm[i - 1], perm[rng() % i]);
    }
    const MachineTable p = permute(t, perm);
    for (int w = 0; w < 20; ++w) {
      const Word input = random_word(rng, 8);
      const RunOutcome a = run(t, input, 10000);
      const RunOutcome b = run(p, input, 10000);
      CHECK(a.status == b.status);
      CHECK(a.output == b.output);
      CHECK(a.steps_used == b.steps_used);
    }
  }
}

TEST_CASE("text format round-trips bit-exact") {
  std::mt19937_64 rng(5550123);
  for (int trial = 0; trial < 50; ++trial) {
    MachineTable t = random_table(rng);
    // Normalize to inferred state count, the form the law is stated for.
    std::uint32_t max_state = 0;
    for (const Instruction& i : t.lines) {
      max_state = std::max({max_state, i.state, i.next});
    }
    t.n_states = t.lines.empty() ? 0 : max_state + 1;
    const std::string text = print_table(t);
    CHECK(parse_table(text) == t);
    CHECK(print_table(parse_table(text)) == text);
  }
  // Comments and the halt state are understood.
  const MachineTable parsed = parse_table(
      "# walks right once\n"
      "1 _ -> 1 R 0  # then halts\n");
  CHECK(parsed.n_states == 2);
  REQUIRE(parsed.lines.size() == 1);
  CHECK(parsed.lines[0].next == 0);
  CHECK_THROWS_AS(parse_table("1 0 -> nope"), ValidationError);
}

TEST_CASE("binary serialization round-trips and rejects junk") {
  std::mt19937_64 rng(424242);
  CHECK(serialize_table(MachineTable{}).empty());
  CHECK(parse_table_word(Word{}).value() == MachineTable{});
  for (int trial = 0; trial < 50; ++trial) {
    const MachineTable t = random_table(rng);
    const auto back = parse_table_word(serialize_table(t));
    REQUIRE(back.has_value());
    CHECK(*back == t);
  }
  int junk = 0;
  for (Nat i = 1; i < 200; ++i) {
    if (!parse_table_word(codec::word_of_index(i))) ++junk;
  }
  CHECK(junk > 150);  // almost every short word is not a table
}

TEST_CASE("runs are reproducible byte for byte") {
  std::mt19937_64 rng(1);
  const MachineTable t = random_table(rng);
  const Word input = Word::from_bits("0101");
  const RunOutcome a = run(t, input, 5000);
  const RunOutcome b = run(t, input, 5000);
  CHECK(a.status == b.status);
  CHECK(a.output == b.output);
  CHECK(a.steps_used == b.steps_used);
  CHECK(a.op_time == b.op_time);
}
