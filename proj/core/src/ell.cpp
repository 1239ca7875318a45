#include "overtake/ell.hpp"

#include <boost/multiprecision/integer.hpp>

#include "overtake/codec.hpp"
#include "overtake/reg_compile.hpp"
#include "overtake/table_io.hpp"

namespace overtake::ell {

RunOutcome run_labeled(const LabeledMachine& machine, const Word& input,
                       std::uint64_t budget, const RunOptions& options) {
  return run_two_tape(machine.base, input, codec::word_of_index(machine.parameter),
                      budget, options);
}

Nat pairing(const Nat& n, const Nat& x) {
  const Nat s = n + x;
  return s * (s + 1) / 2 + x;
}

std::pair<Nat, Nat> unpair(const Nat& z) {
  // Anti-diagonal s is floor((sqrt(8z + 1) - 1) / 2).
  const Nat radicand = 8 * z + 1;
  const Nat root = boost::multiprecision::sqrt(radicand);
  Nat s = (root - 1) / 2;
  while (s * (s + 1) / 2 > z) --s;
  while ((s + 1) * (s + 2) / 2 <= z) ++s;
  const Nat x = z - s * (s + 1) / 2;
  return {s - x, x};
}

MachineTable make_constant(const Nat& n) {
  const Word target = codec::word_of_index(n);
  const std::size_t len = target.size();
  MachineTable t;
  // State 1 erases the input rightward; the blank transition starts the
  // right-to-left writer chain.
  t.n_states = static_cast<std::uint32_t>(len == 0 ? 2 : len + 1);
  t.lines.push_back({1, Sym::Zero, Sym::Blank, Dir::Right, 1});
  t.lines.push_back({1, Sym::One, Sym::Blank, Dir::Right, 1});
  if (len == 0) {
    t.lines.push_back({1, Sym::Blank, Sym::Blank, Dir::Stay, 0});
    return t;
  }
  const auto bit = [&](std::size_t i) {
    return target.at(i) == '1' ? Sym::One : Sym::Zero;
  };
  if (len == 1) {
    t.lines.push_back({1, Sym::Blank, bit(0), Dir::Stay, 0});
    return t;
  }
  // Writer states 2..len write bits len-2 .. 0 walking left.
  t.lines.push_back({1, Sym::Blank, bit(len - 1), Dir::Left, 2});
  for (std::size_t j = 0; j + 2 < len; ++j) {
    const auto st = static_cast<std::uint32_t>(2 + j);
    t.lines.push_back({st, Sym::Blank, bit(len - 2 - j), Dir::Left, st + 1});
  }
  t.lines.push_back({static_cast<std::uint32_t>(len), Sym::Blank, bit(0),
                     Dir::Stay, 0});
  return t;
}

MachineTable compose(const MachineTable& first, const MachineTable& second) {
  for (const auto* t : {&first, &second}) {
    auto violations = validate(*t);
    if (!violations.empty()) {
      throw ValidationError("compose: invalid stage: " + violations.front());
    }
  }
  // State layout: first's acting states keep their ids (a lineless state 1
  // is reserved for degenerate one-state stages, which never halt), then
  // the two cleanup states, then second's acting states.
  const std::uint32_t a_region =
      first.n_states >= 2 ? first.n_states : (first.n_states == 1 ? 2u : 1u);
  const std::uint32_t c1 = a_region;
  const std::uint32_t c2 = a_region + 1;
  const std::uint32_t b_offset = a_region + 1;  // maps second's state 1 upward
  std::uint32_t b_entry;
  std::uint32_t max_state = c2;
  if (second.n_states == 0) {
    b_entry = 0;
  } else {
    b_entry = b_offset + 1;
    max_state = std::max(max_state,
                         second.n_states >= 2 ? b_offset + second.n_states - 1
                                              : b_entry);
  }

  MachineTable out;
  out.n_states = max_state + 1;
  for (const Instruction& i : first.lines) {
    Instruction copy = i;
    if (copy.next == 0) copy.next = c1;
    out.lines.push_back(copy);
  }
  // Cleanup: walk to the left end of the output block (or stay put on a
  // blank cell) before handing the tape to the second stage.
  out.lines.push_back({c1, Sym::Blank, Sym::Blank, Dir::Stay, b_entry});
  out.lines.push_back({c1, Sym::Zero, Sym::Zero, Dir::Left, c2});
  out.lines.push_back({c1, Sym::One, Sym::One, Dir::Left, c2});
  out.lines.push_back({c2, Sym::Zero, Sym::Zero, Dir::Left, c2});
  out.lines.push_back({c2, Sym::One, Sym::One, Dir::Left, c2});
  out.lines.push_back({c2, Sym::Blank, Sym::Blank, Dir::Right, b_entry});
  for (const Instruction& i : second.lines) {
    Instruction copy = i;
    copy.state += b_offset;
    if (copy.next != 0) copy.next += b_offset;
    out.lines.push_back(copy);
  }
  return out;
}

namespace {

// pairing(n, x) = (n+x)(n+x+1)/2 + x on registers:
//   r1 in/out, r2 keeps x, r3 the diagonal counter, r4 the accumulator.
regtm::RegProgram pairing_program(std::uint64_t n) {
  using P = regtm::RegProgram;
  P prog;
  prog.n_regs = 4;
  auto& ops = prog.ops;
  // copy x into r2 and r3
  const std::size_t after_copy = 5 + n;
  ops.push_back(P::jz(1, 5));
  ops.push_back(P::dec(1));
  ops.push_back(P::inc(2));
  ops.push_back(P::inc(3));
  ops.push_back(P::jmp(0));
  for (std::uint64_t i = 0; i < n; ++i) ops.push_back(P::inc(3));  // r3 = n+x
  const std::size_t base = after_copy;
  // triangle sum: r4 += i for i = r3 .. 1, shuttling through r1
  ops.push_back(P::jz(3, base + 11));  // base+0
  ops.push_back(P::jz(3, base + 6));   // base+1: inner transfer done
  ops.push_back(P::dec(3));
  ops.push_back(P::inc(4));
  ops.push_back(P::inc(1));
  ops.push_back(P::jmp(base + 1));
  ops.push_back(P::dec(1));            // base+6: i - 1
  ops.push_back(P::jz(1, base + 0));   // base+7: move back to r3
  ops.push_back(P::dec(1));
  ops.push_back(P::inc(3));
  ops.push_back(P::jmp(base + 7));
  ops.push_back(P::jz(4, base + 15));  // base+11: r1 = r4 + r2
  ops.push_back(P::dec(4));
  ops.push_back(P::inc(1));
  ops.push_back(P::jmp(base + 11));
  ops.push_back(P::jz(2, base + 19));  // base+15
  ops.push_back(P::dec(2));
  ops.push_back(P::inc(1));
  ops.push_back(P::jmp(base + 15));
  ops.push_back(P::halt());            // base+19
  return prog;
}

// Peel anti-diagonals: while z >= s+1, subtract s+1 and grow s. When the
// subtraction runs dry at leftover L, the offset on the last diagonal is
// x = (s+1) - L, so z never needs a backup copy. `first` selects n = s - x.
// Registers: r1 = z, r2 = s, r3 = layer countdown, r4 = shuttle.
regtm::RegProgram unpair_program(bool first) {
  using P = regtm::RegProgram;
  P prog;
  prog.n_regs = 4;
  auto& ops = prog.ops;
  ops.push_back(P::jz(2, 5));   // 0: copy s into r3 via r4
  ops.push_back(P::dec(2));
  ops.push_back(P::inc(3));
  ops.push_back(P::inc(4));
  ops.push_back(P::jmp(0));
  ops.push_back(P::jz(4, 9));   // 5: restore r2 from r4
  ops.push_back(P::dec(4));
  ops.push_back(P::inc(2));
  ops.push_back(P::jmp(5));
  ops.push_back(P::inc(3));     // 9: r3 = s + 1
  ops.push_back(P::jz(3, 15));  // 10: layer fully subtracted
  ops.push_back(P::jz(1, 17));  // 11: z ran out mid-layer
  ops.push_back(P::dec(3));
  ops.push_back(P::dec(1));
  ops.push_back(P::jmp(10));
  ops.push_back(P::inc(2));     // 15: s += 1
  ops.push_back(P::jmp(0));
  ops.push_back(P::jz(2, 22));  // 17: copy s into r1, keeping s in r2
  ops.push_back(P::dec(2));
  ops.push_back(P::inc(1));
  ops.push_back(P::inc(4));
  ops.push_back(P::jmp(17));
  ops.push_back(P::jz(4, 26));  // 22
  ops.push_back(P::dec(4));
  ops.push_back(P::inc(2));
  ops.push_back(P::jmp(22));
  ops.push_back(P::inc(1));     // 26: r1 = s + 1
  ops.push_back(P::jz(3, 31));  // 27: r1 -= leftover, giving x
  ops.push_back(P::dec(3));
  ops.push_back(P::dec(1));
  ops.push_back(P::jmp(27));
  if (first) {
    ops.push_back(P::jz(1, 35));  // 31: r2 -= x
    ops.push_back(P::dec(1));
    ops.push_back(P::dec(2));
    ops.push_back(P::jmp(31));
    ops.push_back(P::jz(2, 39));  // 35: r1 = r2 (= n)
    ops.push_back(P::dec(2));
    ops.push_back(P::inc(1));
    ops.push_back(P::jmp(35));
  }
  ops.push_back(P::halt());
  return prog;
}

}  // namespace

MachineTable pairing_stage(const Nat& n) {
  if (n > Nat(1 << 16)) {
    throw Refusal("pairing_stage: parameter too large to unroll");
  }
  return regtm::compile(pairing_program(n.convert_to<std::uint64_t>()));
}

MachineTable unpair_first_table() {
  static const MachineTable t = regtm::compile(unpair_program(true));
  return t;
}

MachineTable unpair_second_table() {
  static const MachineTable t = regtm::compile(unpair_program(false));
  return t;
}

MachineTable emulate_ell(const MachineTable& base, const Nat& n) {
  return compose(pairing_stage(n), base);
}

Nat composition_index(const MachineTable& base, const Nat& n) {
  return codec::index_of_word(serialize_table(emulate_ell(base, n)));
}

MachineTable2 make_param_copier() {
  MachineTable2 t;
  t.n_states = 7;
  const std::uint32_t s1 = 1, s1c = 2, s2 = 3, s2e = 4, s3 = 5, s4 = 6;
  constexpr Sym kAll[] = {Sym::Zero, Sym::One, Sym::Blank};
  constexpr Sym kBits[] = {Sym::Zero, Sym::One};
  // Copy tape 2 over tape 1 while the parameter lasts.
  for (std::uint32_t st : {s1, s1c}) {
    for (Sym t1 : kAll) {
      for (Sym p : kBits) {
        t.lines.push_back({st, t1, p, p, p, Dir::Right, Dir::Right, s1c});
      }
    }
  }
  // Parameter exhausted before anything was copied: the parameter is the
  // empty word, so erase the input and halt on a blank.
  for (Sym t1 : kBits) {
    t.lines.push_back({s1, t1, Sym::Blank, Sym::Blank, Sym::Blank, Dir::Right,
                       Dir::Stay, s2e});
  }
  t.lines.push_back({s1, Sym::Blank, Sym::Blank, Sym::Blank, Sym::Blank,
                     Dir::Stay, Dir::Stay, 0});
  // Parameter exhausted after copying: erase leftover input, then park.
  for (Sym t1 : kBits) {
    t.lines.push_back({s1c, t1, Sym::Blank, Sym::Blank, Sym::Blank, Dir::Right,
                       Dir::Stay, s2});
  }
  t.lines.push_back({s1c, Sym::Blank, Sym::Blank, Sym::Blank, Sym::Blank,
                     Dir::Left, Dir::Stay, s3});
  for (Sym p : kAll) {
    for (Sym t1 : kBits) {
      t.lines.push_back(
          {s2, t1, p, Sym::Blank, p, Dir::Right, Dir::Stay, s2});
      t.lines.push_back(
          {s2e, t1, p, Sym::Blank, p, Dir::Right, Dir::Stay, s2e});
      t.lines.push_back({s4, t1, p, t1, p, Dir::Left, Dir::Stay, s4});
      t.lines.push_back({s3, t1, p, t1, p, Dir::Left, Dir::Stay, s4});
    }
    t.lines.push_back(
        {s2, Sym::Blank, p, Sym::Blank, p, Dir::Left, Dir::Stay, s3});
    t.lines.push_back(
        {s2e, Sym::Blank, p, Sym::Blank, p, Dir::Stay, Dir::Stay, 0});
    t.lines.push_back(
        {s3, Sym::Blank, p, Sym::Blank, p, Dir::Left, Dir::Stay, s3});
    t.lines.push_back(
        {s4, Sym::Blank, p, Sym::Blank, p, Dir::Right, Dir::Stay, 0});
  }
  return t;
}

}  // namespace overtake::ell
