#include "overtake/reg_compile.hpp"

#include <map>
#include <stdexcept>

namespace overtake::regtm {

std::optional<Nat> interpret(const RegProgram& program, const Nat& input,
                             std::uint64_t max_ops) {
  std::vector<Nat> regs(static_cast<std::size_t>(program.n_regs) + 1, 0);
  regs[1] = input;
  std::size_t pc = 0;
  for (std::uint64_t executed = 0; executed < max_ops; ++executed) {
    if (pc >= program.ops.size()) {
      throw ValidationError("interpret: program counter out of range");
    }
    const RegOp& op = program.ops[pc];
    switch (op.kind) {
      case RegOp::Kind::Inc:
        regs[static_cast<std::size_t>(op.reg)] += 1;
        ++pc;
        break;
      case RegOp::Kind::Dec: {
        Nat& r = regs[static_cast<std::size_t>(op.reg)];
        if (r > 0) r -= 1;
        ++pc;
        break;
      }
      case RegOp::Kind::Jz:
        pc = regs[static_cast<std::size_t>(op.reg)] == 0 ? op.target : pc + 1;
        break;
      case RegOp::Kind::Jmp:
        pc = op.target;
        break;
      case RegOp::Kind::Halt:
        return regs[1];
    }
  }
  return std::nullopt;
}

namespace {

// Tape layout during program execution:
//
//   [output word] _ F0 pool1 F1 pool2 F2 ... poolR FR
//
// Fences are single '0' cells; pools hold unary tokens ('1') and blank
// holes left by Dec. The input word is consumed into pool 1 before the
// first op runs. Every op block starts and ends with the head on F0.
class Compiler {
 public:
  explicit Compiler(const RegProgram& program) : prog_(program) {
    if (prog_.n_regs < 1 || prog_.n_regs > 16) {
      throw ValidationError("compile: register count out of range");
    }
    for (const RegOp& op : prog_.ops) {
      if ((op.kind == RegOp::Kind::Inc || op.kind == RegOp::Kind::Dec ||
           op.kind == RegOp::Kind::Jz) &&
          (op.reg < 1 || op.reg > prog_.n_regs)) {
        throw ValidationError("compile: register out of range");
      }
      if ((op.kind == RegOp::Kind::Jz || op.kind == RegOp::Kind::Jmp) &&
          op.target > prog_.ops.size()) {
        throw ValidationError("compile: jump target out of range");
      }
    }
    if (prog_.ops.empty() || prog_.ops.back().kind != RegOp::Kind::Halt) {
      throw ValidationError("compile: program must end with Halt");
    }
  }

  MachineTable build() {
    const std::uint32_t start = fresh();  // sk0, machine start state
    emit_input_adapter(start);

    entries_.reserve(prog_.ops.size());
    for (std::size_t i = 0; i < prog_.ops.size(); ++i) {
      entries_.push_back(fresh());
    }
    adapter_entry_ = fresh();
    // A Jz/Jmp target equal to ops.size() falls through to the halt adapter.
    entries_.push_back(adapter_entry_);

    for (std::size_t i = 0; i < prog_.ops.size(); ++i) {
      emit_op(i);
    }
    emit_output_adapter();

    table_.n_states = next_state_;
    return table_;
  }

 private:
  static constexpr Sym k0 = Sym::Zero;
  static constexpr Sym k1 = Sym::One;
  static constexpr Sym kB = Sym::Blank;

  std::uint32_t fresh() { return next_state_++; }

  void line(std::uint32_t st, Sym scanned, Sym write, Dir move,
            std::uint32_t next) {
    table_.lines.push_back({st, scanned, write, move, next});
  }

  int R() const { return prog_.n_regs; }

  // Walk left to F0, counting `count` fences, then take a Stay step on F0
  // into `cont`. Caller guarantees exactly `count` fences lie at or left of
  // the head up to and including F0.
  std::uint32_t emit_walk_home(int count, std::uint32_t cont) {
    std::uint32_t next_chain = cont;
    std::uint32_t state = 0;
    for (int j = 1; j <= count; ++j) {
      state = fresh();
      line(state, k1, k1, Dir::Left, state);
      line(state, kB, kB, Dir::Left, state);
      if (j == 1) {
        line(state, k0, k0, Dir::Stay, cont);
      } else {
        line(state, k0, k0, Dir::Left, next_chain);
      }
      next_chain = state;
    }
    return state;  // entry expects head anywhere in pool with `count` fences left
  }

  // Seek chain: from F0 (entry state reads '0', moves right) into the scan
  // state for pool r. Returns the entry state; scan_state receives control
  // while the head is inside pool r (possibly on F_r immediately).
  std::uint32_t emit_seek(int r, std::uint32_t entry, std::uint32_t scan_state) {
    std::uint32_t target = scan_state;
    for (int j = r - 1; j >= 1; --j) {
      const std::uint32_t sj = fresh();
      line(sj, k1, k1, Dir::Right, sj);
      line(sj, kB, kB, Dir::Right, sj);
      line(sj, k0, k0, Dir::Right, target);
      target = sj;
    }
    line(entry, k0, k0, Dir::Right, target);
    return entry;
  }

  // Shift the suffix starting at F_r one cell right to make room for a new
  // token; the freed cell gets the token. States are keyed by the carried
  // symbol and the number of fences still ahead on the tape.
  std::uint32_t shift_state(int fences_ahead, Sym carry,
                            std::map<std::pair<int, int>, std::uint32_t>& memo,
                            std::uint32_t wl_entry) {
    const auto key = std::make_pair(fences_ahead, static_cast<int>(carry));
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const std::uint32_t s = fresh();
    memo.emplace(key, s);
    if (fences_ahead == 0) {
      // carry must be the final fence; the next cell is virgin blank
      line(s, kB, k0, Dir::Left, wl_entry);
      return s;
    }
    line(s, k0, carry, Dir::Right,
         shift_state(fences_ahead - 1, k0, memo, wl_entry));
    line(s, k1, carry, Dir::Right, shift_state(fences_ahead, k1, memo, wl_entry));
    line(s, kB, carry, Dir::Right, shift_state(fences_ahead, kB, memo, wl_entry));
    return s;
  }

  void emit_inc(int r, std::uint32_t entry, std::uint32_t cont) {
    const std::uint32_t wl_r = emit_walk_home(r, cont);
    const std::uint32_t wl_R = emit_walk_home(R(), cont);
    const std::uint32_t scan = fresh();
    emit_seek(r, entry, scan);
    line(scan, kB, k1, Dir::Left, wl_r);  // fill a hole
    line(scan, k1, k1, Dir::Right, scan);
    std::map<std::pair<int, int>, std::uint32_t> memo;
    // Pool full: the fence cell becomes the token, the suffix shifts right.
    line(scan, k0, k1, Dir::Right, shift_state(R() - r, k0, memo, wl_R));
  }

  void emit_dec(int r, std::uint32_t entry, std::uint32_t cont) {
    const std::uint32_t wl_r = emit_walk_home(r, cont);
    const std::uint32_t scan = fresh();
    emit_seek(r, entry, scan);
    line(scan, k1, kB, Dir::Left, wl_r);  // consume a token
    line(scan, kB, kB, Dir::Right, scan);
    line(scan, k0, k0, Dir::Left, wl_r);  // empty register: no-op
  }

  void emit_jz(int r, std::uint32_t entry, std::uint32_t cont_nonzero,
               std::uint32_t cont_zero) {
    const std::uint32_t wl_nz = emit_walk_home(r, cont_nonzero);
    const std::uint32_t wl_z = emit_walk_home(r, cont_zero);
    const std::uint32_t scan = fresh();
    emit_seek(r, entry, scan);
    line(scan, k1, k1, Dir::Left, wl_nz);
    line(scan, kB, kB, Dir::Right, scan);
    line(scan, k0, k0, Dir::Left, wl_z);
  }

  void emit_op(std::size_t i) {
    const RegOp& op = prog_.ops[i];
    const std::uint32_t entry = entries_[i];
    const std::uint32_t next = entries_[i + 1];
    switch (op.kind) {
      case RegOp::Kind::Inc:
        emit_inc(op.reg, entry, next);
        break;
      case RegOp::Kind::Dec:
        emit_dec(op.reg, entry, next);
        break;
      case RegOp::Kind::Jz:
        emit_jz(op.reg, entry, next, entries_[op.target]);
        break;
      case RegOp::Kind::Jmp:
        line(entry, k0, k0, Dir::Stay, entries_[op.target]);
        break;
      case RegOp::Kind::Halt:
        line(entry, k0, k0, Dir::Stay, adapter_entry_);
        break;
    }
  }

  // Input adapter: lay the fence skeleton right of the input word, then
  // repeatedly decrement the word (canonical order) and bump pool 1 until
  // the word is gone. Leaves the head on F0 and enters the first op.
  void emit_input_adapter(std::uint32_t sk0) {
    // Op entry states are allocated later; route through a trampoline.
    trampoline_to_op0_ = fresh();

    // sk0: walk right over the input to the separator blank.
    const std::uint32_t sk1 = fresh();
    line(sk0, k0, k0, Dir::Right, sk0);
    line(sk0, k1, k1, Dir::Right, sk0);
    line(sk0, kB, kB, Dir::Right, sk1);

    // Write R + 1 fences, then walk back onto F0.
    std::uint32_t cur = sk1;
    for (int i = 0; i <= R(); ++i) {
      if (i < R()) {
        const std::uint32_t nxt = fresh();
        line(cur, kB, k0, Dir::Right, nxt);
        cur = nxt;
      } else {
        const std::uint32_t back = fresh();
        line(cur, kB, k0, Dir::Left, back);
        cur = back;
      }
    }
    // cur walks left over the freshly laid adjacent fences to F0. It stands
    // on F_{R-1} (or on F0 already when R == 1... F_{R-1} == F0 then too).
    // Walk: on '0', step left R-1 times in a chain, then begin the loop.
    std::uint32_t walker = cur;
    for (int j = R() - 1; j >= 1; --j) {
      const std::uint32_t nxt = fresh();
      line(walker, k0, k0, Dir::Left, nxt);
      walker = nxt;
    }
    // walker is on F0; start a transfer iteration: step to the separator.
    tc1_ = fresh();
    line(walker, k0, k0, Dir::Left, tc1_);

    const std::uint32_t tc2 = fresh();
    line(tc1_, kB, kB, Dir::Left, tc2);

    // tc2 inspects the word's rightmost cell.
    const std::uint32_t fin2 = fresh();
    const std::uint32_t tc3 = fresh();
    const std::uint32_t tc4 = fresh();
    const std::uint32_t dwr = fresh();
    line(tc2, kB, kB, Dir::Right, fin2);        // word empty: done
    line(tc2, k1, k0, Dir::Right, dwr);         // ...1 -> ...0
    line(tc2, k0, k1, Dir::Left, tc3);          // ...0 -> scan left
    line(tc3, k0, k1, Dir::Left, tc3);          // flip trailing zeros
    line(tc3, k1, k0, Dir::Right, dwr);         // first 1 -> 0, done
    line(tc3, kB, kB, Dir::Right, tc4);         // word was all zeros
    line(tc4, k1, kB, Dir::Right, dwr);         // drop leftmost, word shrinks
    line(dwr, k0, k0, Dir::Right, dwr);
    line(dwr, k1, k1, Dir::Right, dwr);
    // dwr reaches the separator; step onto F0 and bump pool 1.
    const std::uint32_t inc_entry = fresh();
    line(dwr, kB, kB, Dir::Right, inc_entry);
    const std::uint32_t lp = fresh();
    emit_inc(1, inc_entry, lp);
    line(lp, k0, k0, Dir::Left, tc1_);  // next transfer iteration

    line(fin2, kB, kB, Dir::Right, trampoline_to_op0_);
  }

  void wire_trampoline() {
    line(trampoline_to_op0_, k0, k0, Dir::Stay, entries_[0]);
  }

  // Output adapter: move pool 1 into a canonical word left of the
  // workspace, erase the workspace, halt on the leftmost output symbol.
  void emit_output_adapter() {
    wire_trampoline();

    const std::uint32_t oa0 = adapter_entry_;
    const std::uint32_t scan = fresh();
    const std::uint32_t back = fresh();
    const std::uint32_t oi1 = fresh();
    const std::uint32_t oi2 = fresh();
    const std::uint32_t owr = fresh();

    line(oa0, k0, k0, Dir::Right, scan);
    line(scan, kB, kB, Dir::Right, scan);
    line(scan, k1, kB, Dir::Left, back);  // consume one token
    // back: return to F0, then bump the output word.
    line(back, k1, k1, Dir::Left, back);
    line(back, kB, kB, Dir::Left, back);
    line(back, k0, k0, Dir::Left, oi1);
    line(oi1, kB, kB, Dir::Left, oi2);
    line(oi2, k1, k0, Dir::Left, oi2);   // flip trailing ones
    line(oi2, k0, k1, Dir::Right, owr);  // first 0 -> 1
    line(oi2, kB, k0, Dir::Right, owr);  // grow left (all ones or empty)
    line(owr, k0, k0, Dir::Right, owr);
    line(owr, k1, k1, Dir::Right, owr);
    line(owr, kB, kB, Dir::Right, oa0);  // back onto F0, next token

    // Pool 1 exhausted: erase fences F1..FR rightward, then F0, then park.
    const std::uint32_t pass_b = fresh();
    if (R() == 1) {
      line(scan, k0, kB, Dir::Left, pass_b);  // F1 is the last fence
    } else {
      // Chain of R-1 states, one per remaining fence F2..FR; pool tokens
      // and holes in between are erased in passing.
      std::uint32_t erase = fresh();
      line(scan, k0, kB, Dir::Right, erase);  // erases F1
      for (int fence = 2; fence <= R(); ++fence) {
        line(erase, k1, kB, Dir::Right, erase);
        line(erase, kB, kB, Dir::Right, erase);
        if (fence < R()) {
          const std::uint32_t nxt = fresh();
          line(erase, k0, kB, Dir::Right, nxt);
          erase = nxt;
        } else {
          line(erase, k0, kB, Dir::Left, pass_b);  // erased FR, turn around
        }
      }
    }
    // pass_b: walk left erasing F0 (the only remaining '0').
    line(pass_b, kB, kB, Dir::Left, pass_b);
    const std::uint32_t pass_c = fresh();
    line(pass_b, k0, kB, Dir::Left, pass_c);
    const std::uint32_t pass_d = fresh();
    line(pass_c, kB, kB, Dir::Left, pass_d);
    line(pass_d, k0, k0, Dir::Left, pass_d);
    line(pass_d, k1, k1, Dir::Left, pass_d);
    line(pass_d, kB, kB, Dir::Right, 0);  // halt at the leftmost output cell
  }

  const RegProgram& prog_;
  MachineTable table_;
  std::uint32_t next_state_ = 1;
  std::vector<std::uint32_t> entries_;
  std::uint32_t adapter_entry_ = 0;
  std::uint32_t trampoline_to_op0_ = 0;
  std::uint32_t tc1_ = 0;
};

}  // namespace

MachineTable compile(const RegProgram& program) {
  Compiler compiler(program);
  MachineTable table = compiler.build();
  auto violations = validate(table);
  if (!violations.empty()) {
    throw ValidationError("compile: emitted invalid table: " +
                          violations.front());
  }
  return table;
}

}  // namespace overtake::regtm
