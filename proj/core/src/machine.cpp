#include "overtake/machine.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace overtake {

namespace {

std::uint64_t pair_key(std::uint32_t state, Sym scanned) {
  return (std::uint64_t{state} << 2) | static_cast<std::uint64_t>(scanned);
}

}  // namespace

std::vector<std::string> validate(const MachineTable& table) {
  std::vector<std::string> violations;
  if (table.n_states == 0 && !table.lines.empty()) {
    violations.push_back("zero-state table has lines");
    return violations;
  }
  std::unordered_set<std::uint64_t> seen;
  for (std::size_t i = 0; i < table.lines.size(); ++i) {
    const Instruction& line = table.lines[i];
    if (line.state == 0) {
      violations.push_back("line " + std::to_string(i) +
                           ": final state 0 used as acting state");
    } else if (line.state >= table.n_states) {
      violations.push_back("line " + std::to_string(i) + ": dangling state " +
                           std::to_string(line.state));
    }
    if (line.next != 0 && line.next >= table.n_states) {
      violations.push_back("line " + std::to_string(i) +
                           ": dangling next state " + std::to_string(line.next));
    }
    if (!seen.insert(pair_key(line.state, line.scanned)).second) {
      violations.push_back("line " + std::to_string(i) +
                           ": nondeterministic pair (state " +
                           std::to_string(line.state) + ")");
    }
  }
  return violations;
}

MachineTable permute(const MachineTable& table,
                     const std::vector<std::size_t>& perm) {
  if (perm.size() != table.lines.size()) {
    throw ValidationError("permute: permutation size mismatch");
  }
  std::vector<bool> hit(perm.size(), false);
  for (std::size_t p : perm) {
    if (p >= perm.size() || hit[p]) {
      throw ValidationError("permute: not a bijection on line positions");
    }
    hit[p] = true;
  }
  MachineTable out;
  out.n_states = table.n_states;
  out.lines.resize(table.lines.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    out.lines[perm[i]] = table.lines[i];
  }
  return out;
}

Tape::Tape(const Word& w, std::int64_t start) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    set(start + static_cast<std::int64_t>(i),
        w.at(i) == '1' ? Sym::One : Sym::Zero);
  }
}

Sym Tape::at(std::int64_t pos) const {
  if (pos >= 0) {
    const auto i = static_cast<std::size_t>(pos);
    return i < right_.size() ? right_[i] : Sym::Blank;
  }
  const auto i = static_cast<std::size_t>(-pos - 1);
  return i < left_.size() ? left_[i] : Sym::Blank;
}

void Tape::set(std::int64_t pos, Sym s) {
  Sym old;
  if (pos >= 0) {
    const auto i = static_cast<std::size_t>(pos);
    if (i >= right_.size()) {
      if (s == Sym::Blank) return;
      right_.resize(i + 1, Sym::Blank);
    }
    old = right_[i];
    right_[i] = s;
  } else {
    const auto i = static_cast<std::size_t>(-pos - 1);
    if (i >= left_.size()) {
      if (s == Sym::Blank) return;
      left_.resize(i + 1, Sym::Blank);
    }
    old = left_[i];
    left_[i] = s;
  }
  const bool was = old != Sym::Blank;
  const bool is = s != Sym::Blank;
  if (was == is) return;
  if (is) {
    if (nonblank_ == 0) {
      lo_ = hi_ = pos;
    } else {
      lo_ = std::min(lo_, pos);
      hi_ = std::max(hi_, pos);
    }
    ++nonblank_;
  } else {
    --nonblank_;
    if (nonblank_ > 0 && (pos == lo_ || pos == hi_)) rescan_extent();
  }
}

void Tape::rescan_extent() {
  std::int64_t lo = std::numeric_limits<std::int64_t>::max();
  std::int64_t hi = std::numeric_limits<std::int64_t>::min();
  for (std::size_t i = 0; i < right_.size(); ++i) {
    if (right_[i] != Sym::Blank) {
      lo = std::min(lo, static_cast<std::int64_t>(i));
      hi = std::max(hi, static_cast<std::int64_t>(i));
    }
  }
  for (std::size_t i = 0; i < left_.size(); ++i) {
    if (left_[i] != Sym::Blank) {
      const auto p = -static_cast<std::int64_t>(i) - 1;
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
  }
  lo_ = lo;
  hi_ = hi;
}

std::uint64_t Tape::count_ones() const {
  std::uint64_t n = 0;
  for (Sym s : right_) {
    if (s == Sym::One) ++n;
  }
  for (Sym s : left_) {
    if (s == Sym::One) ++n;
  }
  return n;
}

Word read_output(const Tape& tape, std::int64_t head) {
  if (tape.at(head) == Sym::Blank) return Word{};
  std::int64_t lo = head;
  while (tape.at(lo - 1) != Sym::Blank) --lo;
  std::int64_t hi = head;
  while (tape.at(hi + 1) != Sym::Blank) ++hi;
  std::string bits;
  bits.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t p = lo; p <= hi; ++p) {
    bits.push_back(tape.at(p) == Sym::One ? '1' : '0');
  }
  return Word::from_bits(std::move(bits));
}

namespace {

// Configuration up to translation: state, head offset from the leftmost
// non-blank cell, and the non-blank span. Two runs whose configurations
// agree up to translation evolve identically shifted, so a repeat in this
// form proves the machine never halts.
std::string canonical_config(std::uint32_t state, const Tape& tape,
                             std::int64_t head) {
  std::string key = std::to_string(state);
  key.push_back('@');
  if (!tape.has_content()) {
    key.push_back('.');
    return key;
  }
  const std::int64_t lo = tape.leftmost();
  const std::int64_t hi = tape.rightmost();
  key += std::to_string(head - lo);
  key.push_back(':');
  for (std::int64_t p = lo; p <= hi; ++p) {
    switch (tape.at(p)) {
      case Sym::Zero: key.push_back('0'); break;
      case Sym::One: key.push_back('1'); break;
      case Sym::Blank: key.push_back('_'); break;
    }
  }
  return key;
}

}  // namespace

RunOutcome run(const MachineTable& table, const Word& input,
               std::uint64_t budget, const RunOptions& options) {
  {
    auto violations = validate(table);
    if (!violations.empty()) {
      throw ValidationError("run: invalid table: " + violations.front());
    }
  }

  Tape tape(input);
  std::int64_t head = 0;
  const auto finish_halted = [&](std::uint64_t steps) {
    RunOutcome out;
    out.status = RunOutcome::Status::Halted;
    out.steps_used = steps;
    out.output = read_output(tape, head);
    out.op_time = static_cast<std::uint64_t>(input.size()) + steps;
    return out;
  };

  if (table.n_states == 0) return finish_halted(0);

  std::unordered_map<std::uint64_t, Instruction> lookup;
  lookup.reserve(table.lines.size());
  for (const Instruction& line : table.lines) {
    lookup.emplace(pair_key(line.state, line.scanned), line);
  }

  std::unordered_set<std::string> seen;
  std::uint32_t state = 1;
  std::uint64_t steps = 0;
  while (true) {
    if (steps == budget) {
      return {RunOutcome::Status::BudgetExhausted, std::nullopt, std::nullopt,
              steps};
    }
    if (seen.size() < options.loop_window) {
      const std::int64_t span =
          tape.has_content()
              ? std::max(tape.rightmost(), head) - std::min(tape.leftmost(), head)
              : 0;
      if (span <= options.loop_span &&
          !seen.insert(canonical_config(state, tape, head)).second) {
        return {RunOutcome::Status::LoopDetected, std::nullopt, std::nullopt,
                steps};
      }
    }
    const auto it = lookup.find(pair_key(state, tape.at(head)));
    if (it == lookup.end()) {
      // No applicable line: the configuration can never change, so the
      // machine never reaches s0.
      return {RunOutcome::Status::LoopDetected, std::nullopt, std::nullopt,
              steps};
    }
    const Instruction& line = it->second;
    tape.set(head, line.write);
    head += static_cast<std::int64_t>(line.move);
    state = line.next;
    ++steps;
    if (state == 0) return finish_halted(steps);
  }
}

}  // namespace overtake
