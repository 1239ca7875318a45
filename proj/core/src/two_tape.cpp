#include "overtake/two_tape.hpp"

#include <unordered_map>
#include <unordered_set>

namespace overtake {

namespace {

std::uint64_t pair_key2(std::uint32_t state, Sym s1, Sym s2) {
  return (std::uint64_t{state} << 4) | (std::uint64_t(s1) << 2) |
         std::uint64_t(s2);
}

std::string canonical_config2(std::uint32_t state, const Tape& t1,
                              std::int64_t h1, const Tape& t2,
                              std::int64_t h2) {
  // Per-tape translation invariance is sound: dynamics commute with
  // independent shifts of the two tapes.
  auto tape_part = [](const Tape& t, std::int64_t h) {
    std::string part;
    if (!t.has_content()) {
      part.push_back('.');
      return part;
    }
    const std::int64_t lo = t.leftmost();
    const std::int64_t hi = t.rightmost();
    part += std::to_string(h - lo);
    part.push_back(':');
    for (std::int64_t p = lo; p <= hi; ++p) {
      switch (t.at(p)) {
        case Sym::Zero: part.push_back('0'); break;
        case Sym::One: part.push_back('1'); break;
        case Sym::Blank: part.push_back('_'); break;
      }
    }
    return part;
  };
  return std::to_string(state) + "@" + tape_part(t1, h1) + "|" +
         tape_part(t2, h2);
}

}  // namespace

std::vector<std::string> validate(const MachineTable2& table) {
  std::vector<std::string> violations;
  if (table.n_states == 0 && !table.lines.empty()) {
    violations.push_back("zero-state table has lines");
    return violations;
  }
  std::unordered_set<std::uint64_t> seen;
  for (std::size_t i = 0; i < table.lines.size(); ++i) {
    const Instruction2& line = table.lines[i];
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
    if (!seen.insert(pair_key2(line.state, line.scanned1, line.scanned2))
             .second) {
      violations.push_back("line " + std::to_string(i) +
                           ": nondeterministic scanned pair (state " +
                           std::to_string(line.state) + ")");
    }
  }
  return violations;
}

RunOutcome run_two_tape(const MachineTable2& table, const Word& input,
                        const Word& parameter, std::uint64_t budget,
                        const RunOptions& options) {
  {
    auto violations = validate(table);
    if (!violations.empty()) {
      throw ValidationError("run_two_tape: invalid table: " +
                            violations.front());
    }
  }

  Tape tape1(input);
  Tape tape2(parameter);
  std::int64_t h1 = 0;
  std::int64_t h2 = 0;
  const auto finish_halted = [&](std::uint64_t steps) {
    RunOutcome out;
    out.status = RunOutcome::Status::Halted;
    out.steps_used = steps;
    out.output = read_output(tape1, h1);
    out.op_time = static_cast<std::uint64_t>(input.size()) + steps;
    return out;
  };

  if (table.n_states == 0) return finish_halted(0);

  std::unordered_map<std::uint64_t, Instruction2> lookup;
  lookup.reserve(table.lines.size());
  for (const Instruction2& line : table.lines) {
    lookup.emplace(pair_key2(line.state, line.scanned1, line.scanned2), line);
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
      const auto span = [](const Tape& t, std::int64_t h) {
        if (!t.has_content()) return std::int64_t{0};
        return std::max(t.rightmost(), h) - std::min(t.leftmost(), h);
      };
      if (span(tape1, h1) <= options.loop_span &&
          span(tape2, h2) <= options.loop_span &&
          !seen.insert(canonical_config2(state, tape1, h1, tape2, h2))
               .second) {
        return {RunOutcome::Status::LoopDetected, std::nullopt, std::nullopt,
                steps};
      }
    }
    const auto it = lookup.find(pair_key2(state, tape1.at(h1), tape2.at(h2)));
    if (it == lookup.end()) {
      return {RunOutcome::Status::LoopDetected, std::nullopt, std::nullopt,
              steps};
    }
    const Instruction2& line = it->second;
    tape1.set(h1, line.write1);
    tape2.set(h2, line.write2);
    h1 += static_cast<std::int64_t>(line.move1);
    h2 += static_cast<std::int64_t>(line.move2);
    state = line.next;
    ++steps;
    if (state == 0) return finish_halted(steps);
  }
}

MachineTable2 lift_to_two_tape(const MachineTable& table) {
  MachineTable2 out;
  out.n_states = table.n_states;
  constexpr Sym kSyms[] = {Sym::Zero, Sym::One, Sym::Blank};
  for (const Instruction& line : table.lines) {
    for (Sym s2 : kSyms) {
      out.lines.push_back({line.state, line.scanned, s2, line.write, s2,
                           line.move, Dir::Stay, line.next});
    }
  }
  return out;
}

}  // namespace overtake
