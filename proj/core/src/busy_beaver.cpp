#include "overtake/busy_beaver.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stack>
#include <string>
#include <thread>
#include <unordered_set>

#include "overtake/codec.hpp"
#include "overtake/growth.hpp"

namespace overtake::bb {

namespace {

constexpr RadoTransition kUndefined{1, +1, 0};  // canonical halt cell: 1RH

}  // namespace

std::string RadoMachine::text() const {
  std::string out;
  for (std::uint16_t s = 1; s <= n_states; ++s) {
    if (s > 1) out.push_back('_');
    for (int sym = 0; sym < 2; ++sym) {
      const RadoTransition& t = rows[s - 1][sym];
      out.push_back(static_cast<char>('0' + t.write));
      out.push_back(t.move > 0 ? 'R' : 'L');
      out.push_back(t.next == 0 ? 'H'
                                : static_cast<char>('A' + (t.next - 1)));
    }
  }
  return out;
}

MachineTable RadoMachine::to_core_table() const {
  MachineTable table;
  table.n_states = n_states + 1;
  if (n_states == 0) table.n_states = 0;
  for (std::uint16_t s = 1; s <= n_states; ++s) {
    for (int sym = 0; sym < 2; ++sym) {
      const RadoTransition& t = rows[s - 1][sym];
      const Sym write = t.write == 1 ? Sym::One : Sym::Zero;
      const Dir move = t.move > 0 ? Dir::Right : Dir::Left;
      const Sym scanned = sym == 1 ? Sym::One : Sym::Zero;
      table.lines.push_back({s, scanned, write, move, t.next});
      if (sym == 0) {
        // Blank squares read as 0 under the Rado convention.
        table.lines.push_back({s, Sym::Blank, write, move, t.next});
      }
    }
  }
  return table;
}

namespace {

// Dense two-sided tape over {0, 1} with incremental 1-extent tracking.
class SimTape {
 public:
  explicit SimTape(const Word& input) {
    for (std::size_t i = 0; i < input.size(); ++i) {
      if (input.at(i) == '1') set(static_cast<std::int64_t>(i), 1);
    }
  }

  std::uint8_t at(std::int64_t p) const {
    if (p >= 0) {
      const auto i = static_cast<std::size_t>(p);
      return i < right_.size() ? right_[i] : 0;
    }
    const auto i = static_cast<std::size_t>(-p - 1);
    return i < left_.size() ? left_[i] : 0;
  }

  void set(std::int64_t p, std::uint8_t v) {
    std::uint8_t old;
    if (p >= 0) {
      const auto i = static_cast<std::size_t>(p);
      if (i >= right_.size()) {
        if (v == 0) return;
        right_.resize(i + 1, 0);
      }
      old = right_[i];
      right_[i] = v;
    } else {
      const auto i = static_cast<std::size_t>(-p - 1);
      if (i >= left_.size()) {
        if (v == 0) return;
        left_.resize(i + 1, 0);
      }
      old = left_[i];
      left_[i] = v;
    }
    if (old == v) return;
    if (v == 1) {
      ++ones_;
      have_extent_ = true;
      lo_one_ = std::min(lo_one_, p);
      hi_one_ = std::max(hi_one_, p);
      if (ones_ == 1) lo_one_ = hi_one_ = p;
    } else {
      --ones_;
      if (ones_ == 0) {
        have_extent_ = false;
      } else if (p == lo_one_ || p == hi_one_) {
        rescan_extent();
      }
    }
  }

  std::uint64_t ones() const { return static_cast<std::uint64_t>(ones_); }
  bool any_ones() const { return ones_ > 0; }
  std::int64_t lo_one() const { return lo_one_; }
  std::int64_t hi_one() const { return hi_one_; }

 private:
  void rescan_extent() {
    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t hi = std::numeric_limits<std::int64_t>::min();
    for (std::size_t i = 0; i < right_.size(); ++i) {
      if (right_[i] == 1) {
        lo = std::min(lo, static_cast<std::int64_t>(i));
        hi = std::max(hi, static_cast<std::int64_t>(i));
      }
    }
    for (std::size_t i = 0; i < left_.size(); ++i) {
      if (left_[i] == 1) {
        const auto p = -static_cast<std::int64_t>(i) - 1;
        lo = std::min(lo, p);
        hi = std::max(hi, p);
      }
    }
    lo_one_ = lo;
    hi_one_ = hi;
  }

  std::vector<std::uint8_t> right_, left_;
  std::int64_t ones_ = 0;
  std::int64_t lo_one_ = 0, hi_one_ = 0;
  bool have_extent_ = false;
};

struct HaltInfo {
  std::uint64_t steps = 0;
  std::uint64_t ones = 0;
  std::uint16_t cell_state = 0;  // the (state, symbol) cell that fired halt
  std::uint8_t cell_symbol = 0;
};

// Direct simulation to max_steps; fills halt info when the machine stops.
bool run_to(const RadoMachine& machine, const Word& input,
            std::uint64_t max_steps, HaltInfo* halt) {
  SimTape tape(input);
  std::int64_t head = 0;
  std::uint16_t state = 1;
  for (std::uint64_t step = 1; step <= max_steps; ++step) {
    const std::uint8_t sym = tape.at(head);
    const RadoTransition& t = machine.rows[state - 1][sym];
    tape.set(head, t.write);
    head += t.move;
    if (t.next == 0) {
      if (halt != nullptr) {
        halt->steps = step;
        halt->ones = tape.ones();
        halt->cell_state = state;
        halt->cell_symbol = sym;
      }
      return true;
    }
    state = t.next;
  }
  return false;
}

enum class Fate { Halts, NonHalting, Unknown };

// Non-halt prover: exact repeat of the configuration up to translation
// (sound: the all-0 background makes a shifted repeat replay forever), plus
// record-based translated-cycler detection for runs whose tape keeps
// growing. Both certificates are verified sufficient conditions; anything
// undecided within the budget stays Unknown.
Fate prove_fate(const RadoMachine& machine, const Word& input,
                const SearchOptions& options) {
  SimTape tape(input);
  std::int64_t head = 0;
  std::uint16_t state = 1;

  std::int64_t right_record = 0;
  std::int64_t left_record = 0;
  if (!input.empty()) {
    right_record = static_cast<std::int64_t>(input.size()) - 1;
  }

  struct Snapshot {
    bool valid = false;
    std::uint64_t time = 0;
    std::int64_t pos = 0;
    std::int64_t excursion = 0;  // min head since (right side) / max (left)
    std::vector<std::uint8_t> cells;  // window [pos - span, pos] or mirrored
    std::int64_t span = 0;
  };
  // One snapshot per (state, side); side 0 = right records, 1 = left.
  std::vector<std::array<Snapshot, 2>> snaps(machine.n_states + 1);

  constexpr std::int64_t kMaxCycleExtent = 160;
  std::unordered_set<std::string> seen;

  const auto snapshot_window = [&](std::int64_t pos, int side) {
    // Cells within a fixed span behind the record; enough for any back
    // excursion that stays within the span.
    constexpr std::int64_t kSpan = 256;
    Snapshot snap;
    snap.valid = true;
    snap.pos = pos;
    snap.excursion = pos;
    snap.span = kSpan;
    snap.cells.resize(kSpan + 1);
    for (std::int64_t i = 0; i <= kSpan; ++i) {
      const std::int64_t p = side == 0 ? pos - i : pos + i;
      snap.cells[static_cast<std::size_t>(i)] = tape.at(p);
    }
    return snap;
  };

  for (std::uint64_t step = 1; step <= options.prover_budget; ++step) {
    // Translation-invariant configuration key while the written region is
    // small; catches in-place and shifted cycles exactly.
    if (seen.size() < options.config_window) {
      std::int64_t lo = head, hi = head;
      if (tape.any_ones()) {
        lo = std::min(lo, tape.lo_one());
        hi = std::max(hi, tape.hi_one());
      }
      if (hi - lo <= kMaxCycleExtent) {
        std::string key;
        key.reserve(static_cast<std::size_t>(hi - lo) + 8);
        key += std::to_string(state);
        key.push_back(':');
        key += std::to_string(head - lo);
        key.push_back(':');
        for (std::int64_t p = lo; p <= hi; ++p) {
          key.push_back(static_cast<char>('0' + tape.at(p)));
        }
        if (!seen.insert(std::move(key)).second) return Fate::NonHalting;
      }
    }

    const std::uint8_t sym = tape.at(head);
    const RadoTransition& t = machine.rows[state - 1][sym];
    tape.set(head, t.write);
    head += t.move;
    if (t.next == 0) return Fate::Halts;
    state = t.next;

    // Track back-excursions for every live snapshot.
    for (std::uint16_t s = 1; s <= machine.n_states; ++s) {
      auto& right = snaps[s][0];
      if (right.valid) right.excursion = std::min(right.excursion, head);
      auto& left = snaps[s][1];
      if (left.valid) left.excursion = std::max(left.excursion, head);
    }

    const auto handle_record = [&](int side, std::int64_t pos) -> bool {
      Snapshot& snap = snaps[state][static_cast<std::size_t>(side)];
      if (snap.valid) {
        const std::int64_t d =
            side == 0 ? pos - snap.pos : snap.pos - pos;
        const std::int64_t back =
            side == 0 ? snap.pos - snap.excursion : snap.excursion - snap.pos;
        if (d > 0 && back <= snap.span) {
          bool match = true;
          for (std::int64_t i = 0; i <= back; ++i) {
            const std::int64_t now_p = side == 0 ? pos - i : pos + i;
            if (tape.at(now_p) != snap.cells[static_cast<std::size_t>(i)]) {
              match = false;
              break;
            }
          }
          if (match) return true;  // shifted replay: runs forever
        }
        if (step >= 2 * std::max<std::uint64_t>(snap.time, 4)) {
          snap = snapshot_window(pos, side);
          snap.time = step;
        }
      } else {
        snap = snapshot_window(pos, side);
        snap.time = step;
      }
      return false;
    };

    if (head > right_record) {
      right_record = head;
      if (handle_record(0, head)) return Fate::NonHalting;
    } else if (head < left_record) {
      left_record = head;
      if (handle_record(1, head)) return Fate::NonHalting;
    }
  }
  return Fate::Unknown;
}

// One TNF search node: undefined cells hold the canonical halt transition.
struct Node {
  RadoMachine machine;
  std::uint32_t defined_mask = 0;
  std::uint16_t max_used = 1;
  int undefined = 0;
  bool any_defined = false;
};

Node root_node(std::uint16_t n_states) {
  Node node;
  node.machine.n_states = n_states;
  node.machine.rows.assign(n_states, {kUndefined, kUndefined});
  node.undefined = 2 * n_states;
  return node;
}

struct Tally {
  std::uint64_t value = 0;
  std::optional<RadoMachine> witness;
  std::uint64_t unresolved = 0;
  std::uint64_t machines = 0;
  std::uint64_t halted = 0;

  // Ties break toward the lexicographically smallest table text, so the
  // merged result is identical for any shard count.
  void offer(const RadoMachine& machine, std::uint64_t ones) {
    if (!witness || ones > value) {
      value = ones;
      witness = machine;
    } else if (ones == value && machine.text() < witness->text()) {
      witness = machine;
    }
  }

  void merge(const Tally& other) {
    if (other.witness) offer(*other.witness, other.value);
    unresolved += other.unresolved;
    machines += other.machines;
    halted += other.halted;
  }
};

struct ProcessResult {
  bool expand = false;
  std::uint16_t cell_state = 0;
  std::uint8_t cell_symbol = 0;
};

// Simulate one node on every starting tape: halting runs contribute their
// 1-counts, the first halting run names the expansion cell, and runs that
// outlive the cutoff go to the prover.
ProcessResult process_node(const Node& node, std::uint64_t cutoff,
                           const std::vector<Word>& tapes,
                           const SearchOptions& options, Tally& tally) {
  ProcessResult result;
  bool any_unknown = false;
  bool any_halt = false;
  std::uint64_t best = 0;
  for (const Word& input : tapes) {
    HaltInfo halt;
    if (run_to(node.machine, input, cutoff, &halt)) {
      any_halt = true;
      best = std::max(best, halt.ones);
      if (!result.expand) {
        result.expand = true;
        result.cell_state = halt.cell_state;
        result.cell_symbol = halt.cell_symbol;
      }
    } else {
      switch (prove_fate(node.machine, input, options)) {
        case Fate::NonHalting:
          break;
        case Fate::Halts:  // halts beyond the cutoff: neither counted nor
        case Fate::Unknown:  // excluded, so exactness is forfeited
          any_unknown = true;
          break;
      }
    }
  }
  tally.machines += 1;
  if (any_halt) {
    tally.halted += 1;
    tally.offer(node.machine, best);
  }
  if (any_unknown) tally.unresolved += 1;
  return result;
}

std::vector<Node> expand_node(const Node& node, std::uint16_t cell_state,
                              std::uint8_t cell_symbol, bool first_move_fixed) {
  std::vector<Node> children;
  if (node.undefined <= 1) return children;  // keep one halt transition
  const std::uint16_t next_cap =
      std::min<std::uint16_t>(node.machine.n_states, node.max_used + 1);
  for (std::uint8_t write = 0; write <= 1; ++write) {
    for (int move : {+1, -1}) {
      if (move == -1 && first_move_fixed && !node.any_defined) continue;
      for (std::uint16_t next = 1; next <= next_cap; ++next) {
        Node child = node;
        child.machine.rows[cell_state - 1][cell_symbol] = {
            write, static_cast<std::int8_t>(move), next};
        child.defined_mask |=
            1u << (2 * (cell_state - 1) + cell_symbol);
        child.max_used = std::max(child.max_used, next);
        child.undefined = node.undefined - 1;
        child.any_defined = true;
        children.push_back(std::move(child));
      }
    }
  }
  return children;
}

std::vector<Word> starting_tapes(const SearchOptions& options) {
  std::vector<Word> tapes;
  tapes.push_back(Word{});  // the all-0 tape
  for (const Word& w : options.inputs) {
    // Words without a 1 leave the tape all-0; skip the duplicates.
    if (w.bits().find('1') == std::string::npos) continue;
    tapes.push_back(w);
  }
  return tapes;
}

void dfs(std::stack<Node>& todo, std::uint64_t cutoff,
         const std::vector<Word>& tapes, const SearchOptions& options,
         bool first_move_fixed, Tally& tally) {
  while (!todo.empty()) {
    Node node = std::move(todo.top());
    todo.pop();
    const ProcessResult r =
        process_node(node, cutoff, tapes, options, tally);
    if (r.expand) {
      for (Node& child :
           expand_node(node, r.cell_state, r.cell_symbol, first_move_fixed)) {
        todo.push(std::move(child));
      }
    }
  }
}

BBResult finish(const Tally& tally, std::uint64_t cutoff) {
  BBResult result;
  result.value = tally.witness ? tally.value : 0;
  result.exact = tally.unresolved == 0;
  result.witness = tally.witness;
  result.cutoff_used = cutoff;
  result.unresolved = tally.unresolved;
  result.machines_enumerated = tally.machines;
  result.halted = tally.halted;
  return result;
}

}  // namespace

std::vector<RadoMachine> enumerate_all(std::uint16_t n_states) {
  if (n_states > 2) {
    throw Refusal("enumerate_all: unpruned enumeration limited to 2 states");
  }
  std::vector<RadoMachine> machines;
  if (n_states == 0) {
    machines.push_back(RadoMachine{});
    return machines;
  }
  const std::size_t cells = 2 * n_states;
  const std::size_t per_cell = 2 * 2 * (n_states + 1);
  std::vector<std::size_t> digits(cells, 0);
  while (true) {
    RadoMachine machine;
    machine.n_states = n_states;
    machine.rows.assign(n_states, {kUndefined, kUndefined});
    for (std::size_t c = 0; c < cells; ++c) {
      const std::size_t d = digits[c];
      const std::uint8_t write = d & 1;
      const std::int8_t move = (d >> 1) & 1 ? +1 : -1;
      const auto next = static_cast<std::uint16_t>(d >> 2);
      machine.rows[c / 2][c % 2] = {write, move, next};
    }
    machines.push_back(std::move(machine));
    std::size_t c = 0;
    while (c < cells && ++digits[c] == per_cell) {
      digits[c] = 0;
      ++c;
    }
    if (c == cells) break;
  }
  return machines;
}

BBResult sigma(std::uint16_t n_states, std::uint64_t cutoff,
               const SearchOptions& options) {
  if (n_states > options.max_states) {
    throw Refusal("sigma: " + std::to_string(n_states) +
                  " states exceeds the configured bound of " +
                  std::to_string(options.max_states));
  }
  const std::vector<Word> tapes = starting_tapes(options);
  const bool first_move_fixed = tapes.size() == 1;

  Tally total;
  if (n_states == 0) {
    // The empty machine halts at once and prints nothing.
    total.machines = 1;
    total.halted = 1;
    total.offer(RadoMachine{}, 0);
    return finish(total, cutoff);
  }

  const Node root = root_node(n_states);
  const ProcessResult r =
      process_node(root, cutoff, tapes, options, total);
  std::vector<Node> children;
  if (r.expand) {
    children =
        expand_node(root, r.cell_state, r.cell_symbol, first_move_fixed);
  }

  const int shards = std::max(1, options.shards);
  std::vector<Tally> partial(static_cast<std::size_t>(shards));
  const auto run_shard = [&](int shard) {
    std::stack<Node> todo;
    for (std::size_t j = shard; j < children.size();
         j += static_cast<std::size_t>(shards)) {
      todo.push(children[j]);
    }
    dfs(todo, cutoff, tapes, options, first_move_fixed,
        partial[static_cast<std::size_t>(shard)]);
  };
  if (shards == 1) {
    run_shard(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(shards));
    for (int s = 0; s < shards; ++s) threads.emplace_back(run_shard, s);
    for (std::thread& t : threads) t.join();
  }
  for (const Tally& p : partial) total.merge(p);
  return finish(total, cutoff);
}

BBResult sigma_unpruned(std::uint16_t n_states, std::uint64_t cutoff,
                        const SearchOptions& options) {
  const std::vector<Word> tapes = starting_tapes(options);
  Tally tally;
  for (const RadoMachine& machine : enumerate_all(n_states)) {
    bool any_unknown = false;
    bool any_halt = false;
    std::uint64_t best = 0;
    for (const Word& input : tapes) {
      HaltInfo halt;
      if (run_to(machine, input, cutoff, &halt)) {
        any_halt = true;
        best = std::max(best, halt.ones);
      } else if (prove_fate(machine, input, options) != Fate::NonHalting) {
        any_unknown = true;
      }
    }
    tally.machines += 1;
    if (any_halt) {
      tally.halted += 1;
      tally.offer(machine, best);
    }
    if (any_unknown) tally.unresolved += 1;
  }
  return finish(tally, cutoff);
}

std::uint64_t count_tnf_nodes(std::uint16_t n_states, std::uint64_t cutoff,
                              const SearchOptions& options) {
  return sigma(n_states, cutoff, options).machines_enumerated;
}

std::uint64_t states_of_index(const Nat& m) {
  // A (3N+1) x 4 matrix at two bits per cell fills 8(3N+1) bits; words of
  // that length reach canonical indexes up to 2^(8(3N+1)+1) - 2.
  const std::uint64_t need = bit_length(m + 1);
  std::uint64_t n = 0;
  while (8 * (3 * n + 1) + 1 < need) ++n;
  return n;
}

BBResult b_of_index(const Nat& m, std::uint64_t cutoff,
                    const SearchOptions& options) {
  const std::uint64_t n = states_of_index(m);
  if (n > options.max_states) {
    throw Refusal("b_of_index: index needs " + std::to_string(n) +
                  " states, above the bound of " +
                  std::to_string(options.max_states));
  }
  return sigma(static_cast<std::uint16_t>(n), cutoff, options);
}

BBResult b_prime(const Nat& m, const factory::Registry& registry,
                 std::uint64_t cutoff, const SearchOptions& options,
                 std::uint64_t max_inputs) {
  const std::uint64_t n = states_of_index(m);
  if (n > options.max_states) {
    throw Refusal("b_prime: index needs " + std::to_string(n) +
                  " states, above the bound of " +
                  std::to_string(options.max_states));
  }
  const auto g = growth::g_at_index(m, registry);
  if (!g) throw Refusal("b_prime: g unresolved at index " + m.str());
  if (*g + 1 > Nat(max_inputs)) {
    throw Refusal("b_prime: g(m) = " + g->str() +
                  " exceeds the input enumeration budget");
  }
  SearchOptions extended = options;
  extended.inputs.clear();
  for (Nat x = 0; x <= *g; ++x) {
    extended.inputs.push_back(codec::word_of_index(x));
  }
  return sigma(static_cast<std::uint16_t>(n), cutoff, extended);
}

std::vector<BPrimeRow> bprime_vs_g_report(const std::vector<Nat>& indexes,
                                          const factory::Registry& registry,
                                          std::uint64_t cutoff,
                                          const SearchOptions& options) {
  std::vector<BPrimeRow> rows;
  std::map<std::uint64_t, BBResult> plain_cache;
  for (const Nat& m : indexes) {
    BPrimeRow row;
    row.m = m;
    row.states = states_of_index(m);
    row.certified = registry.is_certified(m);
    try {
      if (row.states > options.max_states) {
        throw Refusal("state count " + std::to_string(row.states) +
                      " above bound");
      }
      const auto n = static_cast<std::uint16_t>(row.states);
      auto it = plain_cache.find(row.states);
      if (it == plain_cache.end()) {
        it = plain_cache.emplace(row.states, sigma(n, cutoff, options)).first;
      }
      row.b_value = it->second.value;
      const auto g = growth::g_at_index(m, registry);
      if (!g) throw Refusal("g unresolved");
      row.g_value = g;
      row.b_prime_value = b_prime(m, registry, cutoff, options).value;
      row.ge_holds = *row.b_prime_value >= *row.b_value;
    } catch (const Refusal& refusal) {
      row.refusal = refusal.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace overtake::bb
