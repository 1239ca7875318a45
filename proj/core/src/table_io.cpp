#include "overtake/table_io.hpp"

#include <bit>
#include <cstdint>
#include <sstream>
#include <vector>

namespace overtake {

namespace {

char sym_char(Sym s) {
  switch (s) {
    case Sym::Zero: return '0';
    case Sym::One: return '1';
    case Sym::Blank: return '_';
  }
  return '?';
}

char dir_char(Dir d) {
  switch (d) {
    case Dir::Left: return 'L';
    case Dir::Right: return 'R';
    case Dir::Stay: return 'S';
  }
  return '?';
}

Sym parse_sym(const std::string& tok, int line_no) {
  if (tok == "0") return Sym::Zero;
  if (tok == "1") return Sym::One;
  if (tok == "_") return Sym::Blank;
  throw ValidationError("line " + std::to_string(line_no) + ": bad symbol '" +
                        tok + "'");
}

Dir parse_dir(const std::string& tok, int line_no) {
  if (tok == "L") return Dir::Left;
  if (tok == "R") return Dir::Right;
  if (tok == "S") return Dir::Stay;
  throw ValidationError("line " + std::to_string(line_no) + ": bad move '" +
                        tok + "'");
}

std::uint32_t parse_state(const std::string& tok, int line_no) {
  if (tok.empty()) {
    throw ValidationError("line " + std::to_string(line_no) + ": empty state");
  }
  for (char c : tok) {
    if (c < '0' || c > '9') {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": bad state '" + tok + "'");
    }
  }
  return static_cast<std::uint32_t>(std::stoul(tok));
}

std::vector<std::vector<std::string>> tokenize_lines(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (!toks.empty()) rows.push_back(std::move(toks));
  }
  return rows;
}

// Bit-level writer/reader for the binary table form.
struct BitWriter {
  std::string bits;

  void unary(std::uint32_t n) {
    bits.append(n, '1');
    bits.push_back('0');
  }
  void fixed(std::uint32_t value, unsigned width) {
    for (unsigned k = width; k-- > 0;) {
      bits.push_back((value >> k) & 1 ? '1' : '0');
    }
  }
};

struct BitReader {
  const Word& w;
  std::size_t pos = 0;

  bool done() const { return pos == w.size(); }
  std::optional<std::uint32_t> unary(std::uint32_t limit) {
    std::uint32_t n = 0;
    while (pos < w.size() && w.at(pos) == '1') {
      ++pos;
      if (++n > limit) return std::nullopt;
    }
    if (pos == w.size()) return std::nullopt;
    ++pos;  // consume terminating 0
    return n;
  }
  std::optional<std::uint32_t> fixed(unsigned width) {
    if (pos + width > w.size()) return std::nullopt;
    std::uint32_t v = 0;
    for (unsigned k = 0; k < width; ++k) {
      v = (v << 1) | (w.at(pos++) == '1' ? 1u : 0u);
    }
    return v;
  }
};

unsigned state_width(std::uint32_t n_states) {
  const std::uint32_t top = n_states > 1 ? n_states - 1 : 1;
  return static_cast<unsigned>(std::bit_width(top));
}

std::optional<Sym> sym_of(std::uint32_t v) {
  if (v > 2) return std::nullopt;
  return static_cast<Sym>(v);
}

std::optional<Dir> dir_of(std::uint32_t v) {
  switch (v) {
    case 0: return Dir::Left;
    case 1: return Dir::Right;
    case 2: return Dir::Stay;
    default: return std::nullopt;
  }
}

std::uint32_t dir_code(Dir d) {
  switch (d) {
    case Dir::Left: return 0;
    case Dir::Right: return 1;
    case Dir::Stay: return 2;
  }
  return 3;
}

}  // namespace

std::string print_table(const MachineTable& table) {
  std::string out;
  for (const Instruction& i : table.lines) {
    out += std::to_string(i.state);
    out += ' ';
    out += sym_char(i.scanned);
    out += " -> ";
    out += sym_char(i.write);
    out += ' ';
    out += dir_char(i.move);
    out += ' ';
    out += std::to_string(i.next);
    out += '\n';
  }
  return out;
}

MachineTable parse_table(const std::string& text) {
  MachineTable table;
  int line_no = 0;
  for (const auto& toks : tokenize_lines(text)) {
    ++line_no;
    if (toks.size() != 6 || toks[2] != "->") {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": expected 'state scanned -> write move next'");
    }
    Instruction i;
    i.state = parse_state(toks[0], line_no);
    i.scanned = parse_sym(toks[1], line_no);
    i.write = parse_sym(toks[3], line_no);
    i.move = parse_dir(toks[4], line_no);
    i.next = parse_state(toks[5], line_no);
    table.lines.push_back(i);
  }
  std::uint32_t max_state = 0;
  for (const Instruction& i : table.lines) {
    max_state = std::max({max_state, i.state, i.next});
  }
  table.n_states = table.lines.empty() ? 0 : max_state + 1;
  auto violations = validate(table);
  if (!violations.empty()) {
    throw ValidationError("parse_table: " + violations.front());
  }
  return table;
}

std::string print_table(const MachineTable2& table) {
  std::string out;
  for (const Instruction2& i : table.lines) {
    out += std::to_string(i.state);
    out += ' ';
    out += sym_char(i.scanned1);
    out += ' ';
    out += sym_char(i.scanned2);
    out += " -> ";
    out += sym_char(i.write1);
    out += ' ';
    out += sym_char(i.write2);
    out += ' ';
    out += dir_char(i.move1);
    out += ' ';
    out += dir_char(i.move2);
    out += ' ';
    out += std::to_string(i.next);
    out += '\n';
  }
  return out;
}

MachineTable2 parse_table2(const std::string& text) {
  MachineTable2 table;
  int line_no = 0;
  for (const auto& toks : tokenize_lines(text)) {
    ++line_no;
    if (toks.size() != 9 || toks[3] != "->") {
      throw ValidationError(
          "line " + std::to_string(line_no) +
          ": expected 'state s1 s2 -> w1 w2 m1 m2 next'");
    }
    Instruction2 i;
    i.state = parse_state(toks[0], line_no);
    i.scanned1 = parse_sym(toks[1], line_no);
    i.scanned2 = parse_sym(toks[2], line_no);
    i.write1 = parse_sym(toks[4], line_no);
    i.write2 = parse_sym(toks[5], line_no);
    i.move1 = parse_dir(toks[6], line_no);
    i.move2 = parse_dir(toks[7], line_no);
    i.next = parse_state(toks[8], line_no);
    table.lines.push_back(i);
  }
  std::uint32_t max_state = 0;
  for (const Instruction2& i : table.lines) {
    max_state = std::max({max_state, i.state, i.next});
  }
  table.n_states = table.lines.empty() ? 0 : max_state + 1;
  auto violations = validate(table);
  if (!violations.empty()) {
    throw ValidationError("parse_table2: " + violations.front());
  }
  return table;
}

Word serialize_table(const MachineTable& table) {
  if (table.n_states == 0) return Word{};
  BitWriter w;
  w.unary(table.n_states);
  w.unary(static_cast<std::uint32_t>(table.lines.size()));
  const unsigned sw = state_width(table.n_states);
  for (const Instruction& i : table.lines) {
    w.fixed(i.state, sw);
    w.fixed(static_cast<std::uint32_t>(i.scanned), 2);
    w.fixed(static_cast<std::uint32_t>(i.write), 2);
    w.fixed(dir_code(i.move), 2);
    w.fixed(i.next, sw);
  }
  return Word::from_bits(std::move(w.bits));
}

std::optional<MachineTable> parse_table_word(const Word& word) {
  if (word.empty()) return MachineTable{};
  BitReader r{word};
  constexpr std::uint32_t kLimit = 1u << 20;
  const auto n_states = r.unary(kLimit);
  if (!n_states || *n_states == 0) return std::nullopt;
  const auto n_lines = r.unary(kLimit);
  if (!n_lines) return std::nullopt;
  MachineTable table;
  table.n_states = *n_states;
  const unsigned sw = state_width(table.n_states);
  for (std::uint32_t k = 0; k < *n_lines; ++k) {
    Instruction i;
    const auto st = r.fixed(sw);
    const auto sc = r.fixed(2);
    const auto wr = r.fixed(2);
    const auto mv = r.fixed(2);
    const auto nx = r.fixed(sw);
    if (!st || !sc || !wr || !mv || !nx) return std::nullopt;
    const auto scanned = sym_of(*sc);
    const auto write = sym_of(*wr);
    const auto move = dir_of(*mv);
    if (!scanned || !write || !move) return std::nullopt;
    i.state = *st;
    i.scanned = *scanned;
    i.write = *write;
    i.move = *move;
    i.next = *nx;
    table.lines.push_back(i);
  }
  if (!r.done()) return std::nullopt;
  if (!validate(table).empty()) return std::nullopt;
  return table;
}

Word serialize_table(const MachineTable2& table) {
  if (table.n_states == 0) return Word{};
  BitWriter w;
  w.unary(table.n_states);
  w.unary(static_cast<std::uint32_t>(table.lines.size()));
  const unsigned sw = state_width(table.n_states);
  for (const Instruction2& i : table.lines) {
    w.fixed(i.state, sw);
    w.fixed(static_cast<std::uint32_t>(i.scanned1), 2);
    w.fixed(static_cast<std::uint32_t>(i.scanned2), 2);
    w.fixed(static_cast<std::uint32_t>(i.write1), 2);
    w.fixed(static_cast<std::uint32_t>(i.write2), 2);
    w.fixed(dir_code(i.move1), 2);
    w.fixed(dir_code(i.move2), 2);
    w.fixed(i.next, sw);
  }
  return Word::from_bits(std::move(w.bits));
}

std::optional<MachineTable2> parse_table2_word(const Word& word) {
  if (word.empty()) return MachineTable2{};
  BitReader r{word};
  constexpr std::uint32_t kLimit = 1u << 20;
  const auto n_states = r.unary(kLimit);
  if (!n_states || *n_states == 0) return std::nullopt;
  const auto n_lines = r.unary(kLimit);
  if (!n_lines) return std::nullopt;
  MachineTable2 table;
  table.n_states = *n_states;
  const unsigned sw = state_width(table.n_states);
  for (std::uint32_t k = 0; k < *n_lines; ++k) {
    Instruction2 i;
    const auto st = r.fixed(sw);
    const auto s1 = r.fixed(2);
    const auto s2 = r.fixed(2);
    const auto w1 = r.fixed(2);
    const auto w2 = r.fixed(2);
    const auto m1 = r.fixed(2);
    const auto m2 = r.fixed(2);
    const auto nx = r.fixed(sw);
    if (!st || !s1 || !s2 || !w1 || !w2 || !m1 || !m2 || !nx) {
      return std::nullopt;
    }
    const auto scanned1 = sym_of(*s1);
    const auto scanned2 = sym_of(*s2);
    const auto write1 = sym_of(*w1);
    const auto write2 = sym_of(*w2);
    const auto move1 = dir_of(*m1);
    const auto move2 = dir_of(*m2);
    if (!scanned1 || !scanned2 || !write1 || !write2 || !move1 || !move2) {
      return std::nullopt;
    }
    i.state = *st;
    i.scanned1 = *scanned1;
    i.scanned2 = *scanned2;
    i.write1 = *write1;
    i.write2 = *write2;
    i.move1 = *move1;
    i.move2 = *move2;
    i.next = *nx;
    table.lines.push_back(i);
  }
  if (!r.done()) return std::nullopt;
  if (!validate(table).empty()) return std::nullopt;
  return table;
}

}  // namespace overtake
