#include "overtake/factory.hpp"

#include <algorithm>

#include <json.hpp>

#include "overtake/codec.hpp"
#include "overtake/table_io.hpp"

namespace overtake::factory {

using nlohmann::ordered_json;

Nat PolyCertificate::bound(std::size_t input_len) const {
  Nat b = coefficient;
  for (std::uint32_t i = 0; i < degree; ++i) b *= Nat(input_len) + 1;
  return b + coefficient;
}

EvalRecord CertifiedMachine::eval_checked(const Nat& x,
                                          std::uint64_t budget) const {
  const Word input = codec::word_of_index(x);
  EvalRecord rec;
  if (semantic) {
    rec.value = semantic->eval(x);
    rec.op_time = semantic->time_model(x);
  } else if (table) {
    const RunOutcome outcome = run(*table, input, budget);
    if (!outcome.halted()) {
      throw CertificateViolation(kind + ": certified machine did not halt in " +
                                 std::to_string(budget) + " steps");
    }
    rec.value = codec::index_of_word(*outcome.output);
    rec.op_time = *outcome.op_time;
  } else {
    throw ValidationError(kind + ": machine has neither tier");
  }
  const Nat bound = certificate.bound(input.size());
  if (rec.op_time > bound) {
    throw CertificateViolation(kind + ": op_time " + rec.op_time.str() +
                               " breaks certificate bound " + bound.str() +
                               " at x=" + x.str());
  }
  const Nat out_len = codec::word_of_index(rec.value).size();
  if (out_len > bound) {
    throw CertificateViolation(kind + ": output length " + out_len.str() +
                               " breaks certificate bound " + bound.str() +
                               " at x=" + x.str());
  }
  return rec;
}

CertifiedMachine make_trivial() {
  CertifiedMachine cm;
  cm.kind = "trivial";
  cm.table = MachineTable{};
  cm.semantic = SemanticMachine{
      [](const Nat& x) { return x; },
      [](const Nat& x) { return Nat(codec::word_of_index(x).size()); }};
  cm.certificate = {1, 2};
  cm.index = codec::ell_index(0, 0);
  return cm;
}

CertifiedMachine make_identity() {
  CertifiedMachine cm;
  cm.kind = "identity";
  MachineTable t;
  t.n_states = 2;
  t.lines.push_back({1, Sym::Zero, Sym::Zero, Dir::Stay, 0});
  t.lines.push_back({1, Sym::One, Sym::One, Dir::Stay, 0});
  t.lines.push_back({1, Sym::Blank, Sym::Blank, Dir::Stay, 0});
  cm.table = t;
  cm.semantic = SemanticMachine{
      [](const Nat& x) { return x; },
      [](const Nat& x) { return Nat(Nat(codec::word_of_index(x).size()) + 1); }};
  cm.certificate = {1, 2};
  cm.index = codec::ell_index(0, codec::index_of_word(serialize_table(t)));
  return cm;
}

CertifiedMachine make_constant_zero() {
  CertifiedMachine cm;
  cm.kind = "constant_zero";
  MachineTable t;
  t.n_states = 2;
  t.lines.push_back({1, Sym::Zero, Sym::Blank, Dir::Right, 1});
  t.lines.push_back({1, Sym::One, Sym::Blank, Dir::Right, 1});
  t.lines.push_back({1, Sym::Blank, Sym::Blank, Dir::Stay, 0});
  cm.table = t;
  cm.semantic = SemanticMachine{
      [](const Nat&) { return Nat(0); },
      [](const Nat& x) { return Nat(2 * Nat(codec::word_of_index(x).size()) + 1); }};
  cm.certificate = {1, 3};
  cm.index = codec::ell_index(0, codec::index_of_word(serialize_table(t)));
  return cm;
}

QuasiTrivialSpec make_quasi_trivial_spec(const GrowthFunction& h,
                                         const GrowthFunction& h_prime,
                                         const Nat& n) {
  return {h, h_prime, n, h.eval(n)};
}

namespace {

// payload(x) >= 2^x holds exactly when the payload value has more than x
// bits; avoids materializing 2^x.
bool payload_covers(const Nat& value, const Nat& x) {
  return Nat(bit_length(value)) >= x + 1;
}

// Longest output word the machine can emit below its threshold; the
// certificate coefficient must cover it.
Nat payload_length_bound(const QuasiTrivialSpec& spec) {
  if (spec.payload.monotone) {
    return Nat(codec::word_of_index(spec.payload.eval(spec.k_n)).size());
  }
  if (spec.k_n > 4096) {
    throw Refusal(
        "quasi-trivial: non-monotone payload needs a small threshold to "
        "bound output length");
  }
  Nat best = 0;
  for (Nat x = 0; x <= spec.k_n; ++x) {
    best = std::max(best, Nat(codec::word_of_index(spec.payload.eval(x)).size()));
  }
  return best;
}

}  // namespace

CertifiedMachine make_quasi_trivial(const QuasiTrivialSpec& spec) {
  for (const Nat& probe : {Nat(0), Nat(spec.k_n / 2), spec.k_n}) {
    if (!payload_covers(spec.payload.eval(probe), probe)) {
      throw ValidationError("quasi-trivial: payload below 2^x at probe x=" +
                            probe.str());
    }
  }
  CertifiedMachine cm;
  cm.kind = "quasi_trivial";
  const Nat k_n = spec.k_n;
  const auto payload = spec.payload;
  cm.semantic = SemanticMachine{
      [k_n, payload](const Nat& x) {
        return x <= k_n ? payload.eval(x) : Nat(0);
      },
      [k_n, payload](const Nat& x) {
        const Nat in_len = Nat(codec::word_of_index(x).size());
        if (x > k_n) return Nat(2 * in_len + 3);
        return Nat(2 * in_len +
                   Nat(codec::word_of_index(payload.eval(x)).size()) + 3);
      }};
  cm.certificate = {1, payload_length_bound(spec) + 4};
  cm.params["n"] = spec.n.str();
  cm.params["k_n"] = spec.k_n.str();
  cm.params["h"] = spec.threshold_source.name;
  cm.params["hprime"] = spec.payload.name;
  return cm;
}

MachineTable compile_quasi_trivial(const QuasiTrivialSpec& spec,
                                   std::size_t max_lines) {
  if (bit_length(spec.k_n) > 20) {
    throw Refusal("compile_quasi_trivial: threshold too large to tabulate");
  }
  const std::uint64_t k = spec.k_n.convert_to<std::uint64_t>();
  const std::size_t depth = codec::word_of_index(spec.k_n).size();

  MachineTable t;
  std::uint32_t next_state = 1;
  const auto fresh = [&next_state] { return next_state++; };
  const auto line = [&t](std::uint32_t st, Sym sc, Sym wr, Dir mv,
                         std::uint32_t nx) {
    t.lines.push_back({st, sc, wr, mv, nx});
  };

  // Shared tails: mismatch (erase everything, output 0) and the walk-back
  // after writing an output word.
  const std::uint32_t d_right = fresh();
  const std::uint32_t d_left = fresh();
  line(d_right, Sym::Zero, Sym::Blank, Dir::Right, d_right);
  line(d_right, Sym::One, Sym::Blank, Dir::Right, d_right);
  line(d_right, Sym::Blank, Sym::Blank, Dir::Left, d_left);
  line(d_left, Sym::Zero, Sym::Blank, Dir::Left, d_left);
  line(d_left, Sym::One, Sym::Blank, Dir::Left, d_left);
  line(d_left, Sym::Blank, Sym::Blank, Dir::Stay, 0);
  const std::uint32_t walk_back = fresh();
  line(walk_back, Sym::Zero, Sym::Zero, Dir::Left, walk_back);
  line(walk_back, Sym::One, Sym::One, Dir::Left, walk_back);
  line(walk_back, Sym::Blank, Sym::Blank, Dir::Right, 0);

  // Output chain for numeral j: erase the matched input leftward, then
  // write the payload word rightward and walk back to its left end.
  const auto emit_output = [&](std::uint64_t j) {
    const Word out = codec::word_of_index(spec.payload.eval(Nat(j)));
    const std::uint32_t erase = fresh();
    line(erase, Sym::Zero, Sym::Blank, Dir::Left, erase);
    line(erase, Sym::One, Sym::Blank, Dir::Left, erase);
    if (out.empty()) {
      line(erase, Sym::Blank, Sym::Blank, Dir::Stay, 0);
      return erase;
    }
    std::uint32_t prev = erase;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const Sym bit = out.at(i) == '1' ? Sym::One : Sym::Zero;
      const bool last = i + 1 == out.size();
      const std::uint32_t writer = last ? walk_back : fresh();
      line(prev, Sym::Blank, bit, last ? Dir::Left : Dir::Right, writer);
      prev = writer;
    }
    return erase;
  };

  // Trie over the canonical words of 0..k; the head reads rightward.
  // node state for prefix p exists iff index(p) <= k.
  struct Node {
    std::uint32_t state;
    Word prefix;
  };
  std::vector<Node> frontier;
  const std::uint32_t root = fresh();
  frontier.push_back({root, Word{}});
  while (!frontier.empty()) {
    std::vector<Node> next_frontier;
    for (const Node& node : frontier) {
      const Nat idx = codec::index_of_word(node.prefix);
      // Input ended here: this prefix is the numeral index(p) <= k.
      line(node.state, Sym::Blank, Sym::Blank, Dir::Stay,
           emit_output(idx.convert_to<std::uint64_t>()));
      for (char bit : {'0', '1'}) {
        Word child = node.prefix;
        child.push_back(bit);
        const Sym scanned = bit == '1' ? Sym::One : Sym::Zero;
        if (child.size() <= depth && codec::index_of_word(child) <= Nat(k)) {
          const std::uint32_t child_state = fresh();
          line(node.state, scanned, scanned, Dir::Right, child_state);
          next_frontier.push_back({child_state, std::move(child)});
        } else {
          line(node.state, scanned, scanned, Dir::Right, d_right);
        }
      }
      if (t.lines.size() > max_lines) {
        throw Refusal("compile_quasi_trivial: table budget exceeded");
      }
    }
    frontier = std::move(next_frontier);
  }

  // The machine starts at the trie root: renumber so the root is state 1.
  // Root was allocated after the shared tails, so swap ids 1 <-> root.
  for (Instruction& i : t.lines) {
    if (i.state == root) {
      i.state = 1;
    } else if (i.state == 1) {
      i.state = root;
    }
    if (i.next == root) {
      i.next = 1;
    } else if (i.next == 1) {
      i.next = root;
    }
  }
  t.n_states = next_state;
  auto violations = validate(t);
  if (!violations.empty()) {
    throw ValidationError("compile_quasi_trivial: bad table: " +
                          violations.front());
  }
  return t;
}

void Registry::add(CertifiedMachine machine) {
  const Nat index = machine.index;
  if (machines_.contains(index)) {
    throw Refusal("registry: index collision at " + index.str());
  }
  machines_.emplace(index, std::move(machine));
}

bool Registry::is_certified(const Nat& index) const {
  return machines_.contains(index);
}

const CertifiedMachine* Registry::lookup(const Nat& index) const {
  const auto it = machines_.find(index);
  return it == machines_.end() ? nullptr : &it->second;
}

std::vector<CertifiedMachine> register_family(
    Registry& registry, const std::vector<QuasiTrivialSpec>& specs) {
  if (specs.empty()) throw ValidationError("register_family: no specs");
  for (const QuasiTrivialSpec& spec : specs) {
    if (spec.threshold_source.name != specs.front().threshold_source.name ||
        spec.payload.name != specs.front().payload.name) {
      throw ValidationError("register_family: specs must share H and H'");
    }
  }
  const Nat slot = registry.next_template_slot();

  // Serialization index of the compiled template, recorded for reference
  // when the smallest member tabulates.
  std::string template_serial;
  const auto smallest = std::min_element(
      specs.begin(), specs.end(),
      [](const auto& a, const auto& b) { return a.k_n < b.k_n; });
  if (smallest->k_n <= 64) {
    try {
      template_serial =
          codec::index_of_word(serialize_table(compile_quasi_trivial(*smallest)))
              .str();
    } catch (const Refusal&) {
    }
  }

  std::vector<CertifiedMachine> out;
  for (const QuasiTrivialSpec& spec : specs) {
    CertifiedMachine cm = make_quasi_trivial(spec);
    cm.index = codec::ell_index(spec.n, slot);
    cm.params["template_slot"] = slot.str();
    if (!template_serial.empty()) {
      cm.params["template_serial_index"] = template_serial;
    }
    if (spec.k_n <= 48) {
      try {
        cm.table = compile_quasi_trivial(spec);
      } catch (const Refusal&) {
      }
    }
    registry.add(cm);
    out.push_back(std::move(cm));
  }
  registry.families_registered_ += 1;
  return out;
}

std::string Registry::to_json() const {
  ordered_json arr = ordered_json::array();
  for (const auto& [index, cm] : machines_) {
    ordered_json entry;
    entry["ell_index"] = index.str();
    entry["kind"] = cm.kind;
    entry["certificate"] = {{"k", cm.certificate.degree},
                            {"c", cm.certificate.coefficient.str()}};
    ordered_json params = ordered_json::object();
    for (const auto& [key, value] : cm.params) params[key] = value;
    entry["params"] = params;
    arr.push_back(entry);
  }
  ordered_json doc;
  doc["families"] = families_registered_.str();
  doc["machines"] = arr;
  return doc.dump(2) + "\n";
}

Registry Registry::from_json(const std::string& text) {
  const ordered_json doc = ordered_json::parse(text);
  Registry registry;
  registry.families_registered_ =
      nat_from_decimal(doc.at("families").get<std::string>());
  for (const auto& entry : doc.at("machines")) {
    const std::string kind = entry.at("kind").get<std::string>();
    const Nat index = nat_from_decimal(entry.at("ell_index").get<std::string>());
    CertifiedMachine cm;
    if (kind == "trivial") {
      cm = make_trivial();
    } else if (kind == "identity") {
      cm = make_identity();
    } else if (kind == "constant_zero") {
      cm = make_constant_zero();
    } else if (kind == "quasi_trivial") {
      const auto& params = entry.at("params");
      const auto h = lookup_growth_function(params.at("h").get<std::string>());
      const auto hp =
          lookup_growth_function(params.at("hprime").get<std::string>());
      if (!h || !hp) {
        throw ValidationError("registry load: unknown growth function name");
      }
      const Nat n = nat_from_decimal(params.at("n").get<std::string>());
      QuasiTrivialSpec spec = make_quasi_trivial_spec(*h, *hp, n);
      cm = make_quasi_trivial(spec);
      cm.index = index;
      for (const auto& [key, value] : params.items()) {
        cm.params[key] = value.get<std::string>();
      }
      const Nat slot =
          nat_from_decimal(cm.params.at("template_slot"));
      if (codec::ell_index(n, slot) != index) {
        throw ValidationError("registry load: index does not match slot");
      }
      if (spec.k_n <= 48) {
        try {
          cm.table = compile_quasi_trivial(spec);
        } catch (const Refusal&) {
        }
      }
    } else {
      throw ValidationError("registry load: unknown kind " + kind);
    }
    if (cm.index != index) {
      throw ValidationError("registry load: index mismatch for " + kind);
    }
    registry.add(std::move(cm));
  }
  return registry;
}

}  // namespace overtake::factory
