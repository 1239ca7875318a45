#include "overtake/growth.hpp"

#include <algorithm>

#include "overtake/codec.hpp"

namespace overtake::growth {

namespace {

// x^m < 2^x, with 0^0 == 1.
bool power_below_exp(const Nat& x, std::uint32_t m) {
  if (bit_length(x) > 32) {
    // x^m has about m*log2(x) bits against x bits for 2^x; at this size the
    // exponential has won for every m the scans here can reach.
    return true;
  }
  const Nat lhs = pow_nat(x, m, /*ceiling_bits=*/1 << 20);
  const std::uint64_t xs = x.convert_to<std::uint64_t>();
  return lhs < pow2(xs);
}

// (y+1)^m <= 2*y^m: from any y where this holds and y^m < 2^y, induction
// gives y'^m < 2^y' for all y' >= y, since (1 + 1/y)^m only shrinks.
bool tail_certified(const Nat& y, std::uint32_t m) {
  if (y == 0) return m == 0;
  const Nat a = pow_nat(y + 1, m, 1 << 20);
  const Nat b = pow_nat(y, m, 1 << 20);
  return a <= 2 * b;
}

}  // namespace

Nat g0(std::uint32_t m, MuMode mode) {
  if (mode == MuMode::First) {
    for (Nat x = 0;; ++x) {
      if (power_below_exp(x, m)) return x;
    }
  }
  for (Nat x = 0;; ++x) {
    if (!power_below_exp(x, m)) continue;
    // Scan forward until the inductive tail takes over.
    bool ok = true;
    Nat y = x;
    while (!tail_certified(y, m)) {
      ++y;
      if (!power_below_exp(y, m)) {
        ok = false;
        break;
      }
    }
    if (ok) return x;
  }
}

namespace {

// Closed forms for the first levels keep the recursion affordable:
// fgh(1, n) = 2n + 1, fgh(2, n) = 2^(n+1) * (n+1) - 1 (both are the
// unfolded iterations; tests cross-check against the literal recursion).
Nat fgh2(const Nat& n, std::uint64_t ceiling_bits) {
  if (bit_length(n) + 1 > ceiling_bits || bit_length(n) > 40) {
    throw OverflowRefusal("fgh: level-2 value exceeds ceiling at n=" +
                          (bit_length(n) <= 128 ? n.str() : std::string("2^") +
                           std::to_string(bit_length(n) - 1) + "-ish"));
  }
  const std::uint64_t e = n.convert_to<std::uint64_t>() + 1;
  if (e + bit_length(n) + 1 > ceiling_bits) {
    throw OverflowRefusal("fgh: level-2 value exceeds ceiling");
  }
  return (Nat(1) << e) * (n + 1) - 1;
}

}  // namespace

Nat fgh(std::uint32_t k, const Nat& n, std::uint64_t ceiling_bits) {
  require_bits(n, ceiling_bits, "fgh argument");
  switch (k) {
    case 0:
      return n + 1;
    case 1:
      return 2 * n + 1;
    case 2:
      return fgh2(n, ceiling_bits);
    default: {
      // n+1-fold iterate of the previous level, starting at n.
      if (bit_length(n) > 40) {
        throw OverflowRefusal("fgh: iteration count exceeds any budget");
      }
      const std::uint64_t iterations = n.convert_to<std::uint64_t>() + 1;
      Nat x = n;
      for (std::uint64_t i = 0; i < iterations; ++i) {
        x = fgh(k - 1, x, ceiling_bits);
      }
      return x;
    }
  }
}

Nat fgh_omega(const Nat& n, std::uint64_t ceiling_bits) {
  if (bit_length(n) > 32) {
    throw OverflowRefusal("fgh_omega: level index too large");
  }
  return fgh(n.convert_to<std::uint32_t>(), n, ceiling_bits);
}

GrowthFunction monotonize(const GrowthFunction& h) {
  auto h_eval = h.eval;
  return GrowthFunction{"monotonize(" + h.name + ")",
                        [h_eval](const Nat& n) {
                          Nat best = h_eval(0);
                          for (Nat j = 1; j <= n; ++j) {
                            best = std::max(best, h_eval(j));
                          }
                          return n + best;
                        },
                        true};
}

GrowthFunction derive_hprime(const GrowthFunction& h,
                             std::uint64_t ceiling_bits) {
  GrowthFunction h_star = monotonize(h);
  auto star_eval = h_star.eval;
  return GrowthFunction{"hprime(" + h.name + ")",
                        [star_eval, ceiling_bits](const Nat& n) {
                          return star_eval(fgh_omega(n, ceiling_bits));
                        },
                        true};
}

DominationReport dominates_on_window(const GrowthFunction& f,
                                     const GrowthFunction& g, const Nat& lo,
                                     const Nat& hi) {
  if (hi < lo) throw ValidationError("dominates_on_window: empty window");
  DominationReport report{lo, hi, std::nullopt, {}};
  for (Nat x = lo; x <= hi; ++x) {
    if (f.eval(x) < g.eval(x)) report.failures.push_back(x);
  }
  if (report.failures.empty()) {
    report.witness = Nat(0);
  } else if (report.failures.back() < hi) {
    report.witness = report.failures.back() + 1;
  }
  return report;
}

std::optional<Nat> g_of_machine(const factory::CertifiedMachine& machine,
                                const MuSearchOptions& options) {
  if (machine.kind == "quasi_trivial") {
    // Structural shortcut: below the threshold the output stays >= 2^x
    // (probed at both ends and the middle), at threshold + 1 it is 0.
    const Nat k_n = nat_from_decimal(machine.params.at("k_n"));
    for (const Nat& probe : {Nat(0), Nat(k_n / 2), k_n}) {
      const Nat value = machine.semantic->eval(probe);
      if (Nat(bit_length(value)) < probe + 1) {
        throw ValidationError("g_of_machine: payload probe below 2^x");
      }
    }
    return k_n + 1;
  }
  for (Nat x = 0; x <= options.max_x; ++x) {
    const factory::EvalRecord rec =
        machine.eval_checked(x, options.run_budget);
    // value < 2^x, compared by numeral value via bit length.
    if (Nat(bit_length(rec.value)) < x + 1) return x;
  }
  return std::nullopt;
}

std::optional<Nat> g_at_index(const Nat& index,
                              const factory::Registry& registry,
                              const MuSearchOptions& options) {
  const factory::CertifiedMachine* machine = registry.lookup(index);
  if (machine == nullptr) return Nat(0);
  return g_of_machine(*machine, options);
}

std::optional<Nat> g_star(
    const std::vector<factory::CertifiedMachine>& enumeration, std::size_t m,
    const MuSearchOptions& options) {
  if (m >= enumeration.size()) {
    throw ValidationError("g_star: position beyond the enumeration");
  }
  return g_of_machine(enumeration[m], options);
}

CounterexampleFamily build_counterexample_family(
    const GrowthFunction& h, const Nat& n_lo, const Nat& n_hi,
    factory::Registry& registry, std::uint64_t ceiling_bits) {
  if (n_hi < n_lo) {
    throw ValidationError("build_counterexample_family: empty range");
  }
  const GrowthFunction h_prime = derive_hprime(h, ceiling_bits);
  const GrowthFunction h_star = monotonize(h);
  const auto payload = lookup_growth_function("pow4p1");

  CounterexampleFamily result;
  std::vector<factory::QuasiTrivialSpec> specs;
  std::vector<Nat> built_n;
  for (Nat n = n_lo; n <= n_hi; ++n) {
    CounterexampleRow row;
    row.n = n;
    try {
      row.h_prime_n = h_prime.eval(n);
      specs.push_back(factory::make_quasi_trivial_spec(h_prime, *payload, n));
      row.built = true;
      built_n.push_back(n);
    } catch (const OverflowRefusal& refusal) {
      row.refusal = refusal.what();
    }
    result.rows.push_back(std::move(row));
  }
  if (specs.empty()) return result;

  const std::vector<factory::CertifiedMachine> machines =
      factory::register_family(registry, specs);

  std::size_t mi = 0;
  for (CounterexampleRow& row : result.rows) {
    if (!row.built) continue;
    const factory::CertifiedMachine& cm = machines[mi++];
    row.index = cm.index;
    const auto g_value = g_at_index(cm.index, registry);
    if (!g_value) {
      row.built = false;
      row.refusal = "g unresolved at family index";
      continue;
    }
    row.g_value = *g_value;
    if (row.g_value != row.h_prime_n + 1) {
      throw ValidationError(
          "counterexample family: g(N(n)) != h'(n) + 1 at n=" + row.n.str());
    }
    row.h_at_index = h.eval(row.index);
    row.h_star_at_index = h_star.eval(row.index);
    row.g_exceeds_h = row.g_value > row.h_at_index;
    row.g_exceeds_h_star = row.g_value > row.h_star_at_index;
  }

  // Report g(N(.)) vs h(N(.)) across the built prefix of the range.
  result.g_vs_h.lo = built_n.empty() ? n_lo : built_n.front();
  result.g_vs_h.hi = built_n.empty() ? n_lo : built_n.back();
  for (const CounterexampleRow& row : result.rows) {
    if (row.built && !row.g_exceeds_h) result.g_vs_h.failures.push_back(row.n);
  }
  if (result.g_vs_h.failures.empty()) {
    result.g_vs_h.witness = Nat(0);
  } else if (!built_n.empty() &&
             result.g_vs_h.failures.back() < built_n.back()) {
    result.g_vs_h.witness = result.g_vs_h.failures.back() + 1;
  }
  return result;
}

}  // namespace overtake::growth
