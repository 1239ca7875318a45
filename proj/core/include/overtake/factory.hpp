#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "overtake/growth_function.hpp"
#include "overtake/machine.hpp"
#include "overtake/nat.hpp"

namespace overtake::factory {

// A machine given by its input/output semantics together with a claimed
// step count per input; the ground truth for machines whose values are too
// large to ever run through a compiled table.
struct SemanticMachine {
  std::function<Nat(const Nat&)> eval;
  std::function<Nat(const Nat&)> time_model;
};

// Claim: op_time(x) <= c*(|x|+1)^k + c and |output word| <= c*(|x|+1)^k + c,
// with |x| the input word length. Checked on every recorded run.
struct PolyCertificate {
  std::uint32_t degree = 1;
  Nat coefficient = 1;

  Nat bound(std::size_t input_len) const;
};

struct EvalRecord {
  Nat value;
  Nat op_time;
};

// A machine bundled with a polynomial-time certificate and its index in the
// pair numbering. Machines may carry a semantic tier, a compiled table, or
// both; where both exist they agree exactly.
struct CertifiedMachine {
  std::string kind;
  Nat index;
  PolyCertificate certificate;
  std::optional<SemanticMachine> semantic;
  std::optional<MachineTable> table;
  std::map<std::string, std::string> params;

  // Evaluate at numeral x, preferring the semantic tier, verifying the
  // certificate against the claimed or measured op_time and the output
  // length. Throws CertificateViolation when the bound breaks.
  EvalRecord eval_checked(const Nat& x, std::uint64_t budget = 1 << 20) const;
};

// The identity machine: a one-line table plus semantics, certificate k=1.
CertifiedMachine make_identity();
// The constant-zero machine: erases its input and halts on a blank square.
CertifiedMachine make_constant_zero();
// The trivial machine (empty table), registered at pair index <0,0>.
CertifiedMachine make_trivial();

// Parameters of one quasi-trivial machine: below the threshold k_n = H(n)
// it mimics the payload H', above it it outputs 0. The payload must satisfy
// H'(x) >= 2^x up to the threshold (probed, not proven).
struct QuasiTrivialSpec {
  GrowthFunction threshold_source;  // H
  GrowthFunction payload;           // H'
  Nat n;
  Nat k_n;
};

QuasiTrivialSpec make_quasi_trivial_spec(const GrowthFunction& h,
                                         const GrowthFunction& h_prime,
                                         const Nat& n);

// Semantic tier. Throws ValidationError if a payload probe falls below 2^x.
CertifiedMachine make_quasi_trivial(const QuasiTrivialSpec& spec);

// Lookup-table tier, exact on [0, k_n + margin]; refuses (Refusal) when the
// table would exceed the line budget.
MachineTable compile_quasi_trivial(const QuasiTrivialSpec& spec,
                                   std::size_t max_lines = 1 << 16);

// The registry stands in for the nonrecursive set of poly machines: an
// index is "in P" exactly when a certified machine is registered at it.
// Single writer, many readers; machines are immutable once registered.
class Registry {
 public:
  // Throws Refusal on index collision.
  void add(CertifiedMachine machine);

  bool is_certified(const Nat& index) const;
  const CertifiedMachine* lookup(const Nat& index) const;
  const std::map<Nat, CertifiedMachine>& machines() const { return machines_; }

  // Next free template slot for a registered family (0, 1, ...).
  Nat next_template_slot() const { return families_registered_; }

  std::string to_json() const;
  static Registry from_json(const std::string& text);

  // Families registered so far; bumped by register_family.
  friend std::vector<CertifiedMachine> register_family(
      Registry& registry, const std::vector<QuasiTrivialSpec>& specs);

 private:
  std::map<Nat, CertifiedMachine> machines_;
  Nat families_registered_ = 0;
};

// Register a family of quasi-trivial machines sharing H and H' and varying
// only in n. The family is keyed by a compact template slot, so member
// indexes follow the pair-code index law ell_index(n, slot) = a*n + b
// exactly; the serialization index of the compiled template (when a member
// compiles) is recorded in the entry parameters for reference.
std::vector<CertifiedMachine> register_family(
    Registry& registry, const std::vector<QuasiTrivialSpec>& specs);

}  // namespace overtake::factory
