#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "convexa/lattice.hpp"
#include "convexa/term.hpp"

namespace convexa {

// Values of the declared variables, in declaration order.
using Assignment = std::vector<Element>;

Element eval_term(const FiniteLattice& l, const Term& t, const std::map<std::string, Element>& a);

// A set of terms flattened into straight-line code over slots.  Slots
// 0..k-1 hold the variables; shared subterms are computed once.
// Instructions are grouped by level, the largest variable position they
// depend on, so a lexicographic sweep only recomputes the levels at or
// after the position that changed.
class TermProgram {
 public:
  TermProgram(const std::vector<Term>& roots, const std::vector<std::string>& variables);

  struct Instr {
    bool is_join;
    std::uint32_t a, b, dst;
  };

  std::size_t variable_count() const { return nvars_; }
  std::size_t slot_count() const { return nslots_; }
  std::uint32_t output(std::size_t root) const { return outputs_[root]; }
  // Level of each root's value (max variable position it reads), or 0.
  std::size_t output_level(std::size_t root) const { return output_levels_[root]; }

  // Runs all instructions of levels [level, level_hi].
  void run_levels(const FiniteLattice& l, std::vector<Element>& slots, std::size_t level,
                  std::size_t level_hi) const {
    const Element* jt = l.join_table().data();
    const Element* mt = l.meet_table().data();
    const std::size_t n = l.size();
    for (std::size_t i = level_begin_[level]; i < level_begin_[level_hi + 1]; ++i) {
      const Instr& in = code_[i];
      slots[in.dst] = (in.is_join ? jt : mt)[slots[in.a] * n + slots[in.b]];
    }
  }
  void run(const FiniteLattice& l, std::vector<Element>& slots) const {
    if (nvars_ > 0) run_levels(l, slots, 0, nvars_ - 1);
  }

  const std::vector<Instr>& code() const { return code_; }

 private:
  std::size_t nvars_ = 0, nslots_ = 0;
  std::vector<Instr> code_;
  std::vector<std::size_t> level_begin_;  // size nvars_ + 1
  std::vector<std::uint32_t> outputs_;
  std::vector<std::size_t> output_levels_;
};

struct CheckOptions {
  // Identities: refuse sweeps with more than this many assignments.
  // Quasi-identities: refuse to visit more than this many search nodes.
  std::uint64_t budget = 100'000'000;
};

struct CheckResult {
  bool holds = true;
  std::vector<std::string> variables;
  // Lexicographically least failing assignment, in `variables` order.
  std::optional<Assignment> counterexample;
  std::uint64_t nodes = 0;
};

// Variables are those of s followed by new ones of t.  Throws BudgetError.
CheckResult check_identity(const FiniteLattice& l, const Term& s, const Term& t,
                           const CheckOptions& opts = {});
CheckResult check_identity(const FiniteLattice& l, const Identity& id, const CheckOptions& opts = {});

// Depth-first sweep in declared variable order; each premise is tested as
// soon as its variables are bound and failing branches are cut.
CheckResult check_quasi_identity(const FiniteLattice& l, const std::vector<Inequality>& premises,
                                 const Inequality& conclusion, const CheckOptions& opts = {});
CheckResult check_quasi_identity(const FiniteLattice& l, const QuasiIdentity& q,
                                 const CheckOptions& opts = {});

// |L|^k, saturating at UINT64_MAX.
std::uint64_t assignment_count(std::size_t lattice_size, std::size_t vars);

}  // namespace convexa
