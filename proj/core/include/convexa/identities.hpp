#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "convexa/eval.hpp"
#include "convexa/lattice.hpp"
#include "convexa/term.hpp"

namespace convexa {

enum class AxiomTag { S, U, B, SD2, D2D, Sj, Uj, Bj, D2Dj, theta };

std::string to_string(AxiomTag tag);
// Throws UnknownTag.
AxiomTag parse_axiom_tag(std::string_view name);

struct AxiomReport {
  AxiomTag tag = AxiomTag::S;
  bool holds = true;
  // Names of the witness positions, e.g. {"a","b","b0","b1","c"}.
  std::vector<std::string> variables;
  std::optional<std::vector<Element>> witness;
  std::uint64_t nodes = 0;
};

// The identities S, U, B, SD2, D2D and two extra tags used for negative
// checks: DIST (distributivity) and MOD (modularity).
Identity builtin_identity(std::string_view tag);
QuasiIdentity theta_quasi_identity();
// Identity or quasi-identity by tag ("theta" gives the latter).
std::variant<Identity, QuasiIdentity> builtin_term(std::string_view tag);

// Identity tags S, U, B, SD2, D2D.  Throws BudgetError.
AxiomReport satisfies_identity(const FiniteLattice& l, AxiomTag tag, const CheckOptions& opts = {});

// Tags Sj, Uj, Bj (tuples over J(L)) and D2Dj (p in J(L), a, b, c in L).
AxiomReport satisfies_jirr_axiom(const FiniteLattice& l, AxiomTag tag);

// D2Dj, Sj, Uj, Bj in that order; the first failure is returned.
AxiomReport satisfies_SUB_fast(const FiniteLattice& l);
// S, U, B by brute force; the first failure is returned.
AxiomReport satisfies_SUB_bruteforce(const FiniteLattice& l, const CheckOptions& opts = {});

// Exhaustive in the order (a, b, c, a', b', c'); the witness is the
// lexicographically least violating assignment.  The budget bounds the
// number of (a, b, c, a', b') nodes visited.  Throws BudgetError.
AxiomReport check_theta(const FiniteLattice& l, const CheckOptions& opts = {});

struct ThetaSampling {
  std::uint64_t samples = 0;  // premise-satisfying assignments drawn
  std::uint64_t seed = 0;
  std::optional<std::vector<Element>> counterexample;
};

// Draws assignments that satisfy every premise of (theta) and tests the
// conclusion on each.
ThetaSampling sample_theta(const FiniteLattice& l, std::uint64_t samples, std::uint64_t seed);

// True iff `witness` is a genuine violation of the axiom, re-evaluated
// from the definitions (eval_term for identities).
bool witness_violates(const FiniteLattice& l, AxiomTag tag, const std::vector<Element>& witness);

}  // namespace convexa
