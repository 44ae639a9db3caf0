#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "convexa/eval.hpp"
#include "convexa/poset.hpp"
#include "convexa/term.hpp"

namespace convexa {

struct PosetCatalog {
  std::size_t size = 0;
  std::vector<Poset> posets;  // canonical forms, ascending by canonical code
};

// Canonical code: positions 1..n-1 in turn, each contributing the bits
// (j <= i, i <= j) for j < i.  Smaller codes sort first.
using CanonicalCode = std::vector<bool>;

// Relabelling minimising the code among orderings compatible with a
// refined degree invariant; isomorphic posets get equal forms.
Poset canonical_form(const Poset& p);
CanonicalCode canonical_code(const Poset& p);
bool isomorphic(const Poset& a, const Poset& b);

// All posets on k points up to isomorphism.  Throws SizeError above cap.
PosetCatalog enumerate_posets(std::size_t k, std::size_t cap = 7);

bool is_connected(const Poset& p);

// s <= t in the free lattice (Whitman's conditions).
bool free_leq(const Term& s, const Term& t);

// Points needed to witness an element of s(X) in some Co(P):
// 1 for a variable, f(u)+f(v)-1 for a meet, f(u)+f(v)+1 for a join.
std::size_t witness_bound(const Term& s);

enum class BoundMode {
  witness,     // per direction, witness_bound of the smaller side
  node_count,  // node count of the larger term, both directions
};

struct DecideOptions {
  std::optional<std::size_t> max_size;  // overrides the bound
  std::size_t cap = 7;
  BoundMode mode = BoundMode::witness;
};

struct DecideResult {
  bool valid = true;
  std::size_t bound = 0;         // largest poset size searched
  std::size_t posets_checked = 0;
  std::vector<std::string> variables;
  // When invalid: the poset, the sets assigned to `variables`, and which
  // inclusion fails ("s<=t" or "t<=s").
  std::optional<Poset> witness;
  std::vector<ElementSet> assignment;
  std::string failing_direction;
};

// Checks s = t over Co(P) for connected P up to the bound.  Only the
// directions not already true in the free lattice are searched, and each
// variable ranges over convex hulls of at most as many points as it has
// occurrences on the left of the inclusion.  Throws SizeError naming the
// required size when it exceeds the cap.
DecideResult decide_identity_in_SUB(const Term& s, const Term& t, const DecideOptions& opts = {});

enum class PosetFilter { all, crown_free, has_crown };

PosetFilter parse_poset_filter(const std::string& name);
std::string to_string(PosetFilter f);

struct QuasiSearchResult {
  std::optional<Poset> poset;
  std::vector<ElementSet> assignment;
  std::size_t posets_checked = 0;
  std::uint64_t nodes = 0;
  bool budget_exceeded = false;
};

// Ascending size, canonical order; within a poset the lexicographically
// least violating assignment of Co(P) elements.  (theta) uses the
// dedicated checker.  Running out of budget is reported, not thrown.
QuasiSearchResult search_quasi_counterexample(const QuasiIdentity& q, std::size_t max_size,
                                              PosetFilter filter, std::uint64_t budget,
                                              std::size_t cap = 7);

}  // namespace convexa
