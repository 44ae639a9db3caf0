#pragma once

#include <optional>
#include <string>
#include <vector>

#include "convexa/jdep.hpp"
#include "convexa/lattice.hpp"
#include "convexa/poset.hpp"

namespace convexa {

// <p> (zero, a == b == p), <a,b,-> and <a,b,+> with a D b.
struct RPoint {
  enum class Kind { zero, minus, plus };
  Kind kind;
  Element a, b;

  Element e() const { return b; }
  bool operator==(const RPoint&) const = default;
};

std::string label(const RPoint& r);  // "<p>", "<a,b,+>", "<a,b,->"

struct RPoset {
  std::vector<RPoint> points;  // zero points, then minus, then plus
  std::vector<Pair> prec;      // generating relation, ascending
  Poset order;
  // Pairs of prec that are not covers of order.  Empty for small lattices;
  // Co(5-chain) already has four.
  std::vector<Pair> shortcuts;

  std::vector<std::string> labels() const;
  // Index of a point; throws RangeError if absent.
  Element index_of(const RPoint& r) const;
};

// Points of J(L) whose Udav-Bond labels are swapped.
using PartitionFlips = std::vector<Element>;

// Throws NotInSUB, AcyclicityViolation (prec has a cycle).  `jd` must
// check SUB.
RPoset build_R(const JoinDependency& jd, const PartitionFlips& flips = {});

struct EmbeddingResult {
  Poset target;
  std::vector<ElementSet> map;  // one convex set per lattice element
  bool verified = false;
  std::string failure;          // empty when verified
};

// Convexity of every image, bounds, injectivity, meets and joins over all
// pairs.  Returns a description of the first failure.
std::optional<std::string> embedding_failure(const FiniteLattice& l, const Poset& target,
                                             const std::vector<ElementSet>& map);

// phi(x) = {r : e(r) <= x}.  Throws ConvexityViolation or
// HomomorphismViolation when the check fails.
EmbeddingResult phi(const FiniteLattice& l, const RPoset& r);

// 2n^2 - 5n + 4, or 1 for n <= 1.
std::size_t size_bound(std::size_t njirr);

using GammaSeq = std::vector<Element>;

std::string label(const GammaSeq& s);  // "[j0.j1.j2]"

struct GammaOptions {
  // Longest sequence allowed; default is the longest D-path plus |J(L)| + 1.
  std::optional<std::size_t> depth_cap;
  std::size_t max_points = 200'000;
};

struct GammaPoset {
  std::vector<GammaSeq> seqs;                 // by length, then lexicographic
  std::vector<std::optional<Element>> parent; // index of the truncation
  std::vector<std::vector<Element>> A, B;     // A_alpha, B_alpha
  std::vector<Pair> prec;
  Poset order;

  std::vector<std::string> labels() const;
};

// Throws DCycleError, DepthCapExceeded, SizeError, AcyclicityViolation,
// TreeLikenessViolation, NotInSUB.
GammaPoset build_Gamma(const JoinDependency& jd, const GammaOptions& opts = {},
                       const PartitionFlips& flips = {});

// psi(x) = {alpha : e(alpha) <= x}; also checks tree-likeness and, within a
// node budget, crown-freeness of the target.
EmbeddingResult psi(const FiniteLattice& l, const GammaPoset& g);

// pi: singleton to <p>, longer sequences to <e(truncation),e(alpha),+/->.
std::vector<Element> project_to_R(const GammaPoset& g, const RPoset& r);
// First prec edge of Gamma whose image is not a prec edge of R.
std::optional<Pair> projection_violation(const GammaPoset& g, const RPoset& r);

}  // namespace convexa
