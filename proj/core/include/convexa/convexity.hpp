#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "convexa/lattice.hpp"
#include "convexa/poset.hpp"
#include "convexa/term.hpp"

namespace convexa {

// An order-convex subset of a poset.  The poset must outlive the set.
class ConvexSet {
 public:
  // Throws ConvexityViolation if `members` is not order-convex.
  ConvexSet(const Poset& base, ElementSet members);

  const Poset& base() const { return *base_; }
  const ElementSet& members() const { return members_; }
  bool operator==(const ConvexSet& o) const { return members_ == o.members_; }

 private:
  const Poset* base_;
  ElementSet members_;
};

// X u Y u {z : x < z < y for some (x, y) in X*Y or Y*X}.
ElementSet convex_join(const Poset& p, const ElementSet& x, const ElementSet& y);
ConvexSet convex_join(const ConvexSet& x, const ConvexSet& y);

// Evaluates a term in Co(P) with set operations.  Assigned sets must be
// convex (not checked).  Throws UnboundVariable.
ElementSet eval_convex(const Poset& p, const Term& t, const std::map<std::string, ElementSet>& a);

// Evaluates `t` in Co(Q) for the order induced on Q, at the sets X_i & Q.
// The result is a subset of Q, expressed over the points of P.
ElementSet restrict_eval(const Poset& p, const ElementSet& q, const Term& t,
                         const std::map<std::string, ElementSet>& a);

struct CoLatticeLimits {
  std::size_t max_points = 20;       // 2^|P| subsets are scanned
  std::size_t max_elements = 4096;   // join/meet tables are |Co(P)|^2
};

// Co(P) with elements numbered by ascending bitmask.
struct CoLattice {
  Poset base;
  FiniteLattice lattice;
  std::vector<std::uint64_t> masks;

  ElementSet set(Element i) const;
  // Throws RangeError if the set is not convex.
  Element index_of(const ElementSet& s) const;
  Element index_of_mask(std::uint64_t m) const;
};

// Throws SizeError above either limit.
CoLattice co_lattice(const Poset& p, const CoLatticeLimits& limits = {});

// Number of convex subsets without building the lattice.
std::size_t count_convex_sets(const Poset& p, std::size_t max_points = 20);

}  // namespace convexa
