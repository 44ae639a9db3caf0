#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "convexa/element_set.hpp"

namespace convexa {

using Pair = std::pair<Element, Element>;

// Finite partial order on {0, ..., n-1}.  Immutable once built.
class Poset {
 public:
  Poset() = default;

  // Reflexive-transitive closure of the given strict pairs.
  // Throws RangeError on out-of-range ids and CycleError if the closure
  // is not antisymmetric.
  static Poset from_relation(std::size_t n, std::span<const Pair> strict_pairs);
  // up[x] = {y : x <= y} for an order the caller already knows to be
  // transitive.  Reflexivity and antisymmetry are still checked.
  static Poset from_up_sets(std::vector<ElementSet> up);

  std::size_t size() const { return up_.size(); }
  bool empty() const { return up_.empty(); }

  bool leq(Element x, Element y) const { return up_[x].test(y); }
  bool less(Element x, Element y) const { return x != y && up_[x].test(y); }
  bool comparable(Element x, Element y) const { return leq(x, y) || leq(y, x); }

  // up(x) = {y : x <= y}, down(x) = {y : y <= x}; both contain x.
  const ElementSet& up(Element x) const { return up_[x]; }
  const ElementSet& down(Element x) const { return down_[x]; }

  const std::vector<Element>& upper_covers(Element x) const { return upper_covers_[x]; }
  const std::vector<Element>& lower_covers(Element x) const { return lower_covers_[x]; }

  // All cover pairs (lo, hi), ascending.
  std::vector<Pair> covers() const;
  // All strict pairs (lo, hi), ascending.
  std::vector<Pair> strict_pairs() const;

  // Order induced on `subset`; element i of the result is subset[i].
  Poset induced(std::span<const Element> subset) const;
  Poset dual() const;
  // Element i of the result is this element perm[i].
  Poset relabel(std::span<const Element> perm) const;

  std::vector<Element> minimal_elements() const;
  std::vector<Element> maximal_elements() const;

  bool operator==(const Poset& other) const { return up_ == other.up_; }

 private:
  std::vector<ElementSet> up_;
  std::vector<ElementSet> down_;
  std::vector<std::vector<Element>> upper_covers_;
  std::vector<std::vector<Element>> lower_covers_;
};

Poset build_poset(std::size_t n, std::span<const Pair> strict_pairs);
Poset build_poset(std::size_t n, std::initializer_list<Pair> strict_pairs);

Poset chain_poset(std::size_t n);
Poset antichain_poset(std::size_t n);
// 0 < 1, 2 < 3.
Poset square_poset();
// The n-crown C_n: a_i = 2i, b_i = 2i+1, a_i < b_j iff i in {j, j+1} mod n.
Poset crown_poset(std::size_t n);

bool is_order_convex(const Poset& p, const ElementSet& x);
// Smallest convex superset.
ElementSet convex_hull(const Poset& p, const ElementSet& x);

using PathSeq = std::vector<Element>;

// Breadth-first over the undirected cover graph, neighbours visited in
// ascending id order.
std::optional<PathSeq> find_path(const Poset& p, Element a, Element b);

// Connected component label per element (labels are the least member).
std::vector<Element> cover_components(const Poset& p);

// A cycle in the undirected cover graph, as a closed walk of distinct
// vertices (first vertex not repeated), or nothing if the graph is a forest.
std::optional<std::vector<Element>> find_cover_cycle(const Poset& p);

bool is_tree_like(const Poset& p);

struct Crown {
  // (a_i, b_i), i in Z/nZ.
  std::vector<Pair> pairs;
  std::size_t n() const { return pairs.size(); }
};

bool is_crown(const Poset& p, const Crown& c);

struct CrownSearch {
  std::optional<Crown> crown;
  bool exhausted = true;  // false if the node budget ran out
  std::uint64_t nodes = 0;
};

// Search n = 3 .. |P|/2 in order, tuples (a_0, b_0, a_1, b_1, ...) in
// lexicographic order; the first hit is returned.
CrownSearch search_crown(const Poset& p, std::uint64_t node_budget = UINT64_MAX);
std::optional<Crown> find_crown(const Poset& p);
bool is_crown_free(const Poset& p);

}  // namespace convexa
