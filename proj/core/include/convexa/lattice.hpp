#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "convexa/poset.hpp"

namespace convexa {

// A finite lattice with precomputed join and meet tables.
class FiniteLattice {
 public:
  FiniteLattice() = default;

  // Throws NotALattice naming the first pair (in ascending order) with no
  // least upper bound or greatest lower bound.  The empty order is rejected.
  static FiniteLattice from_order(Poset order);
  // Trusted construction from precomputed tables (row-major, n*n).
  static FiniteLattice from_tables(Poset order, std::vector<Element> join, std::vector<Element> meet,
                                   Element bottom, Element top);

  std::size_t size() const { return n_; }
  const Poset& order() const { return order_; }

  bool leq(Element x, Element y) const { return order_.leq(x, y); }
  Element join(Element x, Element y) const { return join_[x * n_ + y]; }
  Element meet(Element x, Element y) const { return meet_[x * n_ + y]; }
  Element bottom() const { return bottom_; }
  Element top() const { return top_; }

  const std::vector<Element>& join_table() const { return join_; }
  const std::vector<Element>& meet_table() const { return meet_; }

  // Optional human-readable names, one per element (may be empty).
  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels);
  std::string label(Element x) const;

 private:
  std::size_t n_ = 0;
  Poset order_;
  std::vector<Element> join_, meet_;
  Element bottom_ = 0, top_ = 0;
  std::vector<std::string> labels_;
};

FiniteLattice build_lattice(std::size_t n, std::span<const Pair> strict_pairs);
FiniteLattice build_lattice(std::size_t n, std::initializer_list<Pair> strict_pairs);

// Checks commutativity, associativity, idempotence and absorption of the
// tables, plus agreement with the order.  Returns a description of the
// first failure.
std::optional<std::string> lattice_law_violation(const FiniteLattice& l);

struct JirrInfo {
  std::vector<Element> jirr;                       // ascending
  std::vector<std::optional<Element>> lower_cover;  // per element; set iff jirr
  ElementSet is_jirr;

  std::size_t index_of(Element j) const;  // position in jirr
};

JirrInfo join_irreducibles(const FiniteLattice& l);

// Closure of `generators` under join and meet.  The result lists the
// member elements of l in ascending order in `members`; element i of the
// returned lattice is members[i].
struct Sublattice {
  FiniteLattice lattice;
  std::vector<Element> members;
};
Sublattice sublattice(const FiniteLattice& l, std::span<const Element> generators);

FiniteLattice chain_lattice(std::size_t n);
// M_k: bottom 0, atoms 1..k, top k+1.
FiniteLattice diamond_lattice(std::size_t k);
// N5: 0 < a=1 < b=2 < 1=4, 0 < c=3 < 1=4.
FiniteLattice pentagon_lattice();
FiniteLattice boolean_lattice(std::size_t atoms);

FiniteLattice read_lattice(std::istream& in, std::string_view source = "<stdin>");
FiniteLattice read_lattice_file(const std::string& path);
FiniteLattice parse_lattice(std::string_view text, std::string_view source = "<string>");
void write_lattice(std::ostream& out, const FiniteLattice& l);

}  // namespace convexa
