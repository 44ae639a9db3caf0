#pragma once

#include <optional>
#include <span>
#include <vector>

#include "convexa/lattice.hpp"

namespace convexa {

// p <= b | c, with flags.
struct JoinCover {
  Element p, b, c;
  bool nontrivial;    // p not below b, p not below c
  bool minimal_in_b;  // no x < b with p <= x | c
  bool minimal_in_c;

  bool operator==(const JoinCover&) const = default;
};

JoinCover classify_cover(const FiniteLattice& l, Element p, Element b, Element c);

// {A, B} with A holding the least element of D(p) unless flipped.
struct UdavBondPartition {
  Element p;
  std::vector<Element> A, B;
};

// a_0..a_n and a'_1..a'_n (a_prime[i-1] holds a'_i).
struct StirlitzTrack {
  std::vector<Element> a;
  std::vector<Element> a_prime;
  std::size_t length() const { return a_prime.size(); }
};

bool is_stirlitz_track(const FiniteLattice& l, std::span<const Element> a,
                       std::span<const Element> a_prime);

// Join-irreducibles, the join-dependency relation D and everything derived
// from it, computed once for a lattice.  The lattice must outlive this
// object.
class JoinDependency {
 public:
  // With `require_sub` the lattice is tested with the fast SUB check and
  // the operations whose statements assume SUB throw NotInSUB otherwise.
  explicit JoinDependency(const FiniteLattice& l, bool require_sub = true);
  // Keeps a pointer to the lattice, so temporaries are refused.
  explicit JoinDependency(FiniteLattice&&, bool = true) = delete;

  const FiniteLattice& lattice() const { return *l_; }
  const JirrInfo& jirr() const { return jirr_; }
  bool in_sub() const { return in_sub_; }

  // p D q: p != q join-irreducible and p <= q | x minimal in q for some x.
  bool depends(Element p, Element q) const;
  // D(p), ascending; empty for elements that are not join-irreducible.
  const std::vector<Element>& dependents(Element p) const;
  // All (p, q) with p D q, ascending.
  std::vector<Pair> pairs() const;

  bool has_cycle() const { return cycle_.has_value(); }
  // p_0 D p_1 D ... D p_k D p_0 when a cycle exists.
  const std::optional<std::vector<Element>>& cycle() const { return cycle_; }
  // Number of D steps in the longest D-path (requires no cycle).
  std::size_t longest_path() const;

  // All (b, c) with p <= b | c nontrivial and minimal in both; both orders.
  std::vector<JoinCover> minimal_nontrivial_join_covers(Element p) const;

  // All b with (a, b) a conjugate pair with respect to p.
  // Throws NotDRelated unless p D a.
  std::vector<Element> conjugates(Element p, Element a) const;

  // C[b, b'] = {x in J : b D x and b <= b' | x}.
  std::vector<Element> c_bracket(Element b, Element b_prime) const;

  // C(a, b) = C[b, b'] for the first conjugate b' of b with respect to a,
  // after checking that every conjugate gives the same set.
  // Throws NotDRelated, NotInSUB, WellDefinednessViolation.
  std::vector<Element> c_set(Element a, Element b) const;

  // Throws NotInSUB, PartitionViolation.
  UdavBondPartition udav_bond_partition(Element p, bool flip = false) const;

  // Tracks with 1 <= length <= max_length, every choice of a'_i included.
  std::vector<StirlitzTrack> stirlitz_tracks(std::size_t max_length) const;

 private:
  void require_sub(const char* what) const;

  const FiniteLattice* l_;
  JirrInfo jirr_;
  bool check_sub_;
  bool in_sub_ = true;
  std::vector<std::vector<Element>> d_;  // per element
  std::vector<ElementSet> d_set_;
  std::optional<std::vector<Element>> cycle_;
};

}  // namespace convexa
