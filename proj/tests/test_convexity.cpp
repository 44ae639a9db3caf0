#include <doctest.h>

#include <random>

#include "convexa/convexity.hpp"
#include "convexa/errors.hpp"
#include "convexa/identities.hpp"
#include "convexa/lattice.hpp"
#include "oracles.hpp"

using namespace convexa;

TEST_CASE("convex_join examples") {
  Poset c3 = chain_poset(3);
  CHECK(convex_join(c3, make_set(3, {0}), make_set(3, {2})) == make_set(3, {0, 1, 2}));
  Poset a2 = antichain_poset(2);
  CHECK(convex_join(a2, make_set(2, {0}), make_set(2, {1})) == make_set(2, {0, 1}));
  CHECK(convex_join(c3, make_set(3, {1, 2}), ElementSet(3)) == make_set(3, {1, 2}));

  ConvexSet x(c3, make_set(3, {0})), y(c3, make_set(3, {2}));
  CHECK(convex_join(x, y).members() == make_set(3, {0, 1, 2}));
  CHECK_THROWS_AS(ConvexSet(c3, make_set(3, {0, 2})), ConvexityViolation);
}

TEST_CASE("convex_join matches the least convex superset") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + rng() % 6;
    Poset p = oracle::random_poset(rng, n, 0.35);
    auto r = oracle::relation_of(p);
    auto sets = oracle::convex_sets(r);
    for (int k = 0; k < 30; ++k) {
      auto a = sets[rng() % sets.size()], b = sets[rng() % sets.size()];
      auto got = to_mask(convex_join(p, from_mask(a, n), from_mask(b, n)));
      REQUIRE(got == oracle::convex_join(r, a, b));
      CHECK(got == to_mask(convex_join(p, from_mask(b, n), from_mask(a, n))));
      CHECK((got & (a | b)) == (a | b));
      CHECK(oracle::is_convex(r, a & b));
    }
  }
}

TEST_CASE("co_lattice sizes and structure") {
  CHECK(co_lattice(chain_poset(3)).lattice.size() == 7);
  CHECK(co_lattice(chain_poset(4)).lattice.size() == 11);
  for (std::size_t k = 1; k <= 8; ++k) CHECK(count_convex_sets(chain_poset(k)) == k * (k + 1) / 2 + 1);

  CoLattice c2 = co_lattice(chain_poset(2));
  CHECK(c2.lattice.size() == 4);
  CHECK(c2.lattice.order() == boolean_lattice(2).order());

  CoLattice c3 = co_lattice(chain_poset(3));
  // Ascending masks: {}, {0}, {1}, {0,1}, {2}, {1,2}, {0,1,2}.
  CHECK(c3.masks == std::vector<std::uint64_t>{0, 1, 2, 3, 4, 6, 7});
  CHECK(c3.lattice.label(4) == "{2}");
  CHECK_THROWS_AS(c3.index_of(make_set(3, {0, 2})), RangeError);

  CoLatticeLimits small;
  small.max_points = 3;
  CHECK_THROWS_AS(co_lattice(chain_poset(4), small), SizeError);
  small.max_points = 20;
  small.max_elements = 5;
  CHECK_THROWS_AS(co_lattice(chain_poset(3), small), SizeError);
}

TEST_CASE("Co(P) tables agree with the set operations and pass the validator") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + rng() % 6;
    Poset p = oracle::random_poset(rng, n, 0.3);
    CoLattice co = co_lattice(p);
    auto r = oracle::relation_of(p);
    REQUIRE(co.masks == oracle::convex_sets(r));
    CHECK_FALSE(lattice_law_violation(co.lattice).has_value());
    const std::size_t m = co.masks.size();
    for (Element i = 0; i < m; ++i)
      for (Element j = 0; j < m; ++j) {
        CHECK(co.masks[co.lattice.meet(i, j)] == (co.masks[i] & co.masks[j]));
        CHECK(co.set(co.lattice.join(i, j)) == convex_join(p, co.set(i), co.set(j)));
      }
  }
}

TEST_CASE("restrict_eval") {
  Poset c3 = chain_poset(3);
  Term t = parse_term("(join x y)");
  std::map<std::string, ElementSet> a{{"x", make_set(3, {0})}, {"y", make_set(3, {2})}};
  CHECK(restrict_eval(c3, make_set(3, {0, 2}), t, a) == make_set(3, {0, 2}));
  CHECK(restrict_eval(c3, make_set(3, {0, 1, 2}), t, a) == eval_convex(c3, t, a));
  CHECK(restrict_eval(c3, ElementSet(3), t, a).none());
}

TEST_CASE("evaluation is the union of restricted evaluations") {
  const char* terms[] = {"(join x y)", "(meet x y)", "(join x (meet y z))", "(meet (join x y) z)"};
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + rng() % 5;
    Poset p = oracle::random_poset(rng, n, 0.4);
    auto sets = oracle::convex_sets(oracle::relation_of(p));
    Term t = parse_term(terms[rng() % 4]);
    std::map<std::string, ElementSet> a;
    for (const char* v : {"x", "y", "z"}) a[v] = from_mask(sets[rng() % sets.size()], n);
    ElementSet full = eval_convex(p, t, a);
    ElementSet uni(n);
    for (std::uint64_t q = 0; q < (std::uint64_t{1} << n); ++q) {
      ElementSet part = restrict_eval(p, from_mask(q, n), t, a);
      CHECK(part.is_subset_of(full));
      // Monotone in Q.
      for (std::uint64_t q2 = q; q2; q2 = (q2 - 1) & q)
        CHECK(restrict_eval(p, from_mask(q2, n), t, a).is_subset_of(part));
      uni |= part;
    }
    CHECK(uni == full);
  }
}

TEST_CASE("Co(P) satisfies S, U and B on small random posets") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 12; ++trial) {
    Poset p = oracle::random_poset(rng, 1 + rng() % 4, 0.4);
    FiniteLattice l = co_lattice(p).lattice;
    CHECK(satisfies_SUB_bruteforce(l).holds);
  }
}
