#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "torsion/abelian.hpp"

using namespace torsion;

TEST_SUITE("abelian") {

TEST_CASE("from_cyclic_orders splits into prime powers") {
  CHECK(from_cyclic_orders({Int(1)}).trivial());
  FiniteAbelianGroup g = from_cyclic_orders({Int(45)});
  REQUIRE(g.rank() == 2);
  CHECK(g.factors()[0].p == 3);
  CHECK(g.factors()[0].e == 2);
  CHECK(g.factors()[1].p == 5);
  CHECK(g.factors()[1].e == 1);
  FiniteAbelianGroup h = from_cyclic_orders({Int(3), Int(3)});
  CHECK(h.rank() == 2);
  CHECK(h.order() == 9);
  CHECK(h.homogeneous());
  CHECK_FALSE(g.homogeneous());
}

TEST_CASE("element indexing round-trips") {
  FiniteAbelianGroup g({{3, 2}, {5, 1}, {3, 1}});
  Int order = g.order();
  CHECK(order == 135);
  GroupElement walker = g.zero();
  for (Int i = 0; i < order; ++i) {
    GroupElement x = g.element_at(i);
    CHECK(g.element_index(x) == i);
    CHECK(x == walker);
    bool more = g.increment(walker);
    CHECK(more == (i != order - 1));
  }
  CHECK(walker == g.zero());
}

TEST_CASE("element labels round-trip") {
  FiniteAbelianGroup g({{3, 3}, {7, 1}});
  GroupElement x{Int(22), Int(5)};
  CHECK(g.parse_element_label(g.element_label(x)) == x);
  FiniteAbelianGroup c({{5, 1}});
  CHECK(c.element_label({Int(3)}) == "3");
  CHECK(c.parse_element_label("8") == GroupElement{Int(3)});
  CHECK_THROWS_AS(g.parse_element_label("(1,2,3)"), ParseError);
}

TEST_CASE("element_order by brute force") {
  FiniteAbelianGroup g({{3, 2}, {5, 1}});
  GroupElement x = g.zero();
  do {
    Int claimed = g.element_order(x);
    GroupElement acc = g.zero();
    Int expect = 0;
    for (Int k = 1; k <= g.order(); ++k) {
      acc = g.add(acc, x);
      if (g.is_zero(acc)) {
        expect = k;
        break;
      }
    }
    CHECK(claimed == expect);
  } while (g.increment(x));
}

TEST_CASE("primary_part picks out factors") {
  FiniteAbelianGroup g = from_cyclic_orders({Int(45)});
  CHECK(primary_part(g, 3).part.order() == 9);
  CHECK(primary_part(g, 5).part.order() == 5);
  CHECK(primary_part(g, 7).part.trivial());
  PrimaryEmbedding e = primary_part(g, 3);
  GroupElement inside{Int(5)};
  GroupElement up = e.include(g, inside);
  CHECK(e.project(up) == inside);
}

TEST_CASE("subgroup closure matches the brute-force oracle") {
  std::mt19937 rng(301);
  std::vector<FiniteAbelianGroup> groups = {
      FiniteAbelianGroup({{3, 1}, {3, 1}}),
      FiniteAbelianGroup({{3, 2}, {3, 1}}),
      FiniteAbelianGroup({{3, 3}}),
      FiniteAbelianGroup({{5, 1}, {5, 1}}),
      FiniteAbelianGroup({{3, 1}, {5, 1}}),
      FiniteAbelianGroup({{7, 1}, {7, 1}}),
      FiniteAbelianGroup({{3, 2}, {3, 2}}),
  };
  for (const auto& g : groups) {
    for (int trial = 0; trial < 12; ++trial) {
      std::vector<GroupElement> gens;
      std::uniform_int_distribution<int> count(0, 2);
      int c = count(rng);
      for (int i = 0; i < c; ++i) {
        std::uniform_int_distribution<std::int64_t> pick(
            0, to_i64(g.order()) - 1);
        gens.push_back(g.element_at(Int(pick(rng))));
      }
      Subgroup s = Subgroup::from_generators(g, gens);
      auto expect = oracle::closure(g, gens);
      CHECK(s.order() == Int(static_cast<std::int64_t>(expect.size())));
      auto got = s.elements();
      CHECK(got.size() == expect.size());
      for (const auto& x : got) CHECK(expect.count(x) == 1);
      for (const auto& x : expect) CHECK(s.contains(x));
      // canonical: regenerating from the element list gives the same object
      CHECK(Subgroup::from_generators(g, got) == s);
    }
  }
}

TEST_CASE("coset_reduce is a well-defined transversal map") {
  FiniteAbelianGroup g({{3, 2}, {3, 1}});
  Subgroup s = Subgroup::from_generators(g, {GroupElement{Int(3), Int(1)}});
  GroupElement x = g.zero();
  do {
    GroupElement r = s.coset_reduce(x);
    CHECK(s.contains(g.sub(x, r)));
    for (const auto& h : s.elements())
      CHECK(s.coset_reduce(g.add(x, h)) == r);
  } while (g.increment(x));
}

TEST_CASE("subgroup counts match Gaussian binomials") {
  for (std::int64_t p : {3, 7}) {
    for (int k = 1; k <= (p == 3 ? 4 : 3); ++k) {
      std::vector<PrimePower> fs(static_cast<std::size_t>(k),
                                 PrimePower{p, 1});
      FiniteAbelianGroup g(fs);
      for (int j = 0; j <= k; ++j) {
        Int target = 1;
        for (int i = 0; i < j; ++i) target *= p;
        auto subs = enumerate_subgroups_of_order(g, target);
        CHECK(Int(static_cast<std::int64_t>(subs.size())) ==
              oracle::gaussian_binomial(k, j, p));
        for (const auto& s : subs) CHECK(s.order() == target);
        for (std::size_t i = 0; i + 1 < subs.size(); ++i) {
          CHECK(subs[i].precedes(subs[i + 1]));
          CHECK_FALSE(subs[i] == subs[i + 1]);
        }
      }
    }
  }
}

TEST_CASE("subgroup enumeration worked examples") {
  CHECK(enumerate_subgroups_of_order(FiniteAbelianGroup({{3, 1}, {3, 1}}),
                                     Int(3))
            .size() == 4);
  auto cyclic = enumerate_subgroups_of_order(FiniteAbelianGroup({{3, 3}}),
                                             Int(9));
  REQUIRE(cyclic.size() == 1);
  CHECK(cyclic[0].contains({Int(3)}));
  CHECK_FALSE(cyclic[0].contains({Int(1)}));
  CHECK(enumerate_subgroups_of_order(FiniteAbelianGroup({{3, 1},
                                                         {3, 1},
                                                         {3, 1},
                                                         {3, 1}}),
                                     Int(9))
            .size() == 130);
}

TEST_CASE("subgroup enumeration by brute force on mixed groups") {
  // Rank <= 2 groups: every subgroup is generated by at most two elements,
  // so closing all pairs is a complete (if redundant) enumeration.
  std::vector<FiniteAbelianGroup> groups = {
      FiniteAbelianGroup({{3, 2}, {3, 1}}),
      FiniteAbelianGroup({{3, 1}, {5, 1}}),
      FiniteAbelianGroup({{3, 2}, {3, 2}}),
  };
  for (const auto& g : groups) {
    std::set<std::vector<std::vector<Int>>> all;  // lattice bases, canonical
    std::int64_t n = to_i64(g.order());
    for (std::int64_t i = 0; i < n; ++i)
      for (std::int64_t j = i; j < n; ++j) {
        Subgroup s = Subgroup::from_generators(
            g, {g.element_at(Int(i)), g.element_at(Int(j))});
        all.insert(s.lattice_basis());
      }
    std::map<Int, std::size_t> by_order;
    for (const auto& basis : all) {
      Int o = 1;
      auto mods = g.moduli();
      for (std::size_t d = 0; d < mods.size(); ++d) o *= mods[d] / basis[d][d];
      ++by_order[o];
    }
    for (const auto& [order, count] : by_order)
      CHECK(enumerate_subgroups_of_order(g, order).size() == count);
  }
}

TEST_CASE("invariants and isomorphism tests") {
  FiniteAbelianGroup g({{3, 3}, {3, 3}});
  Subgroup diag = Subgroup::from_generators(g, {GroupElement{Int(1), Int(1)}});
  CHECK(diag.invariants() == std::vector<Int>{Int(27)});
  CHECK(quotient_invariants(g, diag) == std::vector<Int>{Int(27)});

  FiniteAbelianGroup f3_4(
      {PrimePower{3, 1}, PrimePower{3, 1}, PrimePower{3, 1}, PrimePower{3, 1}});
  Subgroup plane = Subgroup::from_generators(
      f3_4, {GroupElement{Int(1), Int(1), Int(1), Int(0)},
             GroupElement{Int(1), Int(2), Int(0), Int(1)}});
  CHECK(quotient_invariants(f3_4, plane) == std::vector<Int>{Int(3), Int(3)});

  CHECK_FALSE(is_isomorphic(FiniteAbelianGroup({{3, 1}, {3, 1}}),
                            FiniteAbelianGroup({{3, 2}})));
  CHECK(is_isomorphic(FiniteAbelianGroup({{3, 2}, {3, 1}}),
                      FiniteAbelianGroup({{3, 1}, {3, 2}})));
  CHECK(is_isomorphic(from_cyclic_orders({Int(45)}),
                      FiniteAbelianGroup({{3, 2}, {5, 1}})));
}

TEST_CASE("echelon_generators worked examples") {
  FiniteAbelianGroup f3_4(
      {PrimePower{3, 1}, PrimePower{3, 1}, PrimePower{3, 1}, PrimePower{3, 1}});
  EchelonForm ef = echelon_generators(
      f3_4, {GroupElement{Int(1), Int(1), Int(1), Int(0)},
             GroupElement{Int(1), Int(2), Int(0), Int(1)}});
  REQUIRE(ef.omegas.size() == 2);
  CHECK(ef.omegas[0] == GroupElement{Int(1), Int(1), Int(1), Int(0)});
  CHECK(ef.omegas[1] == GroupElement{Int(0), Int(1), Int(2), Int(1)});
  CHECK(ef.a == std::vector<int>{0, 0});
  CHECK(ef.pivot_cols == std::vector<std::size_t>{0, 1});

  FiniteAbelianGroup z27_2({{3, 3}, {3, 3}});
  EchelonForm single =
      echelon_generators(z27_2, {GroupElement{Int(3), Int(3)}});
  REQUIRE(single.omegas.size() == 1);
  CHECK(single.omegas[0] == GroupElement{Int(3), Int(3)});
  CHECK(single.a == std::vector<int>{1});

  FiniteAbelianGroup z3({{3, 1}});
  EchelonForm full = echelon_generators(z3, {GroupElement{Int(1)}});
  CHECK(full.a == std::vector<int>{0});
  CHECK(full.omegas[0] == GroupElement{Int(1)});
}

TEST_CASE("echelon profile counts pivots by exponent") {
  FiniteAbelianGroup z27_2({{3, 3}, {3, 3}});
  Subgroup diag = Subgroup::from_generators(z27_2, {GroupElement{Int(1), Int(1)}});
  EchelonProfile profile = echelon_generators(diag).profile();
  CHECK(profile.ell == 1);
  CHECK(profile.k == 1);
  CHECK(profile.counts == std::vector<std::size_t>{1, 0, 0, 1});

  // The subgroup generated by (3,6) and (0,9) inside (Z/27)^2.
  Subgroup m = Subgroup::from_generators(
      z27_2, {GroupElement{Int(3), Int(6)}, GroupElement{Int(0), Int(9)}});
  EchelonForm ef = echelon_generators(m);
  REQUIRE(ef.a.size() == 2);
  CHECK(ef.a == std::vector<int>{1, 2});
  EchelonProfile pr = ef.profile();
  CHECK(pr.ell == 2);
  CHECK(pr.counts == std::vector<std::size_t>{0, 1, 1, 0});
}

TEST_CASE("enumeration respects the capacity guard") {
  FiniteAbelianGroup g({{3, 3}});
  CHECK_THROWS_AS(g.checked_order(Int(10)), CapacityError);
  CHECK(g.checked_order() == 27);
}

}
