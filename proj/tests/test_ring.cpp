#include <catch_amalgamated.hpp>

#include "oracle.hpp"
#include "phidelta/ring.hpp"

using namespace phidelta;

namespace {

Ideal z(int_t k) {
  return Ideal(Ring::integers(), {k});
}

std::vector<Ring> small_finite_rings() {
  std::vector<Ring> out;
  for (int_t n = 2; n <= 36; ++n) {
    out.push_back(Ring::finite({n}));
  }
  out.push_back(Ring::finite({2, 3}));
  out.push_back(Ring::finite({4, 9}));
  out.push_back(Ring::finite({2, 2}));
  out.push_back(Ring::finite({4, 6}));
  out.push_back(Ring::finite({2, 3, 5}));
  out.push_back(Ring::finite({8, 12}));
  return out;
}

// The residue ideal of kZ in Z/LZ, for lifting Z-ideals to a finite oracle.
oracle::ElemSet reduce(int_t k, int_t l) {
  oracle::ElemSet out;
  for (int_t x = 0; x < l; ++x) {
    if ((k == 0 && x == 0) || (k != 0 && x % k == 0)) {
      out.insert({x});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("ring arithmetic is commutative with identity", "[ring]") {
  for (auto const& r : small_finite_rings()) {
    if (r.order() > 60) {
      continue;
    }
    auto els = r.elements();
    REQUIRE(els.size() == r.order());
    for (auto const& a : els) {
      CHECK(r.mul(a, r.one()) == a);
      for (auto const& b : els) {
        CHECK(r.add(a, b) == r.add(b, a));
        CHECK(r.mul(a, b) == r.mul(b, a));
        for (auto const& c : els) {
          CHECK(r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("units of Z_12", "[ring]") {
  Ring r = Ring::finite({12});
  std::vector<int_t> units;
  for (auto const& a : r.elements()) {
    if (r.is_unit(a)) {
      units.push_back(a[0]);
    }
  }
  CHECK(units == std::vector<int_t>{1, 5, 7, 11});
  CHECK(Ring::integers().is_unit({-1}));
  CHECK_FALSE(Ring::integers().is_unit({2}));
}

TEST_CASE("ideal colon over Z", "[ring][ideal]") {
  // {r mod 12 : 4r ≡ 0 mod 6} = {0, 3, 6, 9}, which lifts to 3Z.
  oracle::ElemSet expected;
  for (int_t r = 0; r < 12; ++r) {
    if ((4 * r) % 6 == 0) {
      expected.insert({r});
    }
  }
  CHECK(expected == reduce(3, 12));
  CHECK(ideal_colon(z(6), z(4)) == z(3));
  for (int_t k = 0; k <= 20; ++k) {
    CHECK(ideal_colon(z(k), z(1)) == z(k));
  }
  CHECK(ideal_colon(z(5), z(0)) == z(1));
  CHECK(ideal_colon(z(0), z(7)) == z(0));
  Ring r18 = Ring::finite({18});
  CHECK(ideal_colon(Ideal(r18, {3}), Ideal::unit(r18)) == Ideal(r18, {3}));
}

TEST_CASE("ideal colon over Z agrees with residue brute force", "[ring][ideal]") {
  for (int_t k = 1; k <= 24; ++k) {
    for (int_t j = 1; j <= 24; ++j) {
      int_t l = std::lcm(k, j) * 2;
      oracle::ElemSet got;
      for (int_t r = 0; r < l; ++r) {
        if ((r * j) % k == 0) {
          got.insert({r});
        }
      }
      CHECK(got == reduce(ideal_colon(z(k), z(j)).gens()[0], l));
    }
  }
}

TEST_CASE("radicals", "[ring][ideal]") {
  CHECK(ideal_radical(z(12)) == z(6));
  CHECK(ideal_radical(z(0)) == z(0));
  CHECK(ideal_radical(z(1)) == z(1));
  Ring r12 = Ring::finite({12});
  auto got = ideal_radical(Ideal(r12, {4}));
  CHECK(got == Ideal(r12, {2}));
  CHECK(oracle::ideal_set(got) ==
        oracle::radical(r12, oracle::ideal_set(Ideal(r12, {4}))));
  for (int_t k = 1; k <= 60; ++k) {
    int_t rad = 1;
    for (int_t p = 2; p <= k; ++p) {
      bool prime = true;
      for (int_t q = 2; q * q <= p; ++q) {
        prime &= p % q != 0;
      }
      if (prime && k % p == 0) {
        rad *= p;
      }
    }
    CHECK(ideal_radical(z(k)) == z(rad));
  }
}

TEST_CASE("annihilators", "[ring][ideal]") {
  Ring r18 = Ring::finite({18});
  oracle::ElemSet expected;
  for (int_t r = 0; r < 18; ++r) {
    if ((3 * r) % 18 == 0) {
      expected.insert({r});
    }
  }
  auto got = ideal_annihilator(Ideal(r18, {3}));
  CHECK(got == Ideal(r18, {6}));
  CHECK(oracle::ideal_set(got) == expected);
  CHECK(ideal_annihilator(z(0)) == z(1));
  CHECK(ideal_annihilator(z(5)) == z(0));
  Ring r12 = Ring::finite({12});
  auto i4 = Ideal(r12, {4});
  CHECK(ideal_annihilator(ideal_annihilator(i4)) == i4);
  CHECK(oracle::annihilator(r12, oracle::annihilator(r12, oracle::ideal_set(i4))) ==
        oracle::ideal_set(i4));
}

TEST_CASE("sum, product, intersection", "[ring][ideal]") {
  CHECK(ideal_sum(z(4), z(6)) == z(2));
  CHECK(ideal_intersection(z(4), z(6)) == z(12));
  CHECK(ideal_product(z(4), z(6)) == z(24));
  CHECK(ideal_intersection(z(9), z(1)) == z(9));
  Ring r12 = Ring::finite({12});
  auto p = ideal_product(Ideal(r12, {2}), Ideal(r12, {3}));
  CHECK(p == Ideal(r12, {6}));
  CHECK(oracle::ideal_set(p) == oracle::product(r12, oracle::ideal_set(Ideal(r12, {2})),
                                                oracle::ideal_set(Ideal(r12, {3}))));
  CHECK_THROWS_AS(ideal_sum(z(2), Ideal(r12, {2})), RingMismatch);
}

TEST_CASE("canonical forms match element sets on finite rings", "[ring][ideal]") {
  for (auto const& r : small_finite_rings()) {
    if (r.order() > 200) {
      continue;
    }
    auto ideals = all_ideals(r);
    // Every ideal generated by a single element appears, exactly once.
    std::set<oracle::ElemSet> sets;
    for (auto const& i : ideals) {
      CHECK(Ideal(r, i.gens()) == i);
      sets.insert(oracle::ideal_set(i));
    }
    CHECK(sets.size() == ideals.size());
    for (auto const& a : r.elements()) {
      CHECK(sets.count(oracle::ideal_closure(r, {a})));
    }
    for (auto const& i : ideals) {
      auto si = oracle::ideal_set(i);
      CHECK(oracle::ideal_set(ideal_radical(i)) == oracle::radical(r, si));
      CHECK(oracle::ideal_set(ideal_annihilator(i)) == oracle::annihilator(r, si));
      for (auto const& j : ideals) {
        auto sj = oracle::ideal_set(j);
        CHECK(oracle::ideal_set(ideal_sum(i, j)) == oracle::sum(r, si, sj));
        CHECK(oracle::ideal_set(ideal_product(i, j)) == oracle::product(r, si, sj));
        CHECK(oracle::ideal_set(ideal_intersection(i, j)) ==
              oracle::intersection(si, sj));
        CHECK(oracle::ideal_set(ideal_colon(i, j)) == oracle::colon(r, si, sj));
        CHECK(i.subset_of(j) ==
              std::includes(sj.begin(), sj.end(), si.begin(), si.end()));
      }
    }
  }
}

TEST_CASE("multiplicatively closed sets", "[ring][mcs]") {
  Ring zz = Ring::integers();
  auto s2 = MCS::generated(zz, {{2}});
  for (int_t e = 0; e < 10; ++e) {
    CHECK(s2.contains({int_t{1} << e}));
  }
  CHECK_FALSE(s2.contains({3}));
  CHECK_FALSE(s2.contains({6}));
  CHECK(MCS::one(zz).contains({1}));
  CHECK_FALSE(MCS::one(zz).contains({2}));
  CHECK(MCS::generated(zz, {{-2}}) == s2);

  Ring r18 = Ring::finite({18});
  auto s5 = MCS::generated(r18, {{5}});
  std::vector<RingElem> expected;
  for (auto const& e : oracle::mcs_closure(r18, {{5}})) {
    expected.push_back(e);
  }
  CHECK(s5.elements() == expected);
  CHECK(s5.elements() ==
        std::vector<RingElem>{{1}, {5}, {7}, {11}, {13}, {17}});

  CHECK_THROWS_AS(MCS::generated(zz, {{0}}), Error);
  CHECK_THROWS_AS(MCS::generated(Ring::finite({12}), {{6}}), Error);
}

TEST_CASE("MCS meets an ideal", "[ring][mcs]") {
  Ring zz = Ring::integers();
  auto s2 = MCS::generated(zz, {{2}});
  CHECK(s2.intersects(z(8)));
  CHECK_FALSE(s2.intersects(z(3)));
  CHECK_FALSE(MCS::one(zz).intersects(z(3)));
  CHECK(MCS::one(zz).intersects(z(1)));
  CHECK_FALSE(s2.intersects(z(0)));
  // Prime-factor criterion against powers with bounded exponents.
  std::vector<std::vector<int_t>> gen_sets{{2}, {3}, {2, 3}, {6}, {4, 5}, {10}};
  for (auto const& gs : gen_sets) {
    std::vector<RingElem> g;
    for (int_t x : gs) {
      g.push_back({x});
    }
    auto s = MCS::generated(zz, g);
    for (int_t k = 1; k <= 60; ++k) {
      bool brute = false;
      std::vector<int_t> members{1};
      for (int_t round = 0; round < 10; ++round) {
        std::vector<int_t> next = members;
        for (int_t m : members) {
          for (int_t x : gs) {
            if (m * x < (int_t{1} << 40)) {
              next.push_back(m * x);
            }
          }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        members = next;
      }
      for (int_t m : members) {
        brute |= m % k == 0;
      }
      CHECK(s.intersects(z(k)) == brute);
    }
  }
}

TEST_CASE("MCS residues", "[ring][mcs]") {
  Ring zz = Ring::integers();
  auto s2 = MCS::generated(zz, {{2}});
  CHECK(s2.residues(7) == std::vector<int_t>{1, 2, 4});
  CHECK(MCS::one(zz).residues(12) == std::vector<int_t>{1});
  CHECK(MCS::generated(zz, {{2}, {3}}).residues(6) ==
        std::vector<int_t>{0, 1, 2, 3, 4});
  for (int_t g = 2; g <= 12; ++g) {
    auto s = MCS::generated(zz, {{g}});
    for (int_t l = 1; l <= 50; ++l) {
      std::set<int_t> powers;
      int_t p = 1 % l;
      for (int_t e = 0; e <= 2 * l; ++e) {
        powers.insert(p);
        p = (p * g) % l;
      }
      CHECK(s.residues(l) == std::vector<int_t>(powers.begin(), powers.end()));
    }
  }
}
