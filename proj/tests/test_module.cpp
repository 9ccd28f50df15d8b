#include <catch_amalgamated.hpp>

#include "oracle.hpp"
#include "phidelta/module.hpp"

using namespace phidelta;

namespace {

Ring const zz = Ring::integers();

ModulePtr zn(int_t n) {
  return Module::cyclic(zz, {n});
}

Submodule gen(ModulePtr const& m, std::vector<Elem> g) {
  return span(m, g);
}

std::vector<ModulePtr> small_modules() {
  std::vector<ModulePtr> out;
  for (int_t n : {1, 2, 3, 4, 6, 8, 9, 12, 18, 36}) {
    out.push_back(zn(n));
  }
  out.push_back(Module::cyclic(zz, {2, 2}));
  out.push_back(Module::cyclic(zz, {2, 4}));
  out.push_back(Module::cyclic(zz, {3, 3}));
  out.push_back(Module::cyclic(zz, {2, 2, 2}));
  out.push_back(Module::regular(Ring::finite({12})));
  out.push_back(Module::regular(Ring::finite({2, 3})));
  out.push_back(Module::regular(Ring::finite({2, 2})));
  out.push_back(Module::regular(Ring::finite({4, 6})));
  out.push_back(Module::cyclic(Ring::finite({4}), {2, 4}));
  out.push_back(direct_product(Module::regular(Ring::finite({2})),
                               Module::cyclic(Ring::finite({4}), {2, 4})));
  return out;
}

}  // namespace

TEST_CASE("scalar action is a module structure", "[module]") {
  for (auto const& m : small_modules()) {
    auto const& r = m->ring();
    auto scalars = scalar_domain(r, m->exponent());
    for (Elem x = 0; x < m->size(); ++x) {
      CHECK(m->act(r.one(), x) == x);
      CHECK(m->add(x, m->neg(x)) == 0);
      for (auto const& a : scalars) {
        for (auto const& b : scalars) {
          CHECK(m->act(r.mul(a, b), x) == m->act(a, m->act(b, x)));
          CHECK(m->act(r.add(a, b), x) == m->add(m->act(a, x), m->act(b, x)));
        }
        for (Elem y = 0; y < m->size(); ++y) {
          CHECK(m->act(a, m->add(x, y)) == m->add(m->act(a, x), m->act(a, y)));
        }
      }
    }
  }
}

TEST_CASE("exponent and size bound", "[module]") {
  CHECK(zn(12)->exponent() == 12);
  CHECK(Module::cyclic(zz, {2, 4})->exponent() == 4);
  CHECK(Module::cyclic(zz, {2, 2})->size() == 4);
  CHECK_THROWS_AS(Module::cyclic(zz, {100, 100}), BoundExceeded);
  CHECK_THROWS_AS(Module::cyclic(Ring::finite({6}), {4}), Error);
}

TEST_CASE("submodule lattices", "[module][lattice]") {
  CHECK(enumerate_submodules(zn(12)).size() ==
        static_cast<std::size_t>(oracle::divisor_count(12)));
  CHECK(enumerate_submodules(Module::cyclic(zz, {2, 2})).size() == 5);
  for (int_t p : {2, 3, 5, 7}) {
    auto l = enumerate_submodules(zn(p));
    REQUIRE(l.size() == 2);
    CHECK(l[0].is_zero());
    CHECK(l[1].is_whole());
  }
  for (auto const& m : small_modules()) {
    if (m->size() > 64) {
      continue;
    }
    auto lattice = enumerate_submodules(m);
    std::set<std::vector<Elem>> got;
    for (auto const& n : lattice) {
      got.insert(n.elements());
      CHECK(span(m, minimal_generators(n)) == n);
    }
    CHECK(got.size() == lattice.size());
    CHECK(got == oracle::all_submodules(*m));
    CHECK(std::is_sorted(lattice.begin(), lattice.end()));
  }
}

TEST_CASE("minimal generators", "[module][lattice]") {
  auto m = Module::cyclic(zz, {2, 2});
  CHECK(minimal_generators(Submodule::whole(m)).size() == 2);
  CHECK(minimal_generators(Submodule::zero(m)).empty());
  auto z12 = zn(12);
  CHECK(minimal_generators(gen(z12, {4})) == std::vector<Elem>{4});
}

TEST_CASE("ring colon", "[module][colon]") {
  auto z18 = zn(18);
  CHECK(colon_ring(gen(z18, {3})) == Ideal(zz, {3}));
  auto z12 = zn(12);
  CHECK(colon_ring(gen(z12, {4})) == Ideal(zz, {4}));
  for (auto const& m : small_modules()) {
    CHECK(colon_ring(Submodule::whole(m)).is_unit());
  }
}

TEST_CASE("module colon", "[module][colon]") {
  auto z18 = zn(18);
  auto n = gen(z18, {3});
  std::vector<bool> mask(18);
  for (int_t x = 0; x < 18; ++x) {
    mask[static_cast<std::size_t>(x)] = (3 * x) % 3 == 0;
  }
  CHECK(colon_module(n, Ideal(zz, {3})) == Submodule(z18, mask));
  CHECK(colon_module(n, Ideal(zz, {3})).is_whole());
  CHECK(colon_module(n, Ideal::unit(zz)) == n);
  CHECK(colon_module(n, Ideal::zero(zz)).is_whole());
}

TEST_CASE("colon adjunction", "[module][colon]") {
  for (auto const& m : small_modules()) {
    if (m->size() > 36) {
      continue;
    }
    auto lattice = enumerate_submodules(m);
    auto ideals = ideal_universe(m->ring(), 2 * m->exponent());
    for (auto const& n : lattice) {
      for (auto const& k : lattice) {
        auto c = colon_ring(n, k);
        for (auto const& i : ideals) {
          CHECK(i.subset_of(c) == k.subset_of(colon_module(n, i)));
        }
      }
    }
  }
}

TEST_CASE("ring colon against brute force", "[module][colon]") {
  for (auto const& m : small_modules()) {
    if (m->size() > 64) {
      continue;
    }
    auto const& r = m->ring();
    auto lattice = enumerate_submodules(m);
    for (auto const& n : lattice) {
      for (auto const& k : lattice) {
        auto c = colon_ring(n, k);
        for (auto const& a : scalar_domain(r, 2 * m->exponent())) {
          bool in = std::all_of(k.elements().begin(), k.elements().end(),
                                [&](Elem x) { return n.contains(m->act(a, x)); });
          CHECK(c.contains(a) == in);
        }
      }
    }
  }
}

TEST_CASE("quotients and projections", "[module][maps]") {
  auto z18 = zn(18);
  CHECK(quotient_module(gen(z18, {3})).first->size() == 3);
  auto z12 = zn(12);
  auto [q0, p0] = quotient_module(Submodule::zero(z12));
  CHECK(q0->size() == 12);
  CHECK(p0.table == identity_map(z12).table);

  auto k = gen(z12, {4});
  CHECK(k.elements() == std::vector<Elem>{0, 4, 8});
  auto [q, pi] = quotient_module(k);
  CHECK(q->size() == 4);
  CHECK(pi.is_linear());
  CHECK(pi.is_surjective());
  CHECK(pi.kernel() == k);
  CHECK(image(pi, gen(z12, {2})).size() == 2);
  CHECK(preimage(pi, Submodule::zero(q)) == k);
  for (auto const& n : enumerate_submodules(z12)) {
    CHECK(preimage(pi, image(pi, n)) == submodule_sum(n, k));
  }
}

TEST_CASE("projection correspondence", "[module][maps]") {
  for (auto const& m : small_modules()) {
    if (m->size() > 36) {
      continue;
    }
    auto lattice = enumerate_submodules(m);
    for (auto const& k : lattice) {
      auto [q, pi] = quotient_module(k);
      REQUIRE(pi.is_linear());
      CHECK(pi.kernel() == k);
      std::set<std::vector<Elem>> images;
      std::size_t above = 0;
      for (auto const& n : lattice) {
        if (!k.subset_of(n)) {
          continue;
        }
        ++above;
        auto img = image(pi, n);
        images.insert(img.elements());
        CHECK(preimage(pi, img) == n);
      }
      CHECK(images.size() == above);
      CHECK(enumerate_submodules(q).size() == above);
    }
  }
}

TEST_CASE("direct products", "[module][product]") {
  auto a = Module::regular(Ring::finite({2}));
  auto b = Module::regular(Ring::finite({3}));
  auto m = direct_product(a, b);
  CHECK(m->size() == 6);
  CHECK(m->ring() == Ring::finite({2, 3}));
  auto n = product_submodule(m, Submodule::zero(a), Submodule::whole(b));
  CHECK(colon_ring(n) == Ideal(m->ring(), {2, 1}));
  CHECK(colon_ring(n).elements() ==
        std::vector<RingElem>{{0, 0}, {0, 1}, {0, 2}});
  auto [l, r] = split_submodule(n);
  CHECK(l.is_zero());
  CHECK(r.is_whole());
  CHECK_FALSE(product_phi(m, std::nullopt, Submodule::whole(b)));
  CHECK(product_phi(m, Submodule::zero(a), Submodule::whole(b)) == n);
  auto in = injection(m, true);
  CHECK(in.is_linear());
  // Every submodule of a product over a product ring is a product.
  for (auto const& s : enumerate_submodules(m)) {
    auto [x, y] = split_submodule(s);
    CHECK(product_submodule(m, x, y) == s);
  }
}

TEST_CASE("multiplication modules", "[module][multiplication]") {
  CHECK(is_multiplication_module(zn(12)));
  CHECK_FALSE(is_multiplication_module(Module::cyclic(zz, {2, 2})));
  CHECK(is_multiplication_module(zn(7)));
  auto m = Module::cyclic(zz, {2, 2});
  auto n = gen(m, {m->from_coords({1, 0})});
  CHECK(scale(colon_ring(n), Submodule::whole(m)).is_zero());
  CHECK_THROWS_AS(submodule_radical(n), NotMultiplicationModule);
}

TEST_CASE("products and radicals of submodules", "[module][multiplication]") {
  auto z12 = zn(12);
  CHECK(submodule_product(gen(z12, {4}), gen(z12, {6})).is_zero());
  CHECK(submodule_radical(gen(z12, {4})) == gen(z12, {2}));
  for (int_t n : {4, 6, 8, 12, 18, 36}) {
    auto m = zn(n);
    auto lattice = enumerate_submodules(m);
    auto whole = Submodule::whole(m);
    for (auto const& a : lattice) {
      CHECK(submodule_product(a, whole) == a);
      for (auto const& b : lattice) {
        CHECK(submodule_product(a, b) == submodule_product(b, a));
        for (auto const& c : lattice) {
          CHECK(submodule_product(submodule_product(a, b), c) ==
                submodule_product(a, submodule_product(b, c)));
        }
      }
    }
  }
}
