#include <catch_amalgamated.hpp>

#include "oracle.hpp"
#include "phidelta/checker.hpp"
#include "textbook.hpp"

using namespace phidelta;

namespace {

Ring const zz = Ring::integers();

Ideal z(int_t k) {
  return Ideal(zz, {k});
}

struct Setup {
  ModulePtr m;
  MCS s;
};

std::vector<Setup> setups() {
  std::vector<Setup> out;
  for (int_t n : {4, 6, 8, 12, 18, 36}) {
    auto m = Module::cyclic(zz, {n});
    for (int_t g : {1, 2, 3, 5}) {
      out.push_back({m, MCS::generated(zz, {{g}})});
    }
  }
  for (auto const& orders : std::vector<std::vector<int_t>>{{2, 2}, {2, 4}}) {
    auto m = Module::cyclic(zz, orders);
    for (int_t g : {1, 2, 3}) {
      out.push_back({m, MCS::generated(zz, {{g}})});
    }
  }
  for (auto const& moduli :
       std::vector<std::vector<int_t>>{{4}, {8}, {12}, {18}, {2, 3}, {4, 6}}) {
    Ring r = Ring::finite(moduli);
    auto m = Module::regular(r);
    for (auto const& x : r.elements()) {
      try {
        out.push_back({m, MCS::generated(r, {x})});
      } catch (Error const&) {
        // closure reaches 0
      }
    }
  }
  return out;
}

std::vector<Expansion> expansions(Ring const& r) {
  std::vector<Expansion> out{Expansion::id(), Expansion::rad(), Expansion::ann()};
  for (int_t j : {2, 3}) {
    Ideal param(r, std::vector<int_t>(r.components(), j));
    out.push_back(Expansion::res(param));
    out.push_back(Expansion::plus(param));
  }
  return out;
}

std::vector<Reduction> reductions(Ring const& r) {
  std::vector<Reduction> out{Reduction::empty(),   Reduction::zero(),
                             Reduction::id(),      Reduction::power(2),
                             Reduction::power(3),  Reduction::colon()};
  out.push_back(Reduction::mul(Ideal(r, std::vector<int_t>(r.components(), 2))));
  return out;
}

std::vector<Submodule> proper(ModulePtr const& m) {
  std::vector<Submodule> out;
  for (auto const& n : enumerate_submodules(m)) {
    if (!n.is_whole()) {
      out.push_back(n);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("Z_18 with phi = 2N and delta = rad", "[checker][fixture]") {
  auto m = Module::cyclic(zz, {18});
  auto n = span(m, {3});
  Context ctx(n, Reduction::mul(z(2)), Expansion::rad(), MCS::one(zz));
  REQUIRE(ctx.phi_n());
  CHECK(ctx.phi_n()->elements() == std::vector<Elem>{0, 6, 12});
  CHECK(ctx.delta_colon() == z(3));
  // Values of am landing in N \ φ(N), computed directly.
  std::set<Elem> hits;
  for (int_t a = 0; a < 18; ++a) {
    for (Elem x = 0; x < 18; ++x) {
      Elem v = static_cast<Elem>((a * x) % 18);
      if (v % 3 == 0 && v % 6 != 0) {
        hits.insert(v);
      }
    }
  }
  CHECK(hits == std::set<Elem>{3, 9, 15});
  auto v = classify(ctx);
  CHECK(v.precondition_ok);
  CHECK(v.holds);
  CHECK_FALSE(v.vacuous);
  CHECK(v.status() == Status::holds);
  CHECK(v.witnesses.front() == RingElem{1});
  CHECK(textbook::naive_phi_delta_s(n, Reduction::mul(z(2)), Expansion::rad(),
                                    MCS::one(zz)));
}

TEST_CASE("Z_12 with phi = (N:M)N holds vacuously", "[checker][fixture]") {
  auto m = Module::cyclic(zz, {12});
  auto n = span(m, {4});
  Context ctx(n, Reduction::power(2), Expansion::id(), MCS::one(zz));
  REQUIRE(ctx.phi_n());
  CHECK(ctx.phi_n()->elements() == std::vector<Elem>{0, 4, 8});
  CHECK(ctx.colon() == z(4));
  auto v = classify(ctx);
  CHECK(v.holds);
  CHECK(v.vacuous);
  auto w = classify(without_phi(ctx));
  CHECK(w.precondition_ok);
  CHECK_FALSE(w.holds);
  CHECK(w.status() == Status::fails);
  REQUIRE(w.counterexample);
  // 2·2 = 4 ∈ N, 2 ∉ N, 2 ∉ 4Z: the first violating pair in scan order.
  CHECK(w.counterexample->a == RingElem{2});
  CHECK(w.counterexample->m == 2);
  CHECK(w.counterexample->s == RingElem{1});
  CHECK_FALSE(textbook::is_s_prime(n, MCS::one(zz)));
}

TEST_CASE("precondition failure is reported, not hidden", "[checker]") {
  auto m = Module::cyclic(zz, {12});
  auto n = span(m, {4});
  auto v = classify(n, Reduction::empty(), Expansion::id(), MCS::generated(zz, {{2}}));
  CHECK_FALSE(v.precondition_ok);
  CHECK_FALSE(v.holds);
  CHECK(v.witnesses.empty());
  CHECK(std::string(to_string(v.status())) == "vacuous-fail");
  CHECK_THROWS_AS(classify(Submodule::whole(m), Reduction::empty(), Expansion::id(),
                           MCS::one(zz)),
                  PreconditionError);
}

TEST_CASE("phi = id always holds once the precondition does", "[checker]") {
  for (auto const& [m, s] : setups()) {
    for (auto const& n : proper(m)) {
      for (auto const& d : expansions(m->ring())) {
        auto v = classify(n, Reduction::id(), d, s);
        CHECK(v.holds == v.precondition_ok);
        CHECK(v.vacuous);
      }
    }
  }
}

TEST_CASE("classification agrees with a direct enumeration", "[checker][oracle]") {
  for (auto const& [m, s] : setups()) {
    if (m->size() > 18) {
      continue;
    }
    Ring const& r = m->ring();
    for (auto const& n : proper(m)) {
      for (auto const& d : expansions(r)) {
        for (auto const& f : reductions(r)) {
          auto v = classify(n, f, d, s);
          INFO(m->description() << " N=" << n.to_string() << " phi=" << f.to_string()
                                << " delta=" << d.to_string() << " S=" << s.to_string());
          CHECK(v.holds == textbook::naive_phi_delta_s(n, f, d, s));
        }
      }
    }
  }
}

TEST_CASE("hierarchy rows match the classical definitions", "[checker][oracle]") {
  for (auto const& [m, s] : setups()) {
    Ring const& r = m->ring();
    for (auto const& n : proper(m)) {
      for (auto const& f : reductions(r)) {
        Context ctx(n, f, Expansion::rad(), s);
        auto h = hierarchy(ctx);
        INFO(m->description() << " N=" << n.to_string() << " phi=" << f.to_string()
                              << " S=" << s.to_string());
        CHECK(h.prime == textbook::is_prime(n));
        CHECK(h.primary == textbook::is_primary(n));
        CHECK(h.phi_prime == textbook::is_phi_prime(n, f(n)));
        CHECK(h.s_prime == textbook::is_s_prime(n, s));
        CHECK(h.s_primary == textbook::is_s_primary(n, s));
        // Each row implies the next weaker one.
        CHECK((!h.prime || h.primary));
        CHECK((!h.prime || h.phi_prime));
        CHECK((!h.delta_s_primary || h.phi_delta_s_primary));
        CHECK((!h.phi_delta_primary || !ctx.precondition_ok() ||
               h.phi_delta_s_primary));
      }
    }
  }
}

TEST_CASE("S meeting the annihilator of a torsion module", "[checker]") {
  // The Z-summand is torsion-free; on the torsion part s = 6 kills everything.
  auto m = Module::cyclic(zz, {2, 3});
  auto zero = Submodule::zero(m);
  auto s = MCS::generated(zz, {{6}});
  auto v = classify(zero, Reduction::empty(), Expansion::id(), s);
  // (0 : M) = 6Z meets S here, unlike the module with the free summand.
  CHECK_FALSE(v.precondition_ok);
  CHECK_FALSE(textbook::is_prime(zero));
}

TEST_CASE("IK characterization on the Z_18 instance", "[checker][ik]") {
  auto m = Module::cyclic(zz, {18});
  Context ctx(span(m, {3}), Reduction::mul(z(2)), Expansion::rad(), MCS::one(zz));
  auto c = ik_conditions(ctx, {1}, enumerate_submodules(m));
  CHECK(c.c1);
  CHECK(c.c2);
  CHECK(c.c3);
}

TEST_CASE("IK conditions agree on small instances", "[checker][ik]") {
  for (auto const& [m, s] : setups()) {
    if (m->size() > 12) {
      continue;
    }
    auto lattice = enumerate_submodules(m);
    for (auto const& n : proper(m)) {
      for (auto const& f : reductions(m->ring())) {
        Context ctx(n, f, Expansion::id(), s);
        if (!ctx.precondition_ok()) {
          continue;
        }
        for (auto const& sv : ctx.s_values()) {
          auto c = ik_conditions(ctx, sv, lattice);
          INFO(m->description() << " N=" << n.to_string() << " phi=" << f.to_string());
          CHECK(c.c1 == c.c3);
        }
      }
    }
  }
}

TEST_CASE("twin zeros against brute force", "[checker][twin]") {
  auto m = Module::cyclic(zz, {12});
  Context ctx(span(m, {4}), Reduction::power(2), Expansion::id(), MCS::one(zz));
  auto twins = find_twin_zeros(ctx, {1});
  std::vector<TwinZero> brute;
  for (int_t a = 0; a < 12; ++a) {
    for (Elem x = 0; x < 12; ++x) {
      bool in_phi = (a * x) % 4 == 0;
      if (in_phi && x % 4 != 0 && a % 4 != 0) {
        brute.push_back({{a}, x});
      }
    }
  }
  CHECK(twins == brute);
  CHECK(std::find(twins.begin(), twins.end(), TwinZero{{2}, 2}) != twins.end());
}

TEST_CASE("twin-zero criterion matches the definition", "[checker][twin]") {
  for (auto const& [m, s] : setups()) {
    if (m->size() > 12) {
      continue;
    }
    auto lattice = enumerate_submodules(m);
    for (auto const& n : proper(m)) {
      for (auto const& f : reductions(m->ring())) {
        for (auto const& d : {Expansion::id(), Expansion::rad()}) {
          Context ctx(n, f, d, s);
          if (!ctx.precondition_ok()) {
            continue;
          }
          for (auto const& sv : ctx.s_values()) {
            INFO(m->description() << " N=" << n.to_string() << " phi=" << f.to_string());
            CHECK(twin_zero_criterion(ctx, sv, lattice) == ctx.holds_at(sv));
          }
        }
      }
    }
  }
}

TEST_CASE("monotone in S, delta and phi", "[checker]") {
  for (auto const& [m, s] : setups()) {
    if (m->size() > 12) {
      continue;
    }
    Ring const& r = m->ring();
    auto one = MCS::one(r);
    for (auto const& n : proper(m)) {
      auto lo = classify(n, Reduction::zero(), Expansion::id(), one);
      auto hi_delta = classify(n, Reduction::zero(), Expansion::rad(), one);
      auto hi_phi = classify(n, Reduction::id(), Expansion::id(), one);
      CHECK((!lo.holds || hi_delta.holds));
      CHECK((!lo.holds || hi_phi.holds));
      auto with_s = classify(n, Reduction::zero(), Expansion::id(), s);
      CHECK((!lo.holds || !with_s.precondition_ok || with_s.holds));
    }
  }
}

TEST_CASE("ideal classification", "[checker][ideal]") {
  Ring r12 = Ring::finite({12});
  auto one = MCS::one(r12);
  // Prime ideals of Z_12 are 2 and 3.
  for (auto const& i : all_ideals(r12)) {
    if (i.is_unit()) {
      continue;
    }
    auto v = classify_ideal(i, std::nullopt, Expansion::id(), one);
    int_t d = i.gens()[0];
    CHECK(v.holds == (d == 2 || d == 3));
  }
  // Over Z: pZ is prime, 6Z is not, 4Z is primary.
  CHECK(classify_ideal(z(5), std::nullopt, Expansion::id(), MCS::one(zz)).holds);
  CHECK_FALSE(classify_ideal(z(6), std::nullopt, Expansion::id(), MCS::one(zz)).holds);
  CHECK(classify_ideal(z(4), std::nullopt, Expansion::rad(), MCS::one(zz)).holds);
  // 6Z with S = <3>: s = 3 absorbs the 3-part; <5> does not help.
  CHECK(classify_ideal(z(6), std::nullopt, Expansion::id(), MCS::generated(zz, {{3}}))
            .holds);
  CHECK_FALSE(classify_ideal(z(6), std::nullopt, Expansion::id(),
                             MCS::generated(zz, {{5}}))
                  .holds);
  CHECK_FALSE(classify_ideal(z(6), std::nullopt, Expansion::id(),
                             MCS::generated(zz, {{6}}))
                  .precondition_ok);
  // Against a direct enumeration in Z_n for n ≤ 24.
  for (int_t nmod : {6, 8, 12, 18, 24}) {
    Ring r = Ring::finite({nmod});
    for (auto const& i : all_ideals(r)) {
      if (i.is_unit()) {
        continue;
      }
      for (auto const& g : r.elements()) {
        MCS s = MCS::one(r);
        try {
          s = MCS::generated(r, {g});
        } catch (Error const&) {
          continue;
        }
        auto phi = ideal_product(i, i);
        auto v2 = classify_ideal(i, phi, Expansion::rad(), s);
        auto d = ideal_radical(i);
        bool pre = true;
        for (auto const& x : s.elements()) {
          pre &= !i.contains(x);
        }
        bool brute = false;
        for (auto const& sv : s.elements()) {
          bool ok = true;
          for (auto const& a : r.elements()) {
            for (auto const& b : r.elements()) {
              auto ab = r.mul(a, b);
              if (i.contains(ab) && !phi.contains(ab) && !i.contains(r.mul(sv, a)) &&
                  !d.contains(r.mul(sv, b))) {
                ok = false;
              }
            }
          }
          brute |= ok;
        }
        CHECK(v2.precondition_ok == pre);
        CHECK(v2.holds == (pre && brute));
      }
    }
  }
}
