#pragma once

#include <algorithm>
#include <atomic>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phidelta/structure_maps.hpp"

namespace phidelta {

namespace testing {

// When set, the δ branch of the classification accepts every pair with
// am != 0. Lets the suite prove it can detect a broken checker.
inline std::atomic<bool> corrupt_delta_branch{false};

}  // namespace testing

// Quantifier modulus over Z: every predicate checked here depends on a ring
// element only through its residue mod L. Finite rings return 0 (no bound
// needed, elements are enumerated).
inline int_t quantifier_modulus(Module const& m,
                                std::vector<Ideal> const& ideals) {
  if (m.ring().is_finite()) {
    return 0;
  }
  int_t l = m.exponent();
  for (auto const& i : ideals) {
    if (i.gens()[0] != 0) {
      l = std::lcm(l, i.gens()[0]);
    }
  }
  return l;
}

// Representatives of S: the closure over a finite ring, residues mod L over Z.
inline std::vector<RingElem> mcs_representatives(MCS const& s, int_t modulus) {
  if (s.ring().is_finite()) {
    return s.elements();
  }
  std::vector<RingElem> out;
  for (int_t r : s.residues(modulus)) {
    out.push_back({r});
  }
  return out;
}

// Ideals that suffice for "for every ideal I": all ideals of a finite ring;
// over Z, 0 and dZ for d | L (kZ acts like gcd(k, L)Z on every predicate).
inline std::vector<Ideal> bounded_ideals(Ring const& r, int_t modulus) {
  if (r.is_finite()) {
    return all_ideals(r);
  }
  std::vector<Ideal> out{Ideal::zero(r)};
  for (int_t d : arith::divisors(modulus)) {
    out.emplace_back(r, std::vector<int_t>{d});
  }
  return out;
}

// Elements of I among the scalar representatives.
inline std::vector<RingElem> ideal_representatives(
    Ideal const& i, std::vector<RingElem> const& scalars) {
  std::vector<RingElem> out;
  for (auto const& a : scalars) {
    if (i.contains(a)) {
      out.push_back(a);
    }
  }
  return out;
}

struct Counterexample {
  RingElem a;
  Elem m;
  RingElem s;
};

struct TwinZero {
  RingElem a;
  Elem m;

  friend bool operator==(TwinZero const&, TwinZero const&) = default;
};

enum class Status { holds, fails, precondition_fails };

inline char const* to_string(Status s) {
  switch (s) {
    case Status::holds:
      return "holds";
    case Status::fails:
      return "fails";
    case Status::precondition_fails:
      return "vacuous-fail";
  }
  return "?";
}

struct Verdict {
  bool precondition_ok = false;
  bool holds = false;
  // No pair satisfies am ∈ N \ φ(N).
  bool vacuous = false;
  std::vector<RingElem> witnesses;
  // First violating pair for the first representative of S (the identity).
  std::optional<Counterexample> counterexample;
  int_t checked_bound = 0;

  Status status() const {
    if (!precondition_ok) {
      return Status::precondition_fails;
    }
    return holds ? Status::holds : Status::fails;
  }
};

// Everything derived from (N, φ, δ, S) that the decision procedures share.
class Context {
 public:
  Context(Submodule n, Reduction phi, Expansion delta, MCS s)
      : Context(n, phi, delta, phi(n), delta(colon_ring(n)), std::move(s)) {}

  // N with φ(N) and δ(N:M) given as values, for maps induced per instance
  // (quotients, fraction modules, images).
  static Context from_values(Submodule n, PhiValue phi_n, Ideal delta_colon,
                             MCS s) {
    return Context(std::move(n), std::nullopt, std::nullopt, std::move(phi_n),
                   std::move(delta_colon), std::move(s));
  }

  Submodule const& n() const {
    return n_;
  }
  ModulePtr const& module() const {
    return n_.parent();
  }
  bool has_maps() const {
    return phi_ && delta_;
  }
  Reduction const& phi() const {
    if (!phi_) {
      throw Error("context was built from values");
    }
    return *phi_;
  }
  Expansion const& delta() const {
    if (!delta_) {
      throw Error("context was built from values");
    }
    return *delta_;
  }
  MCS const& mcs() const {
    return s_;
  }
  // (N :_R M).
  Ideal const& colon() const {
    return colon_;
  }
  // δ(N :_R M).
  Ideal const& delta_colon() const {
    return delta_colon_;
  }
  PhiValue const& phi_n() const {
    return phi_n_;
  }
  int_t modulus() const {
    return modulus_;
  }
  std::vector<RingElem> const& scalars() const {
    return scalars_;
  }
  std::vector<RingElem> const& s_values() const {
    return svalues_;
  }
  bool precondition_ok() const {
    return precondition_ok_;
  }
  bool vacuous() const {
    return premise_.empty();
  }

  // s reduced to this context's representatives.
  RingElem reduce(RingElem s) const {
    auto const& r = module()->ring();
    s = r.normalize(s);
    if (r.is_integers()) {
      s[0] = arith::mod(s[0], modulus_);
    }
    return s;
  }

  RingElem mul(RingElem const& a, RingElem const& b) const {
    return reduce(module()->ring().mul(a, b));
  }

  // First pair (a, m) with am ∈ N \ φ(N), sm ∉ N, sa ∉ δ(N:M), if any.
  std::optional<std::pair<RingElem, Elem>> violation_at(RingElem s) const {
    s = reduce(s);
    auto const& m = *module();
    bool corrupt = testing::corrupt_delta_branch.load();
    for (auto [ai, x] : premise_) {
      auto const& a = scalars_[ai];
      if (n_.contains(m.act(s, x))) {
        continue;
      }
      bool delta_branch = corrupt ? m.act(a, x) != 0
                                  : delta_colon_.contains(mul(s, a));
      if (!delta_branch) {
        return std::pair{a, x};
      }
    }
    return std::nullopt;
  }

  // The defining condition at a fixed s (precondition not included).
  bool holds_at(RingElem const& s) const {
    return !violation_at(s);
  }

 private:
  Context(Submodule n, std::optional<Reduction> phi,
          std::optional<Expansion> delta, PhiValue phi_n, Ideal delta_colon,
          MCS s)
      : n_(std::move(n)),
        phi_(std::move(phi)),
        delta_(std::move(delta)),
        s_(std::move(s)),
        colon_(colon_ring(n_)),
        delta_colon_(std::move(delta_colon)),
        phi_n_(std::move(phi_n)) {
    auto const& m = *n_.parent();
    require_same_ring(m.ring(), s_.ring());
    require_same_ring(m.ring(), delta_colon_.ring());
    if (n_.is_whole()) {
      throw PreconditionError("submodule is not proper");
    }
    if (phi_n_) {
      require_same_parent(n_, *phi_n_);
    }
    modulus_ = quantifier_modulus(m, {colon_, delta_colon_});
    scalars_ = scalar_domain(m.ring(), modulus_);
    svalues_ = mcs_representatives(s_, modulus_);
    precondition_ok_ = !s_.intersects(delta_colon_);
    for (std::size_t ai = 0; ai < scalars_.size(); ++ai) {
      for (std::size_t x = 0; x < m.size(); ++x) {
        Elem am = m.act(scalars_[ai], static_cast<Elem>(x));
        if (n_.contains(am) && !phi_contains(phi_n_, am)) {
          premise_.emplace_back(ai, static_cast<Elem>(x));
        }
      }
    }
  }

  Submodule n_;
  std::optional<Reduction> phi_;
  std::optional<Expansion> delta_;
  MCS s_;
  Ideal colon_;
  Ideal delta_colon_;
  PhiValue phi_n_;
  int_t modulus_ = 0;
  std::vector<RingElem> scalars_;
  std::vector<RingElem> svalues_;
  bool precondition_ok_ = false;
  std::vector<std::pair<std::size_t, Elem>> premise_;
};

inline Verdict classify(Context const& ctx) {
  Verdict v;
  v.precondition_ok = ctx.precondition_ok();
  v.vacuous = ctx.vacuous();
  v.checked_bound = ctx.modulus();
  for (auto const& s : ctx.s_values()) {
    auto bad = ctx.violation_at(s);
    if (!bad) {
      v.witnesses.push_back(s);
    } else if (!v.counterexample) {
      v.counterexample = Counterexample{bad->first, bad->second, s};
    }
  }
  v.holds = v.precondition_ok && !v.witnesses.empty();
  if (!v.precondition_ok) {
    v.witnesses.clear();
  }
  return v;
}

inline Verdict classify(Submodule const& n, Reduction const& phi,
                        Expansion const& delta, MCS const& s) {
  return classify(Context(n, phi, delta, s));
}

// δ-S-primary: the same check with φ = ∅.
inline Context without_phi(Context const& ctx) {
  return Context::from_values(ctx.n(), std::nullopt, ctx.delta_colon(), ctx.mcs());
}

// The rows of the classification hierarchy for one submodule.
struct Hierarchy {
  bool prime;
  bool primary;
  bool phi_prime;
  bool phi_delta_primary;
  bool s_prime;
  bool s_primary;
  bool delta_s_primary;
  bool phi_delta_s_primary;
};

inline Hierarchy hierarchy(Context const& ctx) {
  auto const& n = ctx.n();
  auto const& ring = ctx.module()->ring();
  auto one = MCS::one(ring);
  auto e = Reduction::empty();
  return Hierarchy{
      classify(n, e, Expansion::id(), one).holds,
      classify(n, e, Expansion::rad(), one).holds,
      classify(n, ctx.phi(), Expansion::id(), one).holds,
      classify(n, ctx.phi(), ctx.delta(), one).holds,
      classify(n, e, Expansion::id(), ctx.mcs()).holds,
      classify(n, e, Expansion::rad(), ctx.mcs()).holds,
      classify(without_phi(ctx)).holds,
      classify(ctx).holds,
  };
}

struct IkConditions {
  bool c1;
  bool c2;
  bool c3;
};

// Which ideal condition (2) excludes: δ((N:M) : s) as stated, or
// (δ(N:M) : s) as used in the argument.
enum class IkReading { stated, quotient_of_delta };

inline Ideal ik_excluded(Context const& ctx, RingElem const& s, IkReading reading) {
  auto sr = Ideal::principal(ctx.module()->ring(), s);
  return reading == IkReading::stated ? ctx.delta()(ideal_colon(ctx.colon(), sr))
                                      : ideal_colon(ctx.delta_colon(), sr);
}

// The three conditions of the ideal/submodule characterization at a fixed s.
inline IkConditions ik_conditions(Context const& ctx, RingElem s,
                                  std::vector<Submodule> const& lattice,
                                  IkReading reading = IkReading::stated) {
  if (!ctx.precondition_ok()) {
    throw PreconditionError("δ(N:M) meets S");
  }
  s = ctx.reduce(s);
  auto const& m = ctx.module();
  auto const& ring = m->ring();
  auto const& n = ctx.n();
  IkConditions out{ctx.holds_at(s), true, true};

  Ideal excluded = ik_excluded(ctx, s, reading);
  auto n_s = colon_module(n, s);
  for (auto const& a : ctx.scalars()) {
    if (excluded.contains(a)) {
      continue;
    }
    auto n_a = colon_module(n, a);
    auto phi_a = colon_module(ctx.phi_n(), a);
    if (!n_a.subset_of(n_s) && !(phi_a && *phi_a == n_a)) {
      out.c2 = false;
      break;
    }
  }

  for (auto const& i : bounded_ideals(ring, ctx.modulus())) {
    bool s_i = ideal_product(Ideal::principal(ring, s), i)
                   .subset_of(ctx.delta_colon());
    for (auto const& k : lattice) {
      auto ik = scale(i, k);
      if (!ik.subset_of(n) || phi_subset(ik, ctx.phi_n())) {
        continue;
      }
      if (!s_i && !scale(s, k).subset_of(n)) {
        out.c3 = false;
        break;
      }
    }
    if (!out.c3) {
      break;
    }
  }
  return out;
}

// Pairs (a, m) with am ∈ φ(N), sm ∉ N, sa ∉ δ(N:M).
inline std::vector<TwinZero> find_twin_zeros(Context const& ctx, RingElem s) {
  s = ctx.reduce(s);
  auto const& m = *ctx.module();
  std::vector<TwinZero> out;
  for (auto const& a : ctx.scalars()) {
    if (ctx.delta_colon().contains(ctx.mul(s, a))) {
      continue;
    }
    for (Elem x = 0; x < m.size(); ++x) {
      if (phi_contains(ctx.phi_n(), m.act(a, x)) &&
          !ctx.n().contains(m.act(s, x))) {
        out.push_back({a, x});
      }
    }
  }
  return out;
}

// IK ⊆ N and IK ⊄ φ(N).
inline bool qualifies(Context const& ctx, Ideal const& i, Submodule const& k) {
  auto ik = scale(i, k);
  return ik.subset_of(ctx.n()) && !phi_subset(ik, ctx.phi_n());
}

// Free of twin zeros with respect to IK; nullopt when IK does not qualify.
inline std::optional<bool> is_free_twin_zero(Context const& ctx, RingElem s,
                                             Ideal const& i,
                                             Submodule const& k) {
  if (!qualifies(ctx, i, k)) {
    return std::nullopt;
  }
  auto twins = find_twin_zeros(ctx, s);
  for (auto const& t : twins) {
    if (i.contains(t.a) && k.contains(t.m)) {
      return false;
    }
  }
  return true;
}

// Free of twin zeros with respect to every qualifying IK, K proper.
inline bool free_twin_zero_global(Context const& ctx, RingElem s,
                                  std::vector<Submodule> const& lattice) {
  for (auto const& i : bounded_ideals(ctx.module()->ring(), ctx.modulus())) {
    for (auto const& k : lattice) {
      if (k.is_whole()) {
        continue;
      }
      if (is_free_twin_zero(ctx, s, i, k) == std::optional<bool>{false}) {
        return false;
      }
    }
  }
  return true;
}

// For every qualifying IK with K proper: sK ⊆ N or sI ⊆ δ(N:M).
inline bool twin_zero_criterion(Context const& ctx, RingElem s,
                                std::vector<Submodule> const& lattice) {
  s = ctx.reduce(s);
  auto const& ring = ctx.module()->ring();
  for (auto const& i : bounded_ideals(ring, ctx.modulus())) {
    bool s_i = ideal_product(Ideal::principal(ring, s), i)
                   .subset_of(ctx.delta_colon());
    for (auto const& k : lattice) {
      if (k.is_whole() || !qualifies(ctx, i, k)) {
        continue;
      }
      if (!s_i && !scale(s, k).subset_of(ctx.n())) {
        return false;
      }
    }
  }
  return true;
}

// φ-δ-S-primary ideals: proper I with I ∩ S = ∅ such that, for some s,
// ab ∈ I \ φ(I) implies sa ∈ I or sb ∈ δ(I). φ(I) is given as a value.
struct IdealVerdict {
  bool precondition_ok = false;
  bool holds = false;
  // Witnesses are residues mod this over Z; 0 for finite rings.
  int_t modulus = 0;
  std::vector<RingElem> witnesses;

  bool holds_at(RingElem s) const {
    if (modulus != 0) {
      s[0] = arith::mod(s[0], modulus);
    }
    return precondition_ok &&
           std::find(witnesses.begin(), witnesses.end(), s) != witnesses.end();
  }
};

inline IdealVerdict classify_ideal(Ideal const& i,
                                   std::optional<Ideal> const& phi_i,
                                   Expansion const& delta, MCS const& s) {
  Ring const& r = i.ring();
  require_same_ring(r, s.ring());
  IdealVerdict v;
  if (i.is_unit()) {
    throw PreconditionError("ideal is not proper");
  }
  Ideal d = delta(i);
  int_t modulus = 0;
  if (r.is_integers()) {
    if (i.is_zero()) {
      throw PreconditionError("the zero ideal of Z is outside the bounded check");
    }
    modulus = i.gens()[0];
    if (phi_i && phi_i->is_zero()) {
      throw PreconditionError("φ(I) = 0 over Z is outside the bounded check");
    }
    modulus = std::lcm(modulus, d.gens()[0]);
    if (phi_i) {
      modulus = std::lcm(modulus, phi_i->gens()[0]);
    }
  }
  v.precondition_ok = !s.intersects(i);
  v.modulus = modulus;
  auto scalars = scalar_domain(r, modulus);
  auto reduce = [&](RingElem x) {
    x = r.normalize(x);
    if (r.is_integers()) {
      x[0] = arith::mod(x[0], modulus);
    }
    return x;
  };
  std::vector<std::pair<RingElem, RingElem>> premise;
  for (auto const& a : scalars) {
    for (auto const& b : scalars) {
      auto ab = reduce(r.mul(a, b));
      if (i.contains(ab) && !(phi_i && phi_i->contains(ab))) {
        premise.emplace_back(a, b);
      }
    }
  }
  for (auto const& sv : mcs_representatives(s, modulus)) {
    bool ok = true;
    for (auto const& [a, b] : premise) {
      if (!i.contains(reduce(r.mul(sv, a))) && !d.contains(reduce(r.mul(sv, b)))) {
        ok = false;
        break;
      }
    }
    if (ok) {
      v.witnesses.push_back(sv);
    }
  }
  v.holds = v.precondition_ok && !v.witnesses.empty();
  if (!v.precondition_ok) {
    v.witnesses.clear();
  }
  return v;
}

}  // namespace phidelta
