#pragma once

#include <string>
#include <utility>
#include <vector>

#include "phidelta/module.hpp"

namespace phidelta {

// The elements of S that matter for a module of exponent L: the closure
// itself over a finite ring, the residues s mod L over Z. The identity comes
// first so that m/1 is always the pair with index 0.
inline std::vector<RingElem> mcs_action_values(MCS const& s, int_t modulus) {
  Ring const& r = s.ring();
  std::vector<RingElem> out{r.one()};
  if (r.is_finite()) {
    for (auto const& x : s.elements()) {
      if (x != r.one()) {
        out.push_back(x);
      }
    }
    return out;
  }
  for (int_t x : s.residues(modulus)) {
    if (x != arith::mod(1, modulus)) {
      out.push_back({x});
    }
  }
  if (modulus == 1) {
    out = {{0}};
  }
  return out;
}

// T_S(M) = {m : sm = 0 for some s in S}.
inline Submodule s_torsion(ModulePtr const& m, MCS const& s) {
  require_same_ring(m->ring(), s.ring());
  auto values = mcs_action_values(s, m->exponent());
  std::vector<bool> mask(m->size(), false);
  for (std::size_t x = 0; x < m->size(); ++x) {
    for (auto const& v : values) {
      if (m->act(v, static_cast<Elem>(x)) == 0) {
        mask[x] = true;
        break;
      }
    }
  }
  return Submodule(m, std::move(mask));
}

// S⁻¹M built from formal pairs (m, s) under (m,s) ~ (m',s') iff
// u(s'm - sm') = 0 for some u in S.
class FractionModule {
 public:
  FractionModule(ModulePtr base, MCS s)
      : base_(std::move(base)), mcs_(std::move(s)) {
    require_same_ring(base_->ring(), mcs_.ring());
    auto const& m = *base_;
    values_ = mcs_action_values(mcs_, m.exponent());
    std::size_t ns = values_.size();
    std::vector<std::vector<Elem>> kill(ns);
    for (std::size_t u = 0; u < ns; ++u) {
      for (std::size_t x = 0; x < m.size(); ++x) {
        if (m.act(values_[u], static_cast<Elem>(x)) == 0) {
          kill[u].push_back(static_cast<Elem>(x));
        }
      }
    }
    std::vector<bool> torsion(m.size(), false);
    for (auto const& k : kill) {
      for (Elem x : k) {
        torsion[x] = true;
      }
    }
    // Pairs in (s index, m) order; each joins the first earlier class whose
    // representative it is related to.
    pair_class_.assign(ns * m.size(), 0);
    std::vector<std::pair<std::size_t, Elem>> reps;
    for (std::size_t si = 0; si < ns; ++si) {
      for (std::size_t x = 0; x < m.size(); ++x) {
        auto e = static_cast<Elem>(x);
        std::size_t found = reps.size();
        for (std::size_t c = 0; c < reps.size(); ++c) {
          auto [tj, y] = reps[c];
          Elem diff = m.sub(m.act(values_[tj], e), m.act(values_[si], y));
          if (torsion[diff]) {
            found = c;
            break;
          }
        }
        if (found == reps.size()) {
          reps.emplace_back(si, e);
        }
        pair_class_[si * m.size() + x] = static_cast<Elem>(found);
      }
    }
    std::size_t n = reps.size();
    std::vector<Elem> add(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        auto [sa, xa] = reps[a];
        auto [sb, xb] = reps[b];
        Elem num = m.add(m.act(values_[sb], xa), m.act(values_[sa], xb));
        add[a * n + b] = fraction(num, value_index(m.ring().mul(values_[sa],
                                                                 values_[sb])));
      }
    }
    std::vector<std::vector<Elem>> proj(m.ring().components(),
                                        std::vector<Elem>(n));
    for (std::size_t i = 0; i < proj.size(); ++i) {
      for (std::size_t a = 0; a < n; ++a) {
        proj[i][a] = fraction(m.project(i, reps[a].second), reps[a].first);
      }
    }
    std::vector<std::string> names(n);
    for (std::size_t a = 0; a < n; ++a) {
      names[a] = m.name(reps[a].second) + "/" +
                 phidelta::to_string(values_[reps[a].first]);
    }
    module_ = Module::from_tables(
        m.ring(), std::move(add), std::move(proj), std::move(names),
        "S^-1(" + m.description() + ") with S = " + mcs_.to_string());
    std::vector<Elem> table(m.size());
    for (std::size_t x = 0; x < m.size(); ++x) {
      table[x] = fraction(static_cast<Elem>(x), 0);
    }
    canonical_ = ModuleMap{base_, module_, std::move(table),
                           MapKind::composition};
  }

  ModulePtr const& base() const {
    return base_;
  }

  MCS const& mcs() const {
    return mcs_;
  }

  ModulePtr const& module() const {
    return module_;
  }

  // Representatives of S acting on M.
  std::vector<RingElem> const& denominators() const {
    return values_;
  }

  // Class of m / values[s_index].
  Elem fraction(Elem m, std::size_t s_index) const {
    return pair_class_[s_index * base_->size() + m];
  }

  // m ↦ m/1.
  ModuleMap const& canonical_map() const {
    return canonical_;
  }

  // S⁻¹N = {n/s : n in N, s in S}.
  Submodule localize(Submodule const& n) const {
    if (n.parent() != base_) {
      throw Error("submodule is not in the localized module");
    }
    std::vector<bool> mask(module_->size(), false);
    for (std::size_t si = 0; si < values_.size(); ++si) {
      for (Elem x : n.elements()) {
        mask[fraction(x, si)] = true;
      }
    }
    return Submodule(module_, std::move(mask));
  }

  PhiValue localize(PhiValue const& n) const {
    if (!n) {
      return std::nullopt;
    }
    return localize(*n);
  }

  // S⁻¹N ∩ M = {m : m/1 in S⁻¹N}.
  Submodule contract(Submodule const& n) const {
    return preimage(canonical_, n);
  }

 private:
  std::size_t value_index(RingElem v) const {
    auto const& r = base_->ring();
    v = r.normalize(v);
    if (r.is_integers()) {
      v[0] = arith::mod(v[0], base_->exponent());
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
      auto w = values_[i];
      if (r.is_integers()) {
        w[0] = arith::mod(w[0], base_->exponent());
      }
      if (w == v) {
        return i;
      }
    }
    throw Error("denominator set is not multiplicatively closed");
  }

  ModulePtr base_;
  MCS mcs_;
  std::vector<RingElem> values_;
  std::vector<Elem> pair_class_;
  ModulePtr module_;
  ModuleMap canonical_;
};

// S* = {x : x/1 is a unit of S⁻¹R}. Over a finite ring this is read off the
// fraction module of R over itself; over Z it is generated by the primes
// dividing a generator of S (positive representatives only).
inline MCS mcs_saturation(MCS const& s) {
  Ring const& r = s.ring();
  if (r.is_integers()) {
    std::vector<RingElem> primes;
    for (auto const& g : s.gens()) {
      for (int_t p : arith::prime_factors(g[0])) {
        primes.push_back({p});
      }
    }
    return MCS::generated(r, std::move(primes));
  }
  FractionModule loc(Module::regular(r, r.order()), s);
  auto const& fm = *loc.module();
  Elem one = loc.fraction(loc.base()->from_coords(r.one()), 0);
  std::vector<RingElem> units;
  for (auto const& x : r.elements()) {
    for (Elem c = 0; c < fm.size(); ++c) {
      if (fm.act(x, c) == one) {
        units.push_back(x);
        break;
      }
    }
  }
  return MCS::from_set(r, std::move(units));
}

// {a in R : a/1 in S⁻¹J}, i.e. the a with ua in J for some u in S. Over Z,
// J must be nonzero.
inline Ideal ideal_contraction(Ideal const& j, MCS const& s) {
  Ring const& r = j.ring();
  require_same_ring(r, s.ring());
  if (r.is_integers()) {
    int_t g = j.gens()[0];
    if (g == 0) {
      throw Error("contraction of the zero ideal of Z is not supported");
    }
    auto us = s.residues(g);
    for (int_t a = 1; a <= g; ++a) {
      for (int_t u : us) {
        if ((u * a) % g == 0) {
          return Ideal(r, {a});
        }
      }
    }
    return j;
  }
  Ideal out = Ideal::zero(r);
  for (auto const& a : r.elements()) {
    for (auto const& u : s.elements()) {
      if (j.contains(r.mul(u, a))) {
        out = ideal_sum(out, Ideal::principal(r, a));
        break;
      }
    }
  }
  return out;
}

}  // namespace phidelta
