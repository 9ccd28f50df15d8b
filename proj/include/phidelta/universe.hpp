#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phidelta/checker.hpp"

namespace phidelta {

// The instances a proposition is checked over. Catalogs of φ, δ and S are
// generated per ring from the parameters below.
struct Universe {
  std::vector<ModulePtr> modules;
  // Direct products M1 x M2 over R1 x R2, for the product theorems.
  std::vector<ModulePtr> products;
  // J of δ_res, δ_J and φ(N) = JN, as the ideal generated by j in every
  // component.
  std::vector<int_t> params{2, 3};
  // S over Z is generated by one of these; finite rings use the closure of
  // every element that avoids 0.
  std::vector<int_t> z_mcs_gens{2, 3, 5, 6};
  // Bound for ideal quantifiers over Z outside the L-bounded checks and for
  // concrete elements of S.
  int_t ideal_bound = 60;
  std::size_t max_module_size = kDefaultMaxModuleSize;
  // When set, replace the generated catalogs. Entries over another ring are
  // skipped for each module.
  std::optional<std::vector<Reduction>> reductions;
  std::optional<std::vector<Expansion>> expansions;
  std::optional<std::vector<MCS>> mcs_list;

  void check_bounds() const {
    for (auto const& list : {modules, products}) {
      for (auto const& m : list) {
        if (m->size() > max_module_size) {
          throw BoundExceeded("module " + m->description() + " has " +
                              std::to_string(m->size()) + " elements");
        }
      }
    }
  }
};

inline Ideal constant_ideal(Ring const& r, int_t j) {
  return Ideal(r, std::vector<int_t>(r.components(), j));
}

template <class Fn>
bool over_ring(Fn const& f, Ring const& r) {
  return !f.param() || f.param()->ring() == r;
}

inline std::vector<Expansion> expansion_catalog(Ring const& r, Universe const& u) {
  if (u.expansions) {
    std::vector<Expansion> out;
    for (auto const& e : *u.expansions) {
      if (over_ring(e, r)) {
        out.push_back(e);
      }
    }
    return out;
  }
  std::vector<Expansion> out{Expansion::id(), Expansion::rad(), Expansion::ann()};
  for (int_t j : u.params) {
    out.push_back(Expansion::res(constant_ideal(r, j)));
  }
  for (int_t j : u.params) {
    out.push_back(Expansion::plus(constant_ideal(r, j)));
  }
  return out;
}

inline std::vector<Reduction> reduction_catalog(Ring const& r, Universe const& u) {
  if (u.reductions) {
    std::vector<Reduction> out;
    for (auto const& f : *u.reductions) {
      if (over_ring(f, r)) {
        out.push_back(f);
      }
    }
    return out;
  }
  std::vector<Reduction> out{Reduction::empty(),  Reduction::zero(),
                             Reduction::id(),     Reduction::power(2),
                             Reduction::power(3), Reduction::colon()};
  for (int_t j : u.params) {
    out.push_back(Reduction::mul(constant_ideal(r, j)));
  }
  return out;
}

inline std::vector<MCS> mcs_catalog(Ring const& r, Universe const& u) {
  if (u.mcs_list) {
    std::vector<MCS> out;
    for (auto const& s : *u.mcs_list) {
      if (s.ring() == r) {
        out.push_back(s);
      }
    }
    return out;
  }
  std::vector<MCS> out{MCS::one(r)};
  auto add = [&](MCS s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) {
      out.push_back(std::move(s));
    }
  };
  if (r.is_integers()) {
    for (int_t g : u.z_mcs_gens) {
      add(MCS::generated(r, {{g}}));
    }
    return out;
  }
  for (auto const& x : r.elements()) {
    try {
      add(MCS::generated(r, {x}));
    } catch (Error const&) {
      // the closure reaches 0
    }
  }
  return out;
}

// Smaller catalogs for the factors of a product, where the choices multiply.
inline std::vector<Reduction> factor_reductions(Ring const& r) {
  return {Reduction::empty(), Reduction::zero(), Reduction::id(),
          Reduction::power(2), Reduction::mul(constant_ideal(r, 2))};
}

inline std::vector<Expansion> factor_expansions(Ring const& r) {
  return {Expansion::id(), Expansion::rad(), Expansion::plus(constant_ideal(r, 2))};
}

inline Universe default_universe() {
  Universe u;
  Ring zz = Ring::integers();
  for (auto const& moduli : std::vector<std::vector<int_t>>{
           {4}, {6}, {8}, {12}, {18}, {2, 3}, {4, 9}}) {
    u.modules.push_back(Module::regular(Ring::finite(moduli)));
  }
  for (int_t n : {4, 6, 8, 12, 18, 36}) {
    u.modules.push_back(Module::cyclic(zz, {n}));
  }
  u.modules.push_back(Module::cyclic(zz, {2, 2}));
  u.modules.push_back(Module::cyclic(zz, {2, 4}));
  std::vector<ModulePtr> factors{
      Module::regular(Ring::finite({2})), Module::regular(Ring::finite({3})),
      Module::regular(Ring::finite({4})), Module::cyclic(Ring::finite({4}), {2})};
  for (auto const& a : factors) {
    for (auto const& b : factors) {
      u.products.push_back(direct_product(a, b));
    }
  }
  return u;
}

// One module with its lattice and catalogs, and the contexts of every proper
// submodule under one (φ, δ, S) setting.
struct ModuleData {
  ModulePtr m;
  std::vector<Submodule> lattice;
  std::vector<Reduction> phis;
  std::vector<Expansion> deltas;
  std::vector<MCS> mcs;
  // Representatives of S shared by every context of this module.
  std::vector<std::vector<RingElem>> s_values;

  ModuleData(ModulePtr module, Universe const& u)
      : m(std::move(module)),
        lattice(enumerate_submodules(m)),
        phis(reduction_catalog(m->ring(), u)),
        deltas(expansion_catalog(m->ring(), u)),
        mcs(mcs_catalog(m->ring(), u)) {
    int_t modulus = quantifier_modulus(*m, {});
    for (auto const& s : mcs) {
      s_values.push_back(mcs_representatives(s, modulus));
    }
  }

  std::optional<std::size_t> index_of(Submodule const& n) const {
    auto it = std::lower_bound(lattice.begin(), lattice.end(), n);
    if (it == lattice.end() || !(*it == n)) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - lattice.begin());
  }
};

struct Setting {
  Reduction const& phi;
  Expansion const& delta;
  MCS const& s;
  std::vector<RingElem> const& s_values;
  // Indexed like the lattice; empty for the whole module.
  std::vector<std::optional<Context>> contexts;
};

// Calls fn(setting) for every (φ, δ, S) of the catalogs.
template <class Fn>
void for_each_setting(ModuleData const& d, Fn&& fn) {
  for (auto const& phi : d.phis) {
    for (auto const& delta : d.deltas) {
      for (std::size_t si = 0; si < d.mcs.size(); ++si) {
        Setting st{phi, delta, d.mcs[si], d.s_values[si], {}};
        for (auto const& n : d.lattice) {
          if (n.is_whole()) {
            st.contexts.emplace_back(std::nullopt);
          } else {
            st.contexts.emplace_back(Context(n, phi, delta, d.mcs[si]));
          }
        }
        fn(st);
      }
    }
  }
}

// N is φ-δ-S-primary associated to s.
inline bool at(Context const& ctx, RingElem const& s) {
  return ctx.precondition_ok() && ctx.holds_at(s);
}

inline bool at(std::optional<Context> const& ctx, RingElem const& s) {
  return ctx && at(*ctx, s);
}

}  // namespace phidelta
