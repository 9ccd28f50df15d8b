#pragma once

// Classical predicates written straight from their textbook definitions,
// with their own scalar loops. Over Z the scalars run over 0..2e-1 for the
// module exponent e, and S over the residues of generator products mod 2e.

#include <set>
#include <vector>

#include "phidelta/module.hpp"
#include "phidelta/structure_maps.hpp"

namespace textbook {

using phidelta::Elem;
using phidelta::int_t;
using phidelta::Module;
using phidelta::MCS;
using phidelta::PhiValue;
using phidelta::Ring;
using phidelta::RingElem;
using phidelta::Submodule;

inline int_t span_of(Module const& m) {
  return 2 * m.exponent();
}

inline std::vector<RingElem> scalars(Module const& m) {
  Ring const& r = m.ring();
  if (r.is_finite()) {
    return r.elements();
  }
  std::vector<RingElem> out;
  for (int_t a = 0; a < span_of(m); ++a) {
    out.push_back({a});
  }
  return out;
}

// Elements of S as they act on M: products of generators, up to the period.
inline std::vector<RingElem> s_elements(Module const& m, MCS const& s) {
  Ring const& r = m.ring();
  if (r.is_finite()) {
    return s.elements();
  }
  int_t l = span_of(m);
  std::set<int_t> seen{1 % l};
  bool grew = true;
  while (grew) {
    grew = false;
    for (int_t x : std::vector<int_t>(seen.begin(), seen.end())) {
      for (auto const& g : s.gens()) {
        grew |= seen.insert((x * (g[0] % l)) % l).second;
      }
    }
  }
  std::vector<RingElem> out;
  for (int_t x : seen) {
    out.push_back({x});
  }
  return out;
}

inline RingElem times(Module const& m, RingElem const& a, RingElem const& b) {
  auto p = m.ring().mul(a, b);
  if (m.ring().is_integers()) {
    p[0] %= span_of(m);
  }
  return p;
}

// a ∈ (N : M).
inline bool kills_quotient(Submodule const& n, RingElem const& a) {
  auto const& m = *n.parent();
  for (Elem x = 0; x < m.size(); ++x) {
    if (!n.contains(m.act(a, x))) {
      return false;
    }
  }
  return true;
}

// a ∈ √(N : M).
inline bool power_kills_quotient(Submodule const& n, RingElem const& a) {
  auto const& m = *n.parent();
  RingElem p = a;
  for (std::size_t k = 1; k <= 2 * m.size() + 2; ++k) {
    if (kills_quotient(n, p)) {
      return true;
    }
    p = times(m, p, a);
  }
  return false;
}

inline bool in_phi(PhiValue const& p, Elem x) {
  return p && p->contains(x);
}

template <class Member>
bool generic_prime(Submodule const& n, PhiValue const& phi,
                   std::vector<RingElem> const& s_set, Member in_ideal) {
  auto const& m = *n.parent();
  if (n.is_whole()) {
    return false;
  }
  for (auto const& s : s_set) {
    if (in_ideal(s)) {
      return false;
    }
  }
  auto as = scalars(m);
  for (auto const& s : s_set) {
    bool ok = true;
    for (auto const& a : as) {
      for (Elem x = 0; x < m.size() && ok; ++x) {
        Elem ax = m.act(a, x);
        if (n.contains(ax) && !in_phi(phi, ax) && !n.contains(m.act(s, x)) &&
            !in_ideal(times(m, s, a))) {
          ok = false;
        }
      }
    }
    if (ok) {
      return true;
    }
  }
  return false;
}

inline std::vector<RingElem> just_one(Module const& m) {
  return {m.ring().one()};
}

inline bool is_prime(Submodule const& n) {
  auto const& m = *n.parent();
  return generic_prime(n, std::nullopt, just_one(m),
                       [&](RingElem const& a) { return kills_quotient(n, a); });
}

inline bool is_primary(Submodule const& n) {
  auto const& m = *n.parent();
  return generic_prime(n, std::nullopt, just_one(m), [&](RingElem const& a) {
    return power_kills_quotient(n, a);
  });
}

inline bool is_phi_prime(Submodule const& n, PhiValue const& phi) {
  auto const& m = *n.parent();
  return generic_prime(n, phi, just_one(m),
                       [&](RingElem const& a) { return kills_quotient(n, a); });
}

inline bool is_s_prime(Submodule const& n, MCS const& s) {
  auto const& m = *n.parent();
  return generic_prime(n, std::nullopt, s_elements(m, s),
                       [&](RingElem const& a) { return kills_quotient(n, a); });
}

inline bool is_s_primary(Submodule const& n, MCS const& s) {
  auto const& m = *n.parent();
  return generic_prime(n, std::nullopt, s_elements(m, s), [&](RingElem const& a) {
    return power_kills_quotient(n, a);
  });
}

// The φ-δ-S-primary definition with every quantifier enumerated directly.
inline bool naive_phi_delta_s(Submodule const& n, phidelta::Reduction const& phi,
                              phidelta::Expansion const& delta, MCS const& s) {
  auto d = delta(phidelta::colon_ring(n));
  return generic_prime(n, phi(n), s_elements(*n.parent(), s),
                       [&](RingElem const& a) { return d.contains(a); });
}

}  // namespace textbook
