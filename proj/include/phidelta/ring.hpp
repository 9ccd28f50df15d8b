#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "phidelta/arith.hpp"

namespace phidelta {

using arith::int_t;

// One coordinate per ring component; the integer ring has a single coordinate.
using RingElem = std::vector<int_t>;

inline std::string to_string(RingElem const& r) {
  if (r.size() == 1) {
    return std::to_string(r[0]);
  }
  std::string out = "(";
  for (std::size_t i = 0; i < r.size(); ++i) {
    out += (i ? "," : "") + std::to_string(r[i]);
  }
  return out + ")";
}

// The integer ring Z, or a finite product Z_{n_1} x ... x Z_{n_k}.
class Ring {
 public:
  Ring() = default;

  static Ring integers() {
    return Ring();
  }

  static Ring finite(std::vector<int_t> moduli) {
    if (moduli.empty()) {
      throw Error("finite ring needs at least one component");
    }
    for (int_t n : moduli) {
      if (n < 2) {
        throw Error("ring modulus must be >= 2, got " + std::to_string(n));
      }
    }
    Ring r;
    r.moduli_ = std::move(moduli);
    return r;
  }

  static Ring product(Ring const& left, Ring const& right) {
    if (left.is_integers() || right.is_integers()) {
      throw Error("products are only supported for finite rings");
    }
    auto m = left.moduli_;
    m.insert(m.end(), right.moduli_.begin(), right.moduli_.end());
    return finite(std::move(m));
  }

  bool is_integers() const {
    return moduli_.empty();
  }

  bool is_finite() const {
    return !is_integers();
  }

  std::size_t components() const {
    return is_integers() ? 1 : moduli_.size();
  }

  // 0 for the integer component.
  int_t modulus(std::size_t i) const {
    return is_integers() ? 0 : moduli_.at(i);
  }

  std::vector<int_t> const& moduli() const {
    return moduli_;
  }

  // Number of elements; 0 stands for infinite.
  std::size_t order() const {
    if (is_integers()) {
      return 0;
    }
    std::size_t n = 1;
    for (int_t m : moduli_) {
      n *= static_cast<std::size_t>(m);
    }
    return n;
  }

  // First `k` components, resp. the remaining ones.
  Ring left(std::size_t k) const {
    require_finite("left factor");
    return finite({moduli_.begin(), moduli_.begin() + static_cast<long>(k)});
  }

  Ring right(std::size_t k) const {
    require_finite("right factor");
    return finite({moduli_.begin() + static_cast<long>(k), moduli_.end()});
  }

  RingElem normalize(RingElem r) const {
    check_shape(r);
    if (is_finite()) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = arith::mod(r[i], moduli_[i]);
      }
    }
    return r;
  }

  RingElem zero() const {
    return RingElem(components(), 0);
  }

  RingElem one() const {
    return normalize(RingElem(components(), 1));
  }

  RingElem add(RingElem const& a, RingElem const& b) const {
    RingElem r(components());
    for (std::size_t i = 0; i < r.size(); ++i) {
      r[i] = a[i] + b[i];
    }
    return normalize(std::move(r));
  }

  RingElem neg(RingElem const& a) const {
    RingElem r(components());
    for (std::size_t i = 0; i < r.size(); ++i) {
      r[i] = -a[i];
    }
    return normalize(std::move(r));
  }

  RingElem mul(RingElem const& a, RingElem const& b) const {
    RingElem r(components());
    for (std::size_t i = 0; i < r.size(); ++i) {
      r[i] = is_integers() ? arith::checked_mul(a[i], b[i])
                           : (a[i] * b[i]) % moduli_[i];
    }
    return normalize(std::move(r));
  }

  bool is_zero(RingElem const& a) const {
    return normalize(a) == zero();
  }

  bool is_unit(RingElem const& a) const {
    auto r = normalize(a);
    if (is_integers()) {
      return r[0] == 1 || r[0] == -1;
    }
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (arith::gcd(r[i], moduli_[i]) != 1) {
        return false;
      }
    }
    return true;
  }

  // Mixed-radix enumeration, first component most significant.
  std::vector<RingElem> elements() const {
    require_finite("element enumeration");
    std::vector<RingElem> out;
    out.reserve(order());
    RingElem cur(components(), 0);
    for (std::size_t k = 0; k < order(); ++k) {
      out.push_back(cur);
      for (std::size_t i = cur.size(); i-- > 0;) {
        if (++cur[i] < moduli_[i]) {
          break;
        }
        cur[i] = 0;
      }
    }
    return out;
  }

  std::string to_string() const {
    if (is_integers()) {
      return "Z";
    }
    std::string out;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
      out += (i ? "xZ_" : "Z_") + std::to_string(moduli_[i]);
    }
    return out;
  }

  friend bool operator==(Ring const&, Ring const&) = default;

  void check_shape(RingElem const& r) const {
    if (r.size() != components()) {
      throw RingMismatch("element " + phidelta::to_string(r) +
                         " has wrong arity for " + to_string());
    }
  }

 private:
  void require_finite(char const* what) const {
    if (is_integers()) {
      throw Error(std::string(what) + " requires a finite ring");
    }
  }

  std::vector<int_t> moduli_;
};

inline void require_same_ring(Ring const& a, Ring const& b) {
  if (!(a == b)) {
    throw RingMismatch(a.to_string() + " vs " + b.to_string());
  }
}

// A principal ideal in canonical form: kZ with k >= 0 over Z, and over a
// finite product one divisor d_i of n_i per component, the zero ideal of
// Z_n being d = n.
class Ideal {
 public:
  Ideal(Ring ring, std::vector<int_t> gens)
      : ring_(std::move(ring)), gens_(std::move(gens)) {
    if (gens_.size() != ring_.components()) {
      throw RingMismatch("ideal generator arity for " + ring_.to_string());
    }
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      gens_[i] = ring_.is_integers() ? arith::abs(gens_[i])
                                     : arith::gcd(gens_[i], ring_.modulus(i));
    }
  }

  static Ideal zero(Ring const& r) {
    return Ideal(r, std::vector<int_t>(r.components(), 0));
  }

  static Ideal unit(Ring const& r) {
    return Ideal(r, std::vector<int_t>(r.components(), 1));
  }

  static Ideal principal(Ring const& r, RingElem const& g) {
    r.check_shape(g);
    return Ideal(r, g);
  }

  Ring const& ring() const {
    return ring_;
  }

  std::vector<int_t> const& gens() const {
    return gens_;
  }

  RingElem generator() const {
    return ring_.normalize(gens_);
  }

  bool is_zero() const {
    return *this == zero(ring_);
  }

  bool is_unit() const {
    return *this == unit(ring_);
  }

  bool contains(RingElem const& r) const {
    ring_.check_shape(r);
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (ring_.is_integers()) {
        if (gens_[i] == 0 ? r[i] != 0 : r[i] % gens_[i] != 0) {
          return false;
        }
      } else if (arith::mod(r[i], gens_[i]) != 0) {
        return false;
      }
    }
    return true;
  }

  bool subset_of(Ideal const& other) const {
    require_same_ring(ring_, other.ring_);
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      int_t mine = gens_[i], theirs = other.gens_[i];
      if (theirs == 0 ? mine != 0 : mine % theirs != 0) {
        return false;
      }
    }
    return true;
  }

  // Finite rings only.
  std::vector<RingElem> elements() const {
    std::vector<RingElem> out;
    for (auto const& r : ring_.elements()) {
      if (contains(r)) {
        out.push_back(r);
      }
    }
    return out;
  }

  std::string to_string() const {
    if (ring_.is_integers()) {
      return std::to_string(gens_[0]) + "Z";
    }
    std::string out;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      out += (i ? " x " : "") + std::to_string(gens_[i]) + "Z_" +
             std::to_string(ring_.modulus(i));
    }
    return out;
  }

  friend bool operator==(Ideal const&, Ideal const&) = default;

  friend bool operator<(Ideal const& a, Ideal const& b) {
    return a.gens_ < b.gens_;
  }

 private:
  Ring ring_;
  std::vector<int_t> gens_;
};

namespace detail {

template <typename F>
Ideal componentwise(Ideal const& a, Ideal const& b, F f) {
  require_same_ring(a.ring(), b.ring());
  std::vector<int_t> g(a.gens().size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = f(a.gens()[i], b.gens()[i], a.ring().modulus(i));
  }
  return Ideal(a.ring(), std::move(g));
}

template <typename F>
Ideal componentwise(Ideal const& a, F f) {
  std::vector<int_t> g(a.gens().size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = f(a.gens()[i], a.ring().modulus(i));
  }
  return Ideal(a.ring(), std::move(g));
}

}  // namespace detail

inline Ideal ideal_sum(Ideal const& a, Ideal const& b) {
  return detail::componentwise(
      a, b, [](int_t x, int_t y, int_t) { return arith::gcd(x, y); });
}

inline Ideal ideal_intersection(Ideal const& a, Ideal const& b) {
  return detail::componentwise(
      a, b, [](int_t x, int_t y, int_t) { return arith::lcm(x, y); });
}

inline Ideal ideal_product(Ideal const& a, Ideal const& b) {
  return detail::componentwise(a, b, [](int_t x, int_t y, int_t n) {
    return n == 0 ? arith::checked_mul(x, y) : (x * y) % n;
  });
}

// {r : rJ ⊆ I}; over Z (k : 0) = Z and (0 : j) = 0 for j != 0.
inline Ideal ideal_colon(Ideal const& i, Ideal const& j) {
  return detail::componentwise(i, j, [](int_t k, int_t jj, int_t) -> int_t {
    if (k == 0) {
      return jj == 0 ? 1 : 0;
    }
    return k / arith::gcd(k, jj);
  });
}

inline Ideal ideal_radical(Ideal const& a) {
  return detail::componentwise(a, [](int_t k, int_t n) -> int_t {
    if (n == 0) {
      return arith::radical(k);
    }
    return arith::radical(k == 0 ? n : k);
  });
}

// {r : rI = 0}.
inline Ideal ideal_annihilator(Ideal const& a) {
  return detail::componentwise(a, [](int_t k, int_t n) -> int_t {
    if (n == 0) {
      return k == 0 ? 1 : 0;
    }
    return n / k;
  });
}

// I^0 = R.
inline Ideal ideal_power(Ideal const& a, int_t e) {
  Ideal out = Ideal::unit(a.ring());
  for (int_t i = 0; i < e; ++i) {
    out = ideal_product(out, a);
  }
  return out;
}

// Ideal of the product ring from ideals of the two factors.
inline Ideal ideal_pair(Ring const& ring, Ideal const& left,
                        Ideal const& right) {
  auto g = left.gens();
  g.insert(g.end(), right.gens().begin(), right.gens().end());
  return Ideal(ring, std::move(g));
}

inline std::pair<Ideal, Ideal> ideal_split(Ideal const& i, std::size_t k) {
  auto const& g = i.gens();
  Ring l = i.ring().left(k), r = i.ring().right(k);
  return {Ideal(l, {g.begin(), g.begin() + static_cast<long>(k)}),
          Ideal(r, {g.begin() + static_cast<long>(k), g.end()})};
}

// Every ideal of a finite ring, sorted by canonical generators.
inline std::vector<Ideal> all_ideals(Ring const& ring) {
  if (ring.is_integers()) {
    throw Error("all_ideals requires a finite ring");
  }
  std::vector<std::vector<int_t>> per;
  for (std::size_t i = 0; i < ring.components(); ++i) {
    per.push_back(arith::divisors(ring.modulus(i)));
  }
  std::vector<Ideal> out;
  std::vector<std::size_t> pos(per.size(), 0);
  while (true) {
    std::vector<int_t> g(per.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      g[i] = per[i][pos[i]];
    }
    out.emplace_back(ring, std::move(g));
    std::size_t i = per.size();
    while (i-- > 0) {
      if (++pos[i] < per[i].size()) {
        break;
      }
      pos[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) {
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// The ideals an evaluation ranges over: all ideals of a finite ring, or
// {kZ : 0 <= k <= bound} over Z.
inline std::vector<Ideal> ideal_universe(Ring const& ring, int_t bound) {
  if (ring.is_finite()) {
    return all_ideals(ring);
  }
  std::vector<Ideal> out;
  for (int_t k = 0; k <= bound; ++k) {
    out.emplace_back(ring, std::vector<int_t>{k});
  }
  return out;
}

// Multiplicatively closed subset given by generators; 1 is always adjoined.
// Over Z generators are normalised to positive representatives. A set whose
// closure reaches 0 is rejected.
class MCS {
 public:
  static MCS one(Ring const& ring) {
    return generated(ring, {});
  }

  static MCS generated(Ring const& ring, std::vector<RingElem> gens) {
    MCS s;
    s.ring_ = ring;
    for (auto& g : gens) {
      g = ring.normalize(g);
      if (ring.is_zero(g)) {
        throw Error("multiplicatively closed set may not contain 0");
      }
      if (ring.is_integers()) {
        g[0] = arith::abs(g[0]);
      }
      if (g != ring.one()) {
        s.gens_.push_back(g);
      }
    }
    std::sort(s.gens_.begin(), s.gens_.end());
    s.gens_.erase(std::unique(s.gens_.begin(), s.gens_.end()), s.gens_.end());
    if (ring.is_finite()) {
      s.closure_ = close(ring, s.gens_);
      if (std::binary_search(s.closure_.begin(), s.closure_.end(),
                             ring.zero())) {
        throw Error("closure of " + s.describe_gens() + " in " +
                    ring.to_string() + " contains 0");
      }
    }
    return s;
  }

  // Finite rings: an explicit set, checked to be multiplicatively closed.
  static MCS from_set(Ring const& ring, std::vector<RingElem> elems) {
    for (auto& e : elems) {
      e = ring.normalize(e);
    }
    MCS s = generated(ring, elems);
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    if (s.closure_ != elems) {
      throw Error("set is not multiplicatively closed with 1");
    }
    return s;
  }

  Ring const& ring() const {
    return ring_;
  }

  std::vector<RingElem> const& gens() const {
    return gens_;
  }

  bool is_one() const {
    return gens_.empty();
  }

  // Materialised closure (finite rings only).
  std::vector<RingElem> const& elements() const {
    if (ring_.is_integers()) {
      throw Error("an MCS over Z has no finite element list");
    }
    return closure_;
  }

  bool contains(RingElem const& r) const {
    auto x = ring_.normalize(r);
    if (ring_.is_finite()) {
      return std::binary_search(closure_.begin(), closure_.end(), x);
    }
    return contains_int(x[0]);
  }

  // S ∩ I != ∅.
  bool intersects(Ideal const& i) const {
    require_same_ring(ring_, i.ring());
    if (ring_.is_finite()) {
      return std::any_of(closure_.begin(), closure_.end(),
                         [&](RingElem const& x) { return i.contains(x); });
    }
    int_t k = i.gens()[0];
    if (k == 0) {
      return false;
    }
    int_t prod = 1;
    for (auto const& g : gens_) {
      prod = arith::checked_mul(prod, arith::radical(g[0]));
    }
    for (int_t p : arith::prime_factors(k)) {
      if (prod % p != 0) {
        return false;
      }
    }
    return true;
  }

  // {s mod L : s ∈ S} over Z, the closure of the generator residues in Z/LZ.
  // Residue 0 may appear even though 0 ∉ S.
  std::vector<int_t> residues(int_t modulus) const {
    if (modulus < 1) {
      throw Error("residue modulus must be >= 1");
    }
    if (ring_.is_finite()) {
      throw Error("residues are defined for MCS over Z");
    }
    if (modulus == 1) {
      return {0};
    }
    std::vector<RingElem> g;
    for (auto const& x : gens_) {
      g.push_back({arith::mod(x[0], modulus)});
    }
    Ring zl = Ring::finite({modulus});
    std::vector<int_t> out;
    for (auto const& e : close(zl, g)) {
      out.push_back(e[0]);
    }
    return out;
  }

  std::string to_string() const {
    if (is_one()) {
      return "{1}";
    }
    return "<" + describe_gens() + ">";
  }

  friend bool operator==(MCS const& a, MCS const& b) {
    return a.ring_ == b.ring_ && a.gens_ == b.gens_ &&
           a.closure_ == b.closure_;
  }

 private:
  static std::vector<RingElem> close(Ring const& ring,
                                     std::vector<RingElem> const& gens) {
    std::set<RingElem> seen{ring.one()};
    std::vector<RingElem> frontier{ring.one()};
    while (!frontier.empty()) {
      std::vector<RingElem> next;
      for (auto const& x : frontier) {
        for (auto const& g : gens) {
          auto y = ring.mul(x, g);
          if (seen.insert(y).second) {
            next.push_back(y);
          }
        }
      }
      frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
  }

  bool contains_int(int_t r) const {
    if (r == 1) {
      return true;
    }
    if (r <= 0) {
      return false;
    }
    for (auto const& g : gens_) {
      if (r % g[0] == 0 && contains_int(r / g[0])) {
        return true;
      }
    }
    return false;
  }

  std::string describe_gens() const {
    std::string out;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      out += (i ? "," : "") + phidelta::to_string(gens_[i]);
    }
    return out;
  }

  Ring ring_;
  std::vector<RingElem> gens_;
  std::vector<RingElem> closure_;
};

// S1 × S2 over the product ring.
inline MCS product_mcs(MCS const& a, MCS const& b) {
  Ring ring = Ring::product(a.ring(), b.ring());
  std::vector<RingElem> elems;
  for (auto const& x : a.elements()) {
    for (auto const& y : b.elements()) {
      RingElem z = x;
      z.insert(z.end(), y.begin(), y.end());
      elems.push_back(std::move(z));
    }
  }
  return MCS::from_set(ring, std::move(elems));
}

// S1 ⊆ S2: generator membership suffices since S2 is closed.
inline bool mcs_subset(MCS const& a, MCS const& b) {
  require_same_ring(a.ring(), b.ring());
  return std::all_of(a.gens().begin(), a.gens().end(),
                     [&](RingElem const& g) { return b.contains(g); });
}

}  // namespace phidelta
