#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "phidelta/ring.hpp"

namespace phidelta {

using Elem = std::uint32_t;

class Module;
using ModulePtr = std::shared_ptr<Module const>;

inline constexpr std::size_t kDefaultMaxModuleSize = 2500;

// Quantifier domain for "for all a in R": every element of a finite ring, or
// the residues 0..L-1 over Z.
inline std::vector<RingElem> scalar_domain(Ring const& ring, int_t modulus) {
  if (ring.is_finite()) {
    return ring.elements();
  }
  std::vector<RingElem> out;
  for (int_t a = 0; a < modulus; ++a) {
    out.push_back({a});
  }
  return out;
}

// A finite module with its natural scalar action, stored as tables: the
// addition table plus, for each ring component i, the idempotent projection
// x -> e_i x. Element 0 is the zero of the module.
class Module {
 public:
  struct Factors {
    ModulePtr left;
    ModulePtr right;
    std::size_t ring_split;  // ring components belonging to `left`
  };

  // ⊕_j Z_{orders[j]}, with ring component comps[j] acting on factor j.
  static ModulePtr cyclic(Ring ring, std::vector<int_t> orders,
                          std::vector<std::size_t> comps = {},
                          std::size_t max_size = kDefaultMaxModuleSize) {
    if (comps.empty()) {
      comps.assign(orders.size(), 0);
    }
    if (comps.size() != orders.size()) {
      throw Error("one ring component per cyclic factor is required");
    }
    std::size_t size = 1;
    for (std::size_t j = 0; j < orders.size(); ++j) {
      if (orders[j] < 1) {
        throw Error("cyclic orders must be >= 1");
      }
      if (comps[j] >= ring.components()) {
        throw Error("cyclic factor refers to a missing ring component");
      }
      if (ring.is_finite() && ring.modulus(comps[j]) % orders[j] != 0) {
        throw Error("Z_" + std::to_string(orders[j]) +
                    " is not a module over Z_" +
                    std::to_string(ring.modulus(comps[j])));
      }
      size *= static_cast<std::size_t>(orders[j]);
      if (size > max_size) {
        throw BoundExceeded("module order exceeds " + std::to_string(max_size));
      }
    }
    auto m = std::shared_ptr<Module>(new Module());
    m->ring_ = std::move(ring);
    m->orders_ = orders;
    m->comps_ = comps;
    m->size_ = size;
    auto coords = [&](std::size_t x) {
      std::vector<int_t> c(orders.size());
      for (std::size_t j = orders.size(); j-- > 0;) {
        c[j] = static_cast<int_t>(x % static_cast<std::size_t>(orders[j]));
        x /= static_cast<std::size_t>(orders[j]);
      }
      return c;
    };
    auto encode = [&](std::vector<int_t> const& c) {
      std::size_t x = 0;
      for (std::size_t j = 0; j < orders.size(); ++j) {
        x = x * static_cast<std::size_t>(orders[j]) +
            static_cast<std::size_t>(arith::mod(c[j], orders[j]));
      }
      return static_cast<Elem>(x);
    };
    std::vector<std::vector<int_t>> all(size);
    for (std::size_t x = 0; x < size; ++x) {
      all[x] = coords(x);
    }
    m->add_.resize(size * size);
    for (std::size_t x = 0; x < size; ++x) {
      for (std::size_t y = 0; y < size; ++y) {
        auto c = all[x];
        for (std::size_t j = 0; j < c.size(); ++j) {
          c[j] += all[y][j];
        }
        m->add_[x * size + y] = encode(c);
      }
    }
    m->proj_.assign(m->ring_.components(), std::vector<Elem>(size));
    for (std::size_t i = 0; i < m->ring_.components(); ++i) {
      for (std::size_t x = 0; x < size; ++x) {
        auto c = all[x];
        for (std::size_t j = 0; j < c.size(); ++j) {
          if (comps[j] != i) {
            c[j] = 0;
          }
        }
        m->proj_[i][x] = encode(c);
      }
    }
    m->names_.resize(size);
    for (std::size_t x = 0; x < size; ++x) {
      m->names_[x] = orders.size() == 1 ? std::to_string(all[x][0])
                                        : phidelta::to_string(all[x]);
    }
    m->finish();
    m->description_ = m->describe_cyclic();
    return m;
  }

  // A finite ring acting on itself.
  static ModulePtr regular(Ring const& ring,
                           std::size_t max_size = kDefaultMaxModuleSize) {
    if (ring.is_integers()) {
      throw Error("the regular module of Z is infinite");
    }
    std::vector<std::size_t> comps(ring.components());
    for (std::size_t i = 0; i < comps.size(); ++i) {
      comps[i] = i;
    }
    return cyclic(ring, ring.moduli(), comps, max_size);
  }

  // Assemble a module from raw tables. Used for quotients and fraction
  // modules; callers guarantee element 0 is the zero.
  static ModulePtr from_tables(Ring ring, std::vector<Elem> add,
                               std::vector<std::vector<Elem>> proj,
                               std::vector<std::string> names,
                               std::string description) {
    auto m = std::shared_ptr<Module>(new Module());
    m->ring_ = std::move(ring);
    m->size_ = names.size();
    m->add_ = std::move(add);
    m->proj_ = std::move(proj);
    m->names_ = std::move(names);
    m->description_ = std::move(description);
    m->finish();
    return m;
  }

  Ring const& ring() const {
    return ring_;
  }

  std::size_t size() const {
    return size_;
  }

  Elem zero() const {
    return 0;
  }

  Elem add(Elem x, Elem y) const {
    return add_[x * size_ + y];
  }

  Elem neg(Elem x) const {
    return neg_[x];
  }

  Elem sub(Elem x, Elem y) const {
    return add(x, neg(y));
  }

  Elem project(std::size_t component, Elem x) const {
    return proj_[component][x];
  }

  // k x for an integer k.
  Elem times(int_t k, Elem x) const {
    k = arith::mod(k, exponent_);
    Elem acc = 0, base = x;
    while (k > 0) {
      if (k & 1) {
        acc = add(acc, base);
      }
      base = add(base, base);
      k >>= 1;
    }
    return acc;
  }

  Elem act(RingElem const& r, Elem x) const {
    if (ring_.is_integers()) {
      return times(r[0], x);
    }
    Elem acc = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      acc = add(acc, times(r[i], proj_[i][x]));
    }
    return acc;
  }

  // Additive exponent: the least k > 0 with kM = 0.
  int_t exponent() const {
    return exponent_;
  }

  int_t additive_order(Elem x) const {
    return orders_of_[x];
  }

  std::string const& name(Elem x) const {
    return names_.at(x);
  }

  std::optional<Elem> find(std::string const& name) const {
    for (std::size_t x = 0; x < size_; ++x) {
      if (names_[x] == name) {
        return static_cast<Elem>(x);
      }
    }
    return std::nullopt;
  }

  // Cyclic decomposition, empty for derived modules.
  std::vector<int_t> const& cyclic_orders() const {
    return orders_;
  }

  std::vector<std::size_t> const& cyclic_components() const {
    return comps_;
  }

  // Coordinates of a cyclic-decomposition module, mixed radix.
  Elem from_coords(std::vector<int_t> const& c) const {
    if (orders_.empty() || c.size() != orders_.size()) {
      throw Error("coordinate tuple does not match module " + description_);
    }
    std::size_t x = 0;
    for (std::size_t j = 0; j < orders_.size(); ++j) {
      x = x * static_cast<std::size_t>(orders_[j]) +
          static_cast<std::size_t>(arith::mod(c[j], orders_[j]));
    }
    return static_cast<Elem>(x);
  }

  std::optional<Factors> const& factors() const {
    return factors_;
  }

  // Element of M1 x M2 from its components.
  Elem pair(Elem left, Elem right) const {
    return static_cast<Elem>(left * factors_->right->size() + right);
  }

  std::pair<Elem, Elem> unpair(Elem x) const {
    auto n2 = factors_->right->size();
    return {static_cast<Elem>(x / n2), static_cast<Elem>(x % n2)};
  }

  std::string const& description() const {
    return description_;
  }

 private:
  friend ModulePtr direct_product(ModulePtr const&, ModulePtr const&,
                                  std::size_t);

  Module() = default;

  void finish() {
    neg_.assign(size_, 0);
    for (std::size_t x = 0; x < size_; ++x) {
      for (std::size_t y = 0; y < size_; ++y) {
        if (add_[x * size_ + y] == 0) {
          neg_[x] = static_cast<Elem>(y);
          break;
        }
      }
    }
    orders_of_.assign(size_, 1);
    exponent_ = 1;
    for (std::size_t x = 1; x < size_; ++x) {
      auto e = static_cast<Elem>(x);
      int_t k = 1;
      for (Elem y = e; y != 0; y = add(y, e)) {
        ++k;
      }
      orders_of_[x] = k;
      exponent_ = std::lcm(exponent_, orders_of_[x]);
    }
  }

  std::string describe_cyclic() const {
    std::string out;
    for (std::size_t j = 0; j < orders_.size(); ++j) {
      out += (j ? "+" : "") + std::string("Z_") + std::to_string(orders_[j]);
    }
    if (orders_.empty()) {
      out = "0";
    }
    return out + " over " + ring_.to_string();
  }

  Ring ring_;
  std::size_t size_ = 0;
  std::vector<Elem> add_;
  std::vector<Elem> neg_;
  std::vector<std::vector<Elem>> proj_;
  std::vector<std::string> names_;
  std::vector<int_t> orders_;
  std::vector<std::size_t> comps_;
  std::vector<int_t> orders_of_;
  int_t exponent_ = 1;
  std::optional<Factors> factors_;
  std::string description_;
};

// M1 x M2 over R1 x R2 with (r1, r2)(m1, m2) = (r1 m1, r2 m2).
inline ModulePtr direct_product(ModulePtr const& a, ModulePtr const& b,
                                std::size_t max_size = kDefaultMaxModuleSize) {
  Ring ring = Ring::product(a->ring(), b->ring());
  std::size_t n1 = a->size(), n2 = b->size();
  if (n1 * n2 > max_size) {
    throw BoundExceeded("product module order exceeds " +
                        std::to_string(max_size));
  }
  std::size_t n = n1 * n2;
  auto idx = [&](std::size_t x, std::size_t y) {
    return static_cast<Elem>(x * n2 + y);
  };
  std::vector<Elem> add(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      add[x * n + y] =
          idx(a->add(static_cast<Elem>(x / n2), static_cast<Elem>(y / n2)),
              b->add(static_cast<Elem>(x % n2), static_cast<Elem>(y % n2)));
    }
  }
  std::size_t k1 = a->ring().components();
  std::vector<std::vector<Elem>> proj(ring.components(), std::vector<Elem>(n));
  for (std::size_t i = 0; i < ring.components(); ++i) {
    for (std::size_t x = 0; x < n; ++x) {
      auto l = static_cast<Elem>(x / n2), r = static_cast<Elem>(x % n2);
      proj[i][x] = i < k1 ? idx(a->project(i, l), 0)
                          : idx(0, b->project(i - k1, r));
    }
  }
  std::vector<std::string> names(n);
  for (std::size_t x = 0; x < n; ++x) {
    names[x] = "(" + a->name(static_cast<Elem>(x / n2)) + "|" +
               b->name(static_cast<Elem>(x % n2)) + ")";
  }
  auto m = Module::from_tables(ring, std::move(add), std::move(proj),
                               std::move(names),
                               "(" + a->description() + ") x (" +
                                   b->description() + ")");
  const_cast<Module&>(*m).factors_ = Module::Factors{a, b, k1};
  return m;
}

// A submodule, stored as a membership mask plus the sorted element list.
class Submodule {
 public:
  Submodule(ModulePtr parent, std::vector<bool> mask)
      : parent_(std::move(parent)), mask_(std::move(mask)) {
    for (std::size_t x = 0; x < mask_.size(); ++x) {
      if (mask_[x]) {
        elems_.push_back(static_cast<Elem>(x));
      }
    }
  }

  static Submodule zero(ModulePtr const& m) {
    std::vector<bool> mask(m->size(), false);
    mask[0] = true;
    return Submodule(m, std::move(mask));
  }

  static Submodule whole(ModulePtr const& m) {
    return Submodule(m, std::vector<bool>(m->size(), true));
  }

  ModulePtr const& parent() const {
    return parent_;
  }

  std::vector<Elem> const& elements() const {
    return elems_;
  }

  std::vector<bool> const& mask() const {
    return mask_;
  }

  std::size_t size() const {
    return elems_.size();
  }

  bool contains(Elem x) const {
    return mask_[x];
  }

  bool is_whole() const {
    return elems_.size() == parent_->size();
  }

  bool is_zero() const {
    return elems_.size() == 1;
  }

  bool subset_of(Submodule const& other) const {
    return std::all_of(elems_.begin(), elems_.end(),
                       [&](Elem x) { return other.contains(x); });
  }

  std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      out += (i ? "," : "") + parent_->name(elems_[i]);
    }
    return out + "}";
  }

  friend bool operator==(Submodule const& a, Submodule const& b) {
    return a.parent_ == b.parent_ && a.elems_ == b.elems_;
  }

  // Lattice order used throughout: by size, then element list.
  friend bool operator<(Submodule const& a, Submodule const& b) {
    if (a.elems_.size() != b.elems_.size()) {
      return a.elems_.size() < b.elems_.size();
    }
    return a.elems_ < b.elems_;
  }

 private:
  ModulePtr parent_;
  std::vector<bool> mask_;
  std::vector<Elem> elems_;
};

// A reduction value: a submodule, or the empty set (nullopt).
using PhiValue = std::optional<Submodule>;

inline bool phi_contains(PhiValue const& p, Elem x) {
  return p && p->contains(x);
}

inline bool phi_subset(PhiValue const& a, PhiValue const& b) {
  if (!a) {
    return true;
  }
  return b && a->subset_of(*b);
}

inline std::string phi_to_string(PhiValue const& p) {
  return p ? p->to_string() : "empty";
}

inline void require_same_parent(Submodule const& a, Submodule const& b) {
  if (a.parent() != b.parent()) {
    throw Error("submodules belong to different modules");
  }
}

// Additive closure starting from `start` under adding the given elements.
inline std::vector<bool> additive_closure(Module const& m,
                                          std::vector<bool> start,
                                          std::vector<Elem> const& adds) {
  std::vector<Elem> queue;
  for (std::size_t x = 0; x < start.size(); ++x) {
    if (start[x]) {
      queue.push_back(static_cast<Elem>(x));
    }
  }
  while (!queue.empty()) {
    Elem x = queue.back();
    queue.pop_back();
    for (Elem g : adds) {
      Elem y = m.add(x, g);
      if (!start[y]) {
        start[y] = true;
        queue.push_back(y);
      }
    }
  }
  return start;
}

// R-span: the additive span of {e_i g}.
inline std::vector<Elem> action_generators(Module const& m,
                                           std::vector<Elem> const& gens) {
  std::vector<Elem> out;
  for (Elem g : gens) {
    for (std::size_t i = 0; i < m.ring().components(); ++i) {
      out.push_back(m.project(i, g));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline Submodule span(ModulePtr const& m, std::vector<Elem> const& gens) {
  std::vector<bool> start(m->size(), false);
  start[0] = true;
  return Submodule(m, additive_closure(*m, std::move(start),
                                       action_generators(*m, gens)));
}

inline Submodule submodule_sum(Submodule const& a, Submodule const& b) {
  require_same_parent(a, b);
  auto const& m = *a.parent();
  return Submodule(a.parent(),
                   additive_closure(m, a.mask(), action_generators(m, b.elements())));
}

inline Submodule submodule_intersection(Submodule const& a,
                                        Submodule const& b) {
  require_same_parent(a, b);
  std::vector<bool> mask(a.mask().size());
  for (std::size_t x = 0; x < mask.size(); ++x) {
    mask[x] = a.mask()[x] && b.mask()[x];
  }
  return Submodule(a.parent(), std::move(mask));
}

inline PhiValue phi_intersection(PhiValue const& a, PhiValue const& b) {
  if (!a || !b) {
    return std::nullopt;
  }
  return submodule_intersection(*a, *b);
}

// rN = {rx : x in N}.
inline Submodule scale(RingElem const& r, Submodule const& n) {
  auto const& m = *n.parent();
  std::vector<bool> mask(m.size(), false);
  for (Elem x : n.elements()) {
    mask[m.act(r, x)] = true;
  }
  return Submodule(n.parent(), std::move(mask));
}

// IN for a principal ideal I.
inline Submodule scale(Ideal const& i, Submodule const& n) {
  require_same_ring(i.ring(), n.parent()->ring());
  return scale(i.generator(), n);
}

inline std::vector<int_t> candidate_generators(Module const& m,
                                               std::size_t component) {
  return arith::divisors(m.ring().is_integers() ? m.exponent()
                                                : m.ring().modulus(component));
}

// (N :_R K) = {r : rK ⊆ N}.
inline Ideal colon_ring(Submodule const& n, Submodule const& k) {
  require_same_parent(n, k);
  auto const& m = *n.parent();
  Ring const& ring = m.ring();
  std::vector<int_t> gens(ring.components());
  for (std::size_t i = 0; i < ring.components(); ++i) {
    for (int_t d : candidate_generators(m, i)) {
      RingElem r = ring.zero();
      r[i] = d;
      bool ok = std::all_of(k.elements().begin(), k.elements().end(),
                            [&](Elem x) { return n.contains(m.act(r, x)); });
      if (ok) {
        gens[i] = d;
        break;
      }
    }
  }
  return Ideal(ring, std::move(gens));
}

// (N :_R M).
inline Ideal colon_ring(Submodule const& n) {
  return colon_ring(n, Submodule::whole(n.parent()));
}

// (N :_M r) = {m : rm ∈ N}.
inline Submodule colon_module(Submodule const& n, RingElem const& r) {
  auto const& m = *n.parent();
  std::vector<bool> mask(m.size());
  for (std::size_t x = 0; x < m.size(); ++x) {
    mask[x] = n.contains(m.act(r, static_cast<Elem>(x)));
  }
  return Submodule(n.parent(), std::move(mask));
}

// (N :_M I) = {m : Im ⊆ N}; I is principal so this is (N :_M g).
inline Submodule colon_module(Submodule const& n, Ideal const& i) {
  require_same_ring(i.ring(), n.parent()->ring());
  return colon_module(n, i.generator());
}

inline PhiValue colon_module(PhiValue const& n, RingElem const& r) {
  if (!n) {
    return std::nullopt;
  }
  return colon_module(*n, r);
}

inline PhiValue colon_module(PhiValue const& n, Ideal const& i) {
  if (!n) {
    return std::nullopt;
  }
  return colon_module(*n, i);
}

// Colon of a possibly-empty reduction value by M.
inline std::optional<Ideal> colon_ring(PhiValue const& n) {
  if (!n) {
    return std::nullopt;
  }
  return colon_ring(*n);
}

// Complete submodule lattice sorted by (size, elements).
inline std::vector<Submodule> enumerate_submodules(ModulePtr const& m) {
  std::vector<Submodule> cyclics;
  {
    std::set<std::vector<Elem>> seen;
    for (std::size_t x = 0; x < m->size(); ++x) {
      auto c = span(m, {static_cast<Elem>(x)});
      if (seen.insert(c.elements()).second) {
        cyclics.push_back(std::move(c));
      }
    }
  }
  std::set<std::vector<Elem>> seen;
  std::vector<Submodule> out;
  std::vector<Submodule> frontier{Submodule::zero(m)};
  seen.insert(frontier[0].elements());
  while (!frontier.empty()) {
    std::vector<Submodule> next;
    for (auto const& n : frontier) {
      for (auto const& c : cyclics) {
        if (c.subset_of(n)) {
          continue;
        }
        auto s = submodule_sum(n, c);
        if (seen.insert(s.elements()).second) {
          next.push_back(std::move(s));
        }
      }
      out.push_back(n);
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Minimal-cardinality generating set, lexicographically least among those.
inline std::vector<Elem> minimal_generators(Submodule const& n) {
  if (n.is_zero()) {
    return {};
  }
  std::vector<Elem> pool;
  for (Elem x : n.elements()) {
    if (x != 0) {
      pool.push_back(x);
    }
  }
  for (std::size_t d = 1; d <= pool.size(); ++d) {
    std::vector<std::size_t> pos(d);
    for (std::size_t i = 0; i < d; ++i) {
      pos[i] = i;
    }
    while (true) {
      std::vector<Elem> gens(d);
      for (std::size_t i = 0; i < d; ++i) {
        gens[i] = pool[pos[i]];
      }
      if (span(n.parent(), gens).size() == n.size()) {
        return gens;
      }
      std::size_t i = d;
      while (i-- > 0) {
        if (pos[i] < pool.size() - d + i) {
          break;
        }
      }
      if (i == static_cast<std::size_t>(-1)) {
        break;
      }
      ++pos[i];
      for (std::size_t j = i + 1; j < d; ++j) {
        pos[j] = pos[j - 1] + 1;
      }
    }
  }
  return pool;
}

// Every N satisfies N = (N:M)M.
inline bool is_multiplication_module(ModulePtr const& m,
                                     std::vector<Submodule> const& lattice) {
  auto whole = Submodule::whole(m);
  return std::all_of(lattice.begin(), lattice.end(), [&](Submodule const& n) {
    return scale(colon_ring(n), whole) == n;
  });
}

inline bool is_multiplication_module(ModulePtr const& m) {
  return is_multiplication_module(m, enumerate_submodules(m));
}

class NotMultiplicationModule : public Error {
 public:
  NotMultiplicationModule() : Error("module is not a multiplication module") {}
};

// NK = (N:M)(K:M)M.
inline Submodule submodule_product(Submodule const& n, Submodule const& k,
                                   bool checked = true) {
  require_same_parent(n, k);
  if (checked && !is_multiplication_module(n.parent())) {
    throw NotMultiplicationModule();
  }
  return scale(ideal_product(colon_ring(n), colon_ring(k)),
               Submodule::whole(n.parent()));
}

// √N = √(N:M) M.
inline Submodule submodule_radical(Submodule const& n, bool checked = true) {
  if (checked && !is_multiplication_module(n.parent())) {
    throw NotMultiplicationModule();
  }
  return scale(ideal_radical(colon_ring(n)), Submodule::whole(n.parent()));
}

// Split a submodule of M1 x M2 into its factors.
inline std::pair<Submodule, Submodule> split_submodule(Submodule const& n) {
  auto const& m = *n.parent();
  if (!m.factors()) {
    throw Error("module is not a direct product");
  }
  auto const& f = *m.factors();
  std::vector<bool> l(f.left->size(), false), r(f.right->size(), false);
  for (Elem x : n.elements()) {
    auto [a, b] = m.unpair(x);
    if (n.contains(m.pair(a, 0))) {
      l[a] = true;
    }
    if (n.contains(m.pair(0, b))) {
      r[b] = true;
    }
  }
  return {Submodule(f.left, std::move(l)), Submodule(f.right, std::move(r))};
}

inline Submodule product_submodule(ModulePtr const& m, Submodule const& a,
                                   Submodule const& b) {
  if (!m->factors() || m->factors()->left != a.parent() ||
      m->factors()->right != b.parent()) {
    throw Error("factor submodules do not match the product module");
  }
  std::vector<bool> mask(m->size(), false);
  for (Elem x : a.elements()) {
    for (Elem y : b.elements()) {
      mask[m->pair(x, y)] = true;
    }
  }
  return Submodule(m, std::move(mask));
}

// Empty factor makes the product empty.
inline PhiValue product_phi(ModulePtr const& m, PhiValue const& a,
                            PhiValue const& b) {
  if (!a || !b) {
    return std::nullopt;
  }
  return product_submodule(m, *a, *b);
}

enum class MapKind { projection, injection, identity, composition };

inline char const* to_string(MapKind k) {
  switch (k) {
    case MapKind::projection:
      return "projection";
    case MapKind::injection:
      return "injection";
    case MapKind::identity:
      return "identity";
    case MapKind::composition:
      return "composition";
  }
  return "?";
}

struct ModuleMap {
  ModulePtr source;
  ModulePtr target;
  std::vector<Elem> table;
  MapKind kind = MapKind::identity;

  Elem operator()(Elem x) const {
    return table[x];
  }

  // Additive and R-linear over the scalar domain of the source.
  bool is_linear() const {
    auto const& s = *source;
    auto const& t = *target;
    for (std::size_t x = 0; x < s.size(); ++x) {
      for (std::size_t y = 0; y < s.size(); ++y) {
        if (table[s.add(static_cast<Elem>(x), static_cast<Elem>(y))] !=
            t.add(table[x], table[y])) {
          return false;
        }
      }
    }
    for (auto const& r : scalar_domain(s.ring(), s.exponent())) {
      for (std::size_t x = 0; x < s.size(); ++x) {
        if (table[s.act(r, static_cast<Elem>(x))] != t.act(r, table[x])) {
          return false;
        }
      }
    }
    return true;
  }

  bool is_surjective() const {
    std::vector<bool> hit(target->size(), false);
    for (Elem y : table) {
      hit[y] = true;
    }
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  }

  Submodule kernel() const {
    std::vector<bool> mask(source->size());
    for (std::size_t x = 0; x < mask.size(); ++x) {
      mask[x] = table[x] == 0;
    }
    return Submodule(source, std::move(mask));
  }
};

inline ModuleMap identity_map(ModulePtr const& m) {
  std::vector<Elem> t(m->size());
  for (std::size_t x = 0; x < t.size(); ++x) {
    t[x] = static_cast<Elem>(x);
  }
  return {m, m, std::move(t), MapKind::identity};
}

inline ModuleMap compose(ModuleMap const& g, ModuleMap const& f) {
  if (f.target != g.source) {
    throw Error("maps are not composable");
  }
  std::vector<Elem> t(f.table.size());
  for (std::size_t x = 0; x < t.size(); ++x) {
    t[x] = g.table[f.table[x]];
  }
  return {f.source, g.target, std::move(t), MapKind::composition};
}

// Injection of the first (second) factor into M1 x M2.
inline ModuleMap injection(ModulePtr const& product, bool left) {
  auto const& f = product->factors();
  if (!f) {
    throw Error("module is not a direct product");
  }
  auto src = left ? f->left : f->right;
  std::vector<Elem> t(src->size());
  for (std::size_t x = 0; x < t.size(); ++x) {
    t[x] = left ? product->pair(static_cast<Elem>(x), 0)
                : product->pair(0, static_cast<Elem>(x));
  }
  return {src, product, std::move(t), MapKind::injection};
}

// M/K on least coset representatives, with the natural projection.
inline std::pair<ModulePtr, ModuleMap> quotient_module(Submodule const& k) {
  auto const& mp = k.parent();
  auto const& m = *mp;
  std::vector<Elem> rep(m.size());
  for (std::size_t x = 0; x < m.size(); ++x) {
    Elem best = static_cast<Elem>(x);
    for (Elem y : k.elements()) {
      best = std::min(best, m.add(static_cast<Elem>(x), y));
    }
    rep[x] = best;
  }
  std::vector<Elem> reps(rep);
  std::sort(reps.begin(), reps.end());
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  std::vector<Elem> index(m.size());
  for (std::size_t q = 0; q < reps.size(); ++q) {
    index[reps[q]] = static_cast<Elem>(q);
  }
  std::size_t n = reps.size();
  auto cls = [&](Elem x) { return index[rep[x]]; };
  std::vector<Elem> add(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      add[a * n + b] = cls(m.add(reps[a], reps[b]));
    }
  }
  std::vector<std::vector<Elem>> proj(m.ring().components(),
                                      std::vector<Elem>(n));
  for (std::size_t i = 0; i < proj.size(); ++i) {
    for (std::size_t a = 0; a < n; ++a) {
      proj[i][a] = cls(m.project(i, reps[a]));
    }
  }
  std::vector<std::string> names(n);
  for (std::size_t a = 0; a < n; ++a) {
    names[a] = "[" + m.name(reps[a]) + "]";
  }
  auto q = Module::from_tables(m.ring(), std::move(add), std::move(proj),
                               std::move(names),
                               "(" + m.description() + ")/" + k.to_string());
  std::vector<Elem> table(m.size());
  for (std::size_t x = 0; x < m.size(); ++x) {
    table[x] = cls(static_cast<Elem>(x));
  }
  return {q, ModuleMap{mp, q, std::move(table), MapKind::projection}};
}

inline Submodule image(ModuleMap const& f, Submodule const& n) {
  if (n.parent() != f.source) {
    throw Error("submodule is not in the domain of the map");
  }
  std::vector<bool> mask(f.target->size(), false);
  for (Elem x : n.elements()) {
    mask[f(x)] = true;
  }
  return Submodule(f.target, std::move(mask));
}

inline Submodule preimage(ModuleMap const& f, Submodule const& n) {
  if (n.parent() != f.target) {
    throw Error("submodule is not in the codomain of the map");
  }
  std::vector<bool> mask(f.source->size());
  for (std::size_t x = 0; x < mask.size(); ++x) {
    mask[x] = n.contains(f(static_cast<Elem>(x)));
  }
  return Submodule(f.source, std::move(mask));
}

// K as a module in its own right, with its inclusion into the parent.
inline std::pair<ModulePtr, ModuleMap> submodule_module(Submodule const& k) {
  auto const& m = *k.parent();
  auto const& els = k.elements();
  std::size_t n = els.size();
  std::vector<Elem> index(m.size(), 0);
  for (std::size_t a = 0; a < n; ++a) {
    index[els[a]] = static_cast<Elem>(a);
  }
  std::vector<Elem> add(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      add[a * n + b] = index[m.add(els[a], els[b])];
    }
  }
  std::vector<std::vector<Elem>> proj(m.ring().components(),
                                      std::vector<Elem>(n));
  for (std::size_t i = 0; i < proj.size(); ++i) {
    for (std::size_t a = 0; a < n; ++a) {
      proj[i][a] = index[m.project(i, els[a])];
    }
  }
  std::vector<std::string> names(n);
  for (std::size_t a = 0; a < n; ++a) {
    names[a] = m.name(els[a]);
  }
  auto sub = Module::from_tables(m.ring(), std::move(add), std::move(proj),
                                 std::move(names), k.to_string() + " in " + m.description());
  return {sub, ModuleMap{sub, k.parent(), els, MapKind::injection}};
}

// M1 x M2 onto (a copy of) its first or second factor: the quotient by the
// other factor.
inline ModuleMap factor_projection(ModulePtr const& product, bool left) {
  if (!product->factors()) {
    throw Error("module is not a direct product");
  }
  std::vector<bool> kill(product->size());
  for (std::size_t x = 0; x < kill.size(); ++x) {
    auto [l, r] = product->unpair(static_cast<Elem>(x));
    kill[x] = left ? l == 0 : r == 0;
  }
  return quotient_module(Submodule(product, std::move(kill))).second;
}

inline PhiValue image(ModuleMap const& f, PhiValue const& n) {
  if (!n) {
    return std::nullopt;
  }
  return image(f, *n);
}

inline PhiValue preimage(ModuleMap const& f, PhiValue const& n) {
  if (!n) {
    return std::nullopt;
  }
  return preimage(f, *n);
}

}  // namespace phidelta
