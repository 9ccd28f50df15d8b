#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phidelta/module.hpp"

namespace phidelta {

// Ideal expansion functions δ: I ⊆ δ(I), monotone.
class Expansion {
 public:
  enum class Tag { id, rad, res, ann, plus, product };

  static Expansion id() {
    return Expansion(Tag::id);
  }
  static Expansion rad() {
    return Expansion(Tag::rad);
  }
  static Expansion ann() {
    return Expansion(Tag::ann);
  }
  // δ_res(I) = (I : J).
  static Expansion res(Ideal j) {
    Expansion e(Tag::res);
    e.param_ = std::move(j);
    return e;
  }
  // δ_J(I) = I + J.
  static Expansion plus(Ideal j) {
    Expansion e(Tag::plus);
    e.param_ = std::move(j);
    return e;
  }
  // δ_×(I1 × I2) = δ1(I1) × δ2(I2), the left factor owning `split` ring
  // components.
  static Expansion product(Expansion left, Expansion right, std::size_t split) {
    Expansion e(Tag::product);
    e.left_ = std::make_shared<Expansion>(std::move(left));
    e.right_ = std::make_shared<Expansion>(std::move(right));
    e.split_ = split;
    return e;
  }

  Tag tag() const {
    return tag_;
  }

  std::optional<Ideal> const& param() const {
    return param_;
  }

  Expansion const& left() const {
    return *left_;
  }

  Expansion const& right() const {
    return *right_;
  }

  Ideal operator()(Ideal const& i) const {
    switch (tag_) {
      case Tag::id:
        return i;
      case Tag::rad:
        return ideal_radical(i);
      case Tag::res:
        return ideal_colon(i, *param_);
      case Tag::ann:
        return ideal_annihilator(ideal_annihilator(i));
      case Tag::plus:
        return ideal_sum(i, *param_);
      case Tag::product: {
        if (i.ring().components() <= split_) {
          throw Error("product expansion applied outside a product ring");
        }
        auto [a, b] = ideal_split(i, split_);
        return ideal_pair(i.ring(), (*left_)(a), (*right_)(b));
      }
    }
    throw Error("unknown expansion");
  }

  std::string to_string() const {
    switch (tag_) {
      case Tag::id:
        return "id";
      case Tag::rad:
        return "rad";
      case Tag::res:
        return "res(" + param_->to_string() + ")";
      case Tag::ann:
        return "ann";
      case Tag::plus:
        return "plus(" + param_->to_string() + ")";
      case Tag::product:
        return "product(" + left_->to_string() + "," + right_->to_string() + ")";
    }
    return "?";
  }

 private:
  explicit Expansion(Tag t) : tag_(t) {}

  Tag tag_;
  std::optional<Ideal> param_;
  std::shared_ptr<Expansion const> left_, right_;
  std::size_t split_ = 0;
};

// Submodule reduction functions φ: φ(N) ⊆ N, monotone, possibly ∅.
class Reduction {
 public:
  enum class Tag { empty, zero, id, power, colon, mul, product };

  static Reduction empty() {
    return Reduction(Tag::empty);
  }
  static Reduction zero() {
    return Reduction(Tag::zero);
  }
  static Reduction id() {
    return Reduction(Tag::id);
  }
  // φ_k(N) = (N:M)^(k-1) N; φ_1 is the identity.
  static Reduction power(int_t k) {
    if (k < 1) {
      throw Error("power reduction needs k >= 1");
    }
    Reduction r(Tag::power);
    r.k_ = k;
    return r;
  }
  // φ_M(N) = (N:M)M.
  static Reduction colon() {
    return Reduction(Tag::colon);
  }
  // φ(N) = JN for a fixed ideal J.
  static Reduction mul(Ideal j) {
    Reduction r(Tag::mul);
    r.param_ = std::move(j);
    return r;
  }
  static Reduction product(Reduction left, Reduction right) {
    Reduction r(Tag::product);
    r.left_ = std::make_shared<Reduction>(std::move(left));
    r.right_ = std::make_shared<Reduction>(std::move(right));
    return r;
  }

  Tag tag() const {
    return tag_;
  }

  int_t k() const {
    return k_;
  }

  std::optional<Ideal> const& param() const {
    return param_;
  }

  Reduction const& left() const {
    return *left_;
  }

  Reduction const& right() const {
    return *right_;
  }

  PhiValue operator()(Submodule const& n) const {
    auto whole = Submodule::whole(n.parent());
    switch (tag_) {
      case Tag::empty:
        return std::nullopt;
      case Tag::zero:
        return Submodule::zero(n.parent());
      case Tag::id:
        return n;
      case Tag::power:
        return scale(ideal_power(colon_ring(n), k_ - 1), n);
      case Tag::colon:
        return scale(colon_ring(n), whole);
      case Tag::mul:
        return scale(*param_, n);
      case Tag::product: {
        auto const& m = n.parent();
        if (!m->factors()) {
          throw Error("product reduction applied outside a product module");
        }
        auto [a, b] = split_submodule(n);
        if (product_submodule(m, a, b) != n) {
          throw Error("product reduction applied to a non-product submodule");
        }
        return product_phi(m, (*left_)(a), (*right_)(b));
      }
    }
    throw Error("unknown reduction");
  }

  std::string to_string() const {
    switch (tag_) {
      case Tag::empty:
        return "empty";
      case Tag::zero:
        return "zero";
      case Tag::id:
        return "id";
      case Tag::power:
        return "power(" + std::to_string(k_) + ")";
      case Tag::colon:
        return "colon";
      case Tag::mul:
        return "mul(" + param_->to_string() + ")";
      case Tag::product:
        return "product(" + left_->to_string() + "," + right_->to_string() + ")";
    }
    return "?";
  }

 private:
  explicit Reduction(Tag t) : tag_(t) {}

  Tag tag_;
  int_t k_ = 1;
  std::optional<Ideal> param_;
  std::shared_ptr<Reduction const> left_, right_;
};

// δ1 ≤ δ2 on the given ideals.
inline bool fn_leq(Expansion const& a, Expansion const& b,
                   std::vector<Ideal> const& universe) {
  return std::all_of(universe.begin(), universe.end(), [&](Ideal const& i) {
    return a(i).subset_of(b(i));
  });
}

// φ1 ≤ φ2 on the given submodules.
inline bool fn_leq(Reduction const& a, Reduction const& b,
                   std::vector<Submodule> const& universe) {
  return std::all_of(universe.begin(), universe.end(), [&](Submodule const& n) {
    return phi_subset(a(n), b(n));
  });
}

inline bool has_intersection_property(Expansion const& d,
                                      std::vector<Ideal> const& universe) {
  for (auto const& i : universe) {
    for (auto const& j : universe) {
      if (d(ideal_intersection(i, j)) != ideal_intersection(d(i), d(j))) {
        return false;
      }
    }
  }
  return true;
}

inline bool has_intersection_property(Reduction const& f,
                                      std::vector<Submodule> const& universe) {
  for (auto const& n : universe) {
    for (auto const& k : universe) {
      if (f(submodule_intersection(n, k)) != phi_intersection(f(n), f(k))) {
        return false;
      }
    }
  }
  return true;
}

// First ideal pair breaking I ⊆ δ(I) or monotonicity, if any.
inline std::optional<std::pair<Ideal, Ideal>> expansion_axiom_violation(
    Expansion const& d, std::vector<Ideal> const& universe) {
  for (auto const& i : universe) {
    if (!i.subset_of(d(i))) {
      return std::pair{i, i};
    }
    for (auto const& j : universe) {
      if (i.subset_of(j) && !d(i).subset_of(d(j))) {
        return std::pair{i, j};
      }
    }
  }
  return std::nullopt;
}

// First submodule pair breaking φ(N) ⊆ N or monotonicity, if any.
inline std::optional<std::pair<Submodule, Submodule>> reduction_axiom_violation(
    Reduction const& f, std::vector<Submodule> const& universe) {
  for (auto const& n : universe) {
    if (!phi_subset(f(n), n)) {
      return std::pair{n, n};
    }
    for (auto const& k : universe) {
      if (n.subset_of(k) && !phi_subset(f(n), f(k))) {
        return std::pair{n, k};
      }
    }
  }
  return std::nullopt;
}

}  // namespace phidelta
