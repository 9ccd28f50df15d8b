#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "phidelta/propositions.hpp"

namespace phidelta {

struct Proposition {
  char const* id;
  char const* title;
  void (*check)(Universe const&, PropReport&);
};

inline std::vector<Proposition> const& registry() {
  static std::vector<Proposition> const props{
      {"P01", "directed-union", p01_directed_union},
      {"P02", "finite-intersection", p02_finite_intersection},
      {"P03", "colon-element", p03_colon_element},
      {"P04", "colon-ideal", p04_colon_ideal},
      {"P05", "ik-equivalence", p05_ik_equivalence},
      {"P06", "multiplication-LN", p06_multiplication_ln},
      {"P07", "s-squared", p07_s_squared},
      {"P08", "sqrt-colon", p08_sqrt_colon},
      {"P09", "restrict-to-K", p09_restrict_to_k},
      {"P10", "to-ideal", p10_to_ideal},
      {"P11", "from-ideal-multiplication", p11_from_ideal_multiplication},
      {"P12", "main-criterion", p12_main_criterion},
      {"P13", "n-squared", p13_n_squared},
      {"P14", "phi-idempotent", p14_phi_idempotent},
      {"P15", "quotient-by-phi", p15_quotient_by_phi},
      {"P16", "enlarge-S", p16_enlarge_s},
      {"P17", "saturation", p17_saturation},
      {"P18", "localization", p18_localization},
      {"P19", "four-way", p19_four_way},
      {"P20", "remark-nk", p20_remark_nk},
      {"P21", "image", p21_image},
      {"P22", "preimage", p22_preimage},
      {"P23", "correspondence", p23_correspondence},
      {"P24", "product-M2", p24_product_m2},
      {"P25", "product-N1", p25_product_n1},
      {"P26", "product-split", p26_product_split},
      {"P27", "product-symmetry", p27_product_symmetry},
  };
  return props;
}

inline Proposition const& find_proposition(std::string const& id) {
  for (auto const& p : registry()) {
    if (id == p.id) {
      return p;
    }
  }
  throw Error("unknown proposition " + id);
}

// Errors inside a check are recorded in the report.
inline PropReport run_proposition(Proposition const& p, Universe const& u) {
  PropReport r;
  r.id = p.id;
  r.title = p.title;
  auto start = std::chrono::steady_clock::now();
  try {
    p.check(u, r);
  } catch (std::exception const& e) {
    r.error = e.what();
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  return r;
}

inline PropReport verify_proposition(std::string const& id, Universe const& u) {
  u.check_bounds();
  return run_proposition(find_proposition(id), u);
}

inline std::vector<PropReport> run_suite(Universe const& u) {
  u.check_bounds();
  std::vector<PropReport> out;
  for (auto const& p : registry()) {
    out.push_back(run_proposition(p, u));
  }
  return out;
}

inline bool passed(PropReport const& r) {
  return r.violation_count == 0 && !r.error;
}

enum class PropertyKind {
  prime,
  primary,
  phi_prime,
  delta_s_primary,
  phi_delta_s_primary,
  phi_delta_primary,
  product_factor_primary
};

inline char const* to_string(PropertyKind k) {
  switch (k) {
    case PropertyKind::prime:
      return "prime";
    case PropertyKind::primary:
      return "primary";
    case PropertyKind::phi_prime:
      return "phi-prime";
    case PropertyKind::delta_s_primary:
      return "delta-S-primary";
    case PropertyKind::phi_delta_s_primary:
      return "phi-delta-S-primary";
    case PropertyKind::phi_delta_primary:
      return "phi-delta-primary";
    case PropertyKind::product_factor_primary:
      return "product-factor-primary";
  }
  return "?";
}

// A property of submodules. Parameters a kind does not use are ignored;
// missing ones default to φ_∅, δ_id and S = {1}.
struct Property {
  PropertyKind kind;
  std::optional<Reduction> phi;
  std::optional<Expansion> delta;
  std::optional<MCS> s;

  Reduction phi_or_empty() const {
    return phi ? *phi : Reduction::empty();
  }
  Expansion delta_or_id() const {
    return delta ? *delta : Expansion::id();
  }
  MCS s_or_one(Ring const& r) const {
    return s ? *s : MCS::one(r);
  }

  bool applies_to(Ring const& r) const {
    bool ok = !s || s->ring() == r;
    if (phi) {
      ok = ok && over_ring(*phi, r);
    }
    if (delta) {
      ok = ok && over_ring(*delta, r);
    }
    return ok;
  }

  std::string to_string() const {
    std::string out = phidelta::to_string(kind);
    if (phi) {
      out += " phi=" + phi->to_string();
    }
    if (delta) {
      out += " delta=" + delta->to_string();
    }
    if (s) {
      out += " S=" + s->to_string();
    }
    return out;
  }
};

inline bool has_property(Submodule const& n, Property const& p) {
  auto const& ring = n.parent()->ring();
  auto one = MCS::one(ring);
  auto holds = [](Submodule const& x, Reduction const& phi, Expansion const& delta,
                  MCS const& s) { return !x.is_whole() && classify(x, phi, delta, s).holds; };
  switch (p.kind) {
    case PropertyKind::prime:
      return holds(n, Reduction::empty(), Expansion::id(), one);
    case PropertyKind::primary:
      return holds(n, Reduction::empty(), Expansion::rad(), one);
    case PropertyKind::phi_prime:
      return holds(n, p.phi_or_empty(), Expansion::id(), one);
    case PropertyKind::delta_s_primary:
      return holds(n, Reduction::empty(), p.delta_or_id(), p.s_or_one(ring));
    case PropertyKind::phi_delta_s_primary:
      return holds(n, p.phi_or_empty(), p.delta_or_id(), p.s_or_one(ring));
    case PropertyKind::phi_delta_primary:
      return holds(n, p.phi_or_empty(), p.delta_or_id(), one);
    case PropertyKind::product_factor_primary: {
      auto const& m = n.parent();
      if (!m->factors() || !p.phi || p.phi->tag() != Reduction::Tag::product || !p.delta ||
          p.delta->tag() != Expansion::Tag::product) {
        return false;
      }
      auto [a, b] = split_submodule(n);
      if (!(product_submodule(m, a, b) == n)) {
        return false;
      }
      auto const& f = *m->factors();
      auto s = p.s_or_one(ring);
      return holds(a, p.phi->left(), p.delta->left(),
                   factor_mcs(s, f.left->ring(), 0)) &&
             holds(b, p.phi->right(), p.delta->right(),
                   factor_mcs(s, f.right->ring(), f.ring_split));
    }
  }
  return false;
}

struct SeparatingInstance {
  ModulePtr m;
  Submodule n;

  std::string to_string() const {
    return "M=" + m->description() + " N=" + n.to_string();
  }
};

// The first proper N, over the modules and then the products of the
// universe in lattice order, with A(N) and not B(N).
inline std::optional<SeparatingInstance> search_separating_instance(Property const& a,
                                                                    Property const& b,
                                                                    Universe const& u) {
  u.check_bounds();
  for (auto const& m : all_modules(u)) {
    if (!a.applies_to(m->ring()) || !b.applies_to(m->ring())) {
      continue;
    }
    for (auto const& n : enumerate_submodules(m)) {
      if (!n.is_whole() && has_property(n, a) && !has_property(n, b)) {
        return SeparatingInstance{m, n};
      }
    }
  }
  return std::nullopt;
}

}  // namespace phidelta
