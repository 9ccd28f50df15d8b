#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phidelta/localization.hpp"
#include "phidelta/universe.hpp"

namespace phidelta {

inline constexpr std::size_t kListedViolations = 10;

struct PropReport {
  std::string id;
  std::string title;
  std::size_t instances_checked = 0;
  std::size_t hypothesis_met = 0;
  std::size_t hypothesis_not_met = 0;
  // Part of hypothesis_not_met: an asserted compatibility equation failed.
  std::size_t excluded = 0;
  std::size_t violation_count = 0;
  // The first few violations, serialized.
  std::vector<std::string> violations;
  // Named side counts (e.g. instances where two readings differ).
  std::map<std::string, std::size_t> tallies;
  std::optional<std::string> error;
  double elapsed_ms = 0;

  void count(bool met) {
    ++instances_checked;
    ++(met ? hypothesis_met : hypothesis_not_met);
  }
  void exclude() {
    ++instances_checked;
    ++hypothesis_not_met;
    ++excluded;
  }
  void violation(std::string what) {
    ++violation_count;
    if (violations.size() < kListedViolations) {
      violations.push_back(std::move(what));
    }
  }
  void tally(std::string const& name, std::size_t k = 1) {
    tallies[name] += k;
  }
};

inline std::string describe(Setting const& st, Submodule const& n) {
  return "M=" + n.parent()->description() + " N=" + n.to_string() +
         " phi=" + st.phi.to_string() + " delta=" + st.delta.to_string() +
         " S=" + st.s.to_string();
}

inline std::string with_s(std::string text, RingElem const& s) {
  return text + " s=" + to_string(s);
}

inline RingElem ring_elem(Ring const& r, int_t x) {
  return r.normalize(std::vector<int_t>(r.components(), x));
}

// Strictly increasing chains of proper submodules, lengths 1..max_len.
inline std::vector<std::vector<std::size_t>> proper_chains(ModuleData const& d,
                                                           std::size_t max_len) {
  std::vector<std::vector<std::size_t>> out, frontier;
  for (std::size_t i = 0; i < d.lattice.size(); ++i) {
    if (!d.lattice[i].is_whole()) {
      frontier.push_back({i});
    }
  }
  for (std::size_t len = 1; len <= max_len && !frontier.empty(); ++len) {
    out.insert(out.end(), frontier.begin(), frontier.end());
    std::vector<std::vector<std::size_t>> next;
    for (auto const& c : frontier) {
      auto const& top = d.lattice[c.back()];
      for (std::size_t i = 0; i < d.lattice.size(); ++i) {
        auto const& n = d.lattice[i];
        if (!n.is_whole() && top.subset_of(n) && !(top == n)) {
          auto e = c;
          e.push_back(i);
          next.push_back(std::move(e));
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

// Subsets of proper submodules of size 1..max_size.
inline std::vector<std::vector<std::size_t>> proper_families(ModuleData const& d,
                                                             std::size_t max_size) {
  std::vector<std::size_t> proper;
  for (std::size_t i = 0; i < d.lattice.size(); ++i) {
    if (!d.lattice[i].is_whole()) {
      proper.push_back(i);
    }
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (!cur.empty()) {
      out.push_back(cur);
    }
    if (cur.size() == max_size) {
      return;
    }
    for (std::size_t k = from; k < proper.size(); ++k) {
      cur.push_back(proper[k]);
      self(self, k + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline std::vector<Ideal> ideal_test_set(Ring const& r, Universe const& u) {
  return r.is_finite() ? all_ideals(r) : ideal_universe(r, u.ideal_bound);
}

inline std::string chain_text(ModuleData const& d, std::vector<std::size_t> const& c) {
  std::string out;
  for (auto i : c) {
    out += (out.empty() ? "" : ",") + d.lattice[i].to_string();
  }
  return "[" + out + "]";
}

inline void p01_directed_union(Universe const& u, PropReport& r) {
  for (auto const& m : u.modules) {
    ModuleData d(m, u);
    auto chains = proper_chains(d, 3);
    for_each_setting(d, [&](Setting const& st) {
      for (auto const& chain : chains) {
        std::vector<bool> mask(m->size(), false);
        for (auto i : chain) {
          for (Elem x : d.lattice[i].elements()) {
            mask[x] = true;
          }
        }
        auto ui = d.index_of(Submodule(m, mask));
        if (!ui) {
          r.violation("union of chain " + chain_text(d, chain) + " is not a submodule");
          continue;
        }
        auto const& uctx = st.contexts[*ui];
        bool met = false;
        for (auto const& s : st.s_values) {
          bool all = std::all_of(chain.begin(), chain.end(), [&](std::size_t i) {
            return at(st.contexts[i], s);
          });
          if (!all || !uctx->precondition_ok()) {
            continue;
          }
          met = true;
          if (!at(uctx, s)) {
            r.violation(with_s(describe(st, d.lattice[*ui]) + " chain=" +
                                   chain_text(d, chain),
                               s));
          }
        }
        r.count(met);
      }
    });
  }
}

inline void p02_finite_intersection(Universe const& u, PropReport& r) {
  for (auto const& m : u.modules) {
    ModuleData d(m, u);
    auto families = proper_families(d, 3);
    auto ideals = ideal_test_set(m->ring(), u);
    for_each_setting(d, [&](Setting const& st) {
      bool property = has_intersection_property(st.delta, ideals) &&
                      has_intersection_property(st.phi, d.lattice);
      for (auto const& fam : families) {
        auto const& c0 = *st.contexts[fam[0]];
        bool equal = std::all_of(fam.begin(), fam.end(), [&](std::size_t i) {
          auto const& c = *st.contexts[i];
          return c.phi_n() == c0.phi_n() && c.delta_colon() == c0.delta_colon();
        });
        if (!property || !equal) {
          r.count(false);
          continue;
        }
        Submodule inter = d.lattice[fam[0]];
        for (auto i : fam) {
          inter = submodule_intersection(inter, d.lattice[i]);
        }
        auto const& ictx = st.contexts[*d.index_of(inter)];
        bool met = false;
        for (auto const& s : st.s_values) {
          bool all = std::all_of(fam.begin(), fam.end(), [&](std::size_t i) {
            return at(st.contexts[i], s);
          });
          if (!all) {
            continue;
          }
          met = true;
          if (!at(ictx, s)) {
            r.violation(with_s(describe(st, inter) + " family=" + chain_text(d, fam), s));
          }
        }
        r.count(met);
      }
    });
  }
}

inline void p03_colon_element(Universe const& u, PropReport& r) {
  for (auto const& m : u.modules) {
    ModuleData d(m, u);
    for_each_setting(d, [&](Setting const& st) {
      for (auto const& ctx : st.contexts) {
        if (!ctx) {
          continue;
        }
        for (auto const& a : ctx->scalars()) {
          auto k = colon_module(ctx->n(), a);
          auto const& kctx = st.contexts[*d.index_of(k)];
          bool hyp = !ctx->delta_colon().contains(a) &&
                     phi_subset(colon_module(ctx->phi_n(), a), st.phi(k)) && kctx &&
                     kctx->precondition_ok();
          bool met = false;
          for (auto const& s : st.s_values) {
            if (!hyp || !at(ctx, s)) {
              continue;
            }
            met = true;
            if (!at(kctx, s)) {
              r.violation(with_s(describe(st, ctx->n()) + " r=" + to_string(a), s));
            }
          }
          r.count(met);
        }
      }
    });
  }
}

inline void p04_colon_ideal(Universe const& u, PropReport& r) {
  for (auto const& m : u.modules) {
    ModuleData d(m, u);
    auto ideals = bounded_ideals(m->ring(), quantifier_modulus(*m, {}));
    for_each_setting(d, [&](Setting const& st) {
      for (auto const& ctx : st.contexts) {
        if (!ctx) {
          continue;
        }
        for (auto const& i : ideals) {
          auto k = colon_module(ctx->n(), i);
          auto const& kctx = st.contexts[*d.index_of(k)];
          bool hyp = !i.subset_of(ctx->delta_colon()) &&
                     phi_subset(colon_module(ctx->phi_n(), i), st.phi(k)) &&
                     ideal_colon(ctx->delta_colon(), i)
                         .subset_of(st.delta(ideal_colon(ctx->colon(), i))) &&
                     kctx && kctx->precondition_ok();
          bool met = false;
          for (auto const& s : st.s_values) {
            if (!hyp || !at(ctx, s)) {
              continue;
            }
            met = true;
            if (!at(kctx, s)) {
              r.violation(with_s(describe(st, ctx->n()) + " I=" + i.to_string(), s));
            }
          }
          r.count(met);
        }
      }
    });
  }
}

// ∃s c1 ⟺ ∃s c2 ⟺ ∃s c3. Where δ((N:M):s) and (δ(N:M):s) differ for some s,
// condition (2) is evaluated with the latter and the instance is tallied.
inline void p05_ik_equivalence(Universe const& u, PropReport& r) {
  for (auto const& m : u.modules) {
    ModuleData d(m, u);
    for_each_setting(d, [&](Setting const& st) {
      for (auto const& ctx : st.contexts) {
        if (!ctx) {
          continue;
        }
        if (!ctx->precondition_ok()) {
          r.count(false);
          continue;
        }
        r.count(true);
        bool differs = false;
        for (auto const& s : st.s_values) {
          differs |= !(ik_excluded(*ctx, s, IkReading::stated) ==
                       ik_excluded(*ctx, s, IkReading::quotient_of_delta));
        }
        auto reading = differs ? IkReading::quotient_of_delta : IkReading::stated;
        bool e1 = false, e2 = false, e3 = false, stated2 = false;
        for (auto const& s : st.s_values) {
          auto c = ik_conditions(*ctx, s, d.lattice, reading);
          e1 |= c.c1;
          e2 |= c.c2;
          e3 |= c.c3;
          if (differs) {
            stated2 |= ik_conditions(*ctx, s, d.lattice, IkReading::stated).c2;
          }
        }
        if (differs) {
          r.tally("readings-differ");
          if (stated2 != e1) {
            r.tally("stated-reading-disagrees");
          }
        }
        if (e1 != e2 || e1 != e3) {
          r.violation(describe(st, ctx->n()) + " c1=" + std::to_string(e1) +
                      " c2=" + std::to_string(e2) + " c3=" + std::to_string(e3));
        }
      }
    });
  }
}

// δ on submodules induced by δ_R: δ(P) = δ_R(P:M)M, asserting
// δ_R(P:M) = (δ(P):M) on the whole lattice.
inline bool submodule_delta_compatible(ModuleData const& d, Expansion const& delta) {
  auto whole = Submodule::whole(d.m);
  return std::all_of(d.lattice.begin(), d.lattice.end(), [&](Submodule const& p) {
    auto dr = delta(colon_ring(p));
    return colon_ring(scale(dr, whole)) == dr;
  });
}

inline void p06_multiplication_ln(Universe const& u, PropReport& r) {
  for (auto const& m : u.modules) {
    ModuleData d(m, u);
    bool mult = is_multiplication_module(m, d.lattice);
    auto whole = Submodule::whole(m);
    for_each_setting(d, [&](Setting const& st) {
      bool compatible = mult && submodule_delta_compatible(d, st.delta);
      for (auto const& ctx : st.contexts) {
        if (!ctx) {
          continue;
        }
        if (!mult || !ctx->precondition_ok()) {
          r.count(false);
          continue;
        }
        if (!compatible) {
          r.exclude();
          continue;
        }
        r.count(true);
        auto delta_p = scale(ctx->delta_colon(), whole);
        for (auto const& s : st.s_values) {
          bool c2 = true;
          for (auto const& l : d.lattice) {
            for (auto const& n : d.lattice) {
              auto ln = submodule_product(l, n, false);
              if (!ln.subset_of(ctx->n()) || phi_subset(ln, ctx->phi_n())) {
                continue;
              }
              if (!scale(s, n).subset_of(delta_p) && !scale(s, l).subset_of(ctx->n())) {
                c2 = false;
              }
            }
          }
          if (c2 != at(ctx, s)) {
            r.violation(with_s(describe(st, ctx->n()), s));
          }
        }
      }
    });
  }
}

inline void p07_s_squared(Universe const& u, PropReport& r) {
  for (auto const& m : u.modules) {
    ModuleData d(m, u);
    for_each_setting(d, [&](Setting const& st) {
      for (auto const& ctx : st.contexts) {
        if (!ctx) {
          continue;
        }
        bool met = false;
        for (auto const& s : st.s_values) {
          if (!at(ctx, s)) {
            continue;
          }
          auto const& ring = m->ring();
          Ideal bar = ideal_colon(ctx->delta_colon(),
                                  Ideal::principal(ring, ring.mul(s, s)));
          for (auto const& a : ctx->scalars()) {
            if (bar.contains(a)) {
              continue;
            }
            met = true;
            auto sa = ctx->mul(s, a);
            auto k = colon_module(ctx->n(), sa);
            auto kphi = colon_module(ctx->phi_n(), sa);
            if (!(kphi && *kphi == k) && !(k == colon_module(ctx->n(), s))) {
              r.violation(with_s(describe(st, ctx->n()) + " a=" + to_string(a), s));
            }
          }
        }
        r.count(met);
      }
    });
  }
}

inline void p08_sqrt_colon(Universe const& u, PropReport& r) {
  for (auto const& m : u.modules) {
    ModuleData d(m, u);
    for_each_setting(d, [&](Setting const& st) {
      for (auto const& ctx : st.contexts) {
        if (!ctx) {
          continue;
        }
        bool met = false;
        for (auto const& s : st.s_values) {
          if (!at(ctx, s)) {
            continue;
          }
          auto const& ring = m->ring();
          Ideal bar = ideal_colon(ideal_radical(ctx->delta_colon()),
                                  Ideal::principal(ring, s));
          for (auto const& a : ctx->scalars()) {
            if (bar.contains(a)) {
              continue;
            }
            met = true;
            auto sa = ctx->mul(s, a);
            auto k = colon_module(ctx->n(), sa);
            auto kphi = colon_module(ctx->phi_n(), sa);
            auto ks = colon_module(ctx->n(), s);
            bool same = true;
            for (Elem x = 0; x < m->size(); ++x) {
              same &= k.contains(x) == (phi_contains(kphi, x) || ks.contains(x));
            }
            if (!same) {
              r.violation(with_s(describe(st, ctx->n()) + " a=" + to_string(a), s));
            }
          }
        }
        r.count(met);
      }
    });
  }
}

inline void p09_restrict_to_k(Universe const& u, PropReport& r) {
  for (auto const& m : u.modules) {
    ModuleData d(m, u);
    std::vector<std::pair<ModulePtr, ModuleMap>> as_modules;
    for (auto const& k : d.lattice) {
      as_modules.push_back(submodule_module(k));
    }
    for_each_setting(d, [&](Setting const& st) {
      for (auto const& ctx : st.contexts) {
        if (!ctx) {
          continue;
        }
        for (std::size_t ki = 0; ki < d.lattice.size(); ++ki) {
          auto const& k = d.lattice[ki];
          auto nk = submodule_intersection(ctx->n(), k);
          auto dk = st.delta(colon_ring(ctx->n(), k));
          bool hyp = !k.subset_of(ctx->n()) && !st.s.intersects(dk) &&
                     st.phi(nk) == ctx->phi_n();
          if (!hyp) {
            r.count(false);
            continue;
          }
          auto const& inj = as_modules[ki].second;
          auto inner = preimage(inj, nk);
          auto kctx = Context::from_values(inner, preimage(inj, st.phi(nk)),
                                           st.delta(colon_ring(inner)), st.s);
          bool met = false;
          for (auto const& s : st.s_values) {
            if (!at(ctx, s)) {
              continue;
            }
            met = true;
            if (!at(kctx, s)) {
              r.violation(with_s(describe(st, ctx->n()) + " K=" + k.to_string(), s));
            }
          }
          r.count(met);
        }
      }
    });
  }
}

// φ_R(N:M) = (φ(N):M).
inline IdealVerdict ideal_of(Context const& ctx, Expansion const& delta) {
  return classify_ideal(ctx.colon(), colon_ring(ctx.phi_n()), delta, ctx.mcs());
}

inline void p10_to_ideal(Universe const& u, PropReport& r) {
  for (auto const& m : u.modules) {
    ModuleData d(m, u);
    for_each_setting(d, [&](Setting const& st) {
      for (auto const& ctx : st.contexts) {
        if (!ctx) {
          continue;
        }
        std::optional<IdealVerdict> iv;
        bool met = false;
        for (auto const& s : st.s_values) {
          if (!at(ctx, s)) {
            continue;
          }
          met = true;
          if (!iv) {
            iv = ideal_of(*ctx, st.delta);
          }
          if (!iv->holds_at(s)) {
            r.violation(with_s(describe(st, ctx->n()), s));
          }
        }
        r.count(met);
      }
    });
  }
}

inline void p11_from_ideal_multiplication(Universe const& u, PropReport& r) {
  for (auto const& m : u.modules) {
    ModuleData d(m, u);
    bool mult = is_multiplication_module(m, d.lattice);
    for_each_setting(d, [&](Setting const& st) {
      for (auto const& ctx : st.contexts) {
        if (!ctx) {
          continue;
        }
        if (!mult || !ctx->precondition_ok()) {
          r.count(false);
          continue;
        }
        auto iv = ideal_of(*ctx, st.delta);
        bool met = false;
        for (auto const& s : st.s_values) {
          if (!iv.holds_at(s)) {
            continue;
          }
          met = true;
          if (!at(ctx, s)) {
            r.violation(with_s(describe(st, ctx->n()), s));
          }
        }
        r.count(met);
      }
    });
  }
}

inline void p12_main_criterion(Universe const& u, PropReport& r) {
  for (auto const& m : u.modules) {
    ModuleData d(m, u);
    for_each_setting(d, [&](Setting const& st) {
      for (auto const& ctx : st.contexts) {
        if (!ctx) {
          continue;
        }
        bool criterion = !phi_subset(scale(ctx->colon(), ctx->n()), ctx->phi_n());
        if (!criterion) {
          r.count(false);
          continue;
        }
        auto plain = without_phi(*ctx);
        bool met = false;
        for (auto const& s : st.s_values) {
          if (!at(ctx, s)) {
            continue;
          }
          met = true;
          if (!at(plain, s)) {
            r.violation(with_s(describe(st, ctx->n()), s));
          }
        }
        r.count(met);
      }
    });
  }
}

inline void p13_n_squared(Universe const& u, PropReport& r) {
  for (auto const& m : u.modules) {
    ModuleData d(m, u);
    bool mult = is_multiplication_module(m, d.lattice);
    for_each_setting(d, [&](Setting const& st) {
      for (auto const& ctx : st.contexts) {
        if (!ctx) {
          continue;
        }
        if (!mult) {
          r.count(false);
          continue;
        }
        auto plain = without_phi(*ctx);
        bool met = false;
        for (auto const& s : st.s_values) {
          if (!at(ctx, s) || at(plain, s)) {
            continue;
          }
          met = true;
          auto const& n = ctx->n();
          if (!phi_subset(submodule_product(n, n), ctx->phi_n())) {
            r.violation(with_s(describe(st, n) + " N^2 not in phi(N)", s));
          }
          if (ctx->phi_n() &&
              !(submodule_radical(n) == submodule_radical(*ctx->phi_n()))) {
            r.violation(with_s(describe(st, n) + " rad N != rad phi(N)", s));
          }
        }
        r.count(met);
      }
    });
  }
}

// δ-primary: φ_∅, S = {1}.
inline bool delta_primary(Submodule const& n, Expansion const& delta) {
  if (n.is_whole()) {
    return false;
  }
  return classify(n, Reduction::empty(), delta, MCS::one(n.parent()->ring())).holds;
}

// Condition (2) asks φ(N) to be δ-primary for every N. The step (1) ⇒ (2)
// only reaches those φ(N) that are proper with δ(φ(N):M) ∩ S = ∅, so that is
// the reading checked; failures of the unrestricted reading are tallied.
inline void p14_phi_idempotent(Universe const& u, PropReport& r) {
  for (auto const& m : u.modules) {
    ModuleData d(m, u);
    for_each_setting(d, [&](Setting const& st) {
      bool idempotent = st.phi.tag() != Reduction::Tag::empty &&
                        std::all_of(d.lattice.begin(), d.lattice.end(),
                                    [&](Submodule const& n) {
                                      auto p = st.phi(n);
                                      return p && st.phi(*p) == p;
                                    });
      if (!idempotent) {
        r.count(false);
        return;
      }
      r.count(true);
      std::vector<bool> dp(d.lattice.size());
      for (std::size_t i = 0; i < d.lattice.size(); ++i) {
        dp[i] = delta_primary(d.lattice[i], st.delta);
      }
      bool one = true, every_phi = true, reachable_phi = true, plain = true;
      for (std::size_t i = 0; i < d.lattice.size(); ++i) {
        auto pi = *d.index_of(*st.phi(d.lattice[i]));
        every_phi = every_phi && dp[pi];
        auto const& pctx = st.contexts[pi];
        if (pctx && pctx->precondition_ok()) {
          reachable_phi = reachable_phi && dp[pi];
        }
        auto const& ctx = st.contexts[i];
        if (!ctx) {
          continue;
        }
        if (classify(*ctx).holds && !dp[i]) {
          one = false;
        }
        if (classify(without_phi(*ctx)).holds && !dp[i]) {
          plain = false;
        }
      }
      if (one != (every_phi && plain)) {
        r.tally("unrestricted-reading-fails");
      }
      if (one != (reachable_phi && plain)) {
        r.violation("M=" + m->description() + " phi=" + st.phi.to_string() +
                    " delta=" + st.delta.to_string() + " S=" + st.s.to_string() +
                    " (1)=" + std::to_string(one) +
                    " phi(N) delta-primary=" + std::to_string(reachable_phi) +
                    " delta-S-primary=>delta-primary=" + std::to_string(plain));
      }
    });
  }
}

inline void p15_quotient_by_phi(Universe const& u, PropReport& r) {
  for (auto const& m : u.modules) {
    ModuleData d(m, u);
    std::map<std::size_t, std::pair<ModulePtr, ModuleMap>> quotients;
    auto quotient_by = [&](Submodule const& k) -> ModuleMap const& {
      auto i = *d.index_of(k);
      auto it = quotients.find(i);
      if (it == quotients.end()) {
        it = quotients.emplace(i, quotient_module(k)).first;
      }
      return it->second.second;
    };
    for_each_setting(d, [&](Setting const& st) {
      for (auto const& ctx : st.contexts) {
        if (!ctx) {
          continue;
        }
        if (!ctx->phi_n()) {
          r.count(false);
          continue;
        }
        auto const& f = quotient_by(*ctx->phi_n());
        auto bar = image(f, ctx->n());
        if (!(colon_ring(bar) == ctx->colon())) {
          r.exclude();
          continue;
        }
        r.count(true);
        auto qctx = Context::from_values(bar, Submodule::zero(f.target),
                                         ctx->delta_colon(), st.s);
        for (auto const& s : st.s_values) {
          if (at(ctx, s) != at(qctx, s)) {
            r.violation(with_s(describe(st, ctx->n()), s));
          }
        }
      }
    });
  }
}

// Elements of S: the closure over a finite ring, products of generators up
// to the bound over Z.
inline std::vector<RingElem> concrete_elements(MCS const& s, int_t bound) {
  if (s.ring().is_finite()) {
    return s.elements();
  }
  std::vector<int_t> seen{1};
  for (std::size_t i = 0; i < seen.size(); ++i) {
    for (auto const& g : s.gens()) {
      int_t v = seen[i] * g[0];
      if (v <= bound && std::find(seen.begin(), seen.end(), v) == seen.end()) {
        seen.push_back(v);
      }
    }
  }
  std::sort(seen.begin(), seen.end());
  std::vector<RingElem> out;
  for (int_t v : seen) {
    out.push_back({v});
  }
  return out;
}

inline void p16_enlarge_s(Universe const& u, PropReport& r) {
  for (auto const& m : u.modules) {
    ModuleData d(m, u);
    auto const& ring = m->ring();
    for (auto const& phi : d.phis) {
      for (auto const& delta : d.deltas) {
        std::vector<std::vector<std::optional<Context>>> ctx(d.mcs.size());
        for (std::size_t si = 0; si < d.mcs.size(); ++si) {
          for (auto const& n : d.lattice) {
            ctx[si].push_back(n.is_whole() ? std::nullopt
                                           : std::optional<Context>(
                                                 Context(n, phi, delta, d.mcs[si])));
          }
        }
        for (std::size_t i1 = 0; i1 < d.mcs.size(); ++i1) {
          for (std::size_t i2 = 0; i2 < d.mcs.size(); ++i2) {
            auto const& s1 = d.mcs[i1];
            auto const& s2 = d.mcs[i2];
            auto elems = concrete_elements(s2, u.ideal_bound);
            bool st_condition = mcs_subset(s1, s2);
            for (auto const& s : elems) {
              st_condition = st_condition &&
                             std::any_of(elems.begin(), elems.end(), [&](RingElem const& t) {
                               return s1.contains(ring.mul(s, t));
                             });
            }
            for (std::size_t ni = 0; ni < d.lattice.size(); ++ni) {
              if (!ctx[i2][ni]) {
                continue;
              }
              if (!st_condition) {
                r.count(false);
                continue;
              }
              bool met = false;
              for (auto const& s : elems) {
                if (!at(ctx[i2][ni], s)) {
                  continue;
                }
                met = true;
                for (auto const& t : elems) {
                  auto st = ring.mul(s, t);
                  if (s1.contains(st) && !at(ctx[i1][ni], st)) {
                    r.violation("M=" + m->description() + " N=" +
                                d.lattice[ni].to_string() + " phi=" + phi.to_string() +
                                " delta=" + delta.to_string() + " S1=" + s1.to_string() +
                                " S2=" + s2.to_string() + " s=" + to_string(s) +
                                " t=" + to_string(t));
                  }
                }
              }
              r.count(met);
            }
          }
        }
      }
    }
  }
}

inline void p17_saturation(Universe const& u, PropReport& r) {
  for (auto const& m : u.modules) {
    ModuleData d(m, u);
    std::vector<MCS> saturated;
    for (auto const& s : d.mcs) {
      saturated.push_back(mcs_saturation(s));
    }
    for_each_setting(d, [&](Setting const& st) {
      auto si = static_cast<std::size_t>(std::find(d.mcs.begin(), d.mcs.end(), st.s) -
                                         d.mcs.begin());
      for (auto const& ctx : st.contexts) {
        if (!ctx) {
          continue;
        }
        r.count(true);
        bool plain = classify(*ctx).holds;
        bool star = classify(ctx->n(), st.phi, st.delta, saturated[si]).holds;
        if (plain != star) {
          r.violation(describe(st, ctx->n()) + " S*=" + saturated[si].to_string());
        }
      }
    });
  }
}

// φ_S(S⁻¹N) := S⁻¹φ(N) is well defined on the lattice.
inline bool localized_phi_well_defined(ModuleData const& d, FractionModule const& loc,
                                       Reduction const& phi) {
  std::map<std::vector<Elem>, PhiValue> seen;
  for (auto const& n : d.lattice) {
    auto key = loc.localize(n).elements();
    auto value = loc.localize(phi(n));
    auto [it, fresh] = seen.emplace(key, value);
    if (!fresh && !(it->second == value)) {
      return false;
    }
  }
  return true;
}

// S⁻¹N as an R-module context: δ_S(S⁻¹(N:M)) = S⁻¹δ(N:M), read back in R.
inline std::optional<Context> localized_context(FractionModule const& loc,
                                                Context const& ctx, MCS const& s) {
  auto n = loc.localize(ctx.n());
  if (n.is_whole()) {
    return std::nullopt;
  }
  return Context::from_values(n, loc.localize(ctx.phi_n()),
                              ideal_contraction(ctx.delta_colon(), loc.mcs()), s);
}

inline void p18_localization(Universe const& u, PropReport& r) {
  for (auto const& m : u.modules) {
    ModuleData d(m, u);
    std::vector<FractionModule> locs;
    for (auto const& s : d.mcs) {
      locs.emplace_back(m, s);
    }
    for_each_setting(d, [&](Setting const& st) {
      auto si = static_cast<std::size_t>(std::find(d.mcs.begin(), d.mcs.end(), st.s) -
                                         d.mcs.begin());
      auto const& loc = locs[si];
      bool defined = localized_phi_well_defined(d, loc, st.phi);
      for (auto const& ctx : st.contexts) {
        if (!ctx) {
          continue;
        }
        bool met = std::any_of(st.s_values.begin(), st.s_values.end(),
                               [&](RingElem const& s) { return at(ctx, s); });
        if (!met) {
          r.count(false);
          continue;
        }
        auto n = loc.localize(ctx->n());
        if (!defined || !(colon_ring(n) == ideal_contraction(ctx->colon(), st.s))) {
          r.exclude();
          continue;
        }
        r.count(true);
        auto lctx = localized_context(loc, *ctx, st.s);
        for (auto const& s : st.s_values) {
          if (at(ctx, s) && !at(lctx, s)) {
            r.violation(with_s(describe(st, ctx->n()) + (lctx ? "" : " S^-1N whole"), s));
          }
        }
      }
    });
  }
}

inline void p19_four_way(Universe const& u, PropReport& r) {
  for (auto const& m : u.modules) {
    ModuleData d(m, u);
    auto const& ring = m->ring();
    std::vector<FractionModule> locs;
    for (auto const& s : d.mcs) {
      locs.emplace_back(m, s);
    }
    for_each_setting(d, [&](Setting const& st) {
      auto si = static_cast<std::size_t>(std::find(d.mcs.begin(), d.mcs.end(), st.s) -
                                         d.mcs.begin());
      auto const& loc = locs[si];
      bool defined = localized_phi_well_defined(d, loc, st.phi);
      auto one = MCS::one(ring);
      for (auto const& ctx : st.contexts) {
        if (!ctx) {
          continue;
        }
        auto const& n = ctx->n();
        auto const& pn = ctx->phi_n();
        auto contracted = ideal_contraction(ctx->delta_colon(), st.s);
        std::vector<RingElem> side;
        if (ctx->precondition_ok() && !contracted.is_unit()) {
          for (auto const& s : st.s_values) {
            bool fixed = pn == colon_module(pn, s);
            bool dominated = std::all_of(
                st.s_values.begin(), st.s_values.end(), [&](RingElem const& t) {
                  return phi_subset(colon_module(pn, t), colon_module(pn, s));
                });
            if (fixed && dominated) {
              side.push_back(s);
            }
          }
        }
        if (side.empty()) {
          r.count(false);
          continue;
        }
        bool compatible =
            defined &&
            ideal_contraction(ctx->delta_colon(), st.s) ==
                st.delta(ideal_contraction(ctx->colon(), st.s)) &&
            std::all_of(ctx->scalars().begin(), ctx->scalars().end(),
                        [&](RingElem const& a) {
                          auto pa = Ideal::principal(ring, a);
                          return st.delta(ideal_colon(ctx->colon(), pa)) ==
                                     ideal_colon(ctx->delta_colon(), pa) &&
                                 st.phi(colon_module(n, a)) == colon_module(pn, a);
                        });
        if (!compatible) {
          r.exclude();
          continue;
        }
        r.count(true);
        auto lctx = localized_context(loc, *ctx, one);
        bool local = lctx && classify(*lctx).holds;
        for (auto const& s : side) {
          auto ns = colon_module(n, s);
          bool c1 = at(ctx, s);
          bool c2 = !ns.is_whole() && classify(Context(ns, st.phi, st.delta, one)).holds;
          bool inclusions = std::all_of(
              st.s_values.begin(), st.s_values.end(), [&](RingElem const& t) {
                auto pt = Ideal::principal(ring, t);
                auto ps = Ideal::principal(ring, s);
                return colon_module(n, t).subset_of(ns) &&
                       ideal_colon(ctx->colon(), pt).subset_of(ideal_colon(ctx->colon(), ps));
              });
          bool c3 = local && inclusions;
          bool c4 = local && loc.contract(loc.localize(n)) == ns &&
                    ideal_contraction(ctx->colon(), st.s) ==
                        ideal_colon(ctx->colon(), Ideal::principal(ring, s));
          if (c1 != c2 || c1 != c3 || c1 != c4) {
            r.violation(with_s(describe(st, n), s) + " (1)=" + std::to_string(c1) +
                        " (2)=" + std::to_string(c2) + " (3)=" + std::to_string(c3) +
                        " (4)=" + std::to_string(c4));
          }
        }
      }
    });
  }
}

// An epimorphism M → M/K with its target lattice.
struct Epimorphism {
  ModuleMap f;
  std::vector<Submodule> lattice;
};

inline std::vector<Epimorphism> quotient_maps(ModuleData const& d) {
  std::vector<Epimorphism> out;
  for (auto const& k : d.lattice) {
    if (!k.is_whole()) {
      auto f = quotient_module(k).second;
      out.push_back({f, enumerate_submodules(f.target)});
    }
  }
  return out;
}

// φ' on M' induced by φ'(N') = f(φ(f⁻¹(N'))), or nothing when the
// (φ-φ') condition φ(f⁻¹(N')) = f⁻¹(φ'(N')) fails somewhere.
inline std::optional<std::vector<PhiValue>> induced_phi(Epimorphism const& e,
                                                        Reduction const& phi) {
  std::vector<PhiValue> out;
  for (auto const& np : e.lattice) {
    auto pre = phi(preimage(e.f, np));
    auto value = image(e.f, pre);
    if (!(preimage(e.f, value) == pre)) {
      return std::nullopt;
    }
    out.push_back(value);
  }
  return out;
}

inline std::size_t lattice_index(std::vector<Submodule> const& lattice, Submodule const& n) {
  return static_cast<std::size_t>(std::lower_bound(lattice.begin(), lattice.end(), n) -
                                  lattice.begin());
}

inline std::vector<ModulePtr> all_modules(Universe const& u) {
  auto out = u.modules;
  out.insert(out.end(), u.products.begin(), u.products.end());
  return out;
}

inline std::string map_text(Epimorphism const& e) {
  return " f=M->M/" + e.f.kernel().to_string();
}

inline void p20_remark_nk(Universe const& u, PropReport& r) {
  for (auto const& m : all_modules(u)) {
    ModuleData d(m, u);
    auto maps = quotient_maps(d);
    for (auto const& phi : d.phis) {
      for (auto const& e : maps) {
        auto ind = induced_phi(e, phi);
        auto ker = e.f.kernel();
        for (auto const& n : d.lattice) {
          if (n.is_whole() || !ker.subset_of(n)) {
            continue;
          }
          if (!ind) {
            r.exclude();
            continue;
          }
          r.count(true);
          auto fn = image(e.f, n);
          if (!(colon_ring(n) == colon_ring(fn))) {
            r.violation("M=" + m->description() + " N=" + n.to_string() + map_text(e) +
                        " (N:M) != (f(N):M')");
          }
          if (!(image(e.f, phi(n)) == (*ind)[lattice_index(e.lattice, fn)])) {
            r.violation("M=" + m->description() + " N=" + n.to_string() + map_text(e) +
                        " phi=" + phi.to_string() + " f(phi(N)) != phi'(f(N))");
          }
        }
      }
    }
  }
}

inline Context image_context(Submodule const& np, PhiValue phi_np, Expansion const& delta,
                             MCS const& s) {
  return Context::from_values(np, std::move(phi_np), delta(colon_ring(np)), s);
}

// P21, P22 and P23 share one loop over (M, f, φ, δ, S).
template <class Fn>
void for_each_epimorphism_setting(Universe const& u, Fn&& fn) {
  for (auto const& m : all_modules(u)) {
    ModuleData d(m, u);
    auto maps = quotient_maps(d);
    for_each_setting(d, [&](Setting const& st) {
      for (auto const& e : maps) {
        fn(d, st, e, induced_phi(e, st.phi));
      }
    });
  }
}

inline void p21_image(Universe const& u, PropReport& r) {
  for_each_epimorphism_setting(u, [&](ModuleData const& d, Setting const& st,
                                      Epimorphism const& e,
                                      std::optional<std::vector<PhiValue>> const& ind) {
    auto ker = e.f.kernel();
    for (std::size_t i = 0; i < d.lattice.size(); ++i) {
      auto const& ctx = st.contexts[i];
      if (!ctx || !ker.subset_of(ctx->n())) {
        continue;
      }
      if (!ind) {
        r.exclude();
        continue;
      }
      r.count(true);
      auto fn = image(e.f, ctx->n());
      auto fctx = image_context(fn, (*ind)[lattice_index(e.lattice, fn)], st.delta, st.s);
      for (auto const& s : st.s_values) {
        if (at(ctx, s) != at(fctx, s)) {
          r.violation(with_s(describe(st, ctx->n()) + map_text(e), s));
        }
      }
    }
  });
}

inline void p22_preimage(Universe const& u, PropReport& r) {
  for_each_epimorphism_setting(u, [&](ModuleData const& d, Setting const& st,
                                      Epimorphism const& e,
                                      std::optional<std::vector<PhiValue>> const& ind) {
    for (std::size_t i = 0; i < e.lattice.size(); ++i) {
      auto const& np = e.lattice[i];
      if (np.is_whole()) {
        continue;
      }
      if (!ind) {
        r.exclude();
        continue;
      }
      auto fctx = image_context(np, (*ind)[i], st.delta, st.s);
      auto pre = preimage(e.f, np);
      auto const& ctx = st.contexts[*d.index_of(pre)];
      bool met = false;
      for (auto const& s : st.s_values) {
        if (!at(fctx, s)) {
          continue;
        }
        met = true;
        if (!at(ctx, s)) {
          r.violation(with_s(describe(st, pre) + map_text(e) + " N'=" + np.to_string(), s));
        }
      }
      r.count(met);
    }
  });
}

struct Correspondence {
  std::size_t source = 0;
  std::size_t target = 0;
  bool round_trips = true;
};

// Primary submodules containing ker f against primary submodules of M'.
inline Correspondence count_correspondence(ModuleData const& d, Setting const& st,
                                           Epimorphism const& e,
                                           std::vector<PhiValue> const& ind) {
  Correspondence c;
  auto ker = e.f.kernel();
  for (auto const& ctx : st.contexts) {
    if (ctx && ker.subset_of(ctx->n()) && classify(*ctx).holds) {
      ++c.source;
      auto fn = image(e.f, ctx->n());
      c.round_trips &= preimage(e.f, fn) == ctx->n() &&
                       classify(image_context(fn, ind[lattice_index(e.lattice, fn)],
                                              st.delta, st.s))
                           .holds;
    }
  }
  for (std::size_t i = 0; i < e.lattice.size(); ++i) {
    auto const& np = e.lattice[i];
    if (np.is_whole() || !classify(image_context(np, ind[i], st.delta, st.s)).holds) {
      continue;
    }
    ++c.target;
    auto pre = preimage(e.f, np);
    auto const& ctx = st.contexts[*d.index_of(pre)];
    c.round_trips &= image(e.f, pre) == np && ctx && classify(*ctx).holds;
  }
  return c;
}

inline void p23_correspondence(Universe const& u, PropReport& r) {
  for_each_epimorphism_setting(u, [&](ModuleData const& d, Setting const& st,
                                      Epimorphism const& e,
                                      std::optional<std::vector<PhiValue>> const& ind) {
    if (!ind) {
      r.exclude();
      return;
    }
    r.count(true);
    auto c = count_correspondence(d, st, e, *ind);
    r.tally("source-primary", c.source);
    if (c.source != c.target || !c.round_trips) {
      r.violation("M=" + d.m->description() + map_text(e) + " phi=" + st.phi.to_string() +
                  " delta=" + st.delta.to_string() + " S=" + st.s.to_string() +
                  " source=" + std::to_string(c.source) +
                  " target=" + std::to_string(c.target) +
                  " round-trips=" + std::to_string(c.round_trips));
    }
  });
}

// A finite module isomorphic to its ring: faithful of the same order.
inline bool is_ring_itself(ModulePtr const& m) {
  auto const& ring = m->ring();
  return ring.is_finite() && m->size() == ring.order() &&
         colon_ring(Submodule::zero(m)).is_zero();
}

// One factor choice (φ1, φ2, δ1, δ2, S1, S2) on M1 x M2.
struct ProductSetting {
  ModulePtr m;
  std::vector<Reduction> phi;
  std::vector<Expansion> delta;
  std::vector<MCS> s;
  Reduction phi_x;
  Expansion delta_x;
  MCS s_x;

  std::string text() const {
    return "M=" + m->description() + " phi=" + phi_x.to_string() +
           " delta=" + delta_x.to_string() + " S=" + s_x.to_string();
  }
};

// S_i: the projection of S onto one factor ring.
inline MCS factor_mcs(MCS const& s, Ring const& factor, std::size_t offset) {
  std::vector<RingElem> elems;
  for (auto const& x : s.elements()) {
    elems.emplace_back(x.begin() + static_cast<std::ptrdiff_t>(offset),
                       x.begin() + static_cast<std::ptrdiff_t>(offset + factor.components()));
  }
  return MCS::from_set(factor, std::move(elems));
}

template <class Fn>
void for_each_product_setting(Universe const& u, Fn&& fn) {
  for (auto const& m : u.products) {
    auto const& f = *m->factors();
    ModulePtr parts[2] = {f.left, f.right};
    std::vector<Reduction> phis[2];
    std::vector<Expansion> deltas[2];
    std::vector<MCS> mcs[2];
    for (int i = 0; i < 2; ++i) {
      phis[i] = factor_reductions(parts[i]->ring());
      deltas[i] = factor_expansions(parts[i]->ring());
      mcs[i] = mcs_catalog(parts[i]->ring(), u);
    }
    auto emit = [&](Reduction const& p1, Reduction const& p2, Expansion const& d1,
                    Expansion const& d2, MCS const& s1, MCS const& s2) {
      fn(ProductSetting{m,
                        {p1, p2},
                        {d1, d2},
                        {s1, s2},
                        Reduction::product(p1, p2),
                        Expansion::product(d1, d2, f.ring_split),
                        product_mcs(s1, s2)});
    };
    if (u.reductions || u.expansions || u.mcs_list) {
      // Overrides over the product ring, split into their factors. S must be
      // S1 x S2 for its projections.
      for (auto const& phi : reduction_catalog(m->ring(), u)) {
        for (auto const& delta : expansion_catalog(m->ring(), u)) {
          for (auto const& s : mcs_catalog(m->ring(), u)) {
            if (phi.tag() != Reduction::Tag::product ||
                delta.tag() != Expansion::Tag::product) {
              continue;
            }
            auto s1 = factor_mcs(s, parts[0]->ring(), 0);
            auto s2 = factor_mcs(s, parts[1]->ring(), f.ring_split);
            if (product_mcs(s1, s2) == s) {
              emit(phi.left(), phi.right(), delta.left(), delta.right(), s1, s2);
            }
          }
        }
      }
      continue;
    }
    for (auto const& p1 : phis[0]) {
      for (auto const& p2 : phis[1]) {
        for (auto const& d1 : deltas[0]) {
          for (auto const& d2 : deltas[1]) {
            for (auto const& s1 : mcs[0]) {
              for (auto const& s2 : mcs[1]) {
                emit(p1, p2, d1, d2, s1, s2);
              }
            }
          }
        }
      }
    }
  }
}

inline RingElem join(RingElem a, RingElem const& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline std::optional<Context> factor_context(Submodule const& n, Reduction const& phi,
                                             Expansion const& delta, MCS const& s) {
  if (n.is_whole()) {
    return std::nullopt;
  }
  return Context(n, phi, delta, s);
}

// N1 x M2 (or M1 x N2 when `swapped`), for the factor condition φ(M) = M
// given by `whole`.
inline void product_with_whole(Universe const& u, PropReport& r, bool swapped, bool whole) {
  for_each_product_setting(u, [&](ProductSetting const& ps) {
    auto const& f = *ps.m->factors();
    std::size_t i = swapped ? 1 : 0, o = 1 - i;
    ModulePtr parts[2] = {f.left, f.right};
    auto other_whole = Submodule::whole(parts[o]);
    bool hyp = (ps.phi[o](other_whole) == PhiValue(other_whole)) == whole;
    for (auto const& ni : enumerate_submodules(parts[i])) {
      if (ni.is_whole()) {
        continue;
      }
      if (!hyp) {
        r.count(false);
        continue;
      }
      r.count(true);
      auto n = swapped ? product_submodule(ps.m, other_whole, ni)
                       : product_submodule(ps.m, ni, other_whole);
      Context full(n, ps.phi_x, ps.delta_x, ps.s_x);
      Context factor(ni, whole ? ps.phi[i] : Reduction::empty(), ps.delta[i], ps.s[i]);
      Context plain(n, Reduction::empty(), ps.delta_x, ps.s_x);
      for (auto const& a : ps.s[0].elements()) {
        for (auto const& b : ps.s[1].elements()) {
          auto s = join(a, b);
          auto si = swapped ? b : a;
          bool c1 = at(full, s);
          bool c2 = whole ? at(factor, si) : at(factor, si) && at(plain, s);
          if (c1 != c2) {
            r.violation(with_s(ps.text() + " N=" + n.to_string(), s) +
                        " (1)=" + std::to_string(c1) + " (2)=" + std::to_string(c2));
          }
        }
      }
    }
  });
}

inline void p24_product_m2(Universe const& u, PropReport& r) {
  product_with_whole(u, r, false, false);
}

inline void p25_product_n1(Universe const& u, PropReport& r) {
  product_with_whole(u, r, false, true);
}

inline void p26_product_split(Universe const& u, PropReport& r) {
  for_each_product_setting(u, [&](ProductSetting const& ps) {
    auto const& f = *ps.m->factors();
    bool rings = is_ring_itself(f.left) && is_ring_itself(f.right);
    auto l1 = enumerate_submodules(f.left);
    auto l2 = enumerate_submodules(f.right);
    for (auto const& n1 : l1) {
      for (auto const& n2 : l2) {
        auto n = product_submodule(ps.m, n1, n2);
        if (n.is_whole()) {
          continue;
        }
        Context full(n, ps.phi_x, ps.delta_x, ps.s_x);
        auto c1 = factor_context(n1, ps.phi[0], ps.delta[0], ps.s[0]);
        auto c2 = factor_context(n2, ps.phi[1], ps.delta[1], ps.s[1]);
        std::optional<IdealVerdict> i1, i2;
        if (rings) {
          auto ideal_verdict = [&](Submodule const& ni, int k) -> std::optional<IdealVerdict> {
            if (ni.is_whole()) {
              return std::nullopt;
            }
            return classify_ideal(colon_ring(ni), colon_ring(ps.phi[k](ni)), ps.delta[k],
                                  ps.s[k]);
          };
          i1 = ideal_verdict(n1, 0);
          i2 = ideal_verdict(n2, 1);
        }
        bool met = false;
        for (auto const& a : ps.s[0].elements()) {
          for (auto const& b : ps.s[1].elements()) {
            auto s = join(a, b);
            if (!at(full, s)) {
              continue;
            }
            met = true;
            if (!at(c1, a) && !at(c2, b)) {
              r.violation(with_s(ps.text() + " N=" + n.to_string(), s));
            }
            if (rings && !(i1 && i1->holds_at(a)) && !(i2 && i2->holds_at(b))) {
              r.violation(with_s(ps.text() + " N=" + n.to_string() + " as ideals", s));
            }
          }
        }
        r.count(met);
      }
    }
  });
}

inline void p27_product_symmetry(Universe const& u, PropReport& r) {
  product_with_whole(u, r, true, false);
  product_with_whole(u, r, true, true);
}

}  // namespace phidelta
