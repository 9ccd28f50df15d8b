#pragma once

// Scenario files: sections [ring], [module], [submodule], [mcs], [delta] and
// [phi], each holding `key = value` lines. Values are terms:
//
//   term := integer | ident | ident(term, ...) | (term, ...)
//
// and a list is terms separated by top-level commas. `#` starts a comment.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "phidelta/structure_maps.hpp"

namespace phidelta {

class ScenarioError : public Error {
 public:
  ScenarioError(std::size_t line, std::size_t column, std::string const& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) +
              ": " + what),
        line_(line),
        column_(column) {}

  // Semantic errors name the field instead of a position.
  explicit ScenarioError(std::string const& what) : Error(what) {}

  std::size_t line() const {
    return line_;
  }
  std::size_t column() const {
    return column_;
  }

 private:
  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

struct Term {
  enum class Kind { integer, name, call, tuple };
  Kind kind = Kind::integer;
  int_t value = 0;
  std::string name;
  std::vector<Term> args;

  friend bool operator==(Term const&, Term const&) = default;

  std::string to_string() const {
    auto list = [&] {
      std::string out;
      for (std::size_t i = 0; i < args.size(); ++i) {
        out += (i ? ", " : "") + args[i].to_string();
      }
      return out;
    };
    switch (kind) {
      case Kind::integer:
        return std::to_string(value);
      case Kind::name:
        return name;
      case Kind::call:
        return name + "(" + list() + ")";
      case Kind::tuple:
        return "(" + list() + ")";
    }
    return "?";
  }
};

class TermParser {
 public:
  TermParser(std::string text, std::size_t line, std::size_t column)
      : text_(std::move(text)), line_(line), column_(column) {}

  std::vector<Term> list() {
    std::vector<Term> out;
    skip();
    if (pos_ == text_.size()) {
      return out;
    }
    out.push_back(term());
    skip();
    while (pos_ < text_.size() && text_[pos_] == ',') {
      ++pos_;
      out.push_back(term());
      skip();
    }
    if (pos_ != text_.size()) {
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    }
    return out;
  }

 private:
  [[noreturn]] void fail(std::string const& what) const {
    throw ScenarioError(line_, column_ + pos_, what);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  std::vector<Term> args() {
    ++pos_;
    std::vector<Term> out;
    skip();
    if (pos_ < text_.size() && text_[pos_] == ')') {
      fail("empty argument list");
    }
    while (true) {
      out.push_back(term());
      skip();
      if (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (pos_ < text_.size() && text_[pos_] == ')') {
        ++pos_;
        return out;
      }
      fail("expected ',' or ')'");
    }
  }

  Term term() {
    skip();
    if (pos_ == text_.size()) {
      fail("expected a value");
    }
    char c = text_[pos_];
    Term t;
    if (c == '(') {
      t.kind = Term::Kind::tuple;
      t.args = args();
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      std::size_t start = pos_;
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      auto digits = text_.substr(start, pos_ - start);
      if (digits == "-" || digits.size() > 18) {
        pos_ = start;
        fail("bad integer '" + digits + "'");
      }
      t.value = std::stoll(digits);
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_' || text_[pos_] == '-')) {
        ++pos_;
      }
      t.kind = Term::Kind::name;
      t.name = text_.substr(start, pos_ - start);
      skip();
      if (pos_ < text_.size() && text_[pos_] == '(') {
        t.kind = Term::Kind::call;
        t.args = args();
      }
      return t;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string text_;
  std::size_t line_;
  std::size_t column_;
  std::size_t pos_ = 0;
};

struct Scenario {
  // "integers" or "finite".
  std::string ring = "integers";
  std::vector<int_t> moduli;
  std::vector<int_t> orders;
  // Ring component acting on each cyclic factor; empty means component 0.
  std::vector<int_t> components;
  // Ring components owned by the left factor of a product module.
  std::optional<int_t> split;
  std::vector<std::vector<int_t>> generators;
  // Generators of S; empty means S = {1}.
  std::vector<std::vector<int_t>> mcs;
  Term delta{Term::Kind::name, 0, "id", {}};
  Term phi{Term::Kind::name, 0, "empty", {}};

  friend bool operator==(Scenario const&, Scenario const&) = default;
};

namespace detail {

inline std::vector<int_t> integers_of(std::vector<Term> const& terms, std::string const& field) {
  std::vector<int_t> out;
  for (auto const& t : terms) {
    if (t.kind != Term::Kind::integer) {
      throw ScenarioError(field + ": expected integers, got " + t.to_string());
    }
    out.push_back(t.value);
  }
  return out;
}

// An integer or a tuple of integers.
inline std::vector<int_t> tuple_of(Term const& t, std::string const& field) {
  if (t.kind == Term::Kind::integer) {
    return {t.value};
  }
  if (t.kind == Term::Kind::tuple) {
    return integers_of(t.args, field);
  }
  throw ScenarioError(field + ": expected an integer or a tuple, got " + t.to_string());
}

inline std::string tuple_text(std::vector<int_t> const& v) {
  if (v.size() == 1) {
    return std::to_string(v[0]);
  }
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += (i ? ", " : "") + std::to_string(v[i]);
  }
  return out + ")";
}

inline std::string list_text(std::vector<int_t> const& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += (i ? ", " : "") + std::to_string(v[i]);
  }
  return out;
}

inline std::string tuples_text(std::vector<std::vector<int_t>> const& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += (i ? ", " : "") + tuple_text(v[i]);
  }
  return out;
}

}  // namespace detail

inline std::map<std::string, std::set<std::string>> const& scenario_keys() {
  static std::map<std::string, std::set<std::string>> const keys{
      {"ring", {"kind", "moduli"}},
      {"module", {"orders", "components", "split"}},
      {"submodule", {"gens"}},
      {"mcs", {"gens"}},
      {"delta", {"fn"}},
      {"phi", {"fn"}},
  };
  return keys;
}

// Syntax and size bounds; build() checks that the parts fit together.
inline Scenario parse_scenario(std::string const& text,
                               std::size_t max_module_size = kDefaultMaxModuleSize) {
  Scenario sc;
  std::istringstream in(text);
  std::string raw, section;
  std::set<std::string> seen_sections, seen_keys;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    std::string body = raw.substr(0, hash);
    auto first = body.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
      continue;
    }
    auto last = body.find_last_not_of(" \t\r");
    std::string content = body.substr(first, last - first + 1);
    if (content.front() == '[') {
      if (content.back() != ']') {
        throw ScenarioError(line, first + 1, "unterminated section header");
      }
      section = content.substr(1, content.size() - 2);
      if (!scenario_keys().count(section)) {
        throw ScenarioError(line, first + 2, "unknown section [" + section + "]");
      }
      if (!seen_sections.insert(section).second) {
        throw ScenarioError(line, first + 1, "duplicate section [" + section + "]");
      }
      continue;
    }
    auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ScenarioError(line, first + 1, "expected 'key = value'");
    }
    if (section.empty()) {
      throw ScenarioError(line, first + 1, "key outside of a section");
    }
    auto key_end = body.find_last_not_of(" \t", eq - 1);
    std::string key = key_end == std::string::npos || key_end < first
                          ? std::string()
                          : body.substr(first, key_end - first + 1);
    if (!scenario_keys().at(section).count(key)) {
      throw ScenarioError(line, first + 1,
                          "unknown key '" + key + "' in section [" + section + "]");
    }
    if (!seen_keys.insert(section + "." + key).second) {
      throw ScenarioError(line, first + 1, "duplicate key '" + key + "'");
    }
    auto terms = TermParser(body.substr(eq + 1), line, eq + 2).list();
    std::string field = section + "." + key;
    if (field == "ring.kind") {
      if (terms.size() != 1 || terms[0].kind != Term::Kind::name ||
          (terms[0].name != "integers" && terms[0].name != "finite")) {
        throw ScenarioError(line, eq + 2, "ring.kind must be 'integers' or 'finite'");
      }
      sc.ring = terms[0].name;
    } else if (field == "ring.moduli") {
      sc.moduli = detail::integers_of(terms, field);
    } else if (field == "module.orders") {
      sc.orders = detail::integers_of(terms, field);
    } else if (field == "module.components") {
      sc.components = detail::integers_of(terms, field);
    } else if (field == "module.split") {
      auto v = detail::integers_of(terms, field);
      if (v.size() != 1) {
        throw ScenarioError(line, eq + 2, "module.split takes one integer");
      }
      sc.split = v[0];
    } else if (field == "submodule.gens") {
      for (auto const& t : terms) {
        sc.generators.push_back(detail::tuple_of(t, field));
      }
    } else if (field == "mcs.gens") {
      if (terms.size() == 1 && terms[0].kind == Term::Kind::name && terms[0].name == "one") {
        continue;
      }
      for (auto const& t : terms) {
        sc.mcs.push_back(detail::tuple_of(t, field));
      }
    } else {
      if (terms.size() != 1) {
        throw ScenarioError(line, eq + 2, field + " takes one function term");
      }
      (section == "delta" ? sc.delta : sc.phi) = terms[0];
    }
  }
  for (char const* required : {"ring", "module", "submodule"}) {
    if (!seen_sections.count(required)) {
      throw ScenarioError(std::string("missing section [") + required + "]");
    }
  }
  std::size_t size = 1;
  for (int_t n : sc.orders) {
    size = n < 1 ? size : size * static_cast<std::size_t>(std::min<int_t>(n, 1 << 30));
    if (size > max_module_size) {
      throw BoundExceeded("module.orders: module order exceeds " +
                          std::to_string(max_module_size));
    }
  }
  return sc;
}

inline std::string serialize_scenario(Scenario const& sc) {
  std::string out = "[ring]\nkind = " + sc.ring + "\n";
  if (!sc.moduli.empty()) {
    out += "moduli = " + detail::list_text(sc.moduli) + "\n";
  }
  out += "\n[module]\norders = " + detail::list_text(sc.orders) + "\n";
  if (!sc.components.empty()) {
    out += "components = " + detail::list_text(sc.components) + "\n";
  }
  if (sc.split) {
    out += "split = " + std::to_string(*sc.split) + "\n";
  }
  out += "\n[submodule]\ngens = " + detail::tuples_text(sc.generators) + "\n";
  out += "\n[mcs]\ngens = " + (sc.mcs.empty() ? std::string("one") : detail::tuples_text(sc.mcs)) +
         "\n";
  out += "\n[delta]\nfn = " + sc.delta.to_string() + "\n";
  out += "\n[phi]\nfn = " + sc.phi.to_string() + "\n";
  return out;
}

// The objects a scenario describes.
struct Instance {
  Ring ring;
  ModulePtr module;
  Submodule n;
  MCS s;
  Expansion delta;
  Reduction phi;
};

namespace detail {

inline Ideal ideal_of(Term const& t, Ring const& r, std::string const& field) {
  auto v = tuple_of(t, field);
  if (v.size() == 1 && r.components() > 1) {
    v.assign(r.components(), v[0]);
  }
  if (v.size() != r.components()) {
    throw ScenarioError(field + ": ideal " + t.to_string() + " has " +
                        std::to_string(v.size()) + " components, ring " + r.to_string() +
                        " has " + std::to_string(r.components()));
  }
  return Ideal(r, v);
}

inline void arity(Term const& t, std::size_t n, std::string const& field) {
  std::size_t have = t.kind == Term::Kind::call ? t.args.size() : 0;
  if (have != n) {
    throw ScenarioError(field + ": " + t.name + " takes " + std::to_string(n) +
                        " argument(s), got " + std::to_string(have));
  }
}

inline Expansion expansion_of(Term const& t, Ring const& r, std::optional<std::size_t> split,
                              std::string const& field) {
  if (t.kind != Term::Kind::name && t.kind != Term::Kind::call) {
    throw ScenarioError(field + ": expected a function, got " + t.to_string());
  }
  auto const& f = t.name;
  if (f == "id" || f == "rad" || f == "ann") {
    arity(t, 0, field);
    return f == "id" ? Expansion::id() : f == "rad" ? Expansion::rad() : Expansion::ann();
  }
  if (f == "res" || f == "plus") {
    arity(t, 1, field);
    auto j = ideal_of(t.args[0], r, field);
    return f == "res" ? Expansion::res(j) : Expansion::plus(j);
  }
  if (f == "product") {
    arity(t, 2, field);
    if (!split) {
      throw ScenarioError(field + ": product needs a product module (module.split)");
    }
    return Expansion::product(expansion_of(t.args[0], r.left(*split), std::nullopt, field),
                              expansion_of(t.args[1], r.right(*split), std::nullopt, field),
                              *split);
  }
  throw ScenarioError(field + ": unknown expansion '" + f + "'");
}

inline Reduction reduction_of(Term const& t, Ring const& r, std::optional<std::size_t> split,
                              std::string const& field) {
  if (t.kind != Term::Kind::name && t.kind != Term::Kind::call) {
    throw ScenarioError(field + ": expected a function, got " + t.to_string());
  }
  auto const& f = t.name;
  if (f == "empty" || f == "zero" || f == "id" || f == "colon") {
    arity(t, 0, field);
    return f == "empty"  ? Reduction::empty()
           : f == "zero" ? Reduction::zero()
           : f == "id"   ? Reduction::id()
                         : Reduction::colon();
  }
  if (f == "power") {
    arity(t, 1, field);
    auto k = tuple_of(t.args[0], field);
    if (k.size() != 1 || k[0] < 2) {
      throw ScenarioError(field + ": power takes an integer k >= 2");
    }
    return Reduction::power(k[0]);
  }
  if (f == "mul") {
    arity(t, 1, field);
    return Reduction::mul(ideal_of(t.args[0], r, field));
  }
  if (f == "product") {
    arity(t, 2, field);
    if (!split) {
      throw ScenarioError(field + ": product needs a product module (module.split)");
    }
    return Reduction::product(reduction_of(t.args[0], r.left(*split), std::nullopt, field),
                              reduction_of(t.args[1], r.right(*split), std::nullopt, field));
  }
  throw ScenarioError(field + ": unknown reduction '" + f + "'");
}

}  // namespace detail

inline Instance build(Scenario const& sc, std::size_t max_module_size = kDefaultMaxModuleSize) {
  Ring ring = Ring::integers();
  if (sc.ring == "finite") {
    if (sc.moduli.empty()) {
      throw ScenarioError("ring.moduli: a finite ring needs at least one modulus");
    }
    for (int_t n : sc.moduli) {
      if (n < 2) {
        throw ScenarioError("ring.moduli: modulus " + std::to_string(n) + " must be >= 2");
      }
      if (static_cast<std::size_t>(n) > max_module_size) {
        throw BoundExceeded("ring.moduli: modulus " + std::to_string(n) + " exceeds " +
                            std::to_string(max_module_size));
      }
    }
    ring = Ring::finite(sc.moduli);
  } else if (!sc.moduli.empty()) {
    throw ScenarioError("ring.moduli: not allowed for the integers");
  }
  if (sc.orders.empty()) {
    throw ScenarioError("module.orders: the module needs at least one cyclic factor");
  }
  for (int_t n : sc.orders) {
    if (n < 1) {
      throw ScenarioError("module.orders: order " + std::to_string(n) + " must be >= 1");
    }
    if (static_cast<std::size_t>(n) > max_module_size) {
      throw BoundExceeded("module.orders: order " + std::to_string(n) + " exceeds " +
                          std::to_string(max_module_size));
    }
  }
  std::vector<std::size_t> comps;
  for (int_t c : sc.components) {
    if (c < 0 || static_cast<std::size_t>(c) >= ring.components()) {
      throw ScenarioError("module.components: no ring component " + std::to_string(c));
    }
    comps.push_back(static_cast<std::size_t>(c));
  }
  if (!comps.empty() && comps.size() != sc.orders.size()) {
    throw ScenarioError("module.components: one component per cyclic factor is required");
  }
  if (comps.empty()) {
    comps.assign(sc.orders.size(), 0);
  }
  std::optional<std::size_t> split;
  ModulePtr m;
  try {
    if (sc.split) {
      if (!ring.is_finite() || *sc.split < 1 ||
          static_cast<std::size_t>(*sc.split) >= ring.components()) {
        throw ScenarioError("module.split: needs a finite ring with more than " +
                            std::to_string(*sc.split) + " components");
      }
      split = static_cast<std::size_t>(*sc.split);
      std::vector<int_t> lo, ro;
      std::vector<std::size_t> lc, rc;
      for (std::size_t j = 0; j < sc.orders.size(); ++j) {
        if (comps[j] < *split) {
          lo.push_back(sc.orders[j]);
          lc.push_back(comps[j]);
        } else {
          ro.push_back(sc.orders[j]);
          rc.push_back(comps[j] - *split);
        }
      }
      if (lo.empty() || ro.empty()) {
        throw ScenarioError("module.split: both factors need a cyclic factor");
      }
      m = direct_product(Module::cyclic(ring.left(*split), lo, lc, max_module_size),
                         Module::cyclic(ring.right(*split), ro, rc, max_module_size),
                         max_module_size);
    } else {
      m = Module::cyclic(ring, sc.orders, comps, max_module_size);
    }
  } catch (BoundExceeded const&) {
    throw;
  } catch (ScenarioError const&) {
    throw;
  } catch (Error const& e) {
    throw ScenarioError(std::string("module: ") + e.what());
  }
  std::vector<Elem> gens;
  for (auto const& g : sc.generators) {
    if (g.size() != sc.orders.size()) {
      throw ScenarioError("submodule.gens: " + detail::tuple_text(g) + " needs " +
                          std::to_string(sc.orders.size()) + " coordinates");
    }
    if (m->factors()) {
      auto const& f = *m->factors();
      std::vector<int_t> lo, ro;
      for (std::size_t j = 0; j < g.size(); ++j) {
        (comps[j] < *split ? lo : ro).push_back(g[j]);
      }
      gens.push_back(m->pair(f.left->from_coords(lo), f.right->from_coords(ro)));
    } else {
      gens.push_back(m->from_coords(g));
    }
  }
  std::vector<RingElem> s_gens;
  for (auto const& g : sc.mcs) {
    if (g.size() != ring.components()) {
      throw ScenarioError("mcs.gens: " + detail::tuple_text(g) + " needs " +
                          std::to_string(ring.components()) + " components");
    }
    s_gens.push_back(g);
  }
  MCS s = MCS::one(ring);
  if (!s_gens.empty()) {
    try {
      s = MCS::generated(ring, s_gens);
    } catch (Error const& e) {
      throw ScenarioError(std::string("mcs.gens: ") + e.what());
    }
  }
  return Instance{ring,
                  m,
                  span(m, gens),
                  s,
                  detail::expansion_of(sc.delta, ring, split, "delta.fn"),
                  detail::reduction_of(sc.phi, ring, split, "phi.fn")};
}

}  // namespace phidelta
