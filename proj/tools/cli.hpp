#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "phidelta/harness.hpp"
#include "phidelta/scenario.hpp"

namespace phidelta::cli {

using json = nlohmann::json;

inline constexpr char const* kVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

enum Exit { ok = 0, violations = 1, usage = 2 };

inline json element_names(Submodule const& n) {
  json out = json::array();
  for (Elem x : n.elements()) {
    out.push_back(n.parent()->name(x));
  }
  return out;
}

inline json phi_json(PhiValue const& p) {
  return p ? element_names(*p) : json(nullptr);
}

inline json verdict_json(Verdict const& v, Module const& m) {
  json w = json::array();
  for (auto const& s : v.witnesses) {
    w.push_back(to_string(s));
  }
  json out{{"status", to_string(v.status())},
           {"holds", v.holds},
           {"precondition_ok", v.precondition_ok},
           {"vacuous", v.vacuous},
           {"witnesses", w},
           {"counterexample", nullptr}};
  if (v.counterexample) {
    auto const& c = *v.counterexample;
    out["counterexample"] = {{"a", to_string(c.a)}, {"m", m.name(c.m)}, {"s", to_string(c.s)}};
  }
  return out;
}

inline json hierarchy_json(Hierarchy const& h) {
  return {{"prime", h.prime},
          {"primary", h.primary},
          {"phi_prime", h.phi_prime},
          {"phi_delta_primary", h.phi_delta_primary},
          {"s_prime", h.s_prime},
          {"s_primary", h.s_primary},
          {"delta_s_primary", h.delta_s_primary},
          {"phi_delta_s_primary", h.phi_delta_s_primary}};
}

inline json classify_json(Instance const& in) {
  Context ctx(in.n, in.phi, in.delta, in.s);
  auto const& m = *in.module;
  return {{"module", m.description()},
          {"submodule", element_names(in.n)},
          {"phi", in.phi.to_string()},
          {"phi_n", phi_json(ctx.phi_n())},
          {"colon", ctx.colon().to_string()},
          {"delta", in.delta.to_string()},
          {"delta_colon", ctx.delta_colon().to_string()},
          {"mcs", in.s.to_string()},
          {"verdict", verdict_json(classify(ctx), m)},
          {"delta_s_verdict", verdict_json(classify(without_phi(ctx)), m)},
          {"hierarchy", hierarchy_json(hierarchy(ctx))}};
}

inline json lattice_json(Instance const& in) {
  json subs = json::array();
  for (auto const& n : enumerate_submodules(in.module)) {
    json row{{"elements", element_names(n)}, {"proper", !n.is_whole()}};
    if (!n.is_whole()) {
      Context ctx(n, in.phi, in.delta, in.s);
      row["phi_n"] = phi_json(ctx.phi_n());
      row["colon"] = ctx.colon().to_string();
      row["delta_colon"] = ctx.delta_colon().to_string();
      row["verdict"] = verdict_json(classify(ctx), *in.module);
    }
    subs.push_back(row);
  }
  return {{"module", in.module->description()},
          {"phi", in.phi.to_string()},
          {"delta", in.delta.to_string()},
          {"mcs", in.s.to_string()},
          {"multiplication_module", is_multiplication_module(in.module)},
          {"submodules", subs}};
}

inline json report_json(PropReport const& r, bool timings) {
  json out{{"id", r.id},
           {"title", r.title},
           {"instances_checked", r.instances_checked},
           {"hypothesis_met", r.hypothesis_met},
           {"hypothesis_not_met", r.hypothesis_not_met},
           {"excluded", r.excluded},
           {"violation_count", r.violation_count},
           {"violations", r.violations},
           {"tallies", r.tallies},
           {"error", r.error ? json(*r.error) : json(nullptr)}};
  if (timings) {
    out["elapsed_ms"] = r.elapsed_ms;
  }
  return out;
}

inline std::optional<PropertyKind> property_kind(std::string const& name) {
  for (auto k : {PropertyKind::prime, PropertyKind::primary, PropertyKind::phi_prime,
                 PropertyKind::delta_s_primary, PropertyKind::phi_delta_s_primary,
                 PropertyKind::phi_delta_primary, PropertyKind::product_factor_primary}) {
    if (name == to_string(k)) {
      return k;
    }
  }
  return std::nullopt;
}

inline std::string read_file(std::string const& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    throw Error("cannot read " + path);
  }
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// The universe of one scenario: its module with its φ, δ and S.
inline Universe scenario_universe(Instance const& in) {
  Universe u;
  (in.module->factors() ? u.products : u.modules).push_back(in.module);
  u.reductions = std::vector<Reduction>{in.phi};
  u.expansions = std::vector<Expansion>{in.delta};
  u.mcs_list = std::vector<MCS>{in.s};
  return u;
}

inline void human_verdict(std::ostream& out, std::string const& label, json const& v) {
  out << label << ": " << v["status"].get<std::string>();
  if (v["holds"].get<bool>()) {
    out << " (witnesses";
    for (auto const& s : v["witnesses"]) {
      out << " " << s.get<std::string>();
    }
    out << (v["vacuous"].get<bool>() ? "; vacuous" : "") << ")";
  } else if (!v["counterexample"].is_null()) {
    auto const& c = v["counterexample"];
    out << " (counterexample a=" << c["a"].get<std::string>()
        << " m=" << c["m"].get<std::string>() << " s=" << c["s"].get<std::string>() << ")";
  }
  out << "\n";
}

inline std::string names_text(json const& list) {
  if (list.is_null()) {
    return "empty";
  }
  std::string out = "{";
  for (std::size_t i = 0; i < list.size(); ++i) {
    out += (i ? "," : "") + list[i].get<std::string>();
  }
  return out + "}";
}

inline void human(std::ostream& out, std::string const& command, json const& r) {
  if (command == "classify") {
    out << "module       " << r["module"].get<std::string>() << "\n"
        << "N            " << names_text(r["submodule"]) << "\n"
        << "phi(N)       " << names_text(r["phi_n"]) << "  [" << r["phi"].get<std::string>()
        << "]\n"
        << "(N:M)        " << r["colon"].get<std::string>() << "\n"
        << "delta(N:M)   " << r["delta_colon"].get<std::string>() << "  ["
        << r["delta"].get<std::string>() << "]\n"
        << "S            " << r["mcs"].get<std::string>() << "\n";
    human_verdict(out, "phi-delta-S-primary", r["verdict"]);
    human_verdict(out, "delta-S-primary", r["delta_s_verdict"]);
    out << "hierarchy   ";
    for (auto const& [k, v] : r["hierarchy"].items()) {
      out << " " << k << "=" << (v.get<bool>() ? "yes" : "no");
    }
    out << "\n";
  } else if (command == "lattice") {
    out << r["module"].get<std::string>() << "  phi=" << r["phi"].get<std::string>()
        << " delta=" << r["delta"].get<std::string>() << " S=" << r["mcs"].get<std::string>()
        << "\n";
    for (auto const& row : r["submodules"]) {
      out << "  " << names_text(row["elements"]) << "  ";
      out << (row["proper"].get<bool>() ? row["verdict"]["status"].get<std::string>()
                                        : std::string("whole"))
          << "\n";
    }
  } else if (command == "verify") {
    for (auto const& p : r["reports"]) {
      out << p["id"].get<std::string>() << " " << p["title"].get<std::string>()
          << ": checked=" << p["instances_checked"] << " met=" << p["hypothesis_met"]
          << " excluded=" << p["excluded"] << " violations=" << p["violation_count"];
      for (auto const& [k, v] : p["tallies"].items()) {
        out << " " << k << "=" << v;
      }
      if (p.contains("elapsed_ms")) {
        out << " " << p["elapsed_ms"].get<double>() << "ms";
      }
      if (!p["error"].is_null()) {
        out << " error: " << p["error"].get<std::string>();
      }
      out << "\n";
      for (auto const& v : p["violations"]) {
        out << "  violation: " << v.get<std::string>() << "\n";
      }
    }
  } else if (command == "search") {
    if (r["found"].get<bool>()) {
      out << "found M=" << r["module"].get<std::string>()
          << " N=" << names_text(r["submodule"]) << "\n";
    } else {
      out << "none\n";
    }
  }
}

// Runs the tool; returns the exit status.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classify and verify phi-delta-S-primary submodules", "phidelta"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  std::size_t max_size = kDefaultMaxModuleSize;
  int_t ideal_bound = 60;
  std::string format = "human";
  unsigned seed = 0;
  bool timings = false;
  app.add_option("--max-module-size", max_size, "Largest module order accepted")
      ->check(CLI::PositiveNumber);
  app.add_option("--ideal-bound", ideal_bound, "Bound on ideal generators over Z")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"human", "machine"}));
  app.add_option("--seed", seed, "Order in which propositions run; results do not change");
  app.add_flag("--timings", timings, "Include elapsed times in verify reports");

  std::string scenario_path;
  auto* classify_cmd = app.add_subcommand("classify", "Classify the scenario's submodule");
  classify_cmd->add_option("scenario", scenario_path, "Scenario file")->required();
  auto* lattice_cmd = app.add_subcommand("lattice", "Classify every submodule");
  lattice_cmd->add_option("scenario", scenario_path, "Scenario file")->required();
  auto* verify_cmd = app.add_subcommand("verify", "Check the propositions");
  std::string suite = "all";
  verify_cmd->add_option("scenario", scenario_path,
                         "Scenario file; the default universe when omitted");
  verify_cmd->add_option("--suite", suite, "all or one of P01..P27");
  auto* search_cmd = app.add_subcommand("search", "Find N with property A and not B");
  std::string prop_a, prop_b;
  search_cmd->add_option("scenario", scenario_path, "Scenario file")->required();
  search_cmd->add_option("--a", prop_a, "Property A")->required();
  search_cmd->add_option("--b", prop_b, "Property B")->required();
  for (auto* c : {classify_cmd, lattice_cmd, verify_cmd, search_cmd}) {
    c->fallthrough();
  }

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (CLI::CallForHelp const&) {
    out << app.help();
    return Exit::ok;
  } catch (CLI::CallForVersion const&) {
    out << kVersion << "\n";
    return Exit::ok;
  } catch (CLI::ParseError const& e) {
    err << "phidelta: " << e.what() << "\n";
    return Exit::usage;
  }

  std::string command = app.get_subcommands().front()->get_name();
  json doc{{"tool", "phidelta"},
           {"version", kVersion},
           {"schema_version", kSchemaVersion},
           {"command", command},
           {"scenario", nullptr}};
  int status = Exit::ok;
  try {
    std::optional<Instance> in;
    if (!scenario_path.empty()) {
      auto sc = parse_scenario(read_file(scenario_path), max_size);
      in = build(sc, max_size);
      doc["scenario"] = serialize_scenario(sc);
    }
    if (command == "classify") {
      if (in->n.is_whole()) {
        throw ScenarioError("submodule.gens: N is the whole module");
      }
      doc["result"] = classify_json(*in);
    } else if (command == "lattice") {
      doc["result"] = lattice_json(*in);
    } else if (command == "verify") {
      Universe u = in ? scenario_universe(*in) : default_universe();
      u.ideal_bound = ideal_bound;
      u.max_module_size = max_size;
      std::vector<Proposition> order;
      if (suite == "all") {
        order = registry();
      } else {
        order.push_back(find_proposition(suite));
      }
      std::shuffle(order.begin(), order.end(), std::mt19937(seed));
      u.check_bounds();
      std::vector<PropReport> reports;
      for (auto const& p : order) {
        reports.push_back(run_proposition(p, u));
      }
      std::sort(reports.begin(), reports.end(),
                [](PropReport const& a, PropReport const& b) { return a.id < b.id; });
      json list = json::array();
      for (auto const& r : reports) {
        list.push_back(report_json(r, timings));
        if (!passed(r)) {
          status = Exit::violations;
        }
      }
      doc["result"] = {{"reports", list}, {"passed", status == Exit::ok}};
    } else {
      auto ka = property_kind(prop_a), kb = property_kind(prop_b);
      if (!ka || !kb) {
        throw ScenarioError("unknown property '" + (ka ? prop_b : prop_a) + "'");
      }
      Property a{*ka, in->phi, in->delta, in->s};
      Property b{*kb, in->phi, in->delta, in->s};
      auto u = scenario_universe(*in);
      u.max_module_size = max_size;
      auto hit = search_separating_instance(a, b, u);
      json r{{"a", a.to_string()}, {"b", b.to_string()}, {"found", bool(hit)}};
      if (hit) {
        r["module"] = hit->m->description();
        r["submodule"] = element_names(hit->n);
      }
      doc["result"] = r;
    }
  } catch (Error const& e) {
    err << "phidelta: " << e.what() << "\n";
    return Exit::usage;
  }
  doc["exit"] = status;
  if (format == "machine") {
    out << doc.dump(2) << "\n";
  } else {
    human(out, command, doc["result"]);
  }
  return status;
}

}  // namespace phidelta::cli
