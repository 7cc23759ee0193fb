#pragma once
// Run configuration: one JSON document plus flag overrides, the potential literal syntax
// family:key=value,... and the table of defaults.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "errors.hpp"
#include "harness.hpp"
#include "potentials.hpp"
#include "spectra.hpp"

namespace loghardy {

  using json = nlohmann::json;

  inline constexpr char const * kConfigEnv = "LOGHARDY_CONFIG";

  struct DefaultEntry {
      char const * key;
      double value;
      char const * meaning;
  };

  inline constexpr DefaultEntry kDefaults[] = {
      {"L", 20, "truncation window length in the transformed coordinate"},
      {"m", 4000, "interior grid points"},
      {"tol", 1e-8, "quadrature tolerance"},
      {"C3", 0.1156, "CLR constant for d = 3"},
      {"refine", 0, "refinement levels (L and m doubled per level)"},
      {"transform_tol", 1e-6, "relative tolerance of the transformation identity"},
      {"hardy_threshold", 1e-8, "lowest admissible Rayleigh quotient"},
      {"max_L", 320, "largest window of the existence escalation"},
  };

  inline double default_value(std::string const & key) {
      for (auto const & e : kDefaults) if (key == e.key) return e.value;
      throw ConfigError("no default named " + key);
  }

  inline std::string defaults_table() {
      std::ostringstream os;
      os << "key              value      meaning\n";
      for (auto const & e : kDefaults) {
          char line[160];
          std::snprintf(line, sizeof(line), "%-16s %-10g %s\n", e.key, e.value, e.meaning);
          os << line;
      }
      os << "config file      $" << kConfigEnv << " when --config is absent\n";
      return os.str();
  } // defaults_table

  /// family plus scalar parameters, or tabulated samples
  struct PotentialConfig {
      std::string family = "zero";
      std::map<std::string, double> params;
      std::vector<double> r, v;

      bool operator==(PotentialConfig const &) const = default;

      PotentialSpec build() const {
          try {
              if ("tabulated" == family) {
                  if (!params.empty()) throw ConfigError("tabulated potential takes no scalar parameters");
                  return PotentialSpec(Tabulated{r, v});
              }
              if (!r.empty() || !v.empty()) throw ConfigError("samples r, v belong to the tabulated family only");
              return make_potential(family, params);
          } catch (ConfigError const &) {
              throw;
          } catch (std::exception const & e) {
              throw ConfigError(std::string("potential: ") + e.what());
          }
      }
  }; // PotentialConfig

  inline double parse_number(std::string const & text, std::string const & what) {
      std::size_t used = 0;
      double x;
      try {
          x = std::stod(text, &used);
      } catch (std::exception const &) {
          throw ConfigError(what + ": '" + text + "' is not a number");
      }
      if (used != text.size()) throw ConfigError(what + ": '" + text + "' is not a number");
      return x;
  } // parse_number

  /// "square_well:c=1,a=1,b=2", "zero"
  inline PotentialConfig parse_potential_literal(std::string const & literal) {
      PotentialConfig pc;
      auto const colon = literal.find(':');
      pc.family = literal.substr(0, colon);
      if (pc.family.empty()) throw ConfigError("potential literal: missing family name");
      if (std::string::npos != colon) {
          std::stringstream rest(literal.substr(colon + 1));
          std::string item;
          while (std::getline(rest, item, ',')) {
              auto const eq = item.find('=');
              if (std::string::npos == eq || 0 == eq) throw ConfigError("potential literal: expected key=value, got '" + item + "'");
              auto const key = item.substr(0, eq);
              if (pc.params.count(key)) throw ConfigError("potential literal: duplicate key " + key);
              pc.params[key] = parse_number(item.substr(eq + 1), "potential literal " + key);
          }
      }
      pc.build(); // validate now
      return pc;
  } // parse_potential_literal

  inline std::string to_literal(PotentialConfig const & pc) {
      std::string s = pc.family;
      char sep = ':';
      for (auto const & [key, value] : pc.params) {
          char buf[64];
          std::snprintf(buf, sizeof(buf), "%c%s=%.17g", sep, key.c_str(), value);
          s += buf;
          sep = ',';
      }
      return s;
  } // to_literal

  struct SweepConfig {
      std::string parameter = "c";
      std::vector<double> values;
      std::vector<int> dims;

      bool operator==(SweepConfig const &) const = default;
  }; // SweepConfig

  struct RunConfig {
      std::string command = "bound";   // bound | count | verify | sweep
      std::string suite = "all";       // verify selector
      std::string theorem = "t41";
      int d = 1;
      int n = 0;
      std::string variant = "one";
      PotentialConfig potential;
      std::optional<int> l;
      double L = default_value("L");
      int m = int(default_value("m"));
      int refine = 0;
      int eigenvalues = 0;
      double tol = default_value("tol");
      double transform_tol = default_value("transform_tol");
      double max_L = default_value("max_L");
      std::map<int, double> constants{{3, default_value("C3")}};
      std::optional<SweepConfig> sweep;
      std::string json_out, csv_out;

      bool operator==(RunConfig const &) const = default;

      Numerics numerics() const {
          Numerics num;
          num.L = L;
          num.m = m;
          num.refinements = refine;
          num.eigenvalues = eigenvalues;
          return num;
      }

      BoundConstants bound_constants() const {
          auto c = BoundConstants::defaults();
          for (auto const & [dim, value] : constants) c.table[dim] = {value, "configured"};
          return c;
      }

      Theorem theorem_value() const {
          if ("t41" == theorem) return Theorem::t41;
          if ("t42" == theorem) return Theorem::t42;
          if ("t43" == theorem) return Theorem::t43;
          throw ConfigError("unknown theorem '" + theorem + "' (t41, t42, t43)");
      }

      Variant variant_value() const {
          if ("zero" == variant) return Variant::zero;
          if ("one" == variant) return Variant::one;
          throw ConfigError("unknown variant '" + variant + "' (zero, one)");
      }

      OperatorSpec operator_spec() const {
          try {
              return OperatorSpec::for_theorem(theorem_value(), d, n, variant_value());
          } catch (ConfigError const &) {
              throw;
          } catch (std::exception const & e) {
              throw ConfigError(e.what());
          }
      }

      SweepSpec sweep_spec() const {
          if (!sweep) throw ConfigError("sweep: no sweep section");
          SweepSpec s;
          s.theorem = theorem_value();
          s.dims = sweep->dims.empty() ? std::vector<int>{d} : sweep->dims;
          s.n = n;
          s.variant = variant_value();
          s.family = potential.family;
          s.params = potential.params;
          s.params.erase(sweep->parameter);
          s.parameter = sweep->parameter;
          s.values = sweep->values;
          s.numerics = numerics();
          s.tol = tol;
          s.constants = bound_constants();
          return s;
      }

      /// everything checked before any computation
      void validate() const {
          static std::vector<std::string> const commands{"bound", "count", "verify", "sweep"};
          static std::vector<std::string> const suites{"hardy", "transform", "bounds", "existence", "convergence", "all"};
          if (std::find(commands.begin(), commands.end(), command) == commands.end()) throw ConfigError("unknown command '" + command + "'");
          if (std::find(suites.begin(), suites.end(), suite) == suites.end()) throw ConfigError("unknown verify suite '" + suite + "'");
          if (!(L > 0) || !std::isfinite(L)) throw ConfigError("L must be positive and finite");
          if (m < 2) throw ConfigError("m must be at least 2");
          if (refine < 0 || refine > 8) throw ConfigError("refine must lie in [0, 8]");
          if (eigenvalues < 0) throw ConfigError("eigenvalues must be non-negative");
          if (!(tol > 0) || !(transform_tol > 0)) throw ConfigError("tolerances must be positive");
          if (!(max_L >= L)) throw ConfigError("max_L must be at least L");
          for (auto const & [dim, value] : constants) {
              if (dim < 3 || !(value > 0)) throw ConfigError("constants: need d >= 3 and a positive value");
          }
          if (l && *l < 0) throw ConfigError("l must be non-negative");
          if (l && 1 == d && 0 != *l) throw ConfigError("d = 1 has only l = 0");
          if ("verify" == command) return;
          operator_spec();
          auto const V = potential.build();
          if ("sweep" == command) {
              auto const s = sweep_spec();
              try {
                  s.validate();
              } catch (std::exception const & e) {
                  throw ConfigError(e.what());
              }
              for (int dim : s.dims) {
                  try {
                      OperatorSpec::for_theorem(s.theorem, dim, n, s.variant);
                  } catch (std::exception const & e) {
                      throw ConfigError(e.what());
                  }
              }
              for (double v : s.values) {
                  auto p = s.params;
                  p[s.parameter] = v;
                  try {
                      make_potential(s.family, p);
                  } catch (std::exception const & e) {
                      throw ConfigError(std::string("sweep: ") + e.what());
                  }
              }
          }
      }
  }; // RunConfig

  // JSON ----------------------------------------------------------------------------------

  namespace detail {

    inline void reject_unknown(json const & j, std::initializer_list<char const *> allowed, std::string const & where) {
        if (!j.is_object()) throw ConfigError(where + ": expected an object");
        for (auto const & [key, value] : j.items()) {
            bool known = false;
            for (auto const * a : allowed) known = known || (key == a);
            if (!known) throw ConfigError(where + ": unknown key '" + key + "'");
        }
    } // reject_unknown

    template <typename T>
    void read(json const & j, char const * key, T & out, std::string const & where) {
        if (!j.contains(key)) return;
        try {
            out = j.at(key).get<T>();
        } catch (json::exception const & e) {
            throw ConfigError(where + "." + key + ": " + e.what());
        }
    } // read

  } // namespace detail

  inline json to_json(PotentialConfig const & pc) {
      json j{{"family", pc.family}};
      if (!pc.params.empty()) j["params"] = pc.params;
      if (!pc.r.empty()) j["r"] = pc.r;
      if (!pc.v.empty()) j["v"] = pc.v;
      return j;
  } // to_json

  inline PotentialConfig potential_from_json(json const & j) {
      if (j.is_string()) return parse_potential_literal(j.get<std::string>());
      detail::reject_unknown(j, {"family", "params", "r", "v"}, "potential");
      PotentialConfig pc;
      detail::read(j, "family", pc.family, "potential");
      detail::read(j, "params", pc.params, "potential");
      detail::read(j, "r", pc.r, "potential");
      detail::read(j, "v", pc.v, "potential");
      return pc;
  } // potential_from_json

  inline json to_json(RunConfig const & c) {
      json j;
      j["command"] = c.command;
      j["suite"] = c.suite;
      j["theorem"] = c.theorem;
      j["d"] = c.d;
      j["n"] = c.n;
      j["variant"] = c.variant;
      j["potential"] = to_json(c.potential);
      if (c.l) j["l"] = *c.l;
      j["numerics"] = {{"L", c.L}, {"m", c.m}, {"refine", c.refine}, {"eigenvalues", c.eigenvalues}, {"max_L", c.max_L}};
      j["tol"] = c.tol;
      j["transform_tol"] = c.transform_tol;
      json constants = json::object();
      for (auto const & [dim, value] : c.constants) constants[std::to_string(dim)] = value;
      j["constants"] = constants;
      if (c.sweep) j["sweep"] = {{"parameter", c.sweep->parameter}, {"values", c.sweep->values}, {"dims", c.sweep->dims}};
      json output = json::object();
      if (!c.json_out.empty()) output["json"] = c.json_out;
      if (!c.csv_out.empty()) output["csv"] = c.csv_out;
      if (!output.empty()) j["output"] = output;
      return j;
  } // to_json

  inline RunConfig config_from_json(json const & j) {
      detail::reject_unknown(j, {"command", "suite", "theorem", "d", "n", "variant", "potential", "l", "numerics",
                                 "tol", "transform_tol", "constants", "sweep", "output"}, "config");
      RunConfig c;
      detail::read(j, "command", c.command, "config");
      detail::read(j, "suite", c.suite, "config");
      detail::read(j, "theorem", c.theorem, "config");
      detail::read(j, "d", c.d, "config");
      detail::read(j, "n", c.n, "config");
      detail::read(j, "variant", c.variant, "config");
      if (j.contains("potential")) c.potential = potential_from_json(j["potential"]);
      if (j.contains("l")) {
          int l = 0;
          detail::read(j, "l", l, "config");
          c.l = l;
      }
      if (j.contains("numerics")) {
          auto const & nj = j["numerics"];
          detail::reject_unknown(nj, {"L", "m", "refine", "eigenvalues", "max_L"}, "numerics");
          detail::read(nj, "L", c.L, "numerics");
          detail::read(nj, "m", c.m, "numerics");
          detail::read(nj, "refine", c.refine, "numerics");
          detail::read(nj, "eigenvalues", c.eigenvalues, "numerics");
          detail::read(nj, "max_L", c.max_L, "numerics");
      }
      detail::read(j, "tol", c.tol, "config");
      detail::read(j, "transform_tol", c.transform_tol, "config");
      if (j.contains("constants")) {
          auto const & cj = j["constants"];
          if (!cj.is_object()) throw ConfigError("constants: expected an object keyed by dimension");
          c.constants.clear();
          for (auto const & [key, value] : cj.items()) {
              int const dim = int(parse_number(key, "constants key"));
              if (!value.is_number()) throw ConfigError("constants." + key + ": expected a number");
              c.constants[dim] = value.get<double>();
          }
      }
      if (j.contains("sweep")) {
          auto const & sj = j["sweep"];
          detail::reject_unknown(sj, {"parameter", "values", "dims"}, "sweep");
          SweepConfig s;
          detail::read(sj, "parameter", s.parameter, "sweep");
          detail::read(sj, "values", s.values, "sweep");
          detail::read(sj, "dims", s.dims, "sweep");
          c.sweep = s;
      }
      if (j.contains("output")) {
          auto const & oj = j["output"];
          detail::reject_unknown(oj, {"json", "csv"}, "output");
          detail::read(oj, "json", c.json_out, "output");
          detail::read(oj, "csv", c.csv_out, "output");
      }
      return c;
  } // config_from_json

  inline RunConfig parse_config(std::string const & text) {
      json j;
      try {
          j = json::parse(text);
      } catch (json::parse_error const & e) {
          throw ConfigError(std::string("config is not valid JSON: ") + e.what());
      }
      return config_from_json(j);
  } // parse_config

  inline RunConfig load_config(std::string const & path) {
      std::ifstream in(path);
      if (!in) throw ConfigError("cannot read config file " + path);
      std::stringstream buf;
      buf << in.rdbuf();
      return parse_config(buf.str());
  } // load_config

  /// --config wins; otherwise $LOGHARDY_CONFIG; otherwise built-in defaults
  inline std::optional<std::string> config_path(std::string const & flag) {
      if (!flag.empty()) return flag;
      if (char const * env = std::getenv(kConfigEnv); env && *env) return std::string(env);
      return std::nullopt;
  } // config_path

} // namespace loghardy
