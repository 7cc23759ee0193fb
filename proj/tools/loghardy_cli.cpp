// loghardy: bounds, counts, verification suites and sweeps from the command line.
// exit codes: 0 success, 1 verification failure, 2 configuration error, 3 numerical failure

#include <algorithm>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "loghardy/loghardy.hpp"

using namespace loghardy;

namespace {

  enum Exit { ok = 0, verification_failed = 1, config_error = 2, numerical_failure = 3 };

  struct Flags {
      std::string config;
      std::string theorem, variant, potential, json_out, csv_out, parameter, suite;
      int d = 0, n = 0, m = 0, refine = 0, l = 0, eigenvalues = 0;
      double tol = 0, L = 0, C3 = 0, max_L = 0;
      std::vector<double> values;
      std::vector<int> dims;
  };

  // options given on the command line, applied over the file configuration
  struct Overrides {
      std::vector<std::pair<CLI::Option *, std::function<void(RunConfig &)>>> items;

      void add(CLI::Option * opt, std::function<void(RunConfig &)> apply) { items.emplace_back(opt, std::move(apply)); }

      void apply(RunConfig & c) const {
          for (auto const & [opt, fn] : items) if (opt->count() > 0) fn(c);
      }
  };

  void add_operator_flags(CLI::App * sub, Flags & f, Overrides & o) {
      o.add(sub->add_option("--theorem", f.theorem, "t41 | t42 | t43"), [&f](RunConfig & c) { c.theorem = f.theorem; });
      o.add(sub->add_option("--d", f.d, "dimension"), [&f](RunConfig & c) { c.d = f.d; });
      o.add(sub->add_option("--n", f.n, "logarithmic depth"), [&f](RunConfig & c) { c.n = f.n; });
      o.add(sub->add_option("--variant", f.variant, "zero | one"), [&f](RunConfig & c) { c.variant = f.variant; });
      o.add(sub->add_option("--potential", f.potential, "family:key=value,..."),
            [&f](RunConfig & c) { c.potential = parse_potential_literal(f.potential); });
      o.add(sub->add_option("--tol", f.tol, "quadrature tolerance"), [&f](RunConfig & c) { c.tol = f.tol; });
      o.add(sub->add_option("--C3", f.C3, "CLR constant for d = 3"), [&f](RunConfig & c) { c.constants[3] = f.C3; });
  }

  void add_numerics_flags(CLI::App * sub, Flags & f, Overrides & o) {
      o.add(sub->add_option("--L", f.L, "window length"), [&f](RunConfig & c) { c.L = f.L; });
      o.add(sub->add_option("--m", f.m, "interior grid points"), [&f](RunConfig & c) { c.m = f.m; });
      o.add(sub->add_option("--refine", f.refine, "refinement levels"), [&f](RunConfig & c) { c.refine = f.refine; });
  }

  void add_output_flags(CLI::App * sub, Flags & f, Overrides & o) {
      o.add(sub->add_option("--json", f.json_out, "JSON report path"), [&f](RunConfig & c) { c.json_out = f.json_out; });
      o.add(sub->add_option("--csv", f.csv_out, "CSV path"), [&f](RunConfig & c) { c.csv_out = f.csv_out; });
  }

  void print_bound(BoundValue const & b) {
      std::printf("bound raw      %.12g\n", b.raw);
      std::printf("bound cap      %lld%s\n", (long long)b.cap, b.divergent ? "  (divergent)" : "");
      std::printf("quad error     %.3g (%ld evaluations)\n", b.error_estimate, b.evaluations);
      for (auto const & c : b.channels) {
          std::printf("  l=%-4d D=%-6lld integral %.12g\n", c.l, (long long)c.degeneracy, c.integral);
      }
      for (auto const & w : b.warnings) std::printf("warning: %s\n", w.c_str());
  }

  void print_trail(CountResult const & c) {
      for (auto const & t : c.trail) {
          std::printf("  L=%-8g m=%-7d s in [%g, %g]  count %lld", t.L, t.m, t.s_min, t.s_max, (long long)t.count.low);
          if (t.count.ambiguous()) std::printf(" .. %lld", (long long)t.count.high);
          std::printf("\n");
      }
  }

  void write_json(RunConfig const & c, json const & payload) {
      if (c.json_out.empty()) return;
      json doc{{"config", to_json(c)}, {"result", payload}};
      write_atomically(c.json_out, doc.dump(2) + "\n");
  }

  BoundValue evaluate_bound(RunConfig const & c, PotentialSpec const & V, OperatorSpec const & op) {
      switch (c.theorem_value()) {
          case Theorem::t41: return bound_1d(V, op, c.tol);
          case Theorem::t42: return clr_bound(V, op, c.bound_constants(), c.tol);
          default:           return central_bound(V, op, c.tol);
      }
  }

  int cmd_bound(RunConfig const & c) {
      auto const op = c.operator_spec();
      auto const V = c.potential.build();
      std::printf("theorem %s  d=%d n=%d variant %s  potential %s\n", c.theorem.c_str(), c.d, c.n, c.variant.c_str(),
                  to_literal(c.potential).c_str());
      auto const b = evaluate_bound(c, V, op);
      print_bound(b);
      write_json(c, {{"bound", to_json(b)}});
      return ok;
  }

  int cmd_count(RunConfig const & c) {
      auto const op = c.operator_spec();
      auto const V = c.potential.build();
      auto const num = c.numerics();
      std::printf("count  d=%d n=%d variant %s  potential %s\n", c.d, c.n, c.variant.c_str(), to_literal(c.potential).c_str());
      if (1 == c.d || c.l) {
          auto const r = count_negative(op, V, c.l, num);
          print_trail(r);
          std::printf("negative eigenvalues %lld\n", (long long)r.negative_count.low);
          for (double e : r.lowest_eigenvalues) std::printf("  eigenvalue %.10g\n", e);
          write_json(c, {{"count", to_json(r)}});
          return ok;
      }
      auto const r = total_central_count(op, V, num);
      std::printf("  l      D_l      count\n");
      json channels = json::array();
      for (auto const & ch : r.channels) {
          std::printf("  %-6d %-8lld %lld\n", ch.l, (long long)ch.degeneracy, (long long)ch.count.low);
          channels.push_back({{"l", ch.l}, {"degeneracy", ch.degeneracy}, {"count", ch.count.low},
                              {"count_high", ch.count.high}, {"trail_monotone", ch.trail_monotone}});
      }
      std::printf("l_max %s\n", r.l_max ? std::to_string(*r.l_max).c_str() : "none");
      std::printf("negative eigenvalues %lld\n", (long long)r.total.low);
      write_json(c, {{"count", r.total.low}, {"count_high", r.total.high}, {"channels", channels},
                     {"l_max", r.l_max ? json(*r.l_max) : json(nullptr)}});
      return ok;
  }

  void print_rows(std::vector<ExperimentRow> const & rows) {
      std::printf("  %-8s %-4s %-3s %-3s %-5s %-28s %8s %12s %10s  %s\n", "id", "thm", "d", "n", "var", "params", "count",
                  "bound", "cap", "ok");
      for (auto const & r : rows) {
          std::printf("  %-8s %-4s %-3d %-3d %-5s %-28s %8lld %12.6g %10lld  %s\n", r.experiment_id.c_str(),
                      to_string(r.theorem), r.d, r.n, to_string(r.variant), params_field(r.params).c_str(),
                      (long long)r.count, r.bound.raw, (long long)r.bound.cap, r.satisfied ? "yes" : "NO");
          for (auto const & dgn : r.diagnostics) std::printf("           %s\n", dgn.c_str());
      }
  }

  int cmd_sweep(RunConfig const & c) {
      auto const rows = run_bound_sweep(c.sweep_spec());
      print_rows(rows);
      if (!c.csv_out.empty()) write_atomically(c.csv_out, csv_document(rows));
      json arr = json::array();
      for (auto const & r : rows) arr.push_back(to_json(r));
      write_json(c, {{"rows", arr}});
      bool const all = std::all_of(rows.begin(), rows.end(), [](auto const & r) { return r.satisfied; });
      std::printf("%zu rows, %s\n", rows.size(), all ? "all satisfied" : "UNSATISFIED rows present");
      return all ? ok : verification_failed;
  }

  void print_report(Report const & r) {
      std::size_t failed = 0, inconclusive = 0;
      for (auto const & c : r.cases) {
          failed += (Outcome::fail == c.outcome);
          inconclusive += (Outcome::inconclusive == c.outcome);
          if (Outcome::pass != c.outcome) {
              std::printf("  %s: %s %g %s\n", to_string(c.outcome), c.label.c_str(), c.value, c.note.c_str());
          }
      }
      std::printf("%-12s %s  cases %zu  failed %zu  inconclusive %zu  extremum %.3g\n", r.name.c_str(),
                  failed ? "FAIL" : "pass", r.cases.size(), failed, inconclusive, r.extremum);
      for (auto const & w : r.warnings) std::printf("  warning: %s\n", w.c_str());
  }

  int cmd_verify(RunConfig const & c) {
      bool const all = "all" == c.suite;
      bool passed = true;
      json out = json::object();
      auto const num = c.numerics();

      if (all || "hardy" == c.suite) {
          auto const r = run_hardy_positivity({1, 2, 3, 4, 5}, {0, 1, 2}, default_value("hardy_threshold"));
          print_report(r);
          passed = passed && r.passed();
          out["hardy"] = to_json(r);
      }
      if (all || "transform" == c.suite) {
          auto const r = run_transform_identity({1, 2, 3, 5}, {0, 1}, c.transform_tol);
          print_report(r);
          passed = passed && r.passed();
          out["transform"] = to_json(r);
      }
      if (all || "existence" == c.suite) {
          auto const r = run_existence_check(standard_existence_cases(), num, c.max_L);
          print_report(r);
          passed = passed && r.passed(); // inconclusive is a warning
          out["existence"] = to_json(r);
      }
      if (all || "bounds" == c.suite) {
          json rows = json::array();
          for (auto spec : standard_sweeps()) {
              spec.numerics = num;
              spec.tol = c.tol;
              spec.constants = c.bound_constants();
              auto const r = run_bound_sweep(spec);
              print_rows(r);
              for (auto const & row : r) {
                  passed = passed && row.satisfied;
                  rows.push_back(to_json(row));
              }
          }
          // the d >= 4 remark, recorded only
          auto const d3 = clr_bound(PotentialSpec(), OperatorSpec::for_theorem(Theorem::t42, 3, 0, Variant::zero),
                                    c.bound_constants(), c.tol);
          auto const d5 = clr_bound(PotentialSpec(), OperatorSpec::for_theorem(Theorem::t42, 5, 0, Variant::zero),
                                    c.bound_constants(), c.tol);
          std::printf("  CLR with V = 0: d=3 raw %g, d=5 raw %g (recorded)\n", d3.raw, d5.raw);
          out["bounds"] = {{"rows", rows}, {"clr_free_d3", to_json(d3)}, {"clr_free_d5", to_json(d5)}};
      }
      if (all || "convergence" == c.suite) {
          json arr = json::array();
          for (auto const & nc : standard_convergence_cases()) {
              auto const r = run_convergence_study(nc.c, nc.windows, standard_grid_ladder());
              std::printf("convergence  %-10s %s", nc.name.c_str(), to_string(r.outcome));
              for (std::size_t i = 0; i < r.windows.size(); ++i) {
                  std::printf("  L=%g:", r.windows[i]);
                  for (auto k : r.counts[i]) std::printf(" %lld", (long long)k);
              }
              std::printf("%s%s\n", r.note.empty() ? "" : "  ", r.note.c_str());
              passed = passed && Outcome::fail != r.outcome;
              auto j = to_json(r);
              j["name"] = nc.name;
              arr.push_back(j);
          }
          out["convergence"] = arr;
      }
      out["passed"] = passed;
      write_json(c, out);
      std::printf("verify %s: %s\n", c.suite.c_str(), passed ? "pass" : "FAIL");
      return passed ? ok : verification_failed;
  }

} // namespace

int main(int argc, char ** argv) {
  CLI::App app{"Eigenvalue-count bounds for Schroedinger operators with iterated-log Hardy terms"};
  app.require_subcommand(0, 1);
  Flags f;
  Overrides o;
  bool show_defaults = false;
  app.add_flag("--show-defaults", show_defaults, "print the table of defaults and exit");
  app.add_option("--config", f.config, std::string("JSON configuration (default: $") + kConfigEnv + ")");

  auto * bound = app.add_subcommand("bound", "evaluate a bound");
  add_operator_flags(bound, f, o);
  add_output_flags(bound, f, o);

  auto * count = app.add_subcommand("count", "count negative eigenvalues");
  add_operator_flags(count, f, o);
  add_numerics_flags(count, f, o);
  add_output_flags(count, f, o);
  o.add(count->add_option("--l", f.l, "single angular channel"), [&f](RunConfig & c) { c.l = f.l; });
  o.add(count->add_option("--eigenvalues", f.eigenvalues, "report this many lowest eigenvalues"),
        [&f](RunConfig & c) { c.eigenvalues = f.eigenvalues; });

  auto * verify = app.add_subcommand("verify", "run verification suites");
  o.add(verify->add_option("suite", f.suite, "hardy | transform | bounds | existence | convergence | all"),
        [&f](RunConfig & c) { c.suite = f.suite; });
  o.add(verify->add_option("--tol", f.tol, "tolerance (transform suite: relative discrepancy)"),
        [&f](RunConfig & c) { c.transform_tol = f.tol; });
  o.add(verify->add_option("--max-L", f.max_L, "largest window of the existence escalation"),
        [&f](RunConfig & c) { c.max_L = f.max_L; });
  add_numerics_flags(verify, f, o);
  add_output_flags(verify, f, o);

  auto * sweep = app.add_subcommand("sweep", "bound-versus-count sweep");
  add_operator_flags(sweep, f, o);
  add_numerics_flags(sweep, f, o);
  add_output_flags(sweep, f, o);
  o.add(sweep->add_option("--parameter", f.parameter, "swept potential parameter"),
        [&f](RunConfig & c) { if (!c.sweep) c.sweep.emplace(); c.sweep->parameter = f.parameter; });
  auto * values = sweep->add_option("--values", f.values, "parameter ladder")->delimiter(',');
  o.add(values, [&f, values](RunConfig & c) {
      if (!c.sweep) c.sweep.emplace();
      auto const raw = values->results();
      // CLI11 reads an empty string as 0; an empty ladder must stay empty
      bool const blank = std::all_of(raw.begin(), raw.end(), [](auto const & s) { return s.empty(); });
      c.sweep->values = blank ? std::vector<double>{} : f.values;
  });
  o.add(sweep->add_option("--dims", f.dims, "dimensions")->delimiter(','),
        [&f](RunConfig & c) { if (!c.sweep) c.sweep.emplace(); c.sweep->dims = f.dims; });

  try {
      app.parse(argc, argv);
  } catch (CLI::CallForHelp const & e) {
      return app.exit(e);
  } catch (CLI::CallForAllHelp const & e) {
      return app.exit(e);
  } catch (CLI::ParseError const & e) {
      app.exit(e);
      return config_error;
  }

  if (show_defaults) {
      std::fputs(defaults_table().c_str(), stdout);
      return ok;
  }

  RunConfig config;
  try {
      if (auto const path = config_path(f.config)) config = load_config(*path);
      if (bound->parsed()) config.command = "bound";
      else if (count->parsed()) config.command = "count";
      else if (verify->parsed()) config.command = "verify";
      else if (sweep->parsed()) config.command = "sweep";
      else if (!config_path(f.config)) {
          std::fputs(app.help().c_str(), stderr);
          return config_error;
      }
      o.apply(config);
      if ("sweep" == config.command && !config.sweep) config.sweep.emplace();
      config.validate();
  } catch (std::exception const & e) {
      std::fprintf(stderr, "configuration error: %s\n", e.what());
      return config_error;
  }

  try {
      if ("bound" == config.command) return cmd_bound(config);
      if ("count" == config.command) return cmd_count(config);
      if ("verify" == config.command) return cmd_verify(config);
      return cmd_sweep(config);
  } catch (std::exception const & e) {
      std::fprintf(stderr, "numerical failure: %s\n", e.what());
      return numerical_failure;
  }
}
