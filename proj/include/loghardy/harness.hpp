#pragma once
// Verification experiments: Hardy positivity, transformation identities, existence of a
// negative eigenvalue, bound-versus-count sweeps and convergence studies.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "forms.hpp"
#include "iterfun.hpp"
#include "potentials.hpp"
#include "spectra.hpp"

namespace loghardy {

  enum class Outcome { pass, fail, inconclusive };

  inline char const * to_string(Outcome o) {
      switch (o) {
          case Outcome::pass: return "pass";
          case Outcome::fail: return "fail";
          default:            return "inconclusive";
      }
  } // to_string

  struct CaseResult {
      std::string label;
      double value = 0;
      Outcome outcome = Outcome::pass;
      std::string note;
  }; // CaseResult

  struct Report {
      std::string name;
      std::vector<CaseResult> cases;
      double extremum = 0; // minimum quotient, maximum discrepancy, ... depending on the suite
      std::vector<std::string> warnings;

      bool passed() const {
          return std::none_of(cases.begin(), cases.end(), [](auto const & c) { return Outcome::fail == c.outcome; });
      }
      bool inconclusive() const {
          return std::any_of(cases.begin(), cases.end(), [](auto const & c) { return Outcome::inconclusive == c.outcome; });
      }
  }; // Report

  inline std::string describe(Bump const & u) {
      return "bump[" + std::to_string(u.lo) + "," + std::to_string(u.hi) + "]";
  }

  inline std::string describe(PotentialSpec const & V) {
      std::string s = family_name(V);
      char sep = ':';
      for (auto const & [key, value] : family_parameters(V)) {
          char buf[64];
          std::snprintf(buf, sizeof(buf), "%c%s=%.17g", sep, key.c_str(), value);
          s += buf;
          sep = ',';
      }
      return s;
  } // describe

  /// Rayleigh quotient (form with V = 0)/(kinetic term) for radial bumps above exp^{(n)}(0);
  /// every quotient must be >= -threshold.
  inline Report run_hardy_positivity(std::vector<int> const & dims, std::vector<int> const & depths,
                                     double threshold = 1e-8, double tol = 1e-12) {
      Report report{"hardy"};
      report.extremum = kInf;
      for (int d : dims) {
          for (int n : depths) {
              for (auto const & u : bump_suite(LogDepth(n))) {
                  FormCase const c{d, LogDepth(n), 0, u, PotentialSpec()};
                  std::string const label = "d=" + std::to_string(d) + " n=" + std::to_string(n) + " " + describe(u);
                  try {
                      double const form = quadratic_form_value(FormSide::original, c, tol).value;
                      double const kin = kinetic_energy(c, tol).value;
                      double const q = form/kin;
                      report.extremum = std::min(report.extremum, q);
                      report.cases.push_back({label, q, q >= -threshold ? Outcome::pass : Outcome::fail, ""});
                  } catch (std::exception const & e) {
                      report.cases.push_back({label, std::numeric_limits<double>::quiet_NaN(), Outcome::fail, e.what()});
                  }
              } // u
          } // n
      } // d
      return report;
  } // run_hardy_positivity

  inline double relative_discrepancy(double a, double b) {
      double const scale = std::max({std::abs(a), std::abs(b), 1e-300});
      return std::abs(a - b)/scale;
  } // relative_discrepancy

  /// original vs reduced (and vs single-step where that form is defined) quadratic-form values,
  /// for V in {0, a square well overlapping the bumps} and channels l = 0 (and l = 1 for d >= 2)
  inline Report run_transform_identity(std::vector<int> const & dims, std::vector<int> const & depths,
                                       double tol, double quad_tol = 1e-12) {
      Report report{"transform"};
      for (int d : dims) {
          for (int n : depths) {
              std::vector<PotentialSpec> const potentials{PotentialSpec(), suite_well(LogDepth(n))};
              std::vector<int> const channels = (1 == d) ? std::vector<int>{0} : std::vector<int>{0, 1};
              for (auto const & V : potentials) {
                  for (int l : channels) {
                      for (auto const & u : bump_suite(LogDepth(n))) {
                          FormCase const c{d, LogDepth(n), l, u, V};
                          std::string const base = "d=" + std::to_string(d) + " n=" + std::to_string(n)
                                                 + " l=" + std::to_string(l) + " " + describe(V) + " " + describe(u);
                          try {
                              double const orig = quadratic_form_value(FormSide::original, c, quad_tol).value;
                              double const red = quadratic_form_value(FormSide::reduced, c, quad_tol).value;
                              double const disc = relative_discrepancy(orig, red);
                              report.extremum = std::max(report.extremum, disc);
                              report.cases.push_back({base + " reduced", disc, disc <= tol ? Outcome::pass : Outcome::fail, ""});

                              bool const crosses_one = u.lo < 1 && u.hi > 1;
                              bool const even_below_one = (0 == d % 2) && u.lo < 1;
                              if (!crosses_one && !even_below_one) {
                                  double const single = quadratic_form_value(FormSide::single_step, c, quad_tol).value;
                                  double const disc1 = relative_discrepancy(orig, single);
                                  report.extremum = std::max(report.extremum, disc1);
                                  report.cases.push_back({base + " single_step", disc1,
                                                          disc1 <= tol ? Outcome::pass : Outcome::fail, ""});
                              }
                          } catch (std::exception const & e) {
                              report.cases.push_back({base, std::numeric_limits<double>::quiet_NaN(), Outcome::fail, e.what()});
                          }
                      } // u
                  } // l
              } // V
          } // n
      } // d
      return report;
  } // run_transform_identity

  struct ExistenceCase {
      PotentialSpec V;
      int n = 0;
  }; // ExistenceCase

  /// At least one negative eigenvalue for every non-zero V <= 0 (d = 1, variant zero).
  /// The window doubles at fixed step size up to max_L; no negative eigenvalue by then is inconclusive.
  inline Report run_existence_check(std::vector<ExistenceCase> const & cases, Numerics const & numerics,
                                    double max_L = 320) {
      Report report{"existence"};
      for (auto const & ec : cases) {
          auto const op = OperatorSpec::for_theorem(Theorem::t41, 1, ec.n, Variant::zero);
          std::string const label = "n=" + std::to_string(ec.n) + " " + describe(ec.V);
          CaseResult row{label, 0, Outcome::inconclusive, ""};
          try {
              for (double L = numerics.L; L <= max_L*(1 + 1e-12); L *= 2) {
                  Numerics num = numerics;
                  num.L = L;
                  num.m = int(std::lround(numerics.m*(L/numerics.L)));
                  num.refinements = 0;
                  auto const c = count_negative(op, ec.V, std::nullopt, num);
                  row.value = double(c.negative_count.low);
                  row.note = "L=" + std::to_string(L) + " m=" + std::to_string(num.m);
                  if (c.negative_count.low >= 1) { row.outcome = Outcome::pass; break; }
              } // L
              if (Outcome::inconclusive == row.outcome) {
                  report.warnings.push_back(label + ": no negative eigenvalue up to L = " + std::to_string(max_L));
              }
          } catch (std::exception const & e) {
              row.outcome = Outcome::fail;
              row.note = e.what();
          }
          report.cases.push_back(row);
      } // ec
      return report;
  } // run_existence_check

  struct SweepSpec {
      Theorem theorem = Theorem::t41;
      std::vector<int> dims{1};
      int n = 0;
      Variant variant = Variant::one;
      std::string family = "square_well";
      std::map<std::string, double> params;   // fixed parameters
      std::string parameter = "c";            // swept parameter
      std::vector<double> values;             // ladder
      Numerics numerics;
      double tol = 1e-8;
      BoundConstants constants = BoundConstants::defaults();

      void validate() const {
          if (values.empty()) throw ConfigError("sweep: empty parameter ladder");
          if (dims.empty()) throw ConfigError("sweep: empty dimension list");
          for (double v : values) if (!std::isfinite(v)) throw ConfigError("sweep: non-finite ladder value");
      }
  }; // SweepSpec

  struct ExperimentRow {
      std::string experiment_id;
      Theorem theorem = Theorem::t41;
      int d = 1, n = 0;
      Variant variant = Variant::one;
      std::string family;
      std::vector<std::pair<std::string, double>> params;
      std::int64_t count = 0;            // at the finest refinement
      std::int64_t count_high = 0;       // differs from count only under pivot ambiguity
      std::vector<std::int64_t> trail;   // counts along the refinement levels (1-d rows)
      bool trail_monotone = true;
      BoundValue bound;
      bool satisfied = false;            // count <= floor(bound)
      double L = 0;
      int m = 0;
      std::vector<ChannelCount> channel_counts;
      std::vector<std::string> diagnostics;
  }; // ExperimentRow

  inline ExperimentRow run_experiment(SweepSpec const & sweep, int d, double value, std::string id) {
      auto params = sweep.params;
      params[sweep.parameter] = value;
      auto const V = make_potential(sweep.family, params);
      auto const op = OperatorSpec::for_theorem(sweep.theorem, d, sweep.n, sweep.variant);

      ExperimentRow row;
      row.experiment_id = std::move(id);
      row.theorem = sweep.theorem;
      row.d = d;
      row.n = sweep.n;
      row.variant = sweep.variant;
      row.family = sweep.family;
      row.params = family_parameters(V);
      auto const finest = sweep.numerics.refinements;
      row.L = sweep.numerics.L*std::ldexp(1.0, finest);
      row.m = sweep.numerics.m << finest;

      switch (sweep.theorem) {
          case Theorem::t41: row.bound = bound_1d(V, op, sweep.tol); break;
          case Theorem::t42: row.bound = clr_bound(V, op, sweep.constants, sweep.tol); break;
          case Theorem::t43: row.bound = central_bound(V, op, sweep.tol); break;
      }
      if (1 == d) {
          auto const c = count_negative(op, V, std::nullopt, sweep.numerics);
          row.count = c.negative_count.low;
          row.count_high = c.negative_count.high;
          for (auto const & t : c.trail) row.trail.push_back(t.count.low);
          row.trail_monotone = c.trail_monotone();
      } else {
          auto const c = total_central_count(op, V, sweep.numerics);
          row.count = c.total.low;
          row.count_high = c.total.high;
          row.channel_counts = c.channels;
          row.trail_monotone = std::all_of(c.channels.begin(), c.channels.end(), [](auto const & ch) { return ch.trail_monotone; });
      }
      if (row.count != row.count_high) row.diagnostics.push_back("zero pivot: count in [" + std::to_string(row.count)
                                                                 + ", " + std::to_string(row.count_high) + "]");
      if (!row.trail_monotone) row.diagnostics.push_back("refinement trail not monotone");
      for (auto const & w : row.bound.warnings) row.diagnostics.push_back(w);
      row.satisfied = row.count_high <= row.bound.cap;
      return row;
  } // run_experiment

  /// one row per (d, ladder value), sorted by d then by the swept parameter
  inline std::vector<ExperimentRow> run_bound_sweep(SweepSpec const & sweep) {
      sweep.validate();
      auto dims = sweep.dims;
      auto values = sweep.values;
      std::sort(dims.begin(), dims.end());
      std::sort(values.begin(), values.end());
      std::vector<ExperimentRow> rows;
      int index = 0;
      for (int d : dims) {
          for (double v : values) {
              rows.push_back(run_experiment(sweep, d, v, std::string(to_string(sweep.theorem)) + "-" + std::to_string(index++)));
          } // v
      } // d
      return rows;
  } // run_bound_sweep

  struct ConvergenceCase {
      OperatorSpec op;
      PotentialSpec V;
      std::optional<int> l;
  }; // ConvergenceCase

  struct ConvergenceReport {
      std::vector<double> windows;
      std::vector<int> grids;                         // m at the first window; scaled with L
      std::vector<std::vector<std::int64_t>> counts;  // [window][grid]
      bool window_monotone = true;
      std::vector<int> grid_stable_from;              // per window: first grid index after which the count is constant
      Outcome outcome = Outcome::pass;
      std::string note;
  }; // ConvergenceReport

  /// counts on a window ladder x grid ladder; m scales with L so that each grid column keeps its step size
  inline ConvergenceReport run_convergence_study(ConvergenceCase const & c, std::vector<double> const & windows,
                                                 std::vector<int> const & grids) {
      if (windows.size() < 3 || grids.size() < 3) throw ConfigError("convergence study needs ladders of length >= 3");
      ConvergenceReport r{windows, grids};
      for (double L : windows) {
          std::vector<std::int64_t> row;
          for (int m0 : grids) {
              Numerics num;
              num.L = L;
              num.m = int(std::lround(m0*(L/windows.front())));
              row.push_back(count_negative(c.op, c.V, c.l, num).negative_count.low);
          } // m0
          r.counts.push_back(row);
      } // L
      for (std::size_t j = 0; j < grids.size(); ++j) {
          for (std::size_t i = 1; i < windows.size(); ++i) {
              if (r.counts[i][j] < r.counts[i - 1][j]) r.window_monotone = false;
          }
      }
      bool stable = true;
      for (auto const & row : r.counts) {
          int from = int(row.size()) - 1;
          while (from > 0 && row[from - 1] == row.back()) --from;
          if (from == int(row.size()) - 1) stable = false; // the last two grids disagree
          r.grid_stable_from.push_back(from);
      }
      if (!r.window_monotone) { r.outcome = Outcome::fail; r.note = "counts decrease along the window ladder"; }
      else if (!stable) { r.outcome = Outcome::inconclusive; r.note = "count not yet stable along the grid ladder"; }
      return r;
  } // run_convergence_study

} // namespace loghardy
