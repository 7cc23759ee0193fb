#pragma once
// Report serialization: JSON documents and the CSV row schema, written atomically.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "errors.hpp"
#include "harness.hpp"
#include "spectra.hpp"

namespace loghardy {

  inline constexpr char const * kCsvHeader =
      "experiment_id,theorem,d,n,variant,family,params,count,bound_raw,bound_cap,satisfied,L,m,quad_err";

  inline std::string format_double(double x) {
      if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
      if (std::isnan(x)) return "nan";
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", x);
      return buf;
  } // format_double

  // numbers in JSON must be finite
  inline nlohmann::json json_number(double x) {
      if (std::isfinite(x)) return x;
      return format_double(x);
  }

  /// "c=1;a=1;b=2": semicolons so the CSV field needs no quoting
  inline std::string params_field(std::vector<std::pair<std::string, double>> const & params) {
      std::string s;
      for (auto const & [key, value] : params) {
          if (!s.empty()) s += ';';
          s += key + "=" + format_double(value);
      }
      return s;
  } // params_field

  inline std::string csv_row(ExperimentRow const & r) {
      std::ostringstream os;
      os << r.experiment_id << ',' << to_string(r.theorem) << ',' << r.d << ',' << r.n << ','
         << to_string(r.variant) << ',' << r.family << ',' << params_field(r.params) << ',' << r.count << ','
         << format_double(r.bound.raw) << ',' << r.bound.cap << ',' << (r.satisfied ? "true" : "false") << ','
         << format_double(r.L) << ',' << r.m << ',' << format_double(r.bound.error_estimate);
      return os.str();
  } // csv_row

  inline std::string csv_document(std::vector<ExperimentRow> const & rows) {
      std::string s = std::string(kCsvHeader) + "\n";
      for (auto const & r : rows) s += csv_row(r) + "\n";
      return s;
  } // csv_document

  inline nlohmann::json to_json(BoundValue const & b) {
      nlohmann::json j{{"raw", json_number(b.raw)}, {"cap", b.cap}, {"divergent", b.divergent},
                       {"error_estimate", json_number(b.error_estimate)}, {"evaluations", b.evaluations},
                       {"warnings", b.warnings}};
      if (!b.channels.empty()) {
          auto & arr = j["channels"] = nlohmann::json::array();
          for (auto const & c : b.channels) {
              arr.push_back({{"l", c.l}, {"degeneracy", c.degeneracy}, {"integral", json_number(c.integral)},
                             {"error_estimate", json_number(c.error_estimate)}});
          }
      }
      return j;
  } // to_json

  inline nlohmann::json to_json(CountResult const & c) {
      nlohmann::json j{{"count", c.negative_count.low}, {"count_high", c.negative_count.high}, {"steps", c.steps},
                       {"trail_monotone", c.trail_monotone()}};
      auto & trail = j["trail"] = nlohmann::json::array();
      for (auto const & t : c.trail) {
          trail.push_back({{"L", t.L}, {"m", t.m}, {"s_min", json_number(t.s_min)}, {"s_max", json_number(t.s_max)},
                           {"count", t.count.low}, {"count_high", t.count.high}});
      }
      if (!c.lowest_eigenvalues.empty()) j["lowest_eigenvalues"] = c.lowest_eigenvalues;
      return j;
  } // to_json

  inline nlohmann::json to_json(ExperimentRow const & r) {
      nlohmann::json params = nlohmann::json::object();
      for (auto const & [key, value] : r.params) params[key] = value;
      nlohmann::json j{{"experiment_id", r.experiment_id}, {"theorem", to_string(r.theorem)}, {"d", r.d}, {"n", r.n},
                       {"variant", to_string(r.variant)}, {"family", r.family}, {"params", params},
                       {"count", r.count}, {"count_high", r.count_high}, {"trail", r.trail},
                       {"trail_monotone", r.trail_monotone}, {"bound", to_json(r.bound)},
                       {"satisfied", r.satisfied}, {"L", r.L}, {"m", r.m}, {"diagnostics", r.diagnostics}};
      if (!r.channel_counts.empty()) {
          auto & arr = j["channels"] = nlohmann::json::array();
          for (auto const & c : r.channel_counts) {
              arr.push_back({{"l", c.l}, {"degeneracy", c.degeneracy}, {"count", c.count.low},
                             {"count_high", c.count.high}, {"trail_monotone", c.trail_monotone}});
          }
      }
      return j;
  } // to_json

  inline nlohmann::json to_json(Report const & r) {
      nlohmann::json j{{"suite", r.name}, {"passed", r.passed()}, {"inconclusive", r.inconclusive()},
                       {"extremum", json_number(r.extremum)}, {"warnings", r.warnings}};
      auto & cases = j["cases"] = nlohmann::json::array();
      for (auto const & c : r.cases) {
          cases.push_back({{"label", c.label}, {"value", json_number(c.value)}, {"outcome", to_string(c.outcome)},
                           {"note", c.note}});
      }
      return j;
  } // to_json

  inline nlohmann::json to_json(ConvergenceReport const & r) {
      return {{"windows", r.windows}, {"grids", r.grids}, {"counts", r.counts}, {"window_monotone", r.window_monotone},
              {"grid_stable_from", r.grid_stable_from}, {"outcome", to_string(r.outcome)}, {"note", r.note}};
  } // to_json

  /// write to path.tmp, then rename over path; binary mode keeps LF line endings
  inline void write_atomically(std::filesystem::path const & path, std::string const & content) {
      auto tmp = path;
      tmp += ".tmp";
      {
          std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
          if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
          out << content;
          out.flush();
          if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
      }
      std::error_code ec;
      std::filesystem::rename(tmp, path, ec);
      if (ec) {
          std::filesystem::remove(tmp);
          throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
      }
  } // write_atomically

} // namespace loghardy
