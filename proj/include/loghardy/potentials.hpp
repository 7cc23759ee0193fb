#pragma once
// Radial potentials V(r), their negative parts, centrifugal composites and their images
// under the logarithmic coordinate chain r = exp^{(k)}(s).

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "iterfun.hpp"

namespace loghardy {

  inline constexpr double kInf = std::numeric_limits<double>::infinity();

  struct ZeroPotential {};

  /// V = -depth on [inner, outer]
  struct SquareWell {
      double depth = 1, inner = 1, outer = 2;
  };

  /// V = -coefficient/r^2 for r >= onset
  struct InverseSquare {
      double coefficient = 1, onset = 1;
  };

  /// V = -coefficient * r^power * |ln r|^log_power on [inner, outer]; outer may be infinite
  struct PowerLogWell {
      double coefficient = 1, power = 0, log_power = 0, inner = 0, outer = kInf;
  };

  /// piecewise-linear interpolation of (r_i, v_i), r strictly increasing
  struct Tabulated {
      std::vector<double> r, v;
  };

  using PotentialFamily = std::variant<ZeroPotential, SquareWell, InverseSquare, PowerLogWell, Tabulated>;

  /// closed interval [lo, hi] outside of which the family part of V vanishes
  struct Support {
      double lo = 0, hi = 0;
      bool empty = true;
      bool bounded() const { return empty || std::isfinite(hi); }
  };

  // value carried as sign * exp(log_magnitude)
  struct SignedLog {
      int sign = 0;
      double log_magnitude = -kInf;
  };

  class PotentialSpec {
    public:
      PotentialSpec() = default;
      PotentialSpec(PotentialFamily family, double centrifugal = 0)
        : family_(std::move(family)), centrifugal_(centrifugal) { validate(); }

      PotentialFamily const & family() const { return family_; }
      double centrifugal() const { return centrifugal_; } // coefficient of the added 1/r^2 term
      bool central() const { return central_; }
      std::optional<int> dimension_hint() const { return dimension_hint_; }
      void set_dimension_hint(std::optional<int> d) { dimension_hint_ = d; }

      PotentialSpec with_centrifugal(double gamma) const {
          auto copy = *this;
          copy.centrifugal_ = gamma;
          return copy;
      }

      /// V(r)
      double operator()(double r) const {
          if (!(r > 0)) throw DomainError("potential evaluated at non-positive r = " + std::to_string(r));
          double const base = std::visit([r](auto const & f) { return eval_family(f, r); }, family_);
          return (0 == centrifugal_) ? base : base + centrifugal_/(r*r);
      }

      /// support of the family part (the centrifugal term is handled analytically)
      Support support() const {
          return std::visit([](auto const & f) { return family_support(f); }, family_);
      }

      /// family part evaluated from ln r, for r far outside the double range
      SignedLog family_log(double log_r) const {
          return std::visit([log_r](auto const & f) { return family_log_eval(f, log_r); }, family_);
      }

    private:
      void validate() const;

      static double eval_family(ZeroPotential const &, double) { return 0; }
      static double eval_family(SquareWell const & w, double r) {
          return (r >= w.inner && r <= w.outer) ? -w.depth : 0.0;
      }
      static double eval_family(InverseSquare const & p, double r) {
          return (r >= p.onset) ? -p.coefficient/(r*r) : 0.0;
      }
      static double eval_family(PowerLogWell const & p, double r) {
          if (r < p.inner || r > p.outer) return 0;
          double v = p.coefficient*std::pow(r, p.power);
          if (0 != p.log_power) v *= std::pow(std::abs(std::log(r)), p.log_power);
          return -v;
      }
      static double eval_family(Tabulated const & t, double r) {
          if (r < t.r.front() || r > t.r.back()) {
              throw DomainError("tabulated potential evaluated at r = " + std::to_string(r)
                                + " outside [" + std::to_string(t.r.front()) + ", " + std::to_string(t.r.back()) + "]");
          }
          auto const it = std::upper_bound(t.r.begin(), t.r.end(), r);
          if (t.r.end() == it) return t.v.back();
          auto const i = std::size_t(it - t.r.begin()) - 1;
          double const w = (r - t.r[i])/(t.r[i + 1] - t.r[i]);
          return (1 - w)*t.v[i] + w*t.v[i + 1];
      }

      static Support family_support(ZeroPotential const &) { return {}; }
      static Support family_support(SquareWell const & w) { return {w.inner, w.outer, false}; }
      static Support family_support(InverseSquare const & p) { return {p.onset, kInf, 0 == p.coefficient}; }
      static Support family_support(PowerLogWell const & p) { return {p.inner, p.outer, 0 == p.coefficient}; }
      static Support family_support(Tabulated const & t) { return {t.r.front(), t.r.back(), false}; }

      static SignedLog signed_log(double v) {
          if (0 == v) return {};
          return {v > 0 ? 1 : -1, std::log(std::abs(v))};
      }
      static SignedLog family_log_eval(ZeroPotential const &, double) { return {}; }
      static SignedLog family_log_eval(SquareWell const & w, double log_r) {
          if (log_r < std::log(w.inner) || log_r > std::log(w.outer)) return {};
          return {-1, std::log(w.depth)};
      }
      static SignedLog family_log_eval(InverseSquare const & p, double log_r) {
          if (0 == p.coefficient || log_r < std::log(p.onset)) return {};
          return {p.coefficient > 0 ? -1 : 1, std::log(std::abs(p.coefficient)) - 2*log_r};
      }
      static SignedLog family_log_eval(PowerLogWell const & p, double log_r) {
          if (0 == p.coefficient) return {};
          if (log_r < std::log(p.inner) || log_r > std::log(p.outer)) return {};
          double mag = std::log(std::abs(p.coefficient)) + p.power*log_r;
          if (0 != p.log_power) {
              if (0 == log_r) return (p.log_power > 0) ? SignedLog{} : SignedLog{p.coefficient > 0 ? -1 : 1, kInf};
              mag += p.log_power*std::log(std::abs(log_r));
          }
          return {p.coefficient > 0 ? -1 : 1, mag};
      }
      static SignedLog family_log_eval(Tabulated const & t, double log_r) {
          return signed_log(eval_family(t, std::exp(log_r)));
      }

      PotentialFamily family_ = ZeroPotential{};
      double centrifugal_ = 0;
      bool central_ = true; // only central potentials are modelled
      std::optional<int> dimension_hint_;
  }; // PotentialSpec

  inline void PotentialSpec::validate() const {
      std::visit([](auto const & f) {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, SquareWell>) {
              if (!(f.depth > 0)) throw DomainError("square_well: depth c must be positive");
              if (!(f.inner > 0 && f.inner < f.outer)) throw DomainError("square_well: need 0 < a < b");
              if (!std::isfinite(f.outer)) throw DomainError("square_well: b must be finite");
          } else if constexpr (std::is_same_v<T, InverseSquare>) {
              if (!(f.onset > 0)) throw DomainError("inverse_square: onset a must be positive");
          } else if constexpr (std::is_same_v<T, PowerLogWell>) {
              if (!(f.inner >= 0 && f.inner < f.outer)) throw DomainError("power_log_well: need 0 <= a < b");
          } else if constexpr (std::is_same_v<T, Tabulated>) {
              if (f.r.size() < 2 || f.r.size() != f.v.size()) {
                  throw DomainError("tabulated: need at least two samples and matching r/v lengths");
              }
              if (!(f.r.front() > 0)) throw DomainError("tabulated: sample points must be positive");
              for (std::size_t i = 1; i < f.r.size(); ++i) {
                  if (!(f.r[i] > f.r[i - 1])) throw DomainError("tabulated: sample points must be strictly increasing");
              } // i
          }
      }, family_);
      if (!std::isfinite(centrifugal_)) throw DomainError("centrifugal coefficient must be finite");
  } // validate

  inline std::string family_name(PotentialSpec const & V) {
      return std::visit([](auto const & f) -> std::string {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, ZeroPotential>) return "zero";
          else if constexpr (std::is_same_v<T, SquareWell>) return "square_well";
          else if constexpr (std::is_same_v<T, InverseSquare>) return "inverse_square";
          else if constexpr (std::is_same_v<T, PowerLogWell>) return "power_log_well";
          else return "tabulated";
      }, V.family());
  } // family_name

  /// scalar parameters in literal order (tabulated data is not scalar and is omitted)
  inline std::vector<std::pair<std::string, double>> family_parameters(PotentialSpec const & V) {
      return std::visit([](auto const & f) -> std::vector<std::pair<std::string, double>> {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, SquareWell>) return {{"c", f.depth}, {"a", f.inner}, {"b", f.outer}};
          else if constexpr (std::is_same_v<T, InverseSquare>) return {{"c", f.coefficient}, {"a", f.onset}};
          else if constexpr (std::is_same_v<T, PowerLogWell>) {
              return {{"c", f.coefficient}, {"p", f.power}, {"q", f.log_power}, {"a", f.inner}, {"b", f.outer}};
          } else return {};
      }, V.family());
  } // family_parameters

  /// family by name with scalar parameters; missing keys take the family defaults, unknown keys are rejected
  inline PotentialSpec make_potential(std::string const & family, std::map<std::string, double> const & params) {
      auto get = [&params](char const * key, double fallback) {
          auto const it = params.find(key);
          return (params.end() == it) ? fallback : it->second;
      };
      auto require_keys = [&params, &family](std::initializer_list<char const *> allowed) {
          for (auto const & [key, value] : params) {
              bool known = false;
              for (auto const * a : allowed) known = known || (key == a);
              if (!known) throw DomainError("potential family '" + family + "' has no parameter '" + key + "'");
          }
      };
      if ("zero" == family) {
          require_keys({});
          return PotentialSpec(ZeroPotential{});
      }
      if ("square_well" == family) {
          require_keys({"c", "a", "b"});
          return PotentialSpec(SquareWell{get("c", 1), get("a", 1), get("b", 2)});
      }
      if ("inverse_square" == family) {
          require_keys({"c", "a"});
          return PotentialSpec(InverseSquare{get("c", 1), get("a", 1)});
      }
      if ("power_log_well" == family) {
          require_keys({"c", "p", "q", "a", "b"});
          return PotentialSpec(PowerLogWell{get("c", 1), get("p", 0), get("q", 0), get("a", 0), get("b", kInf)});
      }
      throw DomainError("unknown potential family '" + family + "' (tabulated data needs the JSON form)");
  } // make_potential

  inline double eval_potential(PotentialSpec const & V, double r) { return V(r); }

  /// |V(r)_-| = max(-V(r), 0)
  inline double negative_part_abs(PotentialSpec const & V, double r) { return std::max(-V(r), 0.0); }

  /// r -> l(l+d-2)/r^2 + V(r)
  inline PotentialSpec effective_radial_potential(PotentialSpec const & V, int l, int d) {
      if (!V.central()) throw DomainError("effective_radial_potential: V must be central");
      if (l < 0 || d < 1) throw DomainError("effective_radial_potential: need l >= 0, d >= 1");
      return V.with_centrifugal(V.centrifugal() + double(l)*double(l + d - 2));
  } // effective_radial_potential

  /// s -> e^{2s} e^{2e^s} ... e^{2 exp^{(k-1)} s} V(exp^{(k)} s) + extra_constant
  class TransformedPotential {
    public:
      TransformedPotential(PotentialSpec base, int steps, double extra_constant)
        : base_(std::move(base)), steps_(steps), extra_(extra_constant) {}

      PotentialSpec const & base() const { return base_; }
      int steps() const { return steps_; }
      double extra_constant() const { return extra_; }

      double operator()(double s) const {
          // t_j = exp^{(j)}(s); log r = t_{k-1}; log of the scale factor = 2 sum_{j<k} t_j
          double log_scale = 0, log_r = s;
          for (int j = 0; j < steps_; ++j) {
              log_scale += 2*log_r;
              if (j + 1 < steps_) {
                  log_r = std::exp(log_r);
                  if (!std::isfinite(log_r)) return beyond_range(s);
              }
          } // j
          double value = extra_;
          auto const fam = base_.family_log(log_r);
          if (0 != fam.sign) value += fam.sign*checked_exp(log_scale + fam.log_magnitude, s);
          double const gamma = base_.centrifugal();
          if (0 != gamma) {
              // gamma/r^2 scaled: the last factor e^{2 t_{k-1}} cancels 1/r^2 exactly
              value += gamma*checked_exp(log_scale - 2*log_r, s);
          }
          return value;
      }

      /// s-coordinates of the support endpoints of the family part that are finite after k logs
      std::vector<double> breakpoints() const {
          std::vector<double> points;
          auto const sup = base_.support();
          if (sup.empty) return points;
          for (double r : {sup.lo, sup.hi}) {
              if (!std::isfinite(r) || !(r > 0)) continue;
              try {
                  points.push_back(iterated_log(r, LogDepth(steps_)));
              } catch (DomainError const &) {} // endpoint below exp^{(k-1)}(0) has no image
          } // r
          return points;
      }

    private:
      double beyond_range(double s) const {
          auto const sup = base_.support();
          if (0 != base_.centrifugal() || !sup.bounded()) {
              throw OverflowError("transformed potential: exp^{(" + std::to_string(steps_) + ")}("
                                  + std::to_string(s) + ") overflows and V has unbounded support");
          }
          return extra_;
      }
      static double checked_exp(double log_value, double s) {
          double const v = std::exp(log_value);
          if (!std::isfinite(v)) {
              throw OverflowError("transformed potential overflows at s = " + std::to_string(s));
          }
          return v;
      }

      PotentialSpec base_;
      int steps_ = 1;
      double extra_ = 0;
  }; // TransformedPotential

  inline TransformedPotential transform_potential(PotentialSpec const & V, int steps, double extra_constant = 0) {
      if (steps < 1) throw DomainError("transform_potential: need at least one step");
      if (steps > kMaxDepth) {
          throw DepthError("transform_potential: depth " + std::to_string(steps) + " exceeds the cap of "
                           + std::to_string(kMaxDepth));
      }
      return TransformedPotential(V, steps, extra_constant);
  } // transform_potential

  struct BoundedBelowCheck {
      bool bounded = true;
      double witness_x = std::numeric_limits<double>::quiet_NaN();
      double witness_value = std::numeric_limits<double>::quiet_NaN();
      double sampled_minimum = 0;
  }; // BoundedBelowCheck

  /// x^2 (ln x)^2 ... (ln^{(n)} x)^2 V(x)
  inline double weighted_potential(PotentialSpec const & V, LogDepth n, double x) {
      double w = x*x;
      for (double const y : log_sequence(x, n)) w *= y*y;
      return w*V(x);
  } // weighted_potential

  /// Heuristic check that x^2 (ln x)^2 ... (ln^{(n)} x)^2 V(x) stays bounded below on the domain:
  /// samples a log-spaced grid of offsets above the threshold and flags a run of samples at
  /// either end that keeps decreasing to a new minimum.
  inline BoundedBelowCheck check_bounded_below_weighted(PotentialSpec const & V, LogDepth n,
                                                        DomainThreshold const & domain, int samples) {
      if (samples < 100) throw DomainError("check_bounded_below_weighted: need at least 100 samples");
      double x_lo = domain.value, x_hi = kInf;
      if (auto const * t = std::get_if<Tabulated>(&V.family())) {
          x_lo = std::max(x_lo, t->r.front());
          x_hi = t->r.back();
      }
      // offsets 10^-8 ... 10^8 above the threshold, clipped to the tabulated range
      std::vector<double> xs, gs;
      xs.reserve(samples); gs.reserve(samples);
      for (int i = 0; i < samples; ++i) {
          double const x = domain.value + std::pow(10.0, -8 + 16.0*i/(samples - 1));
          if (x <= x_lo && x_lo > domain.value) continue;
          if (x > x_hi) break;
          double g;
          try {
              g = weighted_potential(V, n, x);
          } catch (DomainError const &) {
              continue;
          }
          if (std::isnan(g) || g == -kInf) return {false, x, g, -kInf};
          xs.push_back(x); gs.push_back(g);
      } // i

      BoundedBelowCheck result;
      if (gs.empty()) return result;
      result.sampled_minimum = *std::min_element(gs.begin(), gs.end());

      auto const tail = std::max<std::size_t>(gs.size()/10, 5);
      if (gs.size() < 2*tail) return result;
      // end: decreasing run over the last `tail` samples reaching a new minimum
      auto const diverges = [&](auto first, auto last, double core_min) {
          double const start = *first;
          double prev = start;
          for (auto it = first; it != last; ++it) {
              if (*it > prev) return false;
              prev = *it;
          }
          double const drop = start - prev;
          return prev < core_min && drop > 1e-3*std::max(1.0, std::abs(start));
      };
      double const core_min = *std::min_element(gs.begin() + tail, gs.end() - tail);
      if (diverges(gs.end() - tail, gs.end(), core_min)) {
          return {false, xs.back(), gs.back(), result.sampled_minimum};
      }
      if (diverges(gs.rbegin() + (gs.size() - tail), gs.rend(), core_min)) {
          return {false, xs.front(), gs.front(), result.sampled_minimum};
      }
      return result;
  } // check_bounded_below_weighted

} // namespace loghardy
