#pragma once
// Evaluators for the eigenvalue-count bounds of H_{d,n}: the Bargmann-type bounds in one
// dimension, the CLR-type bounds for d >= 3 and the partial-wave bounds for central potentials.

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "iterfun.hpp"
#include "potentials.hpp"
#include "quadrature.hpp"

namespace loghardy {

  enum class Theorem { t41, t42, t43 };

  inline char const * to_string(Theorem t) {
      switch (t) {
          case Theorem::t41: return "t41";
          case Theorem::t42: return "t42";
          default:           return "t43";
      }
  } // to_string

  /// H_{d,n} = -Delta - (d-2)^2/(4|x|^2) - sum_k 1/(4|x|^2 (ln|x|)^2...(ln^{(k)}|x|)^2) + V
  /// on |x| > threshold.
  struct OperatorSpec {
      int d = 1;
      LogDepth n{};
      Variant variant = Variant::zero;
      DomainThreshold threshold{};

      /// threshold depth n for the 1-d and partial-wave bounds, n+2 for the CLR-type bound
      static OperatorSpec for_theorem(Theorem t, int d, int n, Variant variant) {
          if (n < 0 || n > kMaxDepth) {
              throw DepthError("log depth n = " + std::to_string(n) + " outside [0, " + std::to_string(kMaxDepth) + "]");
          }
          switch (t) {
              case Theorem::t41: if (1 != d) throw DomainError("t41 requires d = 1"); break;
              case Theorem::t42: if (d < 3) throw DomainError("t42 requires d >= 3"); break;
              case Theorem::t43: if (d < 2) throw DomainError("t43 requires d >= 2"); break;
          }
          int const depth = (Theorem::t42 == t) ? n + 2 : n;
          return OperatorSpec{d, LogDepth(n), variant, DomainThreshold::make(depth, variant)};
      }
  }; // OperatorSpec

  struct ConstantEntry {
      double value;
      std::string source;
  };

  /// CLR constants C_d
  struct BoundConstants {
      std::map<int, ConstantEntry> table;

      static BoundConstants defaults() {
          BoundConstants c;
          c.table[3] = {0.1156, "Lieb, rigorous"};
          for (int d = 4; d <= 7; ++d) {
              c.table[d] = {0.1156, "placeholder: C_3 reused, not a rigorous constant for this d"};
          }
          return c;
      }

      double at(int d) const {
          auto const it = table.find(d);
          if (table.end() == it) throw DomainError("no CLR constant configured for d = " + std::to_string(d));
          if (!(it->second.value > 0)) throw DomainError("CLR constant must be positive");
          return it->second.value;
      }
  }; // BoundConstants

  struct ChannelBound {
      int l = 0;
      std::int64_t degeneracy = 1;
      double integral = 0;
      double error_estimate = 0;
      long evaluations = 0;
  }; // ChannelBound

  struct BoundValue {
      double raw = 0;
      std::int64_t cap = 0; // floor(raw); saturated when the bound diverges
      bool divergent = false;
      double error_estimate = 0;
      long evaluations = 0;
      std::vector<std::string> warnings;
      std::vector<ChannelBound> channels; // partial-wave bounds only

      static BoundValue from_raw(double raw, QuadResult const & q = {}) {
          BoundValue b;
          b.raw = raw;
          b.error_estimate = q.error_estimate;
          b.evaluations = q.evaluations;
          if (std::isinf(raw)) {
              b.divergent = true;
              b.cap = std::numeric_limits<std::int64_t>::max();
          } else {
              if (raw < 0) throw DomainError("bound value must be non-negative");
              b.cap = std::int64_t(std::floor(raw));
          }
          return b;
      }
  }; // BoundValue

  namespace detail {

    struct Range {
        double lo, hi;       // hi may be infinite
        bool empty = false;
    };

    // negative region of V restricted to (threshold, inf)
    inline Range integration_range(PotentialSpec const & V, double threshold) {
        auto const sup = V.support();
        if (0 != V.centrifugal()) {
            // a repulsive centrifugal term only shrinks the negative part
            if (V.centrifugal() < 0) return {threshold, kInf};
        }
        if (sup.empty) return {0, 0, true};
        double const lo = std::max(threshold, sup.lo);
        if (sup.hi <= lo) return {0, 0, true};
        return {lo, sup.hi};
    } // integration_range

    template <typename F>
    QuadResult integrate_range(F const & f, Range const & range, std::vector<double> breaks, double tol) {
        if (range.empty) return {};
        if (std::isfinite(range.hi)) {
            std::vector<double> points{range.lo, range.hi};
            for (double b : breaks) if (b > range.lo && b < range.hi) points.push_back(b);
            return integrate_piecewise(f, points, tol);
        }
        return integrate_semiinfinite(f, range.lo, tol);
    } // integrate_range

    // |x| |ln x| ... |ln^{(n+1)} x|
    inline double log_chain_weight(double x, int n) {
        double w = std::abs(x);
        for (double const y : log_sequence(x, n + 1)) w *= std::abs(y);
        return w;
    } // log_chain_weight

    inline void hypothesis_warning(BoundValue & b, PotentialSpec const & V, OperatorSpec const & op) {
        auto const check = check_bounded_below_weighted(V, op.n, op.threshold, 2000);
        if (!check.bounded) {
            b.warnings.push_back("weighted potential x^2(ln x)^2...V(x) appears unbounded below near x = "
                                 + std::to_string(check.witness_x));
        }
    } // hypothesis_warning

  } // namespace detail

  /// 1 + int_{-inf}^{inf} |f(x)_-| |x| dx for a potential f on the line.
  /// A finite support [lo, hi] restricts the quadrature to it.
  template <typename F>
  BoundValue bargmann_line_bound(F const & f, double tol, std::optional<std::pair<double, double>> support = {}) {
      auto const g = [&f](double x) { double const v = f(x); return v < 0 ? -v*std::abs(x) : 0.0; };
      QuadResult q;
      if (support) {
          auto const [lo, hi] = *support;
          std::vector<double> points{lo, hi};
          if (lo < 0 && hi > 0) points.push_back(0);
          q = integrate_piecewise(g, points, tol);
      } else {
          auto const right = integrate_semiinfinite(g, 0.0, tol);
          auto const left = integrate_semiinfinite([&g](double x) { return g(-x); }, 0.0, tol);
          q = {right.value + left.value, right.error_estimate + left.error_estimate,
               right.evaluations + left.evaluations};
      }
      return BoundValue::from_raw(1 + q.value, q);
  } // bargmann_line_bound

  /// int_0^inf |f(x)_-| x dx (Dirichlet half-line, no additive 1)
  template <typename F>
  BoundValue bargmann_halfline_bound(F const & f, double tol, std::optional<std::pair<double, double>> support = {}) {
      auto const g = [&f](double x) { double const v = f(x); return v < 0 ? -v*x : 0.0; };
      QuadResult q;
      if (support) {
          double const lo = std::max(0.0, support->first), hi = support->second;
          if (hi > lo) q = integrate(g, lo, hi, tol);
      } else {
          q = integrate_semiinfinite(g, 0.0, tol);
      }
      return BoundValue::from_raw(q.value, q);
  } // bargmann_halfline_bound

  /// N(H_{1,n}) <= [1 +] int_{threshold}^inf |V(x)_-| |x| |ln x| ... |ln^{(n+1)} x| dx,
  /// the 1 present on (exp^{(n)}0, inf) and absent on (exp^{(n)}1, inf).
  inline BoundValue bound_1d(PotentialSpec const & V, OperatorSpec const & op, double tol) {
      if (1 != op.d) throw DomainError("bound_1d requires d = 1");
      int const n = op.n;
      auto const integrand = [&V, n](double x) {
          double const neg = negative_part_abs(V, x);
          return (0 == neg) ? 0.0 : neg*detail::log_chain_weight(x, n);
      };
      auto const sup = V.support();
      auto const q = detail::integrate_range(integrand, detail::integration_range(V, op.threshold.value),
                                             {sup.lo, sup.hi}, tol);
      double const offset = (Variant::zero == op.variant) ? 1.0 : 0.0;
      auto b = BoundValue::from_raw(offset + q.value, q);
      detail::hypothesis_warning(b, V, op);
      return b;
  } // bound_1d

  /// CLR-type bound for central V, d >= 3. Variant zero (|x| > exp^{(n+2)}0):
  ///   C_d int ((d-1)(d-3)/(4|x|^2 (ln|x|)^2...(ln^{(n+1)}|x|)^2) - V)_+^{d/2} (ln|x|)^{d-1}...(ln^{(n+1)}|x|)^{d-1} dx,
  /// variant one (|x| > exp^{(n+2)}1) with numerator (d-1)(d-3) - (ln^{(n+2)}|x|)^2 and one more log factor.
  /// Evaluated in z = ln^{(k)}|x|, k = n+1 resp. n+2, where the integrand reads
  ///   ((d-1)(d-3)/(4z^2) [- 1/4] - e^{2z}...V(exp^{(k)} z))_+^{d/2} z^{d-1} on z > 1.
  /// For d >= 4 on variant zero with compactly supported V the z-integrand decays like 1/z and the
  /// bound is +inf.
  inline BoundValue clr_bound(PotentialSpec const & V, OperatorSpec const & op,
                              BoundConstants const & constants, double tol) {
      int const d = op.d;
      if (d < 3) throw DomainError("clr_bound requires d >= 3");
      if (!V.central()) throw DomainError("clr_bound: only central potentials are supported");
      int const k = op.n + ((Variant::zero == op.variant) ? 1 : 2);
      double const C = constants.at(d);
      double const prefactor = C*sphere_area(d);
      double const hardy = 0.25*double(d - 1)*double(d - 3);
      double const shift = (Variant::zero == op.variant) ? 0.0 : 0.25;

      auto const W = transform_potential(V, k);
      auto const integrand = [&W, hardy, shift, d](double z) {
          double const base = hardy/(z*z) - shift - W(z);
          if (!(base > 0)) return 0.0;
          return std::pow(base, 0.5*d)*std::pow(z, d - 1);
      };

      auto const sup = V.support();
      bool const compact = sup.bounded() && 0 == V.centrifugal();
      if (Variant::zero == op.variant && d >= 4 && compact) {
          auto b = BoundValue::from_raw(kInf);
          b.warnings.push_back("integrand ~ ((d-1)(d-3)/4)^{d/2}/z beyond the support of V: the bound diverges");
          return b;
      }

      auto breaks = W.breakpoints();
      QuadResult q;
      if (compact) {
          double z_hi = 1;
          if (hardy > shift) z_hi = std::sqrt(hardy/shift); // (d-1)(d-3)/(4z^2) = 1/4
          for (double z : breaks) z_hi = std::max(z_hi, z);
          if (z_hi > 1) {
              std::vector<double> points{1.0, z_hi};
              for (double z : breaks) if (z > 1 && z < z_hi) points.push_back(z);
              if (hardy > shift && std::sqrt(hardy/shift) < z_hi) points.push_back(std::sqrt(hardy/shift));
              q = integrate_piecewise(integrand, points, tol);
          }
      } else {
          q = integrate_semiinfinite(integrand, 1.0, tol);
      }
      auto b = BoundValue::from_raw(prefactor*q.value, q);
      b.error_estimate *= prefactor;
      return b;
  } // clr_bound

  /// Greatest l >= 0 with l(l+d-2) < S, S = sup_{r > threshold} r^2 max(-V(r), 0); none when S = 0.
  /// S is located by 10^4 log-spaced samples plus golden-section refinement around the best one.
  inline std::optional<int> l_max(PotentialSpec const & V, int d, DomainThreshold const & domain) {
      if (d < 2) throw DomainError("l_max requires d >= 2");
      auto const sup = V.support();
      double lo = domain.value, hi = kInf;
      if (0 == V.centrifugal() || V.centrifugal() > 0) {
          if (sup.empty) return std::nullopt;
          lo = std::max(lo, sup.lo);
          hi = sup.hi;
      }
      if (!(hi > lo)) return std::nullopt;
      if (!(lo > 0)) lo = std::isfinite(hi) ? hi*1e-10 : 1e-8;
      if (!std::isfinite(hi)) hi = lo*1e10;
      if (lo == domain.value) lo = std::nextafter(lo, kInf); // open domain

      auto const g = [&V](double r) {
          double v;
          try { v = V(r); } catch (DomainError const &) { return 0.0; }
          return r*r*std::max(-v, 0.0);
      };
      int constexpr samples = 10'000;
      double const log_lo = std::log(lo), log_hi = std::log(hi);
      std::vector<double> rs(samples);
      double best = -1;
      int best_i = 0;
      for (int i = 0; i < samples; ++i) {
          rs[i] = (0 == i) ? lo : (samples - 1 == i) ? hi : std::exp(log_lo + (log_hi - log_lo)*i/(samples - 1));
          double const gi = g(rs[i]);
          if (gi > best) { best = gi; best_i = i; }
      } // i
      // golden-section refinement on the neighbouring cell
      double a = rs[std::max(best_i - 1, 0)], b = rs[std::min(best_i + 1, samples - 1)];
      double const phi = 0.5*(std::sqrt(5.0) - 1);
      for (int it = 0; it < 100 && b - a > 1e-14*b; ++it) {
          double const x1 = b - phi*(b - a), x2 = a + phi*(b - a);
          if (g(x1) >= g(x2)) b = x2; else a = x1;
      } // it
      double const S = std::max(best, g(0.5*(a + b)));
      if (!(S > 0)) return std::nullopt;

      // ties l(l+d-2) = S leave no negative part, so compare strictly with rounding slack
      double const target = S*(1 - 1e-12);
      double const half = 0.5*(d - 2);
      int l = std::max(0, int(std::floor(std::sqrt(target + half*half) - half)) - 1);
      while (double(l + 1)*double(l + 1 + d - 2) < target) ++l;
      while (l > 0 && !(double(l)*double(l + d - 2) < target)) --l;
      return l;
  } // l_max

  /// Partial-wave bound: sum_{l <= l_max} D_{d,l} ([1 +] I_l),
  /// I_l = int_{threshold}^inf (-l(l+d-2)/r^2 - V(r))_+ r |ln r| ... |ln^{(n+1)} r| dr.
  inline BoundValue central_bound(PotentialSpec const & V, OperatorSpec const & op, double tol) {
      if (op.d < 2) throw DomainError("central_bound requires d >= 2");
      if (!V.central()) throw DomainError("central_bound: V must be central");
      auto const lmax = l_max(V, op.d, op.threshold);
      BoundValue total = BoundValue::from_raw(0);
      detail::hypothesis_warning(total, V, op);
      if (!lmax) return total;

      int const n = op.n;
      double const offset = (Variant::zero == op.variant) ? 1.0 : 0.0;
      double raw = 0;
      auto const sup = V.support();
      for (int l = 0; l <= *lmax; ++l) {
          auto const Vl = effective_radial_potential(V, l, op.d);
          auto const integrand = [&Vl, n](double r) {
              double const neg = negative_part_abs(Vl, r);
              return (0 == neg) ? 0.0 : neg*detail::log_chain_weight(r, n);
          };
          QuadResult q;
          try {
              q = detail::integrate_range(integrand, detail::integration_range(V, op.threshold.value),
                                          {sup.lo, sup.hi}, tol);
          } catch (QuadratureError const & e) {
              throw QuadratureError("channel l = " + std::to_string(l) + ": " + e.what(), e.abscissa);
          }
          auto const D = degeneracy(op.d, l);
          total.channels.push_back({l, D, q.value, q.error_estimate, q.evaluations});
          raw += double(D)*(offset + q.value);
          total.error_estimate += double(D)*q.error_estimate;
          total.evaluations += q.evaluations;
      } // l
      auto result = BoundValue::from_raw(raw);
      result.error_estimate = total.error_estimate;
      result.evaluations = total.evaluations;
      result.warnings = std::move(total.warnings);
      result.channels = std::move(total.channels);
      return result;
  } // central_bound

} // namespace loghardy
