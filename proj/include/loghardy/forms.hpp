#pragma once
// Quadratic forms of H_{d,n} in one angular channel, evaluated in gradient form on three
// equivalent sides: the original radial coordinate r, after one logarithmic step (s = ln r),
// and fully reduced to -d^2/ds^2 + W(s) after n+1 steps.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "dual.hpp"
#include "errors.hpp"
#include "iterfun.hpp"
#include "potentials.hpp"
#include "quadrature.hpp"

namespace loghardy {

  /// u(r) = amplitude * exp(-1/(1-t^2)), t the affine map of [lo, hi] onto [-1, 1]
  struct Bump {
      double lo = 0, hi = 1;
      double amplitude = 1;

      template <typename T>
      T operator()(T r) const {
          using std::exp;
          T const t = (r*2.0 - (lo + hi))/(hi - lo);
          T const one_minus = T(1.0) - t*t;
          if (!(value_of(one_minus) > 0)) return T(0.0);
          return T(amplitude)*exp(T(-1.0)/one_minus);
      }
  }; // Bump

  enum class FormSide {
      original,    // r-coordinates, measure r^{d-1} dr
      single_step, // psi(s) = s^{-(d-1)/2} e^{(d-2)s/2} u(e^s), measure s^{d-1} ds
      reduced      // w after n+1 steps, measure ds
  };

  inline char const * to_string(FormSide side) {
      switch (side) {
          case FormSide::original: return "original";
          case FormSide::single_step: return "single_step";
          default: return "reduced";
      }
  } // to_string

  struct FormCase {
      int d = 1;
      LogDepth n{};
      int l = 0;
      Bump u;
      PotentialSpec V;
  }; // FormCase

  namespace detail {

    // w_k on the reduced side: w_1(s) = e^{(d-2)s/2} u(e^s), w_{j+1}(y) = e^{-y/2} w_j(e^y)
    template <typename T>
    T reduced_function(Bump const & u, int d, int steps, T y) {
        using std::exp;
        if (1 == steps) return exp(y*(0.5*(d - 2)))*u(exp(y));
        return exp(y*(-0.5))*reduced_function(u, d, steps - 1, exp(y));
    } // reduced_function

    template <typename T>
    T single_step_function(Bump const & u, int d, T s) {
        using std::exp;
        return pow_half(s, -(d - 1))*exp(s*(0.5*(d - 2)))*u(exp(s));
    } // single_step_function

    inline std::vector<double> potential_breaks(PotentialSpec const & V, double lo, double hi,
                                                double (*map)(double)) {
        std::vector<double> points;
        auto const sup = V.support();
        if (sup.empty) return points;
        for (double r : {sup.lo, sup.hi}) {
            if (!std::isfinite(r) || !(r > 0)) continue;
            double const x = map(r);
            if (x > lo && x < hi) points.push_back(x);
        } // r
        return points;
    } // potential_breaks

  } // namespace detail

  /// The support of u must lie inside the domain r > exp^{(n)}(0). The single-step side needs
  /// the support clear of r = 1, and r > 1 for even d.
  inline QuadResult quadratic_form_value(FormSide side, FormCase const & c, double tol) {
      int const d = c.d;
      int const n = c.n;
      double const gamma = double(c.l)*double(c.l + d - 2);
      double const threshold = iterated_exp(0, c.n);
      if (!(c.u.lo >= threshold && c.u.lo < c.u.hi)) {
          throw DomainError("quadratic_form_value: test function support must lie above exp^{(n)}(0) = "
                            + std::to_string(threshold));
      }
      if (1 == d && 0 != c.l) throw DomainError("quadratic_form_value: d = 1 has only l = 0");

      switch (side) {
          case FormSide::original: {
              auto const f = [&](double r) {
                  auto const u = c.u(Dual::variable(r));
                  double const pot = gamma/(r*r) - hardy_weight_stack(r, d, c.n) + c.V(r);
                  return std::pow(r, d - 1)*(u.d*u.d + pot*u.v*u.v);
              };
              std::vector<double> points{c.u.lo, c.u.hi};
              for (double b : detail::potential_breaks(c.V, c.u.lo, c.u.hi, [](double r) { return r; })) points.push_back(b);
              return integrate_piecewise(f, points, tol);
          }
          case FormSide::single_step: {
              double const s_lo = std::log(c.u.lo), s_hi = std::log(c.u.hi);
              if (s_lo < 0 && s_hi > 0) throw DomainError("single-step form: support of u must not contain r = 1");
              if (0 == d % 2 && s_lo < 0) throw DomainError("single-step form: even d needs support in r > 1");
              double const hardy = 0.25*double(d - 1)*double(d - 3);
              auto const f = [&](double s) {
                  auto const psi = detail::single_step_function(c.u, d, Dual::variable(s));
                  double pot = -hardy/(s*s) + gamma/(s*s) + (1 - 1/(s*s))*gamma;
                  if (n >= 1) pot -= hardy_weight_stack(s, 1, LogDepth(n - 1));
                  double const r = std::exp(s);
                  pot += r*r*c.V(r);
                  return pow_half(s, 2*(d - 1))*(psi.d*psi.d + pot*psi.v*psi.v);
              };
              std::vector<double> points{s_lo, s_hi};
              for (double b : detail::potential_breaks(c.V, s_lo, s_hi, [](double r) { return std::log(r); })) points.push_back(b);
              return integrate_piecewise(f, points, tol);
          }
          case FormSide::reduced: {
              int const k = n + 1;
              if (!(c.u.lo > threshold)) throw DomainError("reduced form: support of u must start above the threshold");
              auto const W = transform_potential(1 == d ? c.V : effective_radial_potential(c.V, c.l, d), k);
              double const y_lo = iterated_log(c.u.lo, LogDepth(k)), y_hi = iterated_log(c.u.hi, LogDepth(k));
              auto const f = [&](double y) {
                  auto const w = detail::reduced_function(c.u, d, k, Dual::variable(y));
                  return w.d*w.d + W(y)*w.v*w.v;
              };
              std::vector<double> points{y_lo, y_hi};
              for (double b : W.breakpoints()) if (b > y_lo && b < y_hi) points.push_back(b);
              return integrate_piecewise(f, points, tol);
          }
      }
      throw DomainError("quadratic_form_value: unknown side");
  } // quadratic_form_value

  /// int |u'|^2 r^{d-1} dr (plus the angular part for l > 0)
  inline QuadResult kinetic_energy(FormCase const & c, double tol) {
      int const d = c.d;
      double const gamma = double(c.l)*double(c.l + d - 2);
      auto const f = [&](double r) {
          auto const u = c.u(Dual::variable(r));
          return std::pow(r, d - 1)*(u.d*u.d + gamma/(r*r)*u.v*u.v);
      };
      return integrate(f, c.u.lo, c.u.hi, tol);
  } // kinetic_energy

  /// five bumps placed above the threshold exp^{(n)}(0), at scale max(1, threshold)
  inline std::vector<Bump> bump_suite(LogDepth n) {
      double const t = iterated_exp(0, n);
      double const s = std::max(1.0, t);
      return {
          {t + 0.2*s, t + 0.9*s, 1},
          {t + 0.05*s, t + 0.5*s, 1},
          {t + 1.5*s, t + 4*s, 1},
          {t + 0.3*s, t + 12*s, 1},
          {t + 5*s, t + 40*s, 1},
      };
  } // bump_suite

  /// a square well overlapping the bump suite of depth n
  inline PotentialSpec suite_well(LogDepth n) {
      double const t = iterated_exp(0, n);
      double const s = std::max(1.0, t);
      return PotentialSpec(SquareWell{2, t + 0.4*s, t + 2*s});
  } // suite_well

} // namespace loghardy
