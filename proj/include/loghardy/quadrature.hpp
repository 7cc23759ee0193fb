#pragma once
// Globally adaptive 7/15-point Gauss-Kronrod integration on finite and semi-infinite intervals.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "errors.hpp"

namespace loghardy {

  struct QuadResult {
      double value = 0;
      double error_estimate = 0;
      long evaluations = 0;
  }; // QuadResult

  struct QuadOptions {
      long max_evaluations = 1'000'000;
  }; // QuadOptions

  namespace detail {

    // Kronrod abscissae on [0,1) in decreasing order; odd indices are the 7-point Gauss nodes
    inline constexpr std::array<double, 8> xgk = {
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    inline constexpr std::array<double, 8> wgk = {
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    inline constexpr std::array<double, 4> wg = {
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

    struct Segment {
        double a, b;
        double value;  // Kronrod estimate
        double error;  // |Kronrod - Gauss|
        double absval; // Kronrod estimate of the integral of |f|
        bool operator<(Segment const & other) const { return error < other.error; }
    }; // Segment

    template <typename F>
    double checked_call(F const & f, double x) {
        double const y = f(x);
        if (std::isnan(y)) throw QuadratureError("integrand returned NaN at x = " + std::to_string(x), x);
        return y;
    } // checked_call

    template <typename F>
    Segment gauss_kronrod_15(F const & f, double a, double b) {
        double const center = 0.5*(a + b), half = 0.5*(b - a);
        double const fc = checked_call(f, center);
        double resk = fc*wgk[7], resg = fc*wg[3], resabs = std::abs(fc)*wgk[7];
        for (int j = 0; j < 7; ++j) {
            double const dx = half*xgk[j];
            double const f1 = checked_call(f, center - dx), f2 = checked_call(f, center + dx);
            resk += wgk[j]*(f1 + f2);
            resabs += wgk[j]*(std::abs(f1) + std::abs(f2));
            if (j & 1) resg += wg[j/2]*(f1 + f2);
        } // j
        return Segment{a, b, resk*half, std::abs((resk - resg)*half), resabs*std::abs(half)};
    } // gauss_kronrod_15

    // pairwise summation, independent of the order in which segments were refined
    inline double pairwise_sum(std::vector<double> const & v, std::size_t lo, std::size_t hi) {
        if (hi - lo <= 8) {
            double s = 0;
            for (auto i = lo; i < hi; ++i) s += v[i];
            return s;
        }
        auto const mid = lo + (hi - lo)/2;
        return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
    } // pairwise_sum

    template <typename F>
    QuadResult adaptive(F const & f, std::vector<double> const & partition, double tol, QuadOptions const & opt) {
        std::priority_queue<Segment> heap;
        long evaluations = 0;
        double total = 0, total_err = 0, total_abs = 0;
        for (std::size_t i = 0; i + 1 < partition.size(); ++i) {
            auto const s = gauss_kronrod_15(f, partition[i], partition[i + 1]);
            evaluations += 15;
            total += s.value; total_err += s.error; total_abs += s.absval;
            heap.push(s);
        } // i

        auto const converged = [&] {
            double const target = std::max(tol*std::max(1.0, std::abs(total)),
                                            50*std::numeric_limits<double>::epsilon()*total_abs);
            return total_err <= target;
        };

        while (!converged()) {
            if (evaluations + 30 > opt.max_evaluations) {
                throw QuadratureError("quadrature did not converge within " + std::to_string(opt.max_evaluations)
                                      + " evaluations (error estimate " + std::to_string(total_err) + ")",
                                      std::numeric_limits<double>::quiet_NaN());
            }
            auto const worst = heap.top();
            double const mid = 0.5*(worst.a + worst.b);
            if (!(mid > worst.a && mid < worst.b)) {
                throw QuadratureError("quadrature interval cannot be subdivided further", mid);
            }
            heap.pop();
            auto const left = gauss_kronrod_15(f, worst.a, mid);
            auto const right = gauss_kronrod_15(f, mid, worst.b);
            evaluations += 30;
            total += left.value + right.value - worst.value;
            total_err += left.error + right.error - worst.error;
            total_abs += left.absval + right.absval - worst.absval;
            heap.push(left);
            heap.push(right);
        } // while

        // deterministic final sums ordered by position
        std::vector<Segment> segments;
        segments.reserve(heap.size());
        while (!heap.empty()) { segments.push_back(heap.top()); heap.pop(); }
        std::sort(segments.begin(), segments.end(), [](auto const & x, auto const & y) { return x.a < y.a; });
        std::vector<double> values(segments.size()), errors(segments.size());
        for (std::size_t i = 0; i < segments.size(); ++i) {
            values[i] = segments[i].value;
            errors[i] = segments[i].error;
        } // i
        return QuadResult{pairwise_sum(values, 0, values.size()), pairwise_sum(errors, 0, errors.size()), evaluations};
    } // adaptive

  } // namespace detail

  /// Integral of f over (a, b); endpoints are never evaluated, so integrable endpoint singularities are fine.
  template <typename F>
  QuadResult integrate(F const & f, double a, double b, double tol, QuadOptions const & opt = {}) {
      if (!(a < b)) throw DomainError("integrate: need a < b");
      if (!(tol > 0)) throw DomainError("integrate: tolerance must be positive");
      return detail::adaptive(f, {a, b}, tol, opt);
  } // integrate

  /// Integral over [points.front(), points.back()] with the interior points as forced breakpoints
  /// (jumps of the integrand belong there).
  template <typename F>
  QuadResult integrate_piecewise(F const & f, std::vector<double> points, double tol, QuadOptions const & opt = {}) {
      std::sort(points.begin(), points.end());
      points.erase(std::unique(points.begin(), points.end()), points.end());
      if (points.size() < 2) throw DomainError("integrate_piecewise: need at least two distinct points");
      if (!(tol > 0)) throw DomainError("integrate_piecewise: tolerance must be positive");
      return detail::adaptive(f, points, tol, opt);
  } // integrate_piecewise

  /// Integral of f over (a, inf) via x = a + t/(1-t). The half t > 1/2 is integrated in u = 1 - t,
  /// x = a + (1-u)/u, so that u resolves down to the smallest doubles instead of stopping at 1 - t ~ 1e-16.
  template <typename F>
  QuadResult integrate_semiinfinite(F const & f, double a, double tol, QuadOptions const & opt = {}) {
      auto const head = [&f, a](double t) {
          double const one_minus = 1 - t;
          double const y = f(a + t/one_minus);
          if (0 == y) return 0.0;
          return y/(one_minus*one_minus);
      };
      auto const tail = [&f, a](double u) {
          double const x = a + (1 - u)/u;
          if (!std::isfinite(x)) return 0.0; // u below the double range of 1/u
          double const y = f(x);
          if (0 == y) return 0.0; // f decays faster than the Jacobian grows
          return y/(u*u);
      };
      auto const h = integrate(head, 0.0, 0.5, tol, opt);
      auto const t = integrate(tail, 0.0, 0.5, tol, opt);
      return {h.value + t.value, h.error_estimate + t.error_estimate, h.evaluations + t.evaluations};
  } // integrate_semiinfinite

} // namespace loghardy
