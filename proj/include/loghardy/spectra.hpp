#pragma once
// Finite-difference discretization of -d^2/ds^2 + W(s) in the fully transformed coordinate and
// exact negative-eigenvalue counting of the resulting symmetric tridiagonal matrices (Sturm / LDL^T inertia).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "errors.hpp"
#include "iterfun.hpp"
#include "potentials.hpp"

namespace loghardy {

  /// m interior points of [s_min, s_max], Dirichlet conditions at both ends
  struct Grid {
      double s_min = 0, s_max = 1;
      int m = 2;

      Grid() = default;
      Grid(double lo, double hi, int points) : s_min(lo), s_max(hi), m(points) {
          if (!(lo < hi)) throw DomainError("Grid: need s_min < s_max");
          if (points < 2) throw DomainError("Grid: need at least two interior points");
      }
      double h() const { return (s_max - s_min)/(m + 1); }
      double point(int i) const { return s_min + (i + 1)*h(); }
  }; // Grid

  struct TridiagonalOperator {
      std::vector<double> diagonal;
      std::vector<double> off_diagonal; // size m-1

      std::size_t size() const { return diagonal.size(); }

      // max row sum of absolute values
      double norm() const {
          double nrm = 0;
          auto const m = diagonal.size();
          for (std::size_t i = 0; i < m; ++i) {
              double row = std::abs(diagonal[i]);
              if (i > 0) row += std::abs(off_diagonal[i - 1]);
              if (i + 1 < m) row += std::abs(off_diagonal[i]);
              nrm = std::max(nrm, row);
          } // i
          return nrm;
      }
  }; // TridiagonalOperator

  /// diagonal 2/h^2 + W(s_i), off-diagonal -1/h^2
  template <typename Potential>
  TridiagonalOperator assemble(Potential const & W, Grid const & grid) {
      double const h = grid.h();
      double const kin = 1/(h*h);
      TridiagonalOperator T;
      T.diagonal.resize(grid.m);
      T.off_diagonal.assign(grid.m - 1, -kin);
      for (int i = 0; i < grid.m; ++i) {
          double const s = grid.point(i);
          double w;
          try {
              w = W(s);
          } catch (OverflowError const & e) {
              throw OverflowError("assemble: grid point " + std::to_string(i) + " (s = " + std::to_string(s) + "): " + e.what());
          } catch (DomainError const & e) {
              throw DomainError("assemble: grid point " + std::to_string(i) + " (s = " + std::to_string(s) + "): " + e.what());
          }
          if (!std::isfinite(w)) throw OverflowError("assemble: non-finite potential at grid point " + std::to_string(i));
          T.diagonal[i] = 2*kin + w;
      } // i
      return T;
  } // assemble

  /// number of eigenvalues below a shift; low < high only when a zero pivot made the count ambiguous
  struct InertiaCount {
      std::int64_t low = 0, high = 0;
      bool ambiguous() const { return low != high; }
  }; // InertiaCount

  namespace detail {
    // Sturm count with zero pivots replaced by sign*delta; reports whether any pivot was zero
    inline std::int64_t sturm_count(TridiagonalOperator const & T, double shift, double perturbed, bool & hit_zero) {
        auto const m = T.size();
        std::int64_t count = 0;
        double q = 0;
        for (std::size_t i = 0; i < m; ++i) {
            q = (T.diagonal[i] - shift) - ((i > 0) ? T.off_diagonal[i - 1]*(T.off_diagonal[i - 1]/q) : 0.0);
            if (0 == q) { hit_zero = true; q = perturbed; }
            count += (q < 0);
        } // i
        return count;
    } // sturm_count
  } // namespace detail

  /// Eigenvalues of T strictly below shift, from the signs of the LDL^T pivots of T - shift.
  /// Zero pivots are replaced by +-2^-40 |T|; disagreeing counts come back as an interval.
  inline InertiaCount inertia_negative_count(TridiagonalOperator const & T, double shift = 0) {
      if (T.off_diagonal.size() + 1 != T.size() && !(T.size() == 0 && T.off_diagonal.empty())) {
          throw DomainError("inertia_negative_count: inconsistent dimensions");
      }
      if (0 == T.size()) return {};
      double nrm = T.norm();
      if (0 == nrm) nrm = 1;
      double const delta = std::ldexp(nrm, -40);
      bool hit_zero = false;
      auto const plus = detail::sturm_count(T, shift, delta, hit_zero);
      if (!hit_zero) return {plus, plus};
      auto const minus = detail::sturm_count(T, shift, -delta, hit_zero);
      return {std::min(plus, minus), std::max(plus, minus)};
  } // inertia_negative_count

  /// k smallest eigenvalues by bisection on the inertia function, each bracketed to width <= tol
  inline std::vector<double> lowest_eigenvalues(TridiagonalOperator const & T, int k, double tol) {
      auto const m = int(T.size());
      if (k < 1 || k > m) throw DomainError("lowest_eigenvalues: need 1 <= k <= m");
      if (!(tol > 0)) throw DomainError("lowest_eigenvalues: tolerance must be positive");
      // Gershgorin interval
      double glo = T.diagonal[0], ghi = T.diagonal[0];
      for (int i = 0; i < m; ++i) {
          double r = 0;
          if (i > 0) r += std::abs(T.off_diagonal[i - 1]);
          if (i + 1 < m) r += std::abs(T.off_diagonal[i]);
          glo = std::min(glo, T.diagonal[i] - r);
          ghi = std::max(ghi, T.diagonal[i] + r);
      } // i
      double const pad = 2*std::numeric_limits<double>::epsilon()*std::max(std::abs(glo), std::abs(ghi)) + tol;
      glo -= pad; ghi += pad;

      std::vector<double> eigenvalues;
      eigenvalues.reserve(k);
      double lower = glo;
      for (int j = 1; j <= k; ++j) {
          double lo = lower, hi = ghi;
          while (hi - lo > tol) {
              double const mid = 0.5*(lo + hi);
              if (mid <= lo || mid >= hi) break;
              if (inertia_negative_count(T, mid).low >= j) hi = mid; else lo = mid;
          } // while
          eigenvalues.push_back(0.5*(lo + hi));
          lower = lo;
      } // j
      return eigenvalues;
  } // lowest_eigenvalues

  /// truncation window and grid size; refinements repeat the count with L and m doubled
  struct Numerics {
      double L = 20;
      int m = 4000;
      int refinements = 0;
      int eigenvalues = 0; // number of lowest eigenvalues to report at the finest level
  }; // Numerics

  struct TrailEntry {
      double L = 0;
      int m = 0;
      double s_min = 0, s_max = 0;
      InertiaCount count;
  }; // TrailEntry

  struct CountResult {
      InertiaCount negative_count;        // at the finest level
      std::vector<TrailEntry> trail;      // one entry per refinement level
      std::vector<double> lowest_eigenvalues;
      int steps = 0;                      // transformation depth k = n+1

      bool trail_monotone() const {
          for (std::size_t i = 1; i < trail.size(); ++i) {
              if (trail[i].count.low < trail[i - 1].count.low) return false;
          }
          return true;
      }
  }; // CountResult

  /// Lower end of the transformed s-domain: ln^{(n+1)} of the radial threshold.
  /// Returns -inf when the threshold is 0 (the whole line).
  inline double transformed_lower_end(OperatorSpec const & op) {
      int const k = op.n + 1;
      int const depth = op.threshold.depth;
      double const base = (Variant::zero == op.variant) ? 0.0 : 1.0;
      if (depth >= k) return iterated_exp(base, LogDepth(depth - k));
      if (depth == k - 1) return (0 == base) ? -kInf : 0.0; // ln(0), ln(1)
      throw DomainError("threshold depth below the log depth of the operator");
  } // transformed_lower_end

  /// window for a given L: [-L, L] on the line, [s_min, s_min + L] otherwise
  inline Grid count_grid(OperatorSpec const & op, double L, int m) {
      double const lo = transformed_lower_end(op);
      if (std::isinf(lo)) return Grid(-L, L, m);
      return Grid(lo, lo + L, m);
  } // count_grid

  /// Channel operator -d^2/ds^2 + W_l(s) after k = n+1 transformation steps, W_l the image of
  /// l(l+d-2)/r^2 + V(r) (d = 1: V itself).
  inline TransformedPotential channel_potential(OperatorSpec const & op, PotentialSpec const & V, int l) {
      if (1 == op.d) {
          if (0 != l) throw DomainError("d = 1 has no angular channels");
          return transform_potential(V, op.n + 1);
      }
      return transform_potential(effective_radial_potential(V, l, op.d), op.n + 1);
  } // channel_potential

  /// discrete count of negative eigenvalues of H_{d,n} (channel l for d >= 2)
  inline CountResult count_negative(OperatorSpec const & op, PotentialSpec const & V,
                                    std::optional<int> l, Numerics const & num) {
      if (!(num.L > 0)) throw DomainError("count_negative: window length L must be positive");
      if (num.refinements < 0) throw DomainError("count_negative: refinements must be non-negative");
      auto const W = channel_potential(op, V, l.value_or(0));
      CountResult result;
      result.steps = op.n + 1;
      for (int level = 0; level <= num.refinements; ++level) {
          double const L = num.L*std::ldexp(1.0, level);
          int const m = num.m << level;
          auto const grid = count_grid(op, L, m);
          auto const T = assemble(W, grid);
          auto const c = inertia_negative_count(T, 0);
          result.trail.push_back({L, m, grid.s_min, grid.s_max, c});
          if (level == num.refinements && num.eigenvalues > 0) {
              result.lowest_eigenvalues = lowest_eigenvalues(T, std::min(num.eigenvalues, m), 1e-10);
          }
      } // level
      result.negative_count = result.trail.back().count;
      return result;
  } // count_negative

  struct ChannelCount {
      int l = 0;
      std::int64_t degeneracy = 1;
      InertiaCount count;
      bool trail_monotone = true;
  }; // ChannelCount

  struct CentralCount {
      InertiaCount total;
      std::optional<int> l_max;
      std::vector<ChannelCount> channels;
  }; // CentralCount

  /// sum_l D_{d,l} N_l, stopping at the first channel with N_l = 0 beyond l_max
  inline CentralCount total_central_count(OperatorSpec const & op, PotentialSpec const & V, Numerics const & num) {
      if (op.d < 2) throw DomainError("total_central_count requires d >= 2");
      CentralCount result;
      result.l_max = l_max(V, op.d, op.threshold);
      int constexpr l_limit = 10'000;
      for (int l = 0; l <= l_limit; ++l) {
          auto const c = count_negative(op, V, l, num);
          auto const D = degeneracy(op.d, l);
          result.channels.push_back({l, D, c.negative_count, c.trail_monotone()});
          result.total.low += D*c.negative_count.low;
          result.total.high += D*c.negative_count.high;
          bool const beyond = !result.l_max || l > *result.l_max;
          if (0 == c.negative_count.high && beyond) break;
      } // l
      return result;
  } // total_central_count

} // namespace loghardy
