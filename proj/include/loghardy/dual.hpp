#pragma once
// Forward-mode dual numbers: carries f and f' through the coordinate maps
// so that quadratic forms can be written in gradient form without hand-derived chain rules.

#include <cmath>

namespace loghardy {

  struct Dual {
      double v = 0; // value
      double d = 0; // derivative

      constexpr Dual() = default;
      constexpr Dual(double value, double derivative = 0) : v(value), d(derivative) {}

      static constexpr Dual variable(double x) { return Dual(x, 1); }
  }; // Dual

  constexpr Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
  constexpr Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
  constexpr Dual operator-(Dual a) { return {-a.v, -a.d}; }
  constexpr Dual operator*(Dual a, Dual b) { return {a.v*b.v, a.d*b.v + a.v*b.d}; }
  constexpr Dual operator/(Dual a, Dual b) { return {a.v/b.v, (a.d*b.v - a.v*b.d)/(b.v*b.v)}; }

  inline Dual exp(Dual a) { double const e = std::exp(a.v); return {e, e*a.d}; }
  inline Dual log(Dual a) { return {std::log(a.v), a.d/a.v}; }
  inline Dual sqrt(Dual a) { double const s = std::sqrt(a.v); return {s, 0.5*a.d/s}; }

  // plain-double overloads so templated code can use unqualified calls
  inline double value_of(double x) { return x; }
  inline double value_of(Dual x) { return x.v; }

  /// x^(p/2) for integer p; odd p needs x > 0, even p accepts any sign
  template <typename T>
  T pow_half(T x, int p) {
      using std::sqrt;
      T result(1.0);
      int const whole = (p >= 0 ? p : -p)/2;
      for (int i = 0; i < whole; ++i) result = result*x;
      if (p % 2) result = result*sqrt(x);
      return (p >= 0) ? result : T(1.0)/result;
  } // pow_half

} // namespace loghardy
