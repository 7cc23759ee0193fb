#pragma once
// Iterated logarithms and exponentials, Hardy weight stacks, domain thresholds,
// angular degeneracies and the Gamma function they need.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"

namespace loghardy {

  // Transformation steps beyond this depth leave the double range
  // (exp^{(4)} of anything above ~2 overflows).
  inline constexpr int kMaxDepth = 3;

  /// Number of composition factors in ln^{(n)} / exp^{(n)}; zero is the identity.
  class LogDepth {
    public:
      constexpr LogDepth() = default;
      constexpr explicit LogDepth(int n) : n_(n) {
          if (n < 0) throw DomainError("LogDepth must be non-negative, got " + std::to_string(n));
      }
      constexpr int value() const { return n_; }
      constexpr operator int() const { return n_; }
    private:
      int n_ = 0;
  }; // LogDepth

  enum class Variant { zero, one };

  inline char const * to_string(Variant v) { return Variant::zero == v ? "zero" : "one"; }

  /// ln applied n times. Throws DomainError if an intermediate value is not positive.
  inline double iterated_log(double x, LogDepth n) {
      double y = x;
      for (int k = 0; k < n; ++k) {
          if (!(y > 0)) {
              throw DomainError("iterated_log: argument " + std::to_string(y) + " at step "
                                + std::to_string(k + 1) + " of " + std::to_string(int(n)) + " is not positive");
          }
          y = std::log(y);
      } // k
      return y;
  } // iterated_log

  /// exp applied n times. Throws OverflowError once the value leaves the double range.
  inline double iterated_exp(double x, LogDepth n) {
      double y = x;
      for (int k = 0; k < n; ++k) {
          y = std::exp(y);
          if (!std::isfinite(y)) {
              throw OverflowError("iterated_exp: exp^{(" + std::to_string(int(n)) + ")}("
                                  + std::to_string(x) + ") overflows double precision");
          }
      } // k
      return y;
  } // iterated_exp

  /// ln^{(1)}x, ..., ln^{(count)}x. Every value except the last one must come out positive
  /// (the last one is allowed to be negative, e.g. ln x for x < 1).
  inline std::vector<double> log_sequence(double x, int count) {
      std::vector<double> seq;
      seq.reserve(count);
      double y = x;
      for (int k = 0; k < count; ++k) {
          if (!(y > 0)) throw DomainError("log_sequence: ln^{(" + std::to_string(k) + ")}x = "
                                          + std::to_string(y) + " is not positive");
          y = std::log(y);
          seq.push_back(y);
      } // k
      return seq;
  } // log_sequence

  /// exp^{(depth)}(0) or exp^{(depth)}(1): lower end of the radial domain of H_{d,n}.
  struct DomainThreshold {
      int depth = 0;
      Variant variant = Variant::zero;
      double value = 0;

      static DomainThreshold make(int depth, Variant variant) {
          if (depth < 0) throw DomainError("DomainThreshold: negative depth");
          double const base = (Variant::zero == variant) ? 0.0 : 1.0;
          return DomainThreshold{depth, variant, iterated_exp(base, LogDepth(depth))};
      }
  }; // DomainThreshold

  /// (d-2)^2/(4x^2) + sum_{k=1..n} 1/(4 x^2 (ln x)^2 ... (ln^{(k)} x)^2)
  inline double hardy_weight_stack(double x, int d, LogDepth n) {
      if (d < 1) throw DomainError("hardy_weight_stack: dimension must be >= 1");
      if (!(x > 0)) throw DomainError("hardy_weight_stack: x must exceed exp^{(n)}(0)");
      double const x2 = x*x;
      double sum = double(d - 2)*double(d - 2)/(4*x2);
      double denom = 4*x2;
      double y = x;
      for (int k = 1; k <= n; ++k) {
          y = std::log(y);
          if (!(y > 0)) throw DomainError("hardy_weight_stack: x = " + std::to_string(x)
                                          + " does not exceed exp^{(" + std::to_string(int(n)) + ")}(0)");
          denom *= y*y;
          sum += 1/denom;
      } // k
      return sum;
  } // hardy_weight_stack

  namespace detail {
    // (k-1)! for k = 1..21, exact in double
    inline constexpr std::array<double, 21> factorials = [] {
        std::array<double, 21> f{};
        f[0] = 1;
        for (int i = 1; i < 21; ++i) f[i] = f[i - 1]*i;
        return f;
    }();
  } // namespace detail

  /// Gamma function. Integer arguments up to 21 use exact factorials,
  /// everything else the Lanczos approximation (g = 7, 9 terms).
  inline double gamma(double x) {
      if (x == std::floor(x)) {
          if (x <= 0) throw DomainError("gamma: pole at non-positive integer");
          if (x <= 21) return detail::factorials[int(x) - 1];
      }
      if (x < 0.5) { // reflection
          return std::numbers::pi/(std::sin(std::numbers::pi*x)*gamma(1 - x));
      }
      static constexpr double g = 7;
      static constexpr std::array<double, 9> c = {
          0.99999999999980993, 676.5203681218851, -1259.1392167224028,
          771.32342877765313, -176.61502916214059, 12.507343278686905,
          -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
      double const z = x - 1;
      double a = c[0];
      for (int i = 1; i < 9; ++i) a += c[i]/(z + i);
      double const t = z + g + 0.5;
      // t^(z+0.5) split in two factors to postpone overflow
      double const half = std::pow(t, 0.5*(z + 0.5));
      return std::sqrt(2*std::numbers::pi)*half*(half*std::exp(-t))*a;
  } // gamma

  /// Multiplicity D_{d,l} of the eigenvalue l(l+d-2) of the sphere Laplacian on S^{d-1}.
  inline std::int64_t degeneracy(int d, int l) {
      if (d < 2) throw DomainError("degeneracy: dimension must be >= 2");
      if (l < 0) throw DomainError("degeneracy: l must be non-negative");
      if (0 == l) return 1;
      if (2 == d) return 2; // cos(l phi), sin(l phi); the closed form hits Gamma(0)
      double const D = (2.0*l + d - 2)*gamma(d + l - 2)/(gamma(d - 1)*gamma(l + 1));
      return std::llround(D);
  } // degeneracy

  /// |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2)
  inline double sphere_area(int d) {
      if (d < 1) throw DomainError("sphere_area: dimension must be >= 1");
      return 2*std::pow(std::numbers::pi, 0.5*d)/gamma(0.5*d);
  } // sphere_area

} // namespace loghardy
