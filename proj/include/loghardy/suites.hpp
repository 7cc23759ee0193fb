#pragma once
// The standard verification suites run by `verify`.

#include <cmath>
#include <string>
#include <vector>

#include "harness.hpp"

namespace loghardy {

  inline std::vector<ExistenceCase> standard_existence_cases() {
      double const e = std::exp(1.0);
      return {
          {PotentialSpec(SquareWell{1, 1, 2}), 0},
          {PotentialSpec(SquareWell{0.01, 1, 2}), 0},
          {PotentialSpec(SquareWell{1, e, e*e}), 1},
      };
  } // standard_existence_cases

  /// depth ladder for the 1-d bound
  inline SweepSpec t41_depth_ladder() {
      SweepSpec s;
      s.theorem = Theorem::t41;
      s.dims = {1};
      s.n = 0;
      s.variant = Variant::one;
      s.family = "square_well";
      s.params = {{"a", 1}, {"b", 2}};
      s.parameter = "c";
      s.values = {1, 2, 4, 8, 16, 32, 64};
      return s;
  } // t41_depth_ladder

  /// same wells, variant zero, where the bound carries the extra 1
  inline SweepSpec t41_existence_ladder() {
      auto s = t41_depth_ladder();
      s.variant = Variant::zero;
      return s;
  } // t41_existence_ladder

  /// well on [3, 6] in d = 3, inside the domain r > e of the CLR variant zero
  inline SweepSpec t42_well_ladder() {
      SweepSpec s;
      s.theorem = Theorem::t42;
      s.dims = {3};
      s.n = 0;
      s.variant = Variant::zero;
      s.family = "square_well";
      s.params = {{"a", 3}, {"b", 6}};
      s.parameter = "c";
      s.values = {0.25, 1, 4, 16, 64, 256};
      return s;
  } // t42_well_ladder

  inline SweepSpec t43_unit_well() {
      SweepSpec s;
      s.theorem = Theorem::t43;
      s.dims = {3};
      s.n = 0;
      s.variant = Variant::one;
      s.family = "square_well";
      s.params = {{"a", 1}, {"b", 2}};
      s.parameter = "c";
      s.values = {1};
      return s;
  } // t43_unit_well

  inline std::vector<SweepSpec> standard_sweeps() {
      return {t41_depth_ladder(), t41_existence_ladder(), t42_well_ladder(), t43_unit_well()};
  }

  struct NamedConvergenceCase {
      std::string name;
      ConvergenceCase c;
      std::vector<double> windows;
  }; // NamedConvergenceCase

  inline std::vector<NamedConvergenceCase> standard_convergence_cases() {
      auto const one = OperatorSpec::for_theorem(Theorem::t41, 1, 0, Variant::one);
      auto const zero = OperatorSpec::for_theorem(Theorem::t41, 1, 0, Variant::zero);
      return {
          {"free", {one, PotentialSpec(), std::nullopt}, {20, 40, 80}},
          {"deep well", {one, PotentialSpec(SquareWell{64, 1, 2}), std::nullopt}, {20, 40, 80}},
          {"weak well", {zero, PotentialSpec(SquareWell{0.01, 1, 2}), std::nullopt}, {40, 80, 160}},
      };
  } // standard_convergence_cases

  inline std::vector<int> standard_grid_ladder() { return {1000, 2000, 4000}; }

} // namespace loghardy
