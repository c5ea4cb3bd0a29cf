#pragma once

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace poag {

using Rational = boost::multiprecision::cpp_rational;

/// Feasibility of { A x = b, x >= 0 } decided by a phase-1 primal simplex
/// with Bland's rule. Scalar is double (pivot tolerance `tol`) or Rational
/// (exact; pass tol = 0).
///
/// Rows with b < 0 are negated up front; artificials start basic. Feasible
/// iff the phase-1 objective reaches (numerically) zero, in which case a
/// solution x is returned.
template <typename Scalar>
struct FeasibilityResult {
  bool feasible = false;
  std::vector<Scalar> x;
};

template <typename Scalar>
FeasibilityResult<Scalar> solve_equality_feasibility(
    std::vector<std::vector<Scalar>> a, std::vector<Scalar> b, Scalar tol);

extern template FeasibilityResult<double> solve_equality_feasibility<double>(
    std::vector<std::vector<double>>, std::vector<double>, double);
extern template FeasibilityResult<Rational>
solve_equality_feasibility<Rational>(std::vector<std::vector<Rational>>,
                                     std::vector<Rational>, Rational);

/// Exact conversion (doubles are dyadic rationals).
Rational to_rational(double x);

}  // namespace poag
