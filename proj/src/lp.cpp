#include "poag/lp.hpp"

#include <cmath>
#include <cstdint>

namespace poag {

Rational to_rational(double x) {
  // Doubles are dyadic: decompose as mantissa * 2^e with exact arithmetic.
  if (x == 0.0) return Rational(0);
  int e = 0;
  double m = std::frexp(x, &e);  // x = m * 2^e, |m| in [0.5, 1)
  int64_t mi = static_cast<int64_t>(std::ldexp(m, 53));
  e -= 53;
  Rational r(mi);
  if (e >= 0) {
    boost::multiprecision::cpp_int shift = boost::multiprecision::cpp_int(1)
                                           << e;
    r *= Rational(shift);
  } else {
    boost::multiprecision::cpp_int shift = boost::multiprecision::cpp_int(1)
                                           << (-e);
    r /= Rational(shift);
  }
  return r;
}

namespace {

template <typename Scalar>
bool greater_tol(const Scalar& a, const Scalar& b, const Scalar& tol) {
  return a > b + tol;
}

}  // namespace

template <typename Scalar>
FeasibilityResult<Scalar> solve_equality_feasibility(
    std::vector<std::vector<Scalar>> a, std::vector<Scalar> b, Scalar tol) {
  const int m = static_cast<int>(a.size());
  const int n = m == 0 ? 0 : static_cast<int>(a[0].size());
  FeasibilityResult<Scalar> res;
  if (m == 0) {
    res.feasible = true;
    res.x.assign(n, Scalar(0));
    return res;
  }

  for (int i = 0; i < m; ++i)
    if (b[i] < Scalar(0)) {
      b[i] = -b[i];
      for (auto& v : a[i]) v = -v;
    }

  // Tableau: columns [structural | artificial | rhs]; artificial i basic in
  // row i. Phase-1 objective row = -(sum of constraint rows) over structural
  // columns, value = -(sum b).
  const int cols = n + m + 1;
  std::vector<std::vector<Scalar>> t(m + 1, std::vector<Scalar>(cols, Scalar(0)));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = Scalar(1);
    t[i][cols - 1] = b[i];
  }
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;
  for (int j = 0; j < n; ++j) {
    Scalar s(0);
    for (int i = 0; i < m; ++i) s += t[i][j];
    t[m][j] = -s;
  }
  {
    Scalar s(0);
    for (int i = 0; i < m; ++i) s += t[i][cols - 1];
    t[m][cols - 1] = -s;
  }

  // Bland's rule: entering = lowest-index column with negative reduced cost,
  // leaving = lowest-index row among min-ratio ties. Terminates without
  // cycling.
  for (;;) {
    int enter = -1;
    for (int j = 0; j < n + m; ++j)
      if (t[m][j] < -tol) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    Scalar best(0);
    for (int i = 0; i < m; ++i) {
      if (!greater_tol(t[i][enter], Scalar(0), tol)) continue;
      Scalar ratio = t[i][cols - 1] / t[i][enter];
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) break;  // unbounded phase-1 objective cannot happen; guard
    Scalar piv = t[leave][enter];
    for (int j = 0; j < cols; ++j) t[leave][j] /= piv;
    for (int i = 0; i <= m; ++i) {
      if (i == leave) continue;
      Scalar f = t[i][enter];
      if (f == Scalar(0)) continue;
      for (int j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  Scalar obj = -t[m][cols - 1];  // residual sum of artificials
  Scalar feas_tol = tol == Scalar(0) ? Scalar(0) : tol;
  if (obj < Scalar(0)) obj = -obj;
  res.feasible = !(obj > feas_tol);
  if (res.feasible) {
    res.x.assign(n, Scalar(0));
    for (int i = 0; i < m; ++i)
      if (basis[i] < n) res.x[basis[i]] = t[i][cols - 1];
    for (auto& v : res.x)
      if (v < Scalar(0)) v = Scalar(0);  // clip pivot dust
  }
  return res;
}

template FeasibilityResult<double> solve_equality_feasibility<double>(
    std::vector<std::vector<double>>, std::vector<double>, double);
template FeasibilityResult<Rational> solve_equality_feasibility<Rational>(
    std::vector<std::vector<Rational>>, std::vector<Rational>, Rational);

}  // namespace poag
