#pragma once

// Central finite differences used wherever a field is only available as a
// callable. Truncation error is O(h^2); rounding error is O(eps/h).

#include "geomech/types.hpp"

namespace geomech {

inline constexpr double kDefaultFdStep = 1e-5;

/// d/ds f(x + s v) at s = 0. A zero direction yields an exact zero.
template <class F>
double directional_derivative(const F& f, const Vector& x, const Vector& v, double h = kDefaultFdStep) {
  if (v.size() == 0 || v.isZero(0.0)) return 0.0;
  const Vector xp = x + h * v;
  const Vector xm = x - h * v;
  return (f(xp) - f(xm)) / (2.0 * h);
}

template <class F>
Vector gradient(const F& f, const Vector& x, double h = kDefaultFdStep) {
  Vector g(x.size());
  Vector xs = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    xs[i] = xi + h;
    const double fp = f(xs);
    xs[i] = xi - h;
    const double fm = f(xs);
    xs[i] = xi;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

/// Partial derivative of a vector/matrix-valued field along coordinate axis i.
template <class F>
auto partial(const F& f, const Vector& x, Eigen::Index i, double h = kDefaultFdStep) {
  Vector xs = x;
  xs[i] = x[i] + h;
  auto fp = f(xs);
  xs[i] = x[i] - h;
  auto fm = f(xs);
  return decltype(fp)((fp - fm) / (2.0 * h));
}

}  // namespace geomech
