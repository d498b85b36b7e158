#pragma once
// Adaptive Gauss-Kronrod 7-15 quadrature on finite intervals. The Kronrod
// value is returned; |K15 - G7| serves as the (conservative) local error
// estimate and the tolerance is split across bisections, so the absolute
// error of the sum stays below the requested tolerance for integrands the
// rule resolves at the leaf scale.

#include <cmath>
#include <utility>

namespace windsoup::quadrature {

namespace detail {

// Positive abscissae of the 15-point Kronrod rule; odd indices are the
// embedded 7-point Gauss nodes.
inline constexpr double kNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

inline constexpr double kWeightsK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

inline constexpr double kWeightsG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

template <class F>
std::pair<double, double> gauss_kronrod(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double gauss = kWeightsG[3] * fc;
  double kronrod = kWeightsK[7] * fc;
  for (int i = 0; i < 7; ++i) {
    const double x = h * kNodes[i];
    const double sum = f(c - x) + f(c + x);
    kronrod += kWeightsK[i] * sum;
    if (i % 2 == 1) gauss += kWeightsG[i / 2] * sum;
  }
  return {gauss * h, kronrod * h};
}

template <class F>
double adaptive(F& f, double a, double b, double tol, int depth, int max_depth) {
  const auto [gauss, kronrod] = gauss_kronrod(f, a, b);
  const double err = std::abs(kronrod - gauss);
  if (err <= tol || depth >= max_depth || !((b - a) > 1e-300)) return kronrod;
  const double m = 0.5 * (a + b);
  return adaptive(f, a, m, 0.5 * tol, depth + 1, max_depth) +
         adaptive(f, m, b, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace detail

// Integrates f over [a, b] to absolute tolerance abs_tol.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol, int max_depth = 28) {
  if (a == b) return 0.0;
  return detail::adaptive(f, a, b, abs_tol, 0, max_depth);
}

}  // namespace windsoup::quadrature
