#pragma once

// Independent reference values used by the unit and acceptance tests. None of
// these share code with the library.

#include <cmath>
#include <functional>

namespace oracle {

// E_{a,b}(z) by its power series in long double; fine for |z| up to ~5.
inline double mittag_leffler(double a, double b, double z) {
  long double sum = 0.0L;
  long double zk = 1.0L;
  for (int k = 0; k < 400; ++k) {
    const long double term = zk / std::tgamma(static_cast<long double>(a) * k + b);
    sum += term;
    if (k > 20 && std::fabs(term) < 1e-22L * std::fabs(sum)) break;
    zk *= z;
  }
  return static_cast<double>(sum);
}

// E_{1/2}(-sqrt t) = exp(t) erfc(sqrt t)
inline double ml_half_erfc(double t) {
  return std::exp(t) * std::erfc(std::sqrt(t));
}

// Composite 5-point Gauss-Legendre on [a, b] with `panels` panels.
inline double gauss(const std::function<double(double)>& f, double a, double b, int panels = 400) {
  static const double x[5] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                              0.9061798459386640};
  static const double w[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                              0.2369268850561891, 0.2369268850561891};
  long double sum = 0.0L;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double m = a + (p + 0.5) * h;
    for (int k = 0; k < 5; ++k) sum += w[k] * f(m + 0.5 * h * x[k]);
  }
  return static_cast<double>(sum * 0.5L * h);
}

// I^alpha f(t) after the substitution u = (t-s)^alpha, which removes the
// kernel singularity: (1/Gamma(alpha+1)) int_0^{t^alpha} f(t - u^{1/alpha}) du.
inline double rl_integral(const std::function<double(double)>& f, double alpha, double t,
                          int panels = 400) {
  if (t == 0.0) return 0.0;
  const double top = std::pow(t, alpha);
  auto g = [&](double u) { return f(t - std::pow(u, 1.0 / alpha)); };
  return gauss(g, 0.0, top, panels) / std::tgamma(alpha + 1.0);
}

// Caputo derivative of order alpha in (0,1) from the exact first derivative.
inline double caputo(const std::function<double(double)>& df, double alpha, double t,
                     int panels = 400) {
  return rl_integral(df, 1.0 - alpha, t, panels);
}

}  // namespace oracle
