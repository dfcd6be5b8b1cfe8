#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <utility>

#include "fractosc/grid.hpp"

namespace fractosc {

enum class Kappa { Alpha, Beta, One };

/// Kernel G^kappa with Laplace transform s^{kappa-1} / (s^alpha + a s^beta + b).
struct KernelParams {
  Kappa kappa = Kappa::One;
  double alpha = 0.0;
  double beta = 0.0;
  double a = 0.0;
  double b = 0.0;

  double kappa_value() const noexcept;
  void validate() const;
};

/// Talbot contour settings. The contour is z(theta) = scale * (n_nodes/t) * w(theta)
/// with the optimized cotangent shape w; the sum is evaluated in long double.
struct TalbotConfig {
  int n_nodes = 48;
  double scale = 1.0;

  void validate() const;
};

using Transform = std::function<std::complex<long double>(std::complex<long double>)>;

/// Inverse Laplace transform of a real transform F at t > 0.
double talbot_invert(const Transform& F, double t, const TalbotConfig& cfg = {});

double g_eval(const KernelParams& p, double t, const TalbotConfig& cfg = {});

/// int_0^t G^kappa(s) ds
double step_response(const KernelParams& p, double t, const TalbotConfig& cfg = {});

struct BoundReport {
  double low_sup = 0.0;   // sup t^{1-alpha} |G^1(t)| on the low range
  double low_arg = 0.0;
  double high_sup = 0.0;  // sup t^{1+beta} |G^1(t)| on the high range
  double high_arg = 0.0;
};

/// Samples both ranges log-uniformly with `samples` points each (endpoints included).
BoundReport bound_report(const KernelParams& p, std::pair<double, double> low_range,
                         std::pair<double, double> high_range, std::size_t samples = 200,
                         const TalbotConfig& cfg = {});

/// int_0^t G^1(t-s) g(s) ds on the grid of g.
SampledFn forced_convolution(const KernelParams& p, const SampledFn& g,
                             const TalbotConfig& cfg = {});

}  // namespace fractosc
