#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fractosc/grid.hpp"

namespace fractosc {

/// Product-trapezoidal weights for (1/Gamma(mu)) * int_0^t (t-s)^{mu-1} u(s) ds on
/// a uniform grid, u interpolated piecewise linearly.
///
/// Row n (t_n = n*h) reads
///   scale * (b_n u_0 + sum_{j=1}^{n-1} c_{n-j} u_j + c_0 u_n),  scale = h^mu / Gamma(mu+2).
/// Only the stationary sequence c_k and the start weights b_n are stored.
class ConvWeights {
 public:
  ConvWeights(double mu, std::size_t n_max, double h);

  double mu() const noexcept { return mu_; }
  double h() const noexcept { return h_; }
  std::size_t n_max() const noexcept { return c_.size() - 1; }
  double scale() const noexcept { return scale_; }

  /// Unscaled stationary weight c_k, k = 0..n_max.
  double c(std::size_t k) const noexcept { return c_[k]; }
  /// Unscaled start weight b_n, n = 1..n_max.
  double b(std::size_t n) const noexcept { return b_[n]; }

  /// Scaled weight w_{ij}, 0 <= j <= i.
  double weight(std::size_t i, std::size_t j) const noexcept;
  /// Scaled row sum; equals t_i^mu / Gamma(mu+1).
  double row_sum(std::size_t i) const;

  /// Scaled contribution of nodes 0..n-1 to row n.
  double history(std::span<const double> u, std::size_t n) const noexcept;
  /// Scaled weight of node n in row n.
  double diagonal() const noexcept { return scale_; }

 private:
  double mu_;
  double h_;
  double scale_;
  std::vector<double> c_;
  std::vector<double> b_;
  std::vector<double> crev_;
};

/// I^alpha u on the grid of u.
SampledFn rl_integral(const SampledFn& u, double alpha);

/// Caputo derivative of order alpha in (0,1) by the L1 scheme with a one-term
/// starting correction that makes it exact on 1, t and t^alpha.
SampledFn caputo_l1(const SampledFn& u, double alpha);

/// Caputo derivative of non-integer order alpha > 0 through the Marchaud-type
/// representation. The (n-1)-st derivative is taken by finite differences and
/// its value at 0 is replaced by ic[n-1].
SampledFn caputo_marchaud(const SampledFn& u, const InitialData& ic, double alpha);

/// Same operator with the (n-1)-st derivative supplied as samples.
SampledFn caputo_marchaud_from_derivative(const SampledFn& deriv, double alpha);

/// Caputo derivative dispatching to caputo_l1 for alpha < 1 and
/// caputo_marchaud otherwise; alpha = 1 gives the finite-difference derivative.
SampledFn caputo(const SampledFn& u, const InitialData& ic, double alpha);

/// Fourth-order finite-difference first derivative (needs at least 5 nodes).
SampledFn fd_derivative(const SampledFn& u);

/// Samples sum_k ic[k] t^k / k!.
SampledFn taylor_poly(const InitialData& ic, const Grid& grid);

/// Gap in the Young-type inequality lambda X Y^{lambda-1} - X^lambda <= (lambda-1) Y^lambda,
/// signed so that it is nonnegative for lambda > 1 and for lambda < 1.
double young_gap(double X, double Y, double lambda);

/// Dot product with fixed block association, used by every history sum.
double blocked_dot(const double* a, const double* b, std::size_t n) noexcept;

}  // namespace fractosc
