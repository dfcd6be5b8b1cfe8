#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "fractosc/grid.hpp"

namespace fractosc {

using Rhs = std::function<double(double t, double x)>;
using TimeFn = std::function<double(double t)>;

/// Forcing term g. Either given pointwise, or as a Caputo potential phi with
/// g = D^{potential_order} phi, which lets the solver integrate it exactly.
struct Forcing {
  TimeFn pointwise;
  TimeFn potential;
  double potential_order = 0.0;

  static Forcing from_function(TimeFn g);
  static Forcing from_potential(TimeFn phi, double order);
};

/// sum_i coeffs[i] D^{orders[i]} x + D^{orders.back()} x = rhs(t, x) + g(t)
struct MultiTermProblem {
  std::vector<double> orders;
  std::vector<double> coeffs;
  Rhs rhs;
  std::optional<Forcing> forcing;
  InitialData ic;
  std::optional<double> lipschitz_hint;

  double leading_order() const { return orders.back(); }
  /// ceil of the leading order
  std::size_t n() const;
  /// Throws ParameterError naming the violated invariant.
  void validate() const;
};

struct SolverConfig {
  Grid grid;
  int corrector_iters = 2;
  double fp_tol = 1e-12;
  double blowup_threshold = 1e8;

  explicit SolverConfig(Grid g) : grid(g) {}
  void validate() const;
};

struct SolutionTrace {
  SampledFn x;
  double residual_norm = 0.0;
  std::optional<std::size_t> diverged_at;
};

/// coeff * t^exponent
struct PowerTerm {
  double coeff;
  double exponent;
};

/// coeff * I^{exponent}[x]
struct MemoryTerm {
  double coeff;
  double exponent;
};

/// x = P(t) + sum memory + I^{order}[f(., x) + g]
struct VolterraForm {
  double order = 0.0;
  std::vector<PowerTerm> poly;
  std::vector<MemoryTerm> memory;

  double P(double t) const;
  SampledFn sample_P(const Grid& grid) const;
};

VolterraForm to_volterra(const MultiTermProblem& p);

/// I^{leading order} g sampled on the grid; zero when the problem has no forcing.
SampledFn forcing_integral(const MultiTermProblem& p, const Grid& grid);

SolutionTrace solve_pece(const MultiTermProblem& p, const SolverConfig& cfg);

/// Sup-norm defect of the Volterra identity at x, evaluated with rl_integral.
double residual_check(const MultiTermProblem& p, const SampledFn& x);

/// sgn(x) |x|^lambda with sgn(0) = 0.
double signed_power(double x, double lambda);

}  // namespace fractosc
