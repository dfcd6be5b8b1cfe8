#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fractosc/grid.hpp"
#include "fractosc/solver.hpp"

namespace fractosc {

struct OrderingReport {
  double max_violation = 0.0;  // sup of y - x
  std::optional<std::size_t> first_violation_node;
  bool passed = true;
  double tol = 0.0;
};

/// D^alpha y + a D^beta y - f(t, y) - g(t) for a problem with orders beta < alpha <= 1.
SampledFn residual_inequality(const SampledFn& y, const InitialData& ic_y,
                              const MultiTermProblem& p);

/// Checks y <= x + tol at every node.
OrderingReport verify_order(const SampledFn& y, const SampledFn& x, double tol);

/// Same problem with the right-hand side shifted by -eps and x(0) lowered by eps.
MultiTermProblem make_subsolution(const MultiTermProblem& p, double eps = 0.1);
/// Same problem with the right-hand side shifted by +eps and x(0) raised by eps.
MultiTermProblem make_supersolution(const MultiTermProblem& p, double eps = 0.1);

/// Problem for u = -x: right-hand side -f(t, -u), forcing -g, initial data negated.
MultiTermProblem mirror_problem(const MultiTermProblem& p);

/// Solves p with x(0) = x0 + 1/m for each m.
std::vector<SolutionTrace> monotone_family(const MultiTermProblem& p, const SolverConfig& cfg,
                                           const std::vector<int>& m_values);

struct FamilyReport {
  bool passed = true;
  double max_increase = 0.0;     // largest x_{m'} - x_m over nodes, m < m'
  double max_initial_gap_error = 0.0;
  std::optional<std::size_t> first_violation_node;
};

/// Pointwise non-increase in m within tol and exact initial gaps 1/m - 1/m'.
FamilyReport check_monotone_family(const std::vector<SolutionTrace>& family,
                                   const std::vector<int>& m_values, double tol);

}  // namespace fractosc
