#include "fractosc/comparison.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <string>

#include "fractosc/errors.hpp"
#include "fractosc/fracops.hpp"

namespace fractosc {

SampledFn residual_inequality(const SampledFn& y, const InitialData& ic_y,
                              const MultiTermProblem& p) {
  p.validate();
  if (p.orders.size() > 2) throw OutOfScopeError("residual_inequality: at most two orders");
  const double alpha = p.leading_order();
  if (alpha > 1.0) throw OutOfScopeError("residual_inequality: comparison needs order <= 1");
  if (ic_y.size() < 1 || std::abs(ic_y[0] - y[0]) > 1e-12 * std::max(1.0, std::abs(y[0]))) {
    throw InputError("residual_inequality: y(0) does not match the initial data");
  }
  const Grid& grid = y.grid();
  const SampledFn da = caputo(y, ic_y, alpha);
  std::vector<double> r(da.values().begin(), da.values().end());
  if (p.orders.size() == 2 && p.coeffs[0] != 0.0) {
    const SampledFn db = caputo(y, ic_y, p.orders[0]);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += p.coeffs[0] * db[i];
  }
  std::vector<double> g(grid.size(), 0.0);
  if (p.forcing) {
    if (p.forcing->pointwise) {
      for (std::size_t i = 0; i < g.size(); ++i) g[i] = p.forcing->pointwise(grid.node(i));
    } else {
      const SampledFn phi = SampledFn::sample(grid, p.forcing->potential);
      const SampledFn d = caputo(phi, InitialData{{phi[0]}}, p.forcing->potential_order);
      g.assign(d.values().begin(), d.values().end());
    }
  }
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= p.rhs(grid.node(i), y[i]) + g[i];
  return SampledFn(grid, std::move(r));
}

OrderingReport verify_order(const SampledFn& y, const SampledFn& x, double tol) {
  require_same_grid(y.grid(), x.grid(), "verify_order");
  if (!(tol >= 0.0)) throw ParameterError("verify_order: tol must be >= 0");
  OrderingReport r;
  r.tol = tol;
  r.max_violation = -INFINITY;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double d = y[i] - x[i];
    r.max_violation = std::max(r.max_violation, d);
    if (d > tol && !r.first_violation_node) r.first_violation_node = i;
  }
  r.passed = r.max_violation <= tol;
  return r;
}

namespace {

MultiTermProblem shifted(const MultiTermProblem& p, double eps) {
  MultiTermProblem q = p;
  const Rhs f = p.rhs;
  q.rhs = [f, eps](double t, double x) { return f(t, x) + eps; };
  q.ic.x_derivs[0] += eps;
  return q;
}

}  // namespace

MultiTermProblem make_subsolution(const MultiTermProblem& p, double eps) {
  if (!(eps > 0.0)) throw ParameterError("make_subsolution: eps must be > 0");
  return shifted(p, -eps);
}

MultiTermProblem make_supersolution(const MultiTermProblem& p, double eps) {
  if (!(eps > 0.0)) throw ParameterError("make_supersolution: eps must be > 0");
  return shifted(p, eps);
}

MultiTermProblem mirror_problem(const MultiTermProblem& p) {
  MultiTermProblem q = p;
  const Rhs f = p.rhs;
  q.rhs = [f](double t, double u) { return -f(t, -u); };
  for (double& v : q.ic.x_derivs) v = -v;
  if (p.forcing) {
    Forcing g = *p.forcing;
    if (g.pointwise) {
      const TimeFn h = g.pointwise;
      g.pointwise = [h](double t) { return -h(t); };
    }
    if (g.potential) {
      const TimeFn h = g.potential;
      g.potential = [h](double t) { return -h(t); };
    }
    q.forcing = g;
  }
  return q;
}

std::vector<SolutionTrace> monotone_family(const MultiTermProblem& p, const SolverConfig& cfg,
                                           const std::vector<int>& m_values) {
  std::vector<SolutionTrace> out;
  out.reserve(m_values.size());
  for (int m : m_values) {
    if (m <= 0) throw ParameterError("monotone_family: m must be positive");
    MultiTermProblem q = p;
    q.ic.x_derivs[0] += 1.0 / m;
    try {
      SolutionTrace tr = solve_pece(q, cfg);
      if (tr.diverged_at) {
        throw FamilyError("monotone_family: member m = " + std::to_string(m) +
                              " diverged at node " + std::to_string(*tr.diverged_at),
                          m);
      }
      out.push_back(std::move(tr));
    } catch (const ConvergenceError& e) {
      throw FamilyError("monotone_family: member m = " + std::to_string(m) + ": " + e.what(), m);
    }
  }
  return out;
}

FamilyReport check_monotone_family(const std::vector<SolutionTrace>& family,
                                   const std::vector<int>& m_values, double tol) {
  if (family.size() != m_values.size()) throw InputError("family: size mismatch");
  FamilyReport r;
  for (std::size_t k = 1; k < family.size(); ++k) {
    if (!(m_values[k] > m_values[k - 1])) throw InputError("family: m values must increase");
    const SampledFn& lo = family[k].x;
    const SampledFn& hi = family[k - 1].x;
    require_same_grid(lo.grid(), hi.grid(), "family");
    const double gap = 1.0 / m_values[k - 1] - 1.0 / m_values[k];
    const double ulps = 4.0 * std::numeric_limits<double>::epsilon() *
                        std::max({1.0, std::abs(hi[0]), std::abs(lo[0])});
    r.max_initial_gap_error =
        std::max(r.max_initial_gap_error, std::max(0.0, std::abs((hi[0] - lo[0]) - gap) - ulps));
    for (std::size_t i = 0; i < lo.size(); ++i) {
      const double inc = lo[i] - hi[i];
      r.max_increase = std::max(r.max_increase, inc);
      if (inc > tol && !r.first_violation_node) r.first_violation_node = i;
    }
  }
  r.passed = r.max_increase <= tol && r.max_initial_gap_error == 0.0;
  return r;
}

}  // namespace fractosc
