#include "fractosc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fractosc/errors.hpp"
#include "fractosc/fracops.hpp"

namespace fractosc {

Forcing Forcing::from_function(TimeFn g) {
  Forcing f;
  f.pointwise = std::move(g);
  return f;
}

Forcing Forcing::from_potential(TimeFn phi, double order) {
  Forcing f;
  f.potential = std::move(phi);
  f.potential_order = order;
  return f;
}

std::size_t MultiTermProblem::n() const {
  return static_cast<std::size_t>(std::ceil(leading_order()));
}

void MultiTermProblem::validate() const {
  if (orders.empty()) throw ParameterError("problem: no orders given");
  if (!(orders.front() > 0.0)) throw ParameterError("problem: orders must be > 0");
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (!std::isfinite(orders[i])) throw ParameterError("problem: non-finite order");
    if (i > 0 && !(orders[i] > orders[i - 1])) {
      throw ParameterError("problem: orders must be strictly increasing (order " +
                           std::to_string(i) + ")");
    }
  }
  if (coeffs.size() + 1 != orders.size()) {
    throw ParameterError("problem: expected " + std::to_string(orders.size() - 1) +
                         " coefficients, got " + std::to_string(coeffs.size()));
  }
  for (double a : coeffs) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw ParameterError("problem: coefficients must be >= 0");
  }
  if (ic.size() != n()) {
    throw ParameterError("problem: initial data length " + std::to_string(ic.size()) +
                         " != ceil(leading order) = " + std::to_string(n()));
  }
  if (!rhs) throw ParameterError("problem: missing right-hand side");
  if (forcing && !forcing->pointwise && !forcing->potential) {
    throw ParameterError("problem: forcing has neither values nor potential");
  }
}

void SolverConfig::validate() const {
  if (corrector_iters < 1) throw ParameterError("solver: corrector_iters must be >= 1");
  if (!(fp_tol > 0.0)) throw ParameterError("solver: fp_tol must be > 0");
  if (!(blowup_threshold > 0.0)) throw ParameterError("solver: blowup_threshold must be > 0");
}

double VolterraForm::P(double t) const {
  double s = 0.0;
  for (const auto& term : poly) s += term.coeff * (term.exponent == 0.0 ? 1.0 : std::pow(t, term.exponent));
  return s;
}

SampledFn VolterraForm::sample_P(const Grid& grid) const {
  return SampledFn::sample(grid, [this](double t) { return P(t); });
}

VolterraForm to_volterra(const MultiTermProblem& p) {
  p.validate();
  VolterraForm v;
  v.order = p.leading_order();
  double fact = 1.0;
  for (std::size_t j = 0; j < p.ic.size(); ++j) {
    if (j > 0) fact *= static_cast<double>(j);
    if (p.ic[j] != 0.0) v.poly.push_back({p.ic[j] / fact, static_cast<double>(j)});
  }
  for (std::size_t i = 0; i + 1 < p.orders.size(); ++i) {
    const double a = p.coeffs[i];
    if (a == 0.0) continue;
    const double mu = v.order - p.orders[i];
    v.memory.push_back({-a, mu});
    const auto m = static_cast<std::size_t>(std::ceil(p.orders[i]));
    for (std::size_t j = 0; j < m; ++j) {
      if (p.ic[j] == 0.0) continue;
      const double e = mu + static_cast<double>(j);
      v.poly.push_back({a * p.ic[j] * std::exp(-std::lgamma(e + 1.0)), e});
    }
  }
  return v;
}

SampledFn forcing_integral(const MultiTermProblem& p, const Grid& grid) {
  if (!p.forcing) return SampledFn::zeros(grid);
  const Forcing& f = *p.forcing;
  const double alpha = p.leading_order();
  if (f.potential) {
    // I^a D^a phi = phi - phi(0) for a <= 1
    if (f.potential_order == alpha && alpha <= 1.0) {
      const double phi0 = f.potential(0.0);
      return SampledFn::sample(grid, [&](double t) { return f.potential(t) - phi0; });
    }
    const SampledFn phi = SampledFn::sample(grid, f.potential);
    InitialData ic;
    const auto m = static_cast<std::size_t>(std::ceil(f.potential_order));
    if (m >= 2) ic.x_derivs = std::vector<double>(m, 0.0);
    if (m >= 2) {
      SampledFn d = phi;
      ic.x_derivs[0] = phi[0];
      for (std::size_t k = 1; k < m; ++k) {
        d = fd_derivative(d);
        ic.x_derivs[k] = d[0];
      }
    }
    return rl_integral(caputo(phi, ic, f.potential_order), alpha);
  }
  return rl_integral(SampledFn::sample(grid, f.pointwise), alpha);
}

double signed_power(double x, double lambda) {
  if (x == 0.0) return 0.0;
  const double m = std::pow(std::abs(x), lambda);
  return x > 0.0 ? m : -m;
}

namespace {

double residual_against(const MultiTermProblem& p, const VolterraForm& v, const SampledFn& x,
                        const SampledFn& g_int) {
  require_same_grid(x.grid(), g_int.grid(), "residual_check");
  const Grid& grid = x.grid();
  std::vector<double> rhs(grid.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = p.rhs(grid.node(i), x[i]);
  const SampledFn f_int = rl_integral(SampledFn(grid, std::move(rhs)), v.order);
  std::vector<double> total(grid.size());
  for (std::size_t i = 0; i < total.size(); ++i) total[i] = v.P(grid.node(i)) + g_int[i] + f_int[i];
  for (const auto& m : v.memory) {
    const SampledFn mem = rl_integral(x, m.exponent);
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += m.coeff * mem[i];
  }
  return sup_distance(total, x.values());
}

}  // namespace

double residual_check(const MultiTermProblem& p, const SampledFn& x) {
  const VolterraForm v = to_volterra(p);
  return residual_against(p, v, x, forcing_integral(p, x.grid()));
}

SolutionTrace solve_pece(const MultiTermProblem& p, const SolverConfig& cfg) {
  cfg.validate();
  const VolterraForm v = to_volterra(p);
  const Grid& grid = cfg.grid;
  const std::size_t N = grid.n_steps();

  const SampledFn g_int = forcing_integral(p, grid);
  ConvWeights wf(v.order, N, grid.h());
  std::vector<ConvWeights> wm;
  wm.reserve(v.memory.size());
  double den = 1.0;
  for (const auto& m : v.memory) {
    wm.emplace_back(m.exponent, N, grid.h());
    den -= m.coeff * wm.back().diagonal();
  }
  const double wk = wf.diagonal();

  std::vector<double> x(N + 1, 0.0), F(N + 1, 0.0);
  x[0] = p.ic[0];
  F[0] = p.rhs(0.0, x[0]);
  std::optional<std::size_t> diverged;

  for (std::size_t n = 1; n <= N; ++n) {
    const double t = grid.node(n);
    double base = v.P(t) + g_int[n] + wf.history(F, n);
    for (std::size_t i = 0; i < wm.size(); ++i) base += v.memory[i].coeff * wm[i].history(x, n);

    auto residual = [&](double y) { return y * den - base - wk * p.rhs(t, y); };

    // explicit last sample as predictor, then Newton sweeps with a
    // difference-quotient slope and step halving
    double y = (base + wk * F[n - 1]) / den;
    double r = residual(y);
    double prev_step = 0.0;
    int growth = 0;
    for (int it = 0; it < cfg.corrector_iters && std::isfinite(y); ++it) {
      const double d = 1e-7 * std::max(1.0, std::abs(y));
      double slope = (residual(y + d) - r) / d;
      if (!std::isfinite(slope) || slope == 0.0) slope = den;
      const double step = r / slope;
      double lam = 1.0;
      double yn = y - step;
      double rn = residual(yn);
      while (!(std::abs(rn) <= std::abs(r)) && lam > 1e-6) {
        lam *= 0.5;
        yn = y - lam * step;
        rn = residual(yn);
      }
      const double moved = std::abs(yn - y);
      y = yn;
      r = rn;
      if (moved <= cfg.fp_tol * std::max(1.0, std::abs(y))) break;
      if (it > 0 && moved > prev_step) {
        if (++growth >= 2) {
          throw ConvergenceError("solver: corrector not contracting at node " + std::to_string(n) +
                                     " (t = " + std::to_string(t) + ")",
                                 n);
        }
      } else {
        growth = 0;
      }
      prev_step = moved;
    }

    // a root where the residual slope has flipped sign lies past the fold of
    // the branch continued from the explicit limit: the step has no solution
    const double d = 1e-7 * std::max(1.0, std::abs(y));
    const double slope = (residual(y + d) - residual(y - d)) / (2.0 * d);
    if (!std::isfinite(y) || std::abs(y) > cfg.blowup_threshold || !(slope * den > 0.0)) {
      diverged = n;
      break;
    }
    x[n] = y;
    F[n] = p.rhs(t, y);
    if (!std::isfinite(F[n])) {
      diverged = n;
      break;
    }
  }

  const std::size_t kept = diverged ? *diverged - 1 : N;
  x.resize(kept + 1);
  const Grid out_grid = grid.truncated(kept);
  SampledFn xs(out_grid, std::move(x));
  SolutionTrace trace{xs, 0.0, diverged};
  trace.residual_norm = residual_against(p, v, xs, g_int.truncated(kept));
  return trace;
}

}  // namespace fractosc
