#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "fractosc/errors.hpp"
#include "fractosc/solver.hpp"

using namespace fractosc;

namespace {

MultiTermProblem linear(double x0, double decay = 1.0) {
  MultiTermProblem p;
  p.orders = {0.5};
  p.rhs = [decay](double, double x) { return -decay * x; };
  p.ic.x_derivs = {x0};
  return p;
}

MultiTermProblem manufactured() {
  MultiTermProblem p;
  p.orders = {0.4, 0.6};
  p.coeffs = {2.0};
  p.rhs = [](double, double) { return 0.0; };
  p.forcing = Forcing::from_function([](double t) {
    return 2.0 / std::tgamma(2.4) * std::pow(t, 1.4) + 4.0 / std::tgamma(2.6) * std::pow(t, 1.6);
  });
  p.ic.x_derivs = {0.0};
  return p;
}

double sup_error(const SampledFn& x, double (*exact)(double)) {
  double e = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) e = std::max(e, std::abs(x[i] - exact(x.t(i))));
  return e;
}

double square(double t) { return t * t; }

}  // namespace

TEST_CASE("volterra form of the two-term problem") {
  MultiTermProblem p;
  p.orders = {1.0 / 3.0, 0.5};
  p.coeffs = {2.0};
  p.rhs = [](double, double) { return 0.0; };
  p.ic.x_derivs = {1.0};
  const VolterraForm v = to_volterra(p);
  CHECK(v.order == doctest::Approx(0.5));
  REQUIRE(v.memory.size() == 1);
  CHECK(v.memory[0].coeff == doctest::Approx(-2.0));
  CHECK(v.memory[0].exponent == doctest::Approx(1.0 / 6.0));
  for (double t : {0.0, 0.1, 1.0, 7.5}) {
    CHECK(v.P(t) == doctest::Approx(1.0 + 2.0 * std::pow(t, 1.0 / 6.0) / std::tgamma(7.0 / 6.0)));
  }

  const VolterraForm single = to_volterra(linear(2.0));
  CHECK(single.memory.empty());
  CHECK(single.P(3.0) == doctest::Approx(2.0));
}

TEST_CASE("problem validation") {
  MultiTermProblem p = linear(1.0);
  p.orders = {0.5, 0.4};
  p.coeffs = {1.0};
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = linear(1.0);
  p.orders = {0.3, 0.5};
  p.coeffs = {-1.0};
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = linear(1.0);
  p.ic.x_derivs = {1.0, 0.0};
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = linear(1.0);
  p.orders = {0.0};
  CHECK_THROWS_AS(p.validate(), ParameterError);

  SolverConfig c(Grid(1.0, 10));
  c.corrector_iters = 0;
  CHECK_THROWS_AS(c.validate(), ParameterError);
  c.corrector_iters = 1;
  c.fp_tol = 0.0;
  CHECK_THROWS_AS(c.validate(), ParameterError);
}

TEST_CASE("zero right-hand side keeps the initial value") {
  MultiTermProblem p = linear(3.0, 0.0);
  const SolutionTrace tr = solve_pece(p, SolverConfig(Grid(5.0, 500)));
  for (double v : tr.x.values()) CHECK(v == doctest::Approx(3.0).epsilon(1e-14));
  CHECK_FALSE(tr.diverged_at);
}

TEST_CASE("mittag-leffler relaxation") {
  const SolutionTrace tr = solve_pece(linear(1.0), SolverConfig(Grid(1.0, 2048)));
  CHECK(std::abs(tr.x[2048] - oracle::ml_half_erfc(1.0)) <= 5e-3);
  CHECK(oracle::ml_half_erfc(1.0) == doctest::Approx(oracle::mittag_leffler(0.5, 1.0, -1.0)).epsilon(1e-12));
  double worst = 0.0;
  for (std::size_t i = 0; i <= 2048; i += 16) {
    worst = std::max(worst, std::abs(tr.x[i] - oracle::ml_half_erfc(tr.x.t(i))));
  }
  CHECK(worst <= 5e-3);
}

TEST_CASE("manufactured two-term solution converges") {
  double prev = 0.0;
  for (std::size_t N : {1024u, 2048u, 4096u}) {
    const SolutionTrace tr = solve_pece(manufactured(), SolverConfig(Grid(1.0, N)));
    const double e = sup_error(tr.x, square);
    if (prev > 0.0) CHECK(std::log2(prev / e) >= 0.8);
    prev = e;
  }
  CHECK(prev <= 1e-3);
}

TEST_CASE("residual check") {
  const MultiTermProblem p = manufactured();
  const Grid g(1.0, 4096);
  auto exact = SampledFn::sample(g, square);
  CHECK(residual_check(p, exact) <= 2e-3);
  auto shifted = SampledFn::sample(g, [](double t) { return t * t + 1.0; });
  CHECK(residual_check(p, shifted) >= 0.5);

  const SolutionTrace tr = solve_pece(p, SolverConfig(g));
  CHECK(tr.residual_norm <= 10 * (1e-12 + std::pow(g.h(), 0.4)));
  CHECK(residual_check(p, tr.x) <= 10 * (1e-12 + std::pow(g.h(), 0.4)));
}

TEST_CASE("corrector sweeps agree") {
  MultiTermProblem p;
  p.orders = {1.0 / 3.0, 0.5};
  p.coeffs = {2.0};
  p.rhs = [](double t, double x) { return -x - 0.5 * std::sin(t) * signed_power(x, 3.0); };
  p.ic.x_derivs = {1.0};
  SolverConfig a(Grid(10.0, 2000)), b(Grid(10.0, 2000));
  a.corrector_iters = 2;
  b.corrector_iters = 8;
  CHECK(sup_distance(solve_pece(p, a).x.values(), solve_pece(p, b).x.values()) <= 1e-6);
}

TEST_CASE("deterministic traces") {
  const SolverConfig c(Grid(1.0, 512));
  const auto x1 = solve_pece(manufactured(), c).x;
  const auto x2 = solve_pece(manufactured(), c).x;
  for (std::size_t i = 0; i < x1.size(); ++i) CHECK(x1[i] == x2[i]);
}

TEST_CASE("lipschitz dependence on initial data") {
  MultiTermProblem p;
  p.orders = {1.0 / 3.0, 0.5};
  p.coeffs = {2.0};
  p.rhs = [](double, double x) { return -x; };
  p.ic.x_derivs = {1.0};
  const SolverConfig c(Grid(10.0, 2000));
  const auto base = solve_pece(p, c).x;
  const double delta = 1e-3;
  p.ic.x_derivs = {1.0 + delta};
  const auto moved = solve_pece(p, c).x;
  // linear problem: the difference is delta times the unit response, bounded by 1
  CHECK(sup_distance(base.values(), moved.values()) <= 1.0001 * delta);
}

TEST_CASE("second order leading term") {
  // x'' = -x with x(0) = 1, x'(0) = 0 gives cos t
  MultiTermProblem p;
  p.orders = {2.0};
  p.rhs = [](double, double x) { return -x; };
  p.ic.x_derivs = {1.0, 0.0};
  const SolutionTrace tr = solve_pece(p, SolverConfig(Grid(5.0, 2000)));
  double e = 0.0;
  for (std::size_t i = 0; i < tr.x.size(); ++i) e = std::max(e, std::abs(tr.x[i] - std::cos(tr.x.t(i))));
  CHECK(e <= 1e-4);
}

TEST_CASE("forcing given as a caputo potential") {
  // g = D^{1/2} t^2 supplied through its potential
  MultiTermProblem p = linear(0.0, 0.0);
  p.forcing = Forcing::from_potential([](double t) { return t * t; }, 0.5);
  const SolutionTrace tr = solve_pece(p, SolverConfig(Grid(1.0, 256)));
  CHECK(sup_error(tr.x, square) <= 1e-12);
}

TEST_CASE("finite-time blow-up truncates the trace") {
  MultiTermProblem p;
  p.orders = {0.5};
  p.rhs = [](double, double x) { return x * x * x; };
  p.ic.x_derivs = {1.0};
  const Grid g(2.0, 2000);
  const SolutionTrace tr = solve_pece(p, SolverConfig(g));
  REQUIRE(tr.diverged_at);
  CHECK(tr.x.size() == *tr.diverged_at);
  CHECK(tr.x.grid().t_end() < 2.0);
}

TEST_CASE("signed power") {
  CHECK(signed_power(-8.0, 1.0 / 3.0) == doctest::Approx(-2.0));
  CHECK(signed_power(0.0, 0.5) == 0.0);
  CHECK(signed_power(4.0, 0.5) == doctest::Approx(2.0));
}
