#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "fractosc/errors.hpp"
#include "fractosc/reduction.hpp"

using namespace fractosc;

namespace {

// x(t) = (1+t)^{-1}
double inverse_derivs(double t, int k) {
  double fact = 1.0;
  for (int j = 2; j <= k; ++j) fact *= j;
  return (k % 2 ? -1.0 : 1.0) * fact * std::pow(1.0 + t, -1.0 - k);
}

double cube_derivs(double t, int k) {
  switch (k) {
    case 0: return t * t * t;
    case 1: return 3 * t * t;
    case 2: return 6 * t;
    case 3: return 6.0;
    default: return 0.0;
  }
}

SampledFn constant_samples(const Grid& g, double v) {
  return SampledFn::sample(g, [v](double) { return v; });
}

}  // namespace

TEST_CASE("y-chain of simple inputs") {
  const Grid g(2.0, 2000);
  const YChain zero = build_y_chain([](double, int) { return 0.0; }, 2.5, 2.2, 1.0, InitialData{{0, 0, 0}}, g);
  REQUIRE(zero.ys.size() == 3);
  for (const auto& y : zero.ys) {
    for (double v : y.values()) CHECK(v == 0.0);
  }

  const YChain cube = build_y_chain(cube_derivs, 2.5, 2.2, 1.0, InitialData{{0, 0, 0}}, g);
  for (std::size_t i = 0; i < g.size(); i += 250) {
    const double t = g.node(i);
    const double exact = 6 * std::pow(t, 3.5) / std::tgamma(4.5) + 6 * std::pow(t, 3.8) / std::tgamma(4.8);
    CHECK(cube.ys[0][i] == doctest::Approx(exact).epsilon(1e-5));
  }

  const double c = 1.7, a = 0.6;
  const YChain flat = build_y_chain([c](double, int k) { return k == 0 ? c : 0.0; }, 2.5, 2.2, a,
                                    InitialData{{c, 0, 0}}, g);
  for (std::size_t i = 0; i < g.size(); i += 250) {
    const double t = g.node(i);
    const double exact = c * std::pow(t, 0.5) / std::tgamma(1.5) + a * c * std::pow(t, 0.8) / std::tgamma(1.8);
    CHECK(flat.ys[0][i] == doctest::Approx(exact).epsilon(1e-10));
  }

  CHECK_THROWS_AS(build_y_chain(cube_derivs, 1.5, 1.2, 1.0, InitialData{{0, 0}}, g), ParameterError);
  CHECK_THROWS_AS(build_y_chain(cube_derivs, 2.5, 2.7, 1.0, InitialData{{0, 0, 0}}, g), ParameterError);
  CHECK_THROWS_AS(build_y_chain(cube_derivs, 2.5, 2.2, 0.0, InitialData{{0, 0, 0}}, g), ParameterError);
  CHECK_THROWS_AS(build_y_chain(cube_derivs, 2.5, 2.2, 1.0, InitialData{{0, 0}}, g), InputError);
}

TEST_CASE("reciprocal gamma") {
  CHECK(reciprocal_gamma(1.0) == doctest::Approx(1.0));
  CHECK(reciprocal_gamma(0.0) == 0.0);
  CHECK(reciprocal_gamma(-2.0) == 0.0);
  CHECK(reciprocal_gamma(-0.5) == doctest::Approx(1.0 / std::tgamma(-0.5)));
  CHECK(reciprocal_gamma(4.5) == doctest::Approx(1.0 / std::tgamma(4.5)));
  CHECK(reciprocal_gamma(200.0) == 0.0);
}

TEST_CASE("chain identity") {
  const InitialData ic{{1.0, -1.0, 2.0}};
  const YChain coarse = build_y_chain(inverse_derivs, 2.5, 2.2, 1.0, ic, Grid(10.0, 10000));
  const YChain fine = build_y_chain(inverse_derivs, 2.5, 2.2, 1.0, ic, Grid(10.0, 20000));
  const double d1 = verify_chain(coarse, {0.5, 10.0});
  const double d2 = verify_chain(fine, {0.5, 10.0});
  CHECK(d1 <= 1e-2);
  CHECK(d2 / d1 == doctest::Approx(0.5).epsilon(0.3));

  const YChain zero = build_y_chain([](double, int) { return 0.0; }, 2.5, 2.2, 1.0, InitialData{{0, 0, 0}},
                                    Grid(10.0, 1000));
  CHECK(verify_chain(zero, {0.5, 10.0}) == 0.0);
  CHECK_THROWS_AS(verify_chain(coarse, {0.0, 1.0}), DomainError);
}

TEST_CASE("last equation") {
  const double alpha = 2.5, beta = 2.2, a = 1.0;
  auto q = [](double) { return 1.0; };
  auto f = [](double x) { return x; };

  // t^3 with zero data: y_n' = D^alpha x + a D^beta x exactly
  auto g_cube = [&](double t) {
    return -(6 * std::pow(t, 0.5) / std::tgamma(1.5) + a * 6 * std::pow(t, 0.8) / std::tgamma(1.8) + t * t * t);
  };
  double prev = 0.0;
  for (std::size_t N : {5000u, 10000u}) {
    const YChain c = build_y_chain(cube_derivs, alpha, beta, a, InitialData{{0, 0, 0}}, Grid(5.0, N));
    const double d = verify_last_equation(c, q, f, g_cube, {0.5, 5.0});
    CHECK(d <= 1e-2);
    if (prev > 0.0) CHECK(d / prev == doctest::Approx(0.5).epsilon(0.3));
    prev = d;
  }

  // nonzero data: Caputo derivatives of (1+t)^{-1} from quadrature of x'''
  auto caputo_sum = [&](double t) {
    auto d3 = [](double s) { return inverse_derivs(s, 3); };
    return oracle::rl_integral(d3, 3 - alpha, t, 200) + a * oracle::rl_integral(d3, 3 - beta, t, 200);
  };
  auto g_inv = [&](double t) { return -(caputo_sum(t) + 1.0 / (1.0 + t)); };
  const YChain c = build_y_chain(inverse_derivs, alpha, beta, a, InitialData{{1.0, -1.0, 2.0}}, Grid(5.0, 10000));
  CHECK(verify_last_equation(c, q, f, g_inv, {0.5, 5.0}) <= 1e-2);

  const YChain zero = build_y_chain([](double, int) { return 0.0; }, alpha, beta, a, InitialData{{0, 0, 0}},
                                    Grid(5.0, 500));
  CHECK(verify_last_equation(zero, q, f, [](double) { return 0.0; }, {0.5, 5.0}) == 0.0);
}

TEST_CASE("sign patterns") {
  const Grid g(10.0, 1000);
  std::vector<SampledFn> ones(4, constant_samples(g, 1.0));
  const PatternVerdict none = classify_sign_pattern(ones, 0.2);
  CHECK(none.pattern == SignPattern::None);

  std::vector<SampledFn> five;
  for (double s : {1.0, -1.0, 1.0, -1.0, 1.0}) five.push_back(constant_samples(g, s));
  const PatternVerdict a = classify_sign_pattern(five, 0.2);
  CHECK(a.pattern == SignPattern::A);
  CHECK(a.admissible);

  std::vector<SampledFn> four;
  for (double s : {1.0, 1.0, -1.0, 1.0}) four.push_back(constant_samples(g, s));
  const PatternVerdict c = classify_sign_pattern(four, 0.2);
  CHECK(c.pattern == SignPattern::C);
  CHECK(c.admissible);

  std::vector<SampledFn> b4;
  for (double s : {-1.0, 1.0, -1.0, 1.0}) b4.push_back(constant_samples(g, s));
  CHECK(classify_sign_pattern(b4, 0.2).pattern == SignPattern::B);

  std::vector<SampledFn> odd_b;
  for (double s : {-1.0, 1.0, -1.0}) odd_b.push_back(constant_samples(g, s));
  const PatternVerdict ob = classify_sign_pattern(odd_b, 0.2);
  CHECK(ob.pattern == SignPattern::B);
  CHECK_FALSE(ob.admissible);

  std::vector<SampledFn> mixed = five;
  mixed[2] = SampledFn::sample(g, [](double t) { return std::sin(5 * t); });
  const PatternVerdict m = classify_sign_pattern(mixed, 0.5);
  CHECK(m.pattern == SignPattern::Mixed);
  CHECK(m.signs[2] == 0);

  CHECK_THROWS_AS(classify_sign_pattern(five, 0.05), InsufficientDataError);
  CHECK_THROWS_AS(classify_sign_pattern(five, 1.5), ParameterError);
}

TEST_CASE("tail decay") {
  const double alpha = 2.5;
  const int n = 3;
  const Grid g(200.0, 20000);
  auto exact = SampledFn::sample(g, [&](double t) { return t == 0.0 ? 0.0 : std::pow(t, alpha - n); });
  const TailDecayReport r1 = tail_decay_check(exact, alpha, n, {1.0, 200.0});
  CHECK(r1.sup == doctest::Approx(1.0));
  CHECK_FALSE(r1.flagged);

  auto wavy = SampledFn::sample(g, [&](double t) { return t == 0.0 ? 0.0 : std::pow(t, alpha - n) * (2 + std::sin(t)); });
  const TailDecayReport r2 = tail_decay_check(wavy, alpha, n, {1.0, 200.0});
  CHECK(r2.sup == doctest::Approx(3.0).epsilon(1e-3));
  CHECK_FALSE(r2.flagged);

  auto slow = SampledFn::sample(g, [&](double t) { return t == 0.0 ? 0.0 : std::pow(t, alpha - n + 0.5); });
  CHECK(tail_decay_check(slow, alpha, n, {1.0, 200.0}).flagged);
  CHECK_THROWS_AS(tail_decay_check(slow, alpha, n, {0.0, 200.0}), DomainError);
}
