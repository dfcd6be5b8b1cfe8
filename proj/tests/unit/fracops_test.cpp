#include <doctest.h>

#include <cmath>
#include <random>

#include "../oracles.hpp"
#include "fractosc/errors.hpp"
#include "fractosc/fracops.hpp"

using namespace fractosc;

TEST_CASE("product trapezoid weights") {
  for (double mu : {0.3, 0.5, 1.0, 1.7}) {
    const std::size_t N = 500;
    const double h = 3.0 / N;
    ConvWeights w(mu, N, h);
    double worst = 0.0;
    for (std::size_t i = 1; i <= N; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j <= i; ++j) {
        CHECK(w.weight(i, j) >= 0.0);
        sum += w.weight(i, j);
      }
      const double exact = std::pow(i * h, mu) / std::tgamma(mu + 1.0);
      worst = std::max(worst, std::abs(sum - exact) / exact);
      worst = std::max(worst, std::abs(w.row_sum(i) - exact) / exact);
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("weights match direct hat-function integrals") {
  // w_ij = (1/Gamma(mu)) int (t_i - s)^{mu-1} phi_j(s) ds with phi_j the hat function
  const double mu = 0.4, h = 0.1;
  const std::size_t N = 12;
  ConvWeights w(mu, N, h);
  for (std::size_t i : {1u, 5u, 12u}) {
    const double t = i * h;
    for (std::size_t j = 0; j <= i; ++j) {
      auto hat = [&](double s) { return std::max(0.0, 1.0 - std::abs(s - j * h) / h); };
      const double ref = oracle::rl_integral(hat, mu, t, 4000);
      CHECK(w.weight(i, j) == doctest::Approx(ref).epsilon(1e-6));
    }
  }
}

TEST_CASE("rl_integral examples") {
  Grid g(2.0, 400);
  auto zero = rl_integral(SampledFn::zeros(g), 0.5);
  for (double v : zero.values()) CHECK(v == 0.0);

  Grid g1(1.0, 256);
  auto one = rl_integral(SampledFn::sample(g1, [](double) { return 1.0; }), 0.5);
  CHECK(one[256] == doctest::Approx(1.0 / std::tgamma(1.5)).epsilon(1e-12));
  CHECK(one[256] == doctest::Approx(oracle::rl_integral([](double) { return 1.0; }, 0.5, 1.0)));

  auto lin = rl_integral(SampledFn::sample(g, [](double t) { return t; }), 1.0);
  CHECK(lin[400] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("rl_integral against quadrature") {
  Grid g(5.0, 2048);
  auto u = SampledFn::sample(g, [](double t) { return std::sin(t); });
  for (double alpha : {0.3, 0.5, 0.9}) {
    auto v = rl_integral(u, alpha);
    double worst = 0.0;
    for (std::size_t i = 0; i <= 2048; i += 64) {
      const double ref = oracle::rl_integral([](double s) { return std::sin(s); }, alpha, g.node(i));
      worst = std::max(worst, std::abs(v[i] - ref));
    }
    CHECK(worst <= 1e-5);
  }
}

TEST_CASE("semigroup property converges") {
  double prev = 0.0;
  for (std::size_t N : {1024u, 2048u, 4096u}) {
    Grid g(5.0, N);
    auto f = SampledFn::sample(g, [](double t) { return std::sin(t); });
    const double err =
        sup_distance(rl_integral(rl_integral(f, 0.4), 0.3).values(), rl_integral(f, 0.7).values());
    CHECK(err <= 5e-3);
    if (prev > 0.0) CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("caputo_l1 examples") {
  Grid g(1.0, 1024);
  auto c = caputo_l1(SampledFn::sample(g, [](double) { return 3.0; }), 0.5);
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i] == doctest::Approx(0.0).scale(1.0));

  auto lin = caputo_l1(SampledFn::sample(g, [](double t) { return t; }), 0.5);
  CHECK(lin[1024] == doctest::Approx(1.0 / std::tgamma(1.5)).epsilon(1e-10));

  auto p = caputo_l1(SampledFn::sample(g, [](double t) { return std::pow(t, 1.5); }), 0.5);
  const double exact = std::tgamma(2.5) / std::tgamma(2.0);
  CHECK(std::abs(p[1024] - exact) / exact <= 1e-4);
}

TEST_CASE("caputo_l1 against quadrature") {
  Grid g(4.0, 2048);
  auto u = SampledFn::sample(g, [](double t) { return std::exp(-t) * std::sin(2 * t); });
  auto d = caputo_l1(u, 0.6);
  auto du = [](double s) { return std::exp(-s) * (2 * std::cos(2 * s) - std::sin(2 * s)); };
  for (std::size_t i = 128; i <= 2048; i += 128) {
    CHECK(d[i] == doctest::Approx(oracle::caputo(du, 0.6, g.node(i))).epsilon(2e-3));
  }
}

TEST_CASE("roundtrips shrink under refinement") {
  double prev_fwd = 1.0, prev_bwd = 1.0;
  for (std::size_t N : {512u, 1024u, 2048u}) {
    Grid g(5.0, N);
    auto f = SampledFn::sample(g, [](double t) { return std::cos(t); });
    const double fwd = sup_distance(caputo_l1(rl_integral(f, 0.5), 0.5).values(), f.values());
    auto x = SampledFn::sample(g, [](double t) { return std::sin(t) + t * t; });
    auto back = rl_integral(caputo_l1(x, 0.5), 0.5);
    double bwd = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) bwd = std::max(bwd, std::abs(back[i] - (x[i] - x[0])));
    CHECK(fwd < prev_fwd);
    CHECK(bwd < prev_bwd);
    prev_fwd = fwd;
    prev_bwd = bwd;
  }
  CHECK(prev_fwd <= 1e-3);
  CHECK(prev_bwd <= 1e-3);
}

TEST_CASE("caputo_marchaud examples") {
  Grid g(1.0, 2048);
  auto m = caputo_marchaud(SampledFn::sample(g, [](double t) { return t * t; }), InitialData{{0, 0}}, 1.5);
  CHECK(m[2048] == doctest::Approx(std::tgamma(3.0) / std::tgamma(1.5)).epsilon(1e-3));

  auto z = caputo_marchaud(SampledFn::zeros(g), InitialData{{0, 0}}, 1.5);
  for (double v : z.values()) CHECK(v == 0.0);

  const double h = g.h();
  auto s = SampledFn::sample(g, [](double t) { return std::sin(t); });
  const double diff =
      sup_distance(caputo_marchaud(s, InitialData{{0}}, 0.5).values(), caputo_l1(s, 0.5).values(), 1);
  CHECK(diff <= 5 * std::sqrt(h));
}

TEST_CASE("caputo dispatch and errors") {
  Grid g(1.0, 64);
  auto u = SampledFn::sample(g, [](double t) { return t; });
  CHECK_THROWS_AS(caputo_l1(u, 0.0), ParameterError);
  CHECK_THROWS_AS(caputo_l1(u, 1.5), ParameterError);
  CHECK_THROWS_AS(rl_integral(u, -0.5), ParameterError);
  CHECK_THROWS_AS(caputo_marchaud(u, InitialData{{0}}, 1.5), InputError);
  CHECK(caputo(u, InitialData{{0}}, 0.5)[64] == doctest::Approx(caputo_l1(u, 0.5)[64]));
}

TEST_CASE("taylor polynomial") {
  Grid g(2.0, 4);
  CHECK(taylor_poly(InitialData{{1}}, g)[3] == 1.0);
  CHECK(taylor_poly(InitialData{{0, 1}}, g)[4] == doctest::Approx(2.0));
  Grid g1(1.0, 2);
  CHECK(taylor_poly(InitialData{{1, 2, 4}}, g1)[2] == doctest::Approx(5.0));
}

TEST_CASE("young gap examples") {
  CHECK(young_gap(1, 1, 2) == doctest::Approx(0.0));
  CHECK(young_gap(0, 1, 2) == doctest::Approx(1.0));
  CHECK(young_gap(4, 1, 0.5) == doctest::Approx(0.5));
  CHECK_THROWS_AS(young_gap(1, 1, 1), ParameterError);
  CHECK_THROWS_AS(young_gap(1, 0, 2), ParameterError);
  CHECK_THROWS_AS(young_gap(-1, 1, 2), ParameterError);
}

TEST_CASE("young gap is nonnegative and matches the direct formula") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(0.0, 10.0), uy(1e-3, 10.0), ul(0.05, 5.0);
  for (int k = 0; k < 10000; ++k) {
    const double X = ux(rng), Y = uy(rng);
    double lambda = ul(rng);
    if (std::abs(lambda - 1.0) < 1e-3) lambda = 2.0;
    const double gap = young_gap(X, Y, lambda);
    REQUIRE(gap >= -1e-12);
    const long double Xl = X, Yl = Y, L = lambda;
    long double direct = (L - 1) * std::pow(Yl, L) - (L * Xl * std::pow(Yl, L - 1) - std::pow(Xl, L));
    if (lambda < 1.0) direct = -direct;
    const double scale = std::max({1.0, std::pow(X, lambda), std::pow(Y, lambda), X * std::pow(Y, lambda - 1)});
    CHECK(std::abs(gap - static_cast<double>(direct)) <= 1e-12 * scale);
  }
}
