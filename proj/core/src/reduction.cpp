#include "fractosc/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fractosc/errors.hpp"
#include "fractosc/fracops.hpp"

namespace fractosc {

double reciprocal_gamma(double c) {
  if (c > 0.0) return std::exp(-std::lgamma(c));
  if (c == std::floor(c)) return 0.0;
  // 1/Gamma(c) = Gamma(1-c) sin(pi c) / pi
  return std::exp(std::lgamma(1.0 - c)) * std::sin(std::numbers::pi * c) / std::numbers::pi;
}

namespace {

SampledFn integral_or_identity(const SampledFn& x, double mu) {
  return mu == 0.0 ? x : rl_integral(x, mu);
}

// Caputo derivative of order nu > 0 using exact derivatives where the
// Marchaud form needs them.
SampledFn caputo_exact(const DerivFn& x, const SampledFn& xs, double nu) {
  const Grid& g = xs.grid();
  if (nu < 1.0) return caputo_l1(xs, nu);
  const int m = static_cast<int>(std::floor(nu));
  if (nu == m) return SampledFn::sample(g, [&](double t) { return x(t, m); });
  return caputo_marchaud_from_derivative(SampledFn::sample(g, [&](double t) { return x(t, m); }),
                                         nu);
}

void require_window(std::pair<double, double> w, const Grid& g) {
  if (!(w.first > 0.0)) throw DomainError("chain: window must stay away from t = 0");
  if (!(w.second > w.first) || w.second > g.t_end() * (1 + 1e-12)) {
    throw DomainError("chain: window must be increasing and inside the grid");
  }
}

double fwd_diff(const SampledFn& y, std::size_t i) { return (y[i + 1] - y[i]) / y.grid().h(); }

}  // namespace

YChain build_y_chain(const DerivFn& x, double alpha, double beta, double a, const InitialData& ic,
                     const Grid& grid) {
  const int n = static_cast<int>(std::ceil(alpha));
  if (n < 3) throw ParameterError("y-chain: needs n = ceil(alpha) >= 3");
  if (!(n - 1 < beta && beta < alpha)) throw ParameterError("y-chain: need n-1 < beta < alpha");
  if (!(a > 0.0)) throw ParameterError("y-chain: a must be > 0");
  if (ic.size() != static_cast<std::size_t>(n)) {
    throw InputError("y-chain: need " + std::to_string(n) + " initial values");
  }
  YChain c{n, alpha, beta, a, ic, SampledFn::sample(grid, [&](double t) { return x(t, 0); }), {}};

  const SampledFn y1a = integral_or_identity(c.x, n - alpha);
  const SampledFn y1b = rl_integral(c.x, n - beta);
  std::vector<double> y1(grid.size());
  for (std::size_t j = 0; j < y1.size(); ++j) y1[j] = y1a[j] + a * y1b[j];
  c.ys.emplace_back(grid, std::move(y1));

  for (int i = 2; i <= n; ++i) {
    const double na = alpha - n - 1 + i, nb = beta - n - 1 + i;
    const SampledFn da = caputo_exact(x, c.x, na);
    const SampledFn db = caputo_exact(x, c.x, nb);
    std::vector<double> y(grid.size(), 0.0);
    for (std::size_t j = 1; j < y.size(); ++j) {
      const double t = grid.node(j);
      double v = da[j] + a * db[j];
      for (int k = 0; k <= i - 2; ++k) {
        if (ic[k] == 0.0) continue;
        const double ca = n - alpha - i + 2 + k, cb = n - beta - i + 2 + k;
        v += ic[k] * reciprocal_gamma(ca) * std::pow(t, ca - 1.0);
        v += a * ic[k] * reciprocal_gamma(cb) * std::pow(t, cb - 1.0);
      }
      y[j] = v;
    }
    c.ys.emplace_back(grid, std::move(y));
  }
  return c;
}

double verify_chain(const YChain& chain, std::pair<double, double> t_window) {
  const Grid& g = chain.x.grid();
  require_window(t_window, g);
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < chain.ys.size(); ++i) {
    const SampledFn& y = chain.ys[i];
    for (std::size_t j = 0; j + 1 < y.size(); ++j) {
      const double t = g.node(j);
      if (t < t_window.first || t > t_window.second) continue;
      worst = std::max(worst, std::abs(fwd_diff(y, j) - chain.ys[i + 1][j]));
    }
  }
  return worst;
}

double verify_last_equation(const YChain& chain, const std::function<double(double)>& q,
                            const std::function<double(double)>& f,
                            const std::function<double(double)>& g,
                            std::pair<double, double> t_window) {
  const Grid& grid = chain.x.grid();
  require_window(t_window, grid);
  const SampledFn& yn = chain.ys.back();
  const int n = chain.n;
  double worst = 0.0;
  for (std::size_t j = 0; j + 1 < yn.size(); ++j) {
    const double t = grid.node(j);
    if (t < t_window.first || t > t_window.second) continue;
    const double x = chain.x[j];
    const double sg = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
    double rhs = -q(t) * f(x) - sg * g(t);
    for (int k = 0; k < n; ++k) {
      if (chain.ic[k] == 0.0) continue;
      rhs += chain.ic[k] * reciprocal_gamma(1.0 - chain.alpha + k) * std::pow(t, k - chain.alpha);
      rhs += chain.a * chain.ic[k] * reciprocal_gamma(1.0 - chain.beta + k) *
             std::pow(t, k - chain.beta);
    }
    worst = std::max(worst, std::abs(fwd_diff(yn, j) - rhs));
  }
  return worst;
}

const char* to_string(SignPattern p) {
  switch (p) {
    case SignPattern::A:
      return "A";
    case SignPattern::B:
      return "B";
    case SignPattern::C:
      return "C";
    case SignPattern::Mixed:
      return "MIXED";
    case SignPattern::None:
      break;
  }
  return "NONE";
}

PatternVerdict classify_sign_pattern(const std::vector<SampledFn>& ys, double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction < 1.0)) {
    throw ParameterError("sign pattern: tail fraction must lie in (0,1)");
  }
  if (ys.empty()) throw InputError("sign pattern: empty chain");
  PatternVerdict v;
  const int n = static_cast<int>(ys.size());
  for (const auto& y : ys) {
    const std::size_t N = y.grid().n_steps();
    const auto from = static_cast<std::size_t>(std::ceil((1.0 - tail_fraction) * N));
    if (N + 1 - from < 100) {
      throw InsufficientDataError("sign pattern: tail has " + std::to_string(N + 1 - from) +
                                  " nodes, need 100");
    }
    bool pos = true, neg = true;
    for (std::size_t j = from; j <= N; ++j) {
      pos = pos && y[j] > 0.0;
      neg = neg && y[j] < 0.0;
    }
    v.signs.push_back(pos ? 1 : (neg ? -1 : 0));
  }
  if (std::find(v.signs.begin(), v.signs.end(), 0) != v.signs.end()) {
    v.pattern = SignPattern::Mixed;
    return v;
  }
  auto matches = [&](auto expected) {
    for (int i = 1; i <= n; ++i) {
      if (v.signs[i - 1] != expected(i)) return false;
    }
    return true;
  };
  const auto alt = [](int i) { return i % 2 == 1 ? 1 : -1; };  // (-1)^{i+1}
  if (matches(alt)) {
    v.pattern = SignPattern::A;
  } else if (matches([&](int i) { return -alt(i); })) {
    v.pattern = SignPattern::B;
  } else if (n >= 3 && matches([&](int i) { return i <= 2 ? 1 : -alt(i); })) {
    v.pattern = SignPattern::C;
  }
  if (n % 2 == 1) {
    v.admissible = v.pattern == SignPattern::A;
  } else {
    v.admissible = v.pattern == SignPattern::B || v.pattern == SignPattern::C;
  }
  return v;
}

PatternVerdict classify_sign_pattern(const YChain& chain, double tail_fraction) {
  return classify_sign_pattern(chain.ys, tail_fraction);
}

TailDecayReport tail_decay_check(const SampledFn& x, double alpha, int n,
                                 std::pair<double, double> t_window) {
  const auto [lo, hi] = t_window;
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError("tail decay: window must satisfy 0 < t0 < t1");
  const double q1 = lo + 0.25 * (hi - lo), q3 = lo + 0.75 * (hi - lo);
  TailDecayReport r;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double t = x.t(j);
    if (t < lo || t > hi) continue;
    const double v = std::pow(t, n - alpha) * std::abs(x[j]);
    r.sup = std::max(r.sup, v);
    if (t <= q1) r.first_quarter_sup = std::max(r.first_quarter_sup, v);
    if (t >= q3) r.last_quarter_sup = std::max(r.last_quarter_sup, v);
  }
  r.flagged = r.last_quarter_sup > 1.5 * r.first_quarter_sup;
  return r;
}

}  // namespace fractosc
