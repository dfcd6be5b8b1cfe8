#include "fractosc/fracops.hpp"

#include <cmath>
#include <string>

#include "fractosc/errors.hpp"

namespace fractosc {

namespace {

constexpr std::size_t kSeriesFrom = 8;
constexpr std::size_t kBlock = 256;

// Second difference (k+1)^p - 2k^p + (k-1)^p. For large k the direct form loses
// everything to cancellation, so expand in 1/k: 2 k^p sum_m C(p,2m) k^{-2m}.
double second_difference(double p, std::size_t k) {
  const double kd = static_cast<double>(k);
  if (k < kSeriesFrom) return std::pow(kd + 1, p) - 2 * std::pow(kd, p) + std::pow(kd - 1, p);
  const double inv2 = 1.0 / (kd * kd);
  double binom = 1.0;  // C(p, j)
  double power = 1.0;
  double sum = 0.0;
  for (int j = 0; j < 200; j += 2) {
    binom *= (p - j) / (j + 1);
    binom *= (p - j - 1) / (j + 2);
    power *= inv2;
    const double term = binom * power;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return 2 * std::pow(kd, p) * sum;
}

// Start weight (n-1)^p - (n-mu-1) n^mu = n^p sum_{m>=2} C(p,m) (-1/n)^m.
double start_weight(double mu, std::size_t n) {
  const double p = mu + 1;
  const double nd = static_cast<double>(n);
  if (n < kSeriesFrom) return std::pow(nd - 1, p) - (nd - mu - 1) * std::pow(nd, mu);
  const double x = -1.0 / nd;
  double binom = p;  // C(p,1)
  double power = x;
  double sum = 0.0;
  for (int m = 1; m < 200; ++m) {
    binom *= (p - m) / (m + 1);
    power *= x;
    const double term = binom * power;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return std::pow(nd, p) * sum;
}

// (k+1)^q - k^q without cancellation.
double forward_power_diff(double q, std::size_t k) {
  if (k == 0) return 1.0;
  const double kd = static_cast<double>(k);
  return std::pow(kd, q) * std::expm1(q * std::log1p(1.0 / kd));
}

void require_order(double alpha, const char* what) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ParameterError(std::string(what) + ": order must be finite and > 0, got " +
                         std::to_string(alpha));
  }
}

std::size_t ceil_order(double alpha) { return static_cast<std::size_t>(std::ceil(alpha)); }

}  // namespace

double blocked_dot(const double* a, const double* b, std::size_t n) noexcept {
  double total = 0.0;
  for (std::size_t start = 0; start < n; start += kBlock) {
    const std::size_t end = std::min(n, start + kBlock);
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = start;
    for (; i + 4 <= end; i += 4) {
      s0 += a[i] * b[i];
      s1 += a[i + 1] * b[i + 1];
      s2 += a[i + 2] * b[i + 2];
      s3 += a[i + 3] * b[i + 3];
    }
    for (; i < end; ++i) s0 += a[i] * b[i];
    total += (s0 + s1) + (s2 + s3);
  }
  return total;
}

ConvWeights::ConvWeights(double mu, std::size_t n_max, double h) : mu_(mu), h_(h) {
  require_order(mu, "convolution weights");
  if (!(h > 0.0)) throw ParameterError("convolution weights: step must be > 0");
  const double p = mu + 1;
  scale_ = std::exp(mu * std::log(h) - std::lgamma(mu + 2));
  c_.resize(n_max + 1);
  b_.resize(n_max + 1);
  c_[0] = 1.0;
  b_[0] = 0.0;
  for (std::size_t k = 1; k <= n_max; ++k) {
    c_[k] = second_difference(p, k);
    b_[k] = start_weight(mu, k);
  }
  crev_.resize(n_max + 1);
  for (std::size_t k = 0; k <= n_max; ++k) crev_[n_max - k] = c_[k];
}

double ConvWeights::weight(std::size_t i, std::size_t j) const noexcept {
  if (i == 0) return 0.0;
  if (j == 0) return scale_ * b_[i];
  return scale_ * c_[i - j];
}

double ConvWeights::row_sum(std::size_t i) const {
  if (i == 0) return 0.0;
  std::vector<double> terms;
  terms.reserve(i + 1);
  terms.push_back(b_[i]);
  for (std::size_t k = 1; k < i; ++k) terms.push_back(c_[k]);
  terms.push_back(c_[0]);
  return scale_ * pairwise_sum(terms);
}

double ConvWeights::history(std::span<const double> u, std::size_t n) const noexcept {
  if (n == 0) return 0.0;
  // sum_{j=1}^{n-1} c_{n-j} u_j with c read forward from the reversed copy
  const double* c = crev_.data() + (n_max() - n);
  const double inner = n > 1 ? blocked_dot(c + 1, u.data() + 1, n - 1) : 0.0;
  return scale_ * (b_[n] * u[0] + inner);
}

SampledFn rl_integral(const SampledFn& u, double alpha) {
  require_order(alpha, "rl_integral");
  const Grid& g = u.grid();
  const std::size_t N = g.n_steps();
  ConvWeights w(alpha, N, g.h());
  std::vector<double> out(N + 1, 0.0);
  for (std::size_t n = 1; n <= N; ++n) out[n] = w.history(u.values(), n) + w.diagonal() * u[n];
  return SampledFn(g, std::move(out));
}

SampledFn caputo_l1(const SampledFn& u, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ParameterError("caputo_l1: order must lie in (0,1), got " + std::to_string(alpha));
  }
  const Grid& g = u.grid();
  const std::size_t N = g.n_steps();
  const double q = 1.0 - alpha;
  const double inv_gamma = 1.0 / std::tgamma(2.0 - alpha);
  const double hpow = std::pow(g.h(), -alpha);

  // arev[N-n+j] = a_{n-1-j}
  std::vector<double> arev(N);
  for (std::size_t k = 0; k < N; ++k) arev[N - 1 - k] = forward_power_diff(q, k);
  std::vector<double> du(N), dref(N);
  for (std::size_t j = 0; j < N; ++j) {
    du[j] = u[j + 1] - u[j];
    dref[j] = forward_power_diff(alpha, j);
  }

  const bool corrected = N >= 2;
  const double defect = corrected ? 2 * u[1] - u[0] - u[2] : 0.0;
  const double denom = 2.0 - std::pow(2.0, alpha);
  const double gamma_a = std::tgamma(1.0 + alpha);

  std::vector<double> out(N + 1, 0.0);
  for (std::size_t n = 1; n <= N; ++n) {
    const double* a = arev.data() + (N - n);
    double v = hpow * inv_gamma * blocked_dot(a, du.data(), n);
    if (corrected) {
      const double r = inv_gamma * blocked_dot(a, dref.data(), n);
      v += (gamma_a - r) / denom * hpow * defect;
    }
    out[n] = v;
  }
  if (corrected) out[0] = gamma_a * defect / (std::pow(g.h(), alpha) * denom);
  return SampledFn(g, std::move(out));
}

SampledFn caputo_marchaud_from_derivative(const SampledFn& deriv, double alpha) {
  require_order(alpha, "caputo_marchaud");
  if (alpha == std::floor(alpha)) {
    throw ParameterError("caputo_marchaud: integer order " + std::to_string(alpha));
  }
  const double gam = alpha - std::floor(alpha);
  const Grid& g = deriv.grid();
  const std::size_t N = g.n_steps();
  const double h = g.h();
  const auto v = deriv.values();

  // P_k = (k-1)^{-gam} - k^{-gam}, Q_k = k^{1-gam} - (k-1)^{1-gam}
  std::vector<double> P(N + 1, 0.0), Q(N + 1, 0.0);
  for (std::size_t k = 1; k <= N; ++k) {
    const double kd = static_cast<double>(k);
    Q[k] = k == 1 ? 1.0 : -std::pow(kd, 1 - gam) * std::expm1((1 - gam) * std::log1p(-1.0 / kd));
    if (k >= 2) P[k] = std::pow(kd, -gam) * std::expm1(-gam * std::log1p(-1.0 / kd));
  }

  const double g1 = std::tgamma(1.0 - gam);
  const double cA = std::pow(h, -gam) / g1;
  const double cD = std::pow(h, -gam) * gam / std::tgamma(2.0 - gam);

  std::vector<double> out(N + 1, 0.0);
  for (std::size_t n = 1; n <= N; ++n) {
    double sum_a = 0.0, sum_d = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = n - j;
      const double delta = v[j + 1] - v[j];
      if (k >= 2) sum_a += (v[n] - v[j + 1] - static_cast<double>(k - 1) * delta) * P[k];
      sum_d += delta * Q[k];
    }
    const double tn = g.node(n);
    out[n] = (v[n] - v[0]) / (g1 * std::pow(tn, gam)) + cA * sum_a + cD * sum_d;
  }
  return SampledFn(g, std::move(out));
}

SampledFn caputo_marchaud(const SampledFn& u, const InitialData& ic, double alpha) {
  require_order(alpha, "caputo_marchaud");
  if (alpha == std::floor(alpha)) {
    throw ParameterError("caputo_marchaud: integer order " + std::to_string(alpha));
  }
  const std::size_t n = ceil_order(alpha);
  if (n >= 2 && ic.size() < n) {
    throw InputError("caputo_marchaud: order " + std::to_string(alpha) + " needs " +
                     std::to_string(n) + " initial values, got " + std::to_string(ic.size()));
  }
  SampledFn v = u;
  for (std::size_t k = 1; k < n; ++k) v = fd_derivative(v);
  if (n >= 2) {
    std::vector<double> vals(v.values().begin(), v.values().end());
    vals[0] = ic[n - 1];
    v = SampledFn(v.grid(), std::move(vals));
  }
  return caputo_marchaud_from_derivative(v, alpha);
}

SampledFn caputo(const SampledFn& u, const InitialData& ic, double alpha) {
  require_order(alpha, "caputo");
  if (alpha < 1.0) return caputo_l1(u, alpha);
  if (alpha == std::floor(alpha)) {
    SampledFn v = u;
    for (std::size_t k = 0; k < ceil_order(alpha); ++k) v = fd_derivative(v);
    return v;
  }
  return caputo_marchaud(u, ic, alpha);
}

SampledFn fd_derivative(const SampledFn& u) {
  const std::size_t M = u.size();
  if (M < 5) throw InputError("fd_derivative: need at least 5 nodes");
  const double s = 1.0 / (12.0 * u.grid().h());
  std::vector<double> d(M);
  d[0] = (-25 * u[0] + 48 * u[1] - 36 * u[2] + 16 * u[3] - 3 * u[4]) * s;
  d[1] = (-3 * u[0] - 10 * u[1] + 18 * u[2] - 6 * u[3] + u[4]) * s;
  for (std::size_t i = 2; i + 2 < M; ++i) {
    d[i] = (u[i - 2] - 8 * u[i - 1] + 8 * u[i + 1] - u[i + 2]) * s;
  }
  const std::size_t L = M - 1;
  d[L] = (25 * u[L] - 48 * u[L - 1] + 36 * u[L - 2] - 16 * u[L - 3] + 3 * u[L - 4]) * s;
  d[L - 1] = (3 * u[L] + 10 * u[L - 1] - 18 * u[L - 2] + 6 * u[L - 3] - u[L - 4]) * s;
  return SampledFn(u.grid(), std::move(d));
}

SampledFn taylor_poly(const InitialData& ic, const Grid& grid) {
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double t = grid.node(i);
    double term = 1.0;
    double s = 0.0;
    for (std::size_t k = 0; k < ic.size(); ++k) {
      if (k > 0) term *= t / static_cast<double>(k);
      s += ic[k] * term;
    }
    out[i] = s;
  }
  return SampledFn(grid, std::move(out));
}

double young_gap(double X, double Y, double lambda) {
  if (!(lambda > 0.0) || lambda == 1.0 || !std::isfinite(lambda)) {
    throw ParameterError("young_gap: lambda must be > 0 and != 1");
  }
  if (!(Y > 0.0)) throw ParameterError("young_gap: Y must be > 0");
  if (!(X >= 0.0)) throw ParameterError("young_gap: X must be >= 0");
  // Y^lambda * (r^lambda - 1 - lambda (r - 1)) with r = X/Y
  const double r = X / Y;
  const double core = std::expm1(lambda * std::log(r)) - lambda * (r - 1.0);
  const double gap = std::pow(Y, lambda) * core;
  return lambda > 1.0 ? gap : -gap;
}

}  // namespace fractosc
