#include "fractosc/kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fractosc/errors.hpp"

namespace fractosc {

namespace {

using cld = std::complex<long double>;

cld symbol(const KernelParams& p, cld s, long double kappa) {
  const cld den = std::pow(s, static_cast<long double>(p.alpha)) +
                  static_cast<long double>(p.a) * std::pow(s, static_cast<long double>(p.beta)) +
                  static_cast<long double>(p.b);
  const cld num = kappa == 1.0L ? cld(1.0L) : std::pow(s, kappa - 1.0L);
  return num / den;
}

KernelParams as_g1(KernelParams p) {
  p.kappa = Kappa::One;
  return p;
}

}  // namespace

double KernelParams::kappa_value() const noexcept {
  switch (kappa) {
    case Kappa::Alpha:
      return alpha;
    case Kappa::Beta:
      return beta;
    case Kappa::One:
      break;
  }
  return 1.0;
}

void KernelParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("kernel: alpha must lie in (0,1]");
  if (!(beta > 0.0 && beta < alpha)) throw ParameterError("kernel: beta must lie in (0, alpha)");
  if (!(a > 0.0) || !std::isfinite(a)) throw ParameterError("kernel: a must be > 0");
  if (!(b > 0.0) || !std::isfinite(b)) throw ParameterError("kernel: b must be > 0");
}

void TalbotConfig::validate() const {
  if (n_nodes < 16 || n_nodes % 2 != 0) {
    throw ParameterError("talbot: n_nodes must be even and >= 16");
  }
  if (!(scale > 0.0)) throw ParameterError("talbot: scale must be > 0");
}

double talbot_invert(const Transform& F, double t, const TalbotConfig& cfg) {
  cfg.validate();
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("talbot: t must be > 0, got " + std::to_string(t));
  }
  constexpr long double pi = std::numbers::pi_v<long double>;
  const int N = cfg.n_nodes;
  const long double h = 2 * pi / N;
  const long double r = static_cast<long double>(cfg.scale) * N / static_cast<long double>(t);
  const long double tl = t;
  long double sum = 0.0L;
  // theta and -theta give conjugate contributions; keep the upper half.
  for (int k = N / 2; k < N; ++k) {
    const long double th = -pi + (k + 0.5L) * h;
    const long double c = 0.6407L * th;
    const long double cot = std::cos(c) / std::sin(c);
    const long double csc2 = 1.0L / (std::sin(c) * std::sin(c));
    const cld z = r * cld(-0.6122L + 0.5017L * th * cot, 0.2645L * th);
    const cld dz = r * cld(0.5017L * (cot - c * csc2), 0.2645L);
    const cld term = std::exp(z * tl) * F(z) * dz;
    if (!std::isfinite(term.real()) || !std::isfinite(term.imag())) {
      throw InversionError("talbot: non-finite contribution at node " + std::to_string(k) +
                           " (t = " + std::to_string(t) + ")");
    }
    sum += term.imag();
  }
  const long double out = sum * h / pi;
  if (!std::isfinite(out)) throw InversionError("talbot: non-finite sum");
  return static_cast<double>(out);
}

double g_eval(const KernelParams& p, double t, const TalbotConfig& cfg) {
  p.validate();
  const long double kappa = p.kappa_value();
  return talbot_invert([&](cld s) { return symbol(p, s, kappa); }, t, cfg);
}

double step_response(const KernelParams& p, double t, const TalbotConfig& cfg) {
  p.validate();
  const long double kappa = p.kappa_value();
  return talbot_invert([&](cld s) { return symbol(p, s, kappa) / s; }, t, cfg);
}

namespace {

void sup_over(const KernelParams& g1, std::pair<double, double> range, std::size_t samples,
              double weight_exp, const TalbotConfig& cfg, double& sup, double& arg) {
  const auto [lo, hi] = range;
  if (!(lo > 0.0) || hi < lo) throw ParameterError("bound_report: invalid range");
  const std::size_t m = (lo == hi || samples < 2) ? 1 : samples;
  const double llo = std::log(lo), lhi = std::log(hi);
  sup = -1.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double t = m == 1 ? lo : std::exp(llo + (lhi - llo) * i / (m - 1.0));
    const double v = std::pow(t, weight_exp) * std::abs(g_eval(g1, t, cfg));
    if (v > sup) {
      sup = v;
      arg = t;
    }
  }
}

}  // namespace

BoundReport bound_report(const KernelParams& p, std::pair<double, double> low_range,
                         std::pair<double, double> high_range, std::size_t samples,
                         const TalbotConfig& cfg) {
  const KernelParams g1 = as_g1(p);
  g1.validate();
  BoundReport r;
  sup_over(g1, low_range, samples, 1.0 - p.alpha, cfg, r.low_sup, r.low_arg);
  sup_over(g1, high_range, samples, 1.0 + p.beta, cfg, r.high_sup, r.high_arg);
  return r;
}

SampledFn forced_convolution(const KernelParams& p, const SampledFn& g, const TalbotConfig& cfg) {
  const KernelParams g1 = as_g1(p);
  g1.validate();
  const Grid& grid = g.grid();
  const double h = grid.h();
  if (h >= 1.0) {
    throw ConfigurationError("forced_convolution: step " + std::to_string(h) +
                             " too coarse for the kernel singularity at 0 (need h < 1)");
  }
  const std::size_t N = grid.n_steps();
  // Panel k covers offsets [(k-1)h, kh]; kernel taken at the midpoint.
  std::vector<double> gm(N + 1, 0.0);
  for (std::size_t k = 2; k <= N; ++k) gm[k] = g_eval(g1, (k - 0.5) * h, cfg);
  // First panel: G(tau) ~ C tau^{alpha-1}, calibrated at tau = h/2.
  const double al = p.alpha;
  const double C = g_eval(g1, 0.5 * h, cfg) * std::pow(0.5 * h, 1.0 - al);
  const double first = C * std::pow(h, al);

  std::vector<double> out(N + 1, 0.0);
  std::vector<double> avg(N);
  for (std::size_t j = 0; j < N; ++j) avg[j] = 0.5 * (g[j] + g[j + 1]);
  for (std::size_t n = 1; n <= N; ++n) {
    double s = first * (g[n] / al + (g[n - 1] - g[n]) / (al + 1.0));
    double tail = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) tail += gm[n - j] * avg[j];
    out[n] = s + h * tail;
  }
  return SampledFn(grid, std::move(out));
}

}  // namespace fractosc
