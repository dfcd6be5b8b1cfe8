#include "fractosc/oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "fractosc/errors.hpp"
#include "fractosc/fracops.hpp"

namespace fractosc {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

OscillationReport count_zero_crossings(const SampledFn& u, std::optional<double> deadband) {
  const auto v = u.values();
  double band = 0.0;
  if (deadband) {
    if (!(*deadband >= 0.0)) throw ParameterError("count_zero_crossings: deadband must be >= 0");
    band = *deadband;
  } else {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    band = 1e-9 * m;
  }

  OscillationReport r;
  r.horizon = u.grid().t_end();
  int state = 0;
  std::size_t last_same = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const int s = v[i] > 0.0 ? 1 : (v[i] < 0.0 ? -1 : 0);
    if (state != 0 && s == state) last_same = i;
    if (s == 0 || std::abs(v[i]) <= band) continue;
    if (state == 0) {
      state = s;
      last_same = i;
    } else if (s != state) {
      r.crossings.push_back({last_same, u.t(last_same), u.t(last_same + 1)});
      state = s;
      last_same = i;
    }
  }
  r.count = r.crossings.size();
  const double quarter = 0.75 * r.horizon;
  if (state != 0 && (r.crossings.empty() || r.crossings.back().t_right < quarter)) {
    r.eventually_signed = state;
  }
  return r;
}

SampledFn weighted_forcing(const SampledFn& g, double alpha, double beta, int n) {
  if (!(0.0 < beta && beta < alpha && alpha <= n)) {
    throw ParameterError("weighted_forcing: need 0 < beta < alpha <= n");
  }
  const SampledFn I = rl_integral(g, alpha);
  const double e = beta - alpha - n + 1;
  const double ga = std::tgamma(alpha);
  std::vector<double> out(g.size(), 0.0);
  for (std::size_t i = 1; i < out.size(); ++i) out[i] = ga * std::pow(g.t(i), e) * I[i];
  return SampledFn(g.grid(), std::move(out));
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Supported:
      return "SUPPORTED";
    case Verdict::Violated:
      return "VIOLATED";
    case Verdict::Inconclusive:
      break;
  }
  return "INCONCLUSIVE";
}

TrendVerdict trend_verdict(const SampledFn& w, const std::vector<double>& horizons) {
  if (horizons.size() < 3) throw ConfigurationError("trend check: need at least 3 horizons");
  const double end = w.grid().t_end() * (1 + 1e-12);
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    if (!(horizons[i] > 0.0) || horizons[i] > end || (i > 0 && !(horizons[i] > horizons[i - 1]))) {
      throw ConfigurationError("trend check: horizons must be increasing and within the grid");
    }
  }
  TrendVerdict v;
  v.horizons = horizons;
  double mx = -INFINITY, mn = INFINITY;
  std::size_t i = 0;
  for (double H : horizons) {
    for (; i < w.size() && w.t(i) <= H * (1 + 1e-12); ++i) {
      mx = std::max(mx, w[i]);
      mn = std::min(mn, w[i]);
    }
    v.running_max.push_back(mx);
    v.running_min.push_back(mn);
  }
  bool up = true, down = true;
  for (std::size_t k = 1; k < horizons.size(); ++k) {
    up = up && v.running_max[k] > v.running_max[k - 1];
    down = down && v.running_min[k] < v.running_min[k - 1];
  }
  v.verdict = (up && down) ? Verdict::Supported : Verdict::Inconclusive;
  v.detail = std::string("running max ") + (up ? "increasing" : "stalls") + ", running min " +
             (down ? "decreasing" : "stalls");
  return v;
}

TrendVerdict check_condition_B(const SampledFn& g, double alpha, double beta, int n,
                               const std::vector<double>& horizons) {
  return trend_verdict(weighted_forcing(g, alpha, beta, n), horizons);
}

TrendVerdict check_condition_Bvariants(const ForcingSpec& spec, double alpha, double beta, int n,
                                       const std::vector<double>& horizons) {
  TrendVerdict v;
  v.horizons = horizons;
  auto violated = [&](const std::string& what) {
    v.verdict = Verdict::Violated;
    v.detail = "violated: " + what;
    return v;
  };
  const double s = spec.sigma, eta = spec.eta;
  switch (spec.form) {
    case ForcingForm::Raw:
      throw ParameterError("Bvariants: raw forcing has no structural conditions");
    case ForcingForm::Bprime:
      if (!(alpha - beta + n - 1 > 0.0)) return violated("alpha - beta + n - 1 > 0");
      if (!(s > alpha - beta + n - 1)) return violated("sigma > alpha - beta + n - 1");
      break;
    case ForcingForm::Bdoubleprime:
      if (!(alpha <= 1.0)) return violated("alpha <= 1");
      if (!(alpha - beta < s)) return violated("alpha - beta < sigma");
      if (!(s < alpha)) return violated("sigma < alpha");
      if (!(-1.0 < eta)) return violated("-1 < eta");
      if (!(eta < alpha - s - 1)) return violated("eta < alpha - sigma - 1");
      break;
  }
  if (!spec.h_fn) throw ParameterError("Bvariants: missing h");
  if (horizons.empty()) throw ConfigurationError("Bvariants: need at least one horizon");
  const double H = horizons.back();
  constexpr std::size_t kSamples = 20000;
  double mx = -INFINITY, mn = INFINITY;
  std::size_t hi = 0;
  for (std::size_t i = 0; i <= kSamples; ++i) {
    const double t = H * static_cast<double>(i) / kSamples;
    const double y = spec.h_fn(t);
    mx = std::max(mx, y);
    mn = std::min(mn, y);
    for (; hi < horizons.size() && horizons[hi] <= t; ++hi) {
      v.running_max.push_back(mx);
      v.running_min.push_back(mn);
    }
  }
  for (; hi < horizons.size(); ++hi) {
    v.running_max.push_back(mx);
    v.running_min.push_back(mn);
  }
  const bool ok = mx > 0.0 && mn < 0.0;
  v.verdict = ok ? Verdict::Supported : Verdict::Inconclusive;
  v.detail = std::string("structural inequalities hold; h running max ") + num(mx) +
             ", running min " + num(mn) + " on [0, " + num(H) + "]";
  return v;
}

namespace {

std::size_t split_of(const EmdenFowlerSpec& spec) {
  const auto& L = spec.lambdas;
  if (L.size() < 2) throw ConditionError("(C): need at least two exponents");
  for (std::size_t i = 0; i < L.size(); ++i) {
    if (!(L[i] > 0.0)) throw ConditionError("(C): exponents must be positive");
    if (L[i] == 1.0) throw ConditionError("(C): exponent " + std::to_string(i + 1) + " equals 1");
    if (i > 0 && !(L[i] > L[i - 1])) throw ConditionError("(C): exponents must increase");
  }
  std::size_t l = 0;
  while (l < L.size() && L[l] < 1.0) ++l;
  if (l == L.size()) throw ConditionError("(C): no exponent above 1");
  if (spec.split_index && *spec.split_index != l) {
    throw ConditionError("(C): split index " + std::to_string(*spec.split_index) +
                         " does not match the exponents (expected " + std::to_string(l) + ")");
  }
  return l;
}

}  // namespace

double gamma_of(const EmdenFowlerSpec& spec) {
  const std::size_t l = split_of(spec);
  const auto& L = spec.lambdas;
  const double k = static_cast<double>(L.size());
  const double lk = L.back();
  if (l == 0) return std::pow(1.0 / (k * L.front()), lk / (lk - 1.0));
  double upper = 0.0;
  for (std::size_t j = l; j < L.size(); ++j) upper += L[j];
  double best = lk - 1.0;
  for (std::size_t i = 0; i < l; ++i) {
    const double li = L[i];
    const double term =
        (1.0 - li) * std::pow(static_cast<double>(l) * li / (upper - 1.0), li / (1.0 - li));
    best = std::max(best, term);
  }
  return best;
}

double phi_sum(const EmdenFowlerSpec& spec, double t) {
  if (!spec.p_fn || spec.q_fns.size() != spec.lambdas.size()) {
    throw ParameterError("phi_sum: need p and one q per exponent");
  }
  const double gam = gamma_of(spec);
  const double p = std::abs(spec.p_fn(t));
  double s = 0.0;
  for (std::size_t i = 0; i < spec.lambdas.size(); ++i) {
    const double li = spec.lambdas[i];
    const double q = std::abs(spec.q_fns[i](t));
    const double ep = li / (li - 1.0), eq = 1.0 / (1.0 - li);
    if ((p == 0.0 && ep < 0.0) || (q == 0.0 && eq < 0.0)) {
      throw ConditionError("(F): singular integrand at t = " + num(t) + " (term " +
                           std::to_string(i + 1) + ")");
    }
    s += std::pow(p, ep) * std::pow(q, eq);
  }
  return gam * s;
}

TrendVerdict check_condition_F(const EmdenFowlerSpec& spec, const SampledFn& g, double alpha,
                               double beta, int n, double T, const std::vector<double>& horizons) {
  if (!(0.0 < beta && beta < alpha && alpha <= n)) {
    throw ParameterError("condition (F): need 0 < beta < alpha <= n");
  }
  split_of(spec);
  const Grid& grid = g.grid();
  const std::size_t iT = grid.nearest_index(T);
  if (iT + 4 >= grid.n_steps()) throw ConfigurationError("condition (F): T too close to the end");
  const double t0 = grid.node(iT);

  // (D) and (E) on the tail
  for (std::size_t i = iT; i < g.size(); ++i) {
    const double t = grid.node(i);
    if (spec.p_fn(t) == 0.0) throw ConditionError("(D) violated: p(" + num(t) + ") = 0");
    for (std::size_t k = 0; k < spec.lambdas.size(); ++k) {
      const double sg = spec.lambdas[k] > 1.0 ? 1.0 : -1.0;
      if (!(sg * spec.q_fns[k](t) > 0.0)) {
        throw ConditionError("(E) violated: sgn(lambda_" + std::to_string(k + 1) + " - 1) q_" +
                             std::to_string(k + 1) + "(" + num(t) + ") <= 0");
      }
    }
  }

  const Grid tail(grid.t_end() - t0, grid.n_steps() - iT);
  std::vector<double> plus(tail.size()), minus(tail.size());
  for (std::size_t j = 0; j < tail.size(); ++j) {
    const double t = t0 + tail.node(j);
    const double ph = phi_sum(spec, t);
    plus[j] = ph + g[iT + j];
    minus[j] = -ph + g[iT + j];
  }
  const double e = beta - alpha - n + 1;
  const double ga = std::tgamma(alpha);
  auto weigh = [&](std::vector<double> v) {
    const SampledFn I = rl_integral(SampledFn(tail, std::move(v)), alpha);
    std::vector<double> w(tail.size(), 0.0);
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = ga * std::pow(t0 + tail.node(j), e) * I[j];
    return w;
  };
  // express on the original time axis so horizons keep their meaning
  std::vector<double> wp = weigh(std::move(plus)), wm = weigh(std::move(minus));
  std::vector<double> full_p(g.size(), 0.0), full_m(g.size(), 0.0);
  std::copy(wp.begin(), wp.end(), full_p.begin() + iT);
  std::copy(wm.begin(), wm.end(), full_m.begin() + iT);
  const TrendVerdict vp = trend_verdict(SampledFn(grid, std::move(full_p)), horizons);
  const TrendVerdict vm = trend_verdict(SampledFn(grid, std::move(full_m)), horizons);

  bool down = true, up = true;
  for (std::size_t k = 1; k < horizons.size(); ++k) {
    down = down && vp.running_min[k] < vp.running_min[k - 1];
    up = up && vm.running_max[k] > vm.running_max[k - 1];
  }
  TrendVerdict v;
  v.horizons = horizons;
  v.running_min = vp.running_min;
  v.running_max = vm.running_max;
  v.verdict = (up && down) ? Verdict::Supported : Verdict::Inconclusive;
  v.detail = std::string("liminf branch ") + (down ? "decreasing" : "stalls") +
             ", limsup branch " + (up ? "increasing" : "stalls") + "; (D), (E) sampled on [" +
             num(t0) + ", " + num(grid.t_end()) + "] (heuristic)";
  return v;
}

ConditionAResult check_condition_A(const Rhs& f, std::pair<double, double> t_range,
                                   std::pair<double, double> x_range, std::size_t samples) {
  if (samples < 2) throw ParameterError("condition (A): need at least 2 samples per axis");
  ConditionAResult r;
  std::optional<std::size_t> last_bad;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = t_range.first + (t_range.second - t_range.first) * i / (samples - 1.0);
    for (std::size_t j = 0; j < samples; ++j) {
      const double x = x_range.first + (x_range.second - x_range.first) * j / (samples - 1.0);
      if (x * f(t, x) > 0.0) {
        ++r.positive_samples;
        last_bad = i;
      }
    }
  }
  if (!last_bad) {
    r.T = t_range.first;
  } else if (*last_bad + 1 < samples) {
    r.T = t_range.first + (t_range.second - t_range.first) * (*last_bad + 1) / (samples - 1.0);
  }
  return r;
}

double estimate_decay_exponent(const SampledFn& u, std::pair<double, double> fit_window) {
  const auto [lo, hi] = fit_window;
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError("decay fit: window must satisfy 0 < t_min < t_max");
  std::vector<double> lx, ly;
  for (std::size_t i = 1; i + 1 < u.size(); ++i) {
    const double t = u.t(i);
    if (t < lo || t > hi) continue;
    const double a = std::abs(u[i]);
    if (a > 0.0 && a >= std::abs(u[i - 1]) && a > std::abs(u[i + 1])) {
      lx.push_back(std::log(t));
      ly.push_back(std::log(a));
    }
  }
  if (lx.size() < 5) {
    throw InsufficientDataError("decay fit: " + std::to_string(lx.size()) +
                                " envelope points in the window, need 5");
  }
  const double m = static_cast<double>(lx.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) throw InsufficientDataError("decay fit: degenerate envelope abscissae");
  return sxy / sxx;
}

std::string crossings_csv(const OscillationReport& r) {
  std::ostringstream os;
  os << "index,t_left,t_right\n";
  char buf[96];
  for (const auto& c : r.crossings) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", c.index, c.t_left, c.t_right);
    os << buf;
  }
  return os.str();
}

std::string render_report(const OscillationReport& r) {
  std::ostringstream os;
  os << "[oscillation]\n";
  os << "horizon = " << num(r.horizon) << "\n";
  os << "crossings = " << r.count << "\n";
  if (!r.crossings.empty()) {
    os << "first_crossing = " << num(r.crossings.front().t_left) << "\n";
    os << "last_crossing = " << num(r.crossings.back().t_left) << "\n";
  }
  os << "eventually_signed = "
     << (r.eventually_signed ? (*r.eventually_signed > 0 ? "+" : "-") : "none") << "\n";
  os << "envelope_exponent = " << (r.envelope_exponent ? num(*r.envelope_exponent) : "n/a") << "\n";
  return os.str();
}

std::string render_verdict(const std::string& title, const TrendVerdict& v) {
  std::ostringstream os;
  os << "[" << title << "]\n";
  os << "verdict = " << to_string(v.verdict) << "\n";
  os << "detail = " << v.detail << "\n";
  for (std::size_t k = 0; k < v.horizons.size() && k < v.running_max.size(); ++k) {
    os << "horizon " << num(v.horizons[k]) << ": max " << num(v.running_max[k]) << ", min "
       << num(v.running_min[k]) << "\n";
  }
  return os.str();
}

}  // namespace fractosc
