#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fractosc/grid.hpp"
#include "fractosc/solver.hpp"

namespace fractosc {

struct Crossing {
  std::size_t index;  // sign change happens inside [t_index, t_index+1]
  double t_left;
  double t_right;
};

struct OscillationReport {
  std::vector<Crossing> crossings;
  std::size_t count = 0;
  std::optional<int> eventually_signed;  // +1 / -1
  std::optional<double> envelope_exponent;
  double horizon = 0.0;
};

/// Sign changes with hysteresis: a new sign is accepted only once |u| exceeds
/// the deadband. Without a deadband, 1e-9 * max|u| is used.
/// eventually_signed is set when the last quarter of the horizon has no crossing.
OscillationReport count_zero_crossings(const SampledFn& u, std::optional<double> deadband = {});

/// Gamma(alpha) t^{beta-alpha-n+1} I^alpha g, zero at t = 0.
SampledFn weighted_forcing(const SampledFn& g, double alpha, double beta, int n);

enum class Verdict { Supported, Inconclusive, Violated };

const char* to_string(Verdict v);

struct TrendVerdict {
  Verdict verdict = Verdict::Inconclusive;
  std::string detail;
  std::vector<double> horizons;
  std::vector<double> running_max;
  std::vector<double> running_min;
};

/// Finite-horizon proxy for limsup = +inf and liminf = -inf: the running
/// maximum must strictly increase and the running minimum strictly decrease
/// across at least three horizons.
TrendVerdict trend_verdict(const SampledFn& w, const std::vector<double>& horizons);

TrendVerdict check_condition_B(const SampledFn& g, double alpha, double beta, int n,
                               const std::vector<double>& horizons);

enum class ForcingForm { Raw, Bprime, Bdoubleprime };

struct ForcingSpec {
  ForcingForm form = ForcingForm::Raw;
  double sigma = 0.0;
  double eta = 0.0;
  TimeFn h_fn;
};

TrendVerdict check_condition_Bvariants(const ForcingSpec& spec, double alpha, double beta, int n,
                                       const std::vector<double>& horizons);

/// f(t,x) = -p(t) x - sum_i q_i(t) sgn(x) |x|^{lambda_i}
struct EmdenFowlerSpec {
  std::vector<double> lambdas;
  TimeFn p_fn;
  std::vector<TimeFn> q_fns;
  std::optional<std::size_t> split_index;  // number of lambdas below 1
};

double gamma_of(const EmdenFowlerSpec& spec);

/// gamma * sum_i |p|^{lambda_i/(lambda_i-1)} |q_i|^{1/(1-lambda_i)} at t.
double phi_sum(const EmdenFowlerSpec& spec, double t);

/// Checks (D) and (E) on the sampled tail t >= T and applies the trend proxy to
/// t^{beta-alpha-n+1} int_T^t (t-s)^{alpha-1} (+-phi_sum(s) + g(s)) ds.
/// g is sampled on a grid starting at 0; T is rounded to the nearest node.
TrendVerdict check_condition_F(const EmdenFowlerSpec& spec, const SampledFn& g, double alpha,
                               double beta, int n, double T, const std::vector<double>& horizons);

struct ConditionAResult {
  std::optional<double> T;  // empty means NOT-FOUND
  std::size_t positive_samples = 0;
};

/// Heuristic lattice scan of x f(t,x) <= 0.
ConditionAResult check_condition_A(const Rhs& f, std::pair<double, double> t_range,
                                   std::pair<double, double> x_range, std::size_t samples);

/// Least-squares slope of log(local maxima of |u|) against log t in the window.
double estimate_decay_exponent(const SampledFn& u, std::pair<double, double> fit_window);

std::string crossings_csv(const OscillationReport& r);
std::string render_report(const OscillationReport& r);
std::string render_verdict(const std::string& title, const TrendVerdict& v);

}  // namespace fractosc
