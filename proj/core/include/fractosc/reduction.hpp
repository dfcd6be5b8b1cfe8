#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fractosc/grid.hpp"

namespace fractosc {

/// x^{(order)}(t)
using DerivFn = std::function<double(double t, int order)>;

/// y_1 = I^{n-alpha} x + a I^{n-beta} x and, for i >= 2, the sum of the Caputo
/// derivatives of orders alpha-n-1+i and beta-n-1+i plus the initial-data power
/// terms, so that y_i' = y_{i+1}. y_i(0) is stored as 0 for i >= 2.
struct YChain {
  int n = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double a = 0.0;
  InitialData ic;
  SampledFn x;
  std::vector<SampledFn> ys;
};

YChain build_y_chain(const DerivFn& x, double alpha, double beta, double a, const InitialData& ic,
                     const Grid& grid);

/// Coefficient of x_k t^{c-1} in y_i for order nu: 1/Gamma(c), c = n-nu-i+2+k.
double reciprocal_gamma(double c);

/// max_i sup_window |(y_i(t+h) - y_i(t))/h - y_{i+1}(t)|
double verify_chain(const YChain& chain, std::pair<double, double> t_window);

/// Defect of y_n' = -q f(x) - sgn(x) g + initial-data terms on the window.
double verify_last_equation(const YChain& chain, const std::function<double(double)>& q,
                            const std::function<double(double)>& f,
                            const std::function<double(double)>& g,
                            std::pair<double, double> t_window);

enum class SignPattern { A, B, C, None, Mixed };

const char* to_string(SignPattern p);

struct PatternVerdict {
  SignPattern pattern = SignPattern::None;
  bool admissible = false;  // odd n admits A, even n admits B and C
  std::vector<int> signs;   // +1, -1, or 0 when y_i changes sign on the tail
};

PatternVerdict classify_sign_pattern(const YChain& chain, double tail_fraction);
PatternVerdict classify_sign_pattern(const std::vector<SampledFn>& ys, double tail_fraction);

struct TailDecayReport {
  double sup = 0.0;                 // sup t^{n-alpha} |x| over the window
  double first_quarter_sup = 0.0;
  double last_quarter_sup = 0.0;
  bool flagged = false;             // last quarter exceeds 1.5x the first quarter
};

TailDecayReport tail_decay_check(const SampledFn& x, double alpha, int n,
                                 std::pair<double, double> t_window);

}  // namespace fractosc
