#include "fractosc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fractosc/errors.hpp"

namespace fractosc {

Grid::Grid(double t_end, std::size_t n_steps) : t_end_(t_end), n_steps_(n_steps), h_(0.0) {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw ParameterError("grid: t_end must be finite and > 0");
  }
  if (n_steps == 0) throw ParameterError("grid: n_steps must be positive");
  h_ = t_end / static_cast<double>(n_steps);
}

Grid Grid::truncated(std::size_t n_steps) const {
  if (n_steps > n_steps_) throw ParameterError("grid: cannot extend by truncation");
  Grid g = *this;
  g.n_steps_ = n_steps;
  g.t_end_ = static_cast<double>(n_steps) * h_;
  return g;
}

std::size_t Grid::nearest_index(double t) const noexcept {
  if (!(t > 0.0)) return 0;
  const double k = std::round(t / h_);
  if (k >= static_cast<double>(n_steps_)) return n_steps_;
  return static_cast<std::size_t>(k);
}

std::vector<double> Grid::nodes() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = node(i);
  return out;
}

bool Grid::operator==(const Grid& other) const noexcept {
  return n_steps_ == other.n_steps_ && h_ == other.h_;
}

SampledFn::SampledFn(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw InputError("sampled function: " + std::to_string(values_.size()) +
                     " values for a grid of " + std::to_string(grid_.size()) + " nodes");
  }
  require_finite(values_, "sampled function");
}

SampledFn SampledFn::zeros(const Grid& grid) {
  return SampledFn(grid, std::vector<double>(grid.size(), 0.0));
}

SampledFn SampledFn::sample(const Grid& grid, const std::function<double(double)>& fn) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid.node(i));
  return SampledFn(grid, std::move(v));
}

SampledFn SampledFn::truncated(std::size_t n_steps) const {
  Grid g = grid_.truncated(n_steps);
  return SampledFn(g, std::vector<double>(values_.begin(), values_.begin() + g.size()));
}

void require_finite(std::span<const double> values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw InputError(std::string(what) + ": non-finite value at index " + std::to_string(i));
    }
  }
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw InputError(std::string(what) + ": grid mismatch");
}

double sup_distance(std::span<const double> a, std::span<const double> b, std::size_t from,
                    std::size_t to) {
  const std::size_t end = std::min({to, a.size(), b.size()});
  double m = 0.0;
  for (std::size_t i = from; i < end; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double pairwise_sum(std::span<const double> terms) noexcept {
  if (terms.size() <= 16) {
    double s = 0.0;
    for (double x : terms) s += x;
    return s;
  }
  const std::size_t half = terms.size() / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

}  // namespace fractosc
