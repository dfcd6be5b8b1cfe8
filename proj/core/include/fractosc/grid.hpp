#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fractosc {

/// Uniform mesh t_i = i*h on [0, t_end], i = 0..n_steps.
class Grid {
 public:
  Grid(double t_end, std::size_t n_steps);

  double t_end() const noexcept { return t_end_; }
  std::size_t n_steps() const noexcept { return n_steps_; }
  std::size_t size() const noexcept { return n_steps_ + 1; }
  double h() const noexcept { return h_; }
  double node(std::size_t i) const noexcept { return static_cast<double>(i) * h_; }

  /// Prefix grid with the same step and `n_steps` steps.
  Grid truncated(std::size_t n_steps) const;

  /// Index of the node closest to t, clamped to the grid.
  std::size_t nearest_index(double t) const noexcept;

  std::vector<double> nodes() const;

  bool operator==(const Grid& other) const noexcept;

 private:
  double t_end_;
  std::size_t n_steps_;
  double h_;
};

/// Real-valued function sampled on every node of a grid. Values are finite.
class SampledFn {
 public:
  SampledFn(Grid grid, std::vector<double> values);

  static SampledFn zeros(const Grid& grid);
  static SampledFn sample(const Grid& grid, const std::function<double(double)>& fn);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double t(std::size_t i) const noexcept { return grid_.node(i); }

  SampledFn truncated(std::size_t n_steps) const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Caputo initial data x(0), x'(0), ..., x^{(n-1)}(0).
struct InitialData {
  std::vector<double> x_derivs;

  std::size_t size() const noexcept { return x_derivs.size(); }
  double operator[](std::size_t k) const noexcept { return x_derivs[k]; }
};

/// Throws InputError naming the first non-finite index.
void require_finite(std::span<const double> values, const char* what);

/// Throws InputError when the two grids differ.
void require_same_grid(const Grid& a, const Grid& b, const char* what);

/// Sup-norm of a - b over [from, to) node indices.
double sup_distance(std::span<const double> a, std::span<const double> b,
                    std::size_t from = 0, std::size_t to = static_cast<std::size_t>(-1));

/// Pairwise summation with a fixed association order.
double pairwise_sum(std::span<const double> terms) noexcept;

}  // namespace fractosc
