#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fractosc/grid.hpp"

namespace fractosc::cli {

/// Writes via a temporary file in the same directory and renames it into place.
void write_atomic(const std::string& path, const std::string& content);

/// Header "t,x", one row per node with 17 significant digits, then "# " trailer lines.
std::string trace_csv(const SampledFn& x, const std::vector<std::string>& trailers = {});

struct CsvTrace {
  std::vector<double> t;
  std::vector<double> x;
  std::vector<std::string> comments;  // without the leading "# "
  std::optional<std::size_t> diverged_at;
};

CsvTrace read_trace_csv(const std::string& path);

struct SvgSeries {
  std::string label;
  std::vector<double> t;
  std::vector<double> x;
};

/// Line plot with one polyline per series and annotated axes.
std::string render_svg(const std::string& title, const std::vector<SvgSeries>& series,
                       const std::string& x_label = "t", const std::string& y_label = "x(t)");

}  // namespace fractosc::cli
