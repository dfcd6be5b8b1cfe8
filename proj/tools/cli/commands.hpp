#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

#include "fractosc/solver.hpp"
#include "problem_spec.hpp"

namespace fractosc::cli {

enum ExitCode : int { kOk = 0, kSpecError = 1, kBlowUp = 2 };

struct GlobalOptions {
  std::optional<std::string> out_dir;
  std::optional<std::size_t> grid_steps;
  std::optional<long> seed;  // accepted for compatibility; nothing is random
};

/// --out-dir, then $FRACTOSC_OUT, then the fallback.
std::optional<std::string> resolve_out_dir(const GlobalOptions& g,
                                           std::optional<std::string> fallback = std::nullopt);

/// Built-in spec for figure 1..4; throws SpecError otherwise.
ProblemSpec figure_spec(int id);

/// Plain-text verdict blocks for the analyses requested by the spec.
std::string analyze_trace(const ProblemSpec& spec, const SampledFn& x,
                          std::optional<std::size_t> diverged_at);

int cmd_solve(const std::string& spec_path, const std::optional<std::string>& output,
              const GlobalOptions& g, std::ostream& out, std::ostream& err);
int cmd_analyze(const std::string& spec_path, const std::string& csv_path, const GlobalOptions& g,
                std::ostream& out, std::ostream& err);
int cmd_reproduce(int figure, const GlobalOptions& g, std::ostream& out, std::ostream& err);

/// Full command line entry point.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace fractosc::cli
