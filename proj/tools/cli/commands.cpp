#include "commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "fractosc/errors.hpp"
#include "fractosc/oscillation.hpp"
#include "fractosc/reduction.hpp"
#include "io.hpp"

namespace fractosc::cli {

namespace fs = std::filesystem;

std::optional<std::string> resolve_out_dir(const GlobalOptions& g,
                                           std::optional<std::string> fallback) {
  if (g.out_dir) return g.out_dir;
  if (const char* env = std::getenv("FRACTOSC_OUT"); env && *env) return std::string(env);
  return fallback;
}

ProblemSpec figure_spec(int id) {
  ProblemSpec s;
  s.corrector_iters = 4;
  s.n_steps = 16384;
  switch (id) {
    case 1:
      s.name = "fig1";
      s.orders = {1.0 / 3.0, 0.5};
      s.coeffs = {2.0};
      s.initial = {1.0};
      s.rhs.form = "emden_fowler";
      s.rhs.p.c = {-1.0, 1.0};
      s.rhs.lambdas = {3.0};
      s.rhs.q = {Poly{{-3.0, 0.0, 1.0}}};
      s.forcing.form = "caputo_potential";
      s.forcing.power = 7.0 / 6.0;
      s.forcing.h = "sin";
      s.t_end = 70.0;
      s.analysis.horizons = {20.0, 40.0, 60.0};
      s.analysis.condition_a = true;
      s.analysis.condition_b = true;
      break;
    case 2:
      s.name = "fig2";
      s.orders = {1.0 / 3.0, 0.5};
      s.coeffs = {2.0};
      s.initial = {1.0};
      s.rhs.form = "emden_fowler";
      s.rhs.p.c = {0.0, -1.0};
      s.rhs.lambdas = {0.5, 2.0};
      s.rhs.q = {Poly{{0.0, 0.0, -1.0}}, Poly{{0.0, 0.0, 0.0, 1.0}}};
      s.forcing.form = "caputo_potential";
      s.forcing.power = 6.0;
      s.forcing.h = "sin";
      s.t_end = 80.0;
      s.analysis.horizons = {30.0, 55.0, 80.0};
      s.analysis.condition_f = true;
      s.analysis.f_start = 1.0;
      break;
    case 3:
    case 4:
      s.name = id == 3 ? "fig3" : "fig4";
      s.orders = {0.5, 2.0 / 3.0};
      s.coeffs = {2.0};
      s.initial = {id == 3 ? -0.5 : 0.6};
      if (id == 3) {
        s.rhs.form = "linear";
        s.rhs.b = 1.0;
      } else {
        s.rhs.form = "emden_fowler";
        s.rhs.p.c = {1.0};
        s.rhs.lambdas = {3.0};
        s.rhs.q = {Poly{{1.0}}};
      }
      s.forcing.form = "Bdoubleprime";
      s.forcing.sigma = 1.0 / 3.0;
      s.forcing.power = 1.0 / 3.0;
      s.forcing.shift = 1.0;
      s.forcing.eta = -0.75;
      s.forcing.h = "sin_root";
      s.forcing.root = 0.25;
      s.forcing.scale = id == 3 ? 1.0 : 0.01;
      s.t_end = 150.0;
      s.analysis.decay_window = std::make_pair(10.0, 150.0);
      s.analysis.horizons = {50.0, 100.0, 150.0};
      s.analysis.condition_bvariants = true;
      break;
    default:
      throw SpecError("unknown figure " + std::to_string(id) + " (expected 1, 2, 3 or 4)");
  }
  return s;
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

ProblemSpec with_overrides(ProblemSpec s, const GlobalOptions& g) {
  if (g.grid_steps) {
    if (*g.grid_steps == 0) throw SpecError("--grid-steps must be positive");
    s.n_steps = *g.grid_steps;
  }
  return s;
}

struct SolveOutcome {
  std::optional<SampledFn> x;
  std::optional<std::size_t> diverged_at;
  std::optional<std::size_t> failed_node;
  std::vector<std::string> trailers;
  std::string message;
};

SolveOutcome run_solver(const ProblemSpec& spec) {
  SolveOutcome o;
  try {
    const SolutionTrace tr = solve_pece(spec.problem(), spec.solver_config());
    o.x = tr.x;
    o.diverged_at = tr.diverged_at;
    if (tr.diverged_at) {
      const double t = spec.grid().node(*tr.diverged_at);
      o.trailers.push_back("diverged_at=" + std::to_string(*tr.diverged_at) + " t=" + num(t));
      o.message = "solution blew up at node " +
                  std::to_string(*tr.diverged_at) + " (t = " + num(t) + "); trace truncated";
    }
    o.trailers.push_back("residual_norm=" + num(tr.residual_norm));
  } catch (const ConvergenceError& e) {
    o.failed_node = e.node();
    o.trailers.push_back("convergence_failure node=" + std::to_string(e.node()));
    o.message = e.what();
  }
  return o;
}

std::string write_or_print(const std::optional<std::string>& path, const std::string& content,
                           std::ostream& out) {
  if (!path) {
    out << content;
    return "";
  }
  write_atomic(*path, content);
  return *path;
}

}  // namespace

std::string analyze_trace(const ProblemSpec& spec, const SampledFn& x,
                          std::optional<std::size_t> diverged_at) {
  std::ostringstream os;
  const auto& a = spec.analysis;
  os << "[trace]\nname = " << spec.name << "\nnodes = " << x.size()
     << "\nt_end = " << num(x.grid().t_end()) << "\n";
  os << "diverged_at = " << (diverged_at ? std::to_string(*diverged_at) : "none") << "\n";
  const double alpha = spec.orders.back();
  const int n = static_cast<int>(std::ceil(alpha));

  OscillationReport rep = count_zero_crossings(x, a.deadband);
  std::string decay_error;
  if (a.decay_window) {
    try {
      rep.envelope_exponent = estimate_decay_exponent(x, *a.decay_window);
    } catch (const Error& e) {
      decay_error = e.what();
    }
  }
  if (a.crossings) os << "\n" << render_report(rep);
  if (!decay_error.empty()) os << "\n[decay]\nenvelope_exponent = n/a (" << decay_error << ")\n";
  if (a.decay_window && rep.envelope_exponent) {
    os << "\n[decay]\nwindow = [" << num(a.decay_window->first) << ", "
       << num(a.decay_window->second) << "]\nenvelope_exponent = " << num(*rep.envelope_exponent)
       << "\nsign = " << (*rep.envelope_exponent <= 0.0 ? "nonpositive" : "positive") << "\n";
  }
  if (a.condition_a) {
    const ConditionAResult r =
        check_condition_A(spec.problem().rhs, a.a_t_range, a.a_x_range, a.a_samples);
    os << "\n[condition A]\nmethod = lattice sampling (heuristic)\n";
    os << "T = " << (r.T ? num(*r.T) : "NOT-FOUND") << "\npositive_samples = " << r.positive_samples
       << "\n";
  }
  if (a.condition_b || a.condition_bvariants || a.condition_f) {
    const double beta = spec.orders.front();
    const SampledFn g = spec.forcing_samples(spec.grid());
    if (a.condition_b) {
      os << "\n" << render_verdict("condition B", check_condition_B(g, alpha, beta, n, a.horizons));
    }
    if (a.condition_bvariants) {
      os << "\n"
         << render_verdict("condition B-variants",
                           check_condition_Bvariants(spec.forcing_structure(), alpha, beta, n,
                                                     a.horizons));
    }
    if (a.condition_f) {
      EmdenFowlerSpec ef = spec.emden_fowler();
      os << "\n"
         << render_verdict("condition F",
                           check_condition_F(ef, g, alpha, beta, n, a.f_start, a.horizons))
         << "gamma = " << num(gamma_of(ef)) << "\n";
    }
  }
  if (a.tail_window) {
    const TailDecayReport r = tail_decay_check(x, alpha, n, *a.tail_window);
    os << "\n[tail decay]\nsup = " << num(r.sup) << "\nfirst_quarter_sup = "
       << num(r.first_quarter_sup) << "\nlast_quarter_sup = " << num(r.last_quarter_sup)
       << "\nverdict = " << (r.flagged ? "fail" : "pass") << "\n";
  }
  return os.str();
}

int cmd_solve(const std::string& spec_path, const std::optional<std::string>& output,
              const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const ProblemSpec spec = with_overrides(load_spec_file(spec_path), g);
  const SolveOutcome o = run_solver(spec);
  std::optional<std::string> path = output;
  if (!path) {
    if (auto dir = resolve_out_dir(g)) path = (fs::path(*dir) / (spec.name + ".csv")).string();
  }
  const std::string csv = o.x ? trace_csv(*o.x, o.trailers) : "t,x\n# " + o.trailers.front() + "\n";
  write_or_print(path, csv, out);
  if (!o.message.empty()) err << "fractosc: " << o.message << "\n";
  return (o.diverged_at || o.failed_node) ? kBlowUp : kOk;
}

int cmd_analyze(const std::string& spec_path, const std::string& csv_path, const GlobalOptions& g,
                std::ostream& out, std::ostream&) {
  const ProblemSpec spec = with_overrides(load_spec_file(spec_path), g);
  const CsvTrace csv = read_trace_csv(csv_path);
  const Grid grid = spec.grid();
  const std::size_t rows = csv.t.size();
  if (rows > grid.size() || (rows < grid.size() && !csv.diverged_at)) {
    throw SpecError("grid/CSV mismatch: " + std::to_string(rows) + " rows for a grid of " +
                    std::to_string(grid.size()) + " nodes");
  }
  for (std::size_t i = 0; i < rows; ++i) {
    if (std::abs(csv.t[i] - grid.node(i)) > 1e-9 * grid.t_end()) {
      throw SpecError("grid/CSV mismatch at row " + std::to_string(i + 1) + ": t = " +
                      num(csv.t[i]) + ", expected " + num(grid.node(i)));
    }
  }
  if (rows < 2) throw SpecError("csv: need at least two rows to analyze");
  const SampledFn x(grid.truncated(rows - 1), csv.x);
  out << analyze_trace(spec, x, csv.diverged_at);
  return kOk;
}

int cmd_reproduce(int figure, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const ProblemSpec spec = with_overrides(figure_spec(figure), g);
  const fs::path dir = *resolve_out_dir(g, std::string("."));
  const SolveOutcome o = run_solver(spec);
  const std::string stem = "fig" + std::to_string(figure);
  write_atomic((dir / (stem + ".toml")).string(), spec.to_toml());
  const std::string csv = o.x ? trace_csv(*o.x, o.trailers) : "t,x\n# " + o.trailers.front() + "\n";
  write_atomic((dir / (stem + ".csv")).string(), csv);
  SvgSeries series{"x", {}, {}};
  if (o.x) {
    for (std::size_t i = 0; i < o.x->size(); ++i) {
      series.t.push_back(o.x->t(i));
      series.x.push_back((*o.x)[i]);
    }
  }
  const std::string title = "Figure " + std::to_string(figure) + ": x(0) = " +
                            num(spec.initial.front()) + " on [0, " + num(spec.t_end) + "]";
  write_atomic((dir / (stem + ".svg")).string(), render_svg(title, {series}));

  out << "wrote " << (dir / (stem + ".csv")).string() << ", " << (dir / (stem + ".svg")).string()
      << "\n\n";
  if (o.x && o.x->size() >= 2) out << analyze_trace(spec, *o.x, o.diverged_at);
  if (!o.message.empty()) {
    err << "fractosc: " << o.message << "\n";
    if (figure == 2) {
      err << "fractosc: note: global existence is not guaranteed for this superlinear equation; "
             "oscillation is only claimed for solutions that exist for all time\n";
    }
  }
  return (o.diverged_at || o.failed_node) ? kBlowUp : kOk;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-term Caputo fractional ODE solver and oscillation analysis", "fractosc"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  std::string out_dir;
  std::size_t grid_steps = 0;
  long seed = 0;
  auto* o_dir = app.add_option("--out-dir", out_dir, "Directory for output files (env FRACTOSC_OUT)");
  auto* o_steps = app.add_option("--grid-steps", grid_steps, "Override the grid step count")
                      ->check(CLI::PositiveNumber);
  auto* o_seed = app.add_option("--seed", seed, "Reserved; the tool uses no randomness");

  std::string spec_path, csv_path;
  std::string output;
  int figure = 0;
  auto* solve = app.add_subcommand("solve", "Solve a problem spec and write the trace as CSV");
  solve->add_option("spec", spec_path, "Problem spec file")->required();
  auto* o_out = solve->add_option("-o,--output", output, "CSV path (default: stdout or out dir)");
  auto* analyze = app.add_subcommand("analyze", "Run the analyses requested by a spec on a CSV trace");
  analyze->add_option("spec", spec_path, "Problem spec file")->required();
  analyze->add_option("csv", csv_path, "Trace CSV")->required();
  auto* reproduce = app.add_subcommand("reproduce", "Reproduce one of the built-in figures");
  reproduce->add_option("figure", figure, "Figure id (1-4)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kSpecError;
  }
  if (*o_dir) g.out_dir = out_dir;
  if (*o_steps) g.grid_steps = grid_steps;
  if (*o_seed) g.seed = seed;

  try {
    if (*solve) return cmd_solve(spec_path, *o_out ? std::optional(output) : std::nullopt, g, out, err);
    if (*analyze) return cmd_analyze(spec_path, csv_path, g, out, err);
    if (*reproduce) return cmd_reproduce(figure, g, out, err);
  } catch (const std::exception& e) {
    err << "fractosc: error: " << e.what() << "\n";
    return kSpecError;
  }
  return kSpecError;
}

}  // namespace fractosc::cli
