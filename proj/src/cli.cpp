#include "fdode/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "fdode/adm.hpp"
#include "fdode/errors.hpp"
#include "fdode/fdm.hpp"
#include "fdode/hypotheses.hpp"
#include "fdode/linode.hpp"
#include "fdode/problem.hpp"
#include "fdode/sampling.hpp"

#ifndef FDODE_VERSION
#define FDODE_VERSION "0.0.0"
#endif

namespace fdode {

const char* tool_version() noexcept { return FDODE_VERSION; }

std::string csv_number(double x) {
  if (std::isnan(x)) {
    return "nan";
  }
  if (std::isinf(x)) {
    return x > 0 ? "inf" : "-inf";
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string problem;
  std::string out_dir = ".";
};

class Output {
 public:
  explicit Output(const std::string& dir) : dir_(dir) { fs::create_directories(dir_); }

  // Writes the file in one go; returns its name for the manifest.
  std::string write(const std::string& name, const std::string& body) {
    std::ofstream f(dir_ / name, std::ios::binary | std::ios::trunc);
    if (!f) {
      throw std::runtime_error("cannot write " + (dir_ / name).string());
    }
    f << body;
    files_.push_back(name);
    return name;
  }

  const std::vector<std::string>& files() const { return files_; }
  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

class Csv {
 public:
  explicit Csv(const std::vector<std::string>& header) { row_strings(header); }

  void row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) {
      cells.push_back(csv_number(v));
    }
    row_strings(cells);
  }

  void row_strings(const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k > 0) {
        body_ += ',';
      }
      body_ += cells[k];
    }
    body_ += '\n';
  }

  const std::string& str() const { return body_; }

 private:
  std::string body_;
};

void write_manifest(Output& output, const std::string& command, const json& params, double seconds) {
  json m;
  m["command"] = command;
  m["parameters"] = params;
  m["tool_version"] = tool_version();
  m["duration_seconds"] = seconds;
  m["files"] = output.files();
  std::ofstream f(output.dir() / "manifest.json", std::ios::binary | std::ios::trunc);
  f << m.dump(2) << '\n';
}

// Every sample time of a trajectory layout, junctions once.
template <class Fn>
void for_each_sample(const PiecewiseTrajectory& traj, Fn&& fn) {
  for (std::size_t i = 0; i < traj.interval_count(); ++i) {
    for (int k = i == 0 ? 0 : 1; k < traj.layout().samples(); ++k) {
      fn(i, k, traj.sample_time(i, k));
    }
  }
}

std::vector<std::string> component_header(const std::string& prefix, int dim) {
  std::vector<std::string> h;
  for (int c = 1; c <= dim; ++c) {
    h.push_back(prefix + "u" + std::to_string(c));
  }
  return h;
}

void check_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw UsageError(std::string("--") + name + " must be a positive number");
  }
}

Grid solve_grid(const ProblemSpec& spec, double h, double t_end) {
  check_positive(h, "h");
  if (!(t_end > spec.t0) || !std::isfinite(t_end)) {
    throw UsageError("--t-end must lie after the problem's t0");
  }
  return make_uniform_grid(spec.t0, t_end, h);
}

void check_rank(int rank) {
  if (rank < 0 || rank > kMaxRank) {
    throw UsageError("--rank must lie in 0.." + std::to_string(kMaxRank));
  }
}

void check_inner(int inner) {
  if (inner < 2) {
    throw UsageError("--inner must be >= 2");
  }
}

json base_params(const Common& c) {
  json p;
  p["problem"] = c.problem;
  return p;
}

// solve ---------------------------------------------------------------------

struct SolveArgs {
  int rank = 0;
  double h = 0.0;
  double t_end = 0.0;
  int inner = 16;
};

json run_solve(const Common& c, const SolveArgs& a, Output& output, std::ostream& out) {
  const ProblemSpec spec = load_problem(c.problem);
  check_rank(a.rank);
  check_inner(a.inner);
  const Grid grid = solve_grid(spec, a.h, a.t_end);
  const SeriesSolution sol = fd_solve(spec, FdRunConfig{a.rank, grid, a.inner});
  std::vector<PiecewiseTrajectory> sums;
  for (int q = 0; q <= a.rank; ++q) {
    sums.push_back(partial_sum(sol, q));
  }

  std::vector<std::string> header{"t"};
  for (int q = 0; q <= a.rank; ++q) {
    for (const auto& h : component_header("p" + std::to_string(q) + "_", spec.dim)) {
      header.push_back(h);
    }
  }
  Csv solution(header);
  std::vector<std::string> err_header{"t"};
  for (int q = 0; q <= a.rank; ++q) {
    err_header.push_back("delta" + std::to_string(q));
  }
  Csv errors(err_header);
  for_each_sample(sums.front(), [&](std::size_t i, int k, double t) {
    std::vector<double> row{t};
    for (const auto& s : sums) {
      for (int d = 0; d < spec.dim; ++d) {
        row.push_back(s.block(i)(d, k));
      }
    }
    solution.row(row);
    if (const auto ex = eval_exact(spec, t)) {
      std::vector<double> erow{t};
      for (const auto& s : sums) {
        erow.push_back((s.block(i).col(k) - *ex).norm());
      }
      errors.row(erow);
    }
  });
  output.write("solution.csv", solution.str());
  if (spec.exact) {
    output.write("errors.csv", errors.str());
  }
  Csv summary({"rank", "sup_error", "residual"});
  for (int q = 0; q <= a.rank; ++q) {
    const auto e = error_vs_exact(spec, sums[static_cast<std::size_t>(q)]);
    const double r = residual(spec, sums[static_cast<std::size_t>(q)]);
    summary.row_strings({std::to_string(q), e ? csv_number(*e) : "", csv_number(r)});
    out << "rank " << q << ": sup_error " << (e ? csv_number(*e) : "n/a") << ", residual "
        << csv_number(r) << '\n';
  }
  output.write("summary.csv", summary.str());

  json p = base_params(c);
  p["rank"] = a.rank;
  p["h"] = a.h;
  p["t_end"] = a.t_end;
  p["inner_steps"] = a.inner;
  return p;
}

// adm -----------------------------------------------------------------------

struct AdmArgs {
  int rank = 4;
  double t_end = 0.0;
  int inner = 0;
  std::vector<double> split;
};

json run_adm(const Common& c, const AdmArgs& a, Output& output, std::ostream& out) {
  const ProblemSpec spec = load_problem(c.problem);
  if (a.rank < 2 || a.rank > kMaxRank) {
    throw UsageError("--rank must lie in 2.." + std::to_string(kMaxRank) + " for adm");
  }
  if (!(a.t_end > spec.t0)) {
    throw UsageError("--t-end must lie after the problem's t0");
  }
  AdmConfig cfg;
  cfg.rank = a.rank;
  cfg.t_end = a.t_end;
  cfg.inner_steps = a.inner;
  if (!a.split.empty()) {
    if (a.split.size() != static_cast<std::size_t>(spec.dim * spec.dim)) {
      throw UsageError("--split needs dim*dim comma-separated values (row-major)");
    }
    cfg.linear_split = Matrix(spec.dim, spec.dim);
    for (int r = 0; r < spec.dim; ++r) {
      for (int s = 0; s < spec.dim; ++s) {
        cfg.linear_split(r, s) = a.split[static_cast<std::size_t>(r * spec.dim + s)];
      }
    }
  }
  const SeriesSolution sol = adm_solve(spec, cfg);
  const DivergenceReport rep = divergence_indicator(sol, spec, TimeWindow{spec.t0, a.t_end});

  std::vector<std::string> header{"t"};
  for (int i = 0; i <= a.rank; ++i) {
    for (const auto& h : component_header("term" + std::to_string(i) + "_", spec.dim)) {
      header.push_back(h);
    }
  }
  Csv terms(header);
  for_each_sample(sol.terms.front(), [&](std::size_t i, int k, double t) {
    std::vector<double> row{t};
    for (const auto& term : sol.terms) {
      for (int d = 0; d < spec.dim; ++d) {
        row.push_back(term.block(i)(d, k));
      }
    }
    terms.row(row);
  });
  output.write("adm_terms.csv", terms.str());

  std::ostringstream report;
  report << "window = [" << csv_number(spec.t0) << ", " << csv_number(a.t_end) << "]\n";
  report << "rank = " << a.rank << "\n";
  report << "inner_steps = " << adm_inner_steps(spec, cfg) << "\n";
  report << "verdict = " << to_string(rep.verdict) << "\n";
  for (std::size_t i = 0; i < rep.term_norms.size(); ++i) {
    report << "term_norm" << i << " = " << csv_number(rep.term_norms[i]) << "\n";
  }
  if (const auto ex = eval_exact(spec, a.t_end)) {
    for (int q = 0; q <= a.rank; ++q) {
      const Vector end = partial_sum(sol, q).final_value();
      report << "partial_sum_error_at_end" << q << " = " << csv_number((end - *ex).norm()) << "\n";
    }
  }
  output.write("adm_report.txt", report.str());
  out << "ADM verdict on [" << csv_number(spec.t0) << ", " << csv_number(a.t_end)
      << "]: " << to_string(rep.verdict) << '\n';

  json p = base_params(c);
  p["rank"] = a.rank;
  p["t_end"] = a.t_end;
  p["inner_steps"] = adm_inner_steps(spec, cfg);
  p["split"] = a.split;
  return p;
}

// check ---------------------------------------------------------------------

struct CheckArgs {
  std::string region = "3";
  std::size_t samples = 100000;
  std::optional<std::uint64_t> seed;
  std::optional<double> t_end;
  double epsilon1 = 0.1;
};

Box parse_region(const std::string& text, int dim) {
  const auto number = [&](const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
      throw UsageError("--region: malformed number '" + s + "'");
    }
    return v;
  };
  if (text.find(':') == std::string::npos) {
    const double w = number(text);
    if (!(w > 0.0)) {
      throw UsageError("--region half-width must be positive");
    }
    return symmetric_box(dim, w);
  }
  Box box{Vector(dim), Vector(dim)};
  std::stringstream ss(text);
  std::string part;
  int k = 0;
  while (std::getline(ss, part, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string::npos || k >= dim) {
      throw UsageError("--region expects W or lo:hi,...,lo:hi with dim pairs");
    }
    box.lo(k) = number(part.substr(0, colon));
    box.hi(k) = number(part.substr(colon + 1));
    if (!(box.hi(k) > box.lo(k))) {
      throw UsageError("--region needs lo < hi");
    }
    ++k;
  }
  if (k != dim) {
    throw UsageError("--region expects dim lo:hi pairs");
  }
  return box;
}

json run_check(const Common& c, const CheckArgs& a, Output& output, std::ostream& out) {
  const ProblemSpec spec = load_problem(c.problem);
  const Box region = parse_region(a.region, spec.dim);
  if (a.samples < 100) {
    throw UsageError("--samples must be >= 100");
  }
  check_positive(a.epsilon1, "epsilon1");
  const double t_end = a.t_end.value_or(spec.t0 + 6.0);
  if (!(t_end > spec.t0)) {
    throw UsageError("--t-end must lie after the problem's t0");
  }
  HypothesisOptions opts;
  opts.alpha_samples = a.samples;
  opts.seed = a.seed.value_or(default_seed());
  const HypothesisReport rep = hypothesis_report(spec, TimeRange{spec.t0, t_end}, region, a.epsilon1, opts);
  const std::string text = to_key_value(rep);
  output.write("hypotheses.txt", text);
  out << text;

  json p = base_params(c);
  p["region"] = a.region;
  p["samples"] = a.samples;
  p["seed"] = opts.seed;
  p["t_end"] = t_end;
  p["epsilon1"] = a.epsilon1;
  return p;
}

// convergence -----------------------------------------------------------------

struct ConvergenceArgs {
  std::string ranks = "0..4";
  double h = 0.0;
  double t_end = 0.0;
  int inner = 16;
  double tol = 1e-10;
};

std::pair<int, int> parse_ranks(const std::string& text) {
  const auto dots = text.find("..");
  const auto number = [&](const std::string& s) {
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      throw UsageError("--ranks expects A..B with integers, got '" + text + "'");
    }
    return v;
  };
  if (dots == std::string::npos) {
    throw UsageError("--ranks expects A..B");
  }
  const int lo = number(text.substr(0, dots));
  const int hi = number(text.substr(dots + 2));
  if (lo < 0 || hi < lo || hi > kMaxRank) {
    throw UsageError("--ranks needs 0 <= A <= B <= " + std::to_string(kMaxRank));
  }
  return {lo, hi};
}

double sup_distance(const PiecewiseTrajectory& a, const PiecewiseTrajectory& b) {
  return trajectory_sup_norm(a - b, NormMode::value);
}

json run_convergence(const Common& c, const ConvergenceArgs& a, Output& output, std::ostream& out) {
  const ProblemSpec spec = load_problem(c.problem);
  const auto [lo, hi] = parse_ranks(a.ranks);
  check_inner(a.inner);
  const Grid grid = solve_grid(spec, a.h, a.t_end);
  const SeriesSolution sol = fd_solve(spec, FdRunConfig{hi, grid, a.inner});
  std::optional<PiecewiseTrajectory> reference;
  if (!spec.exact) {
    if (!(a.tol >= 1e-12 && a.tol <= 1e-3)) {
      throw UsageError("--tol must lie in [1e-12, 1e-3]");
    }
    reference = reference_solve(spec, grid, InnerLayout{a.inner}, a.tol);
  }
  Csv csv({"rank", "sup_error", "ratio_to_previous"});
  std::vector<double> errs;
  for (int q = lo; q <= hi; ++q) {
    const PiecewiseTrajectory s = partial_sum(sol, q);
    const double e = reference ? sup_distance(s, *reference) : *error_vs_exact(spec, s);
    const std::string ratio = errs.empty() ? "" : csv_number(e / errs.back());
    csv.row_strings({std::to_string(q), csv_number(e), ratio});
    errs.push_back(e);
  }
  output.write("convergence.csv", csv.str());
  out << csv.str();
  json p = base_params(c);
  p["ranks"] = {lo, hi};
  p["h"] = a.h;
  p["t_end"] = a.t_end;
  p["inner_steps"] = a.inner;
  p["error_source"] = reference ? "reference_solve" : "exact";
  if (reference) {
    p["tol"] = a.tol;
  }
  bool positive = errs.size() >= 3;
  for (double e : errs) {
    positive = positive && e > 0.0 && std::isfinite(e);
  }
  if (positive) {
    const double rate = empirical_rate(errs);
    out << "empirical rate " << csv_number(rate) << '\n';
    p["empirical_rate"] = rate;
  }
  return p;
}

// compare ---------------------------------------------------------------------

struct CompareArgs {
  int rank = 4;
  double h = 0.0;
  double t_end = 0.0;
  double tol = 1e-10;
  int inner = 16;
  int points = 121;
};

json run_compare(const Common& c, const CompareArgs& a, Output& output, std::ostream& out) {
  const ProblemSpec spec = load_problem(c.problem);
  check_rank(a.rank);
  check_inner(a.inner);
  if (!(a.tol >= 1e-12 && a.tol <= 1e-3)) {
    throw UsageError("--tol must lie in [1e-12, 1e-3]");
  }
  if (a.points < 2) {
    throw UsageError("--points must be >= 2");
  }
  const Grid grid = solve_grid(spec, a.h, a.t_end);
  const PiecewiseTrajectory fd = partial_sum(fd_solve(spec, FdRunConfig{a.rank, grid, a.inner}), a.rank);
  AdmConfig cfg;
  cfg.rank = a.rank;
  cfg.t_end = a.t_end;
  const SeriesSolution adm = adm_solve(spec, cfg);
  const PiecewiseTrajectory adm_sum = partial_sum(adm, a.rank);
  const PiecewiseTrajectory ref = reference_solve(spec, grid, InnerLayout{a.inner}, a.tol);

  std::vector<std::string> header{"t"};
  for (const char* who : {"fd_", "adm_", "ref_"}) {
    for (const auto& h : component_header(who, spec.dim)) {
      header.push_back(h);
    }
  }
  if (spec.exact) {
    for (const auto& h : component_header("exact_", spec.dim)) {
      header.push_back(h);
    }
  }
  header.push_back("fd_minus_ref");
  header.push_back("adm_minus_ref");
  Csv csv(header);
  double worst_fd = 0.0;
  double worst_adm = 0.0;
  for (int k = 0; k < a.points; ++k) {
    const double t = k == a.points - 1 ? a.t_end
                                       : spec.t0 + (a.t_end - spec.t0) * k / (a.points - 1);
    const Vector f = trajectory_eval(fd, t);
    const Vector d = trajectory_eval(adm_sum, t);
    const Vector r = trajectory_eval(ref, t);
    std::vector<double> row{t};
    for (const Vector* v : {&f, &d, &r}) {
      for (int i = 0; i < spec.dim; ++i) {
        row.push_back((*v)(i));
      }
    }
    if (const auto ex = eval_exact(spec, t)) {
      for (int i = 0; i < spec.dim; ++i) {
        row.push_back((*ex)(i));
      }
    }
    row.push_back((f - r).norm());
    row.push_back((d - r).norm());
    worst_fd = std::max(worst_fd, (f - r).norm());
    worst_adm = std::max(worst_adm, (d - r).norm());
    csv.row(row);
  }
  output.write("compare.csv", csv.str());
  out << "max |FD - reference| = " << csv_number(worst_fd) << '\n';
  out << "max |ADM - reference| = " << csv_number(worst_adm) << '\n';
  json p = base_params(c);
  p["rank"] = a.rank;
  p["h"] = a.h;
  p["t_end"] = a.t_end;
  p["tol"] = a.tol;
  p["inner_steps"] = a.inner;
  p["adm_inner_steps"] = adm_inner_steps(spec, cfg);
  p["points"] = a.points;
  return p;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Functional-discrete solver for u' = N(t,u) u + phi(t)", "fdode"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(tool_version()));

  Common common;
  const auto add_common = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print help");
    sub->add_option("--problem", common.problem, "built-in name or problem file")->required();
    sub->add_option("--out", common.out_dir, "output directory")->capture_default_str();
  };

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "FD solve; writes solution.csv, errors.csv, summary.csv");
  add_common(solve_cmd);
  solve_cmd->add_option("--rank", solve.rank, "rank p")->required();
  solve_cmd->add_option("--h", solve.h, "grid step")->required();
  solve_cmd->add_option("--t-end", solve.t_end, "end of the time interval")->required();
  solve_cmd->add_option("--inner", solve.inner, "RK4 steps per interval")->capture_default_str();

  AdmArgs adm;
  CLI::App* adm_cmd = app.add_subcommand("adm", "Adomian decomposition baseline; writes adm_terms.csv, adm_report.txt");
  add_common(adm_cmd);
  adm_cmd->add_option("--rank", adm.rank, "number of correction terms")->capture_default_str();
  adm_cmd->add_option("--t-end", adm.t_end, "end of the time interval")->required();
  adm_cmd->add_option("--inner", adm.inner, "RK4 steps on the whole interval (0 = automatic)")
      ->capture_default_str();
  adm_cmd->add_option("--split", adm.split, "linear part L, row-major (default -I)")->delimiter(',');

  CheckArgs check;
  std::uint64_t seed_value = 0;
  double check_t_end = 0.0;
  CLI::App* check_cmd = app.add_subcommand("check", "estimate the convergence hypotheses; writes hypotheses.txt");
  add_common(check_cmd);
  check_cmd->add_option("--region", check.region, "half-width W or lo:hi,...")->capture_default_str();
  check_cmd->add_option("--samples", check.samples, "samples for the dissipativity scan")
      ->capture_default_str();
  CLI::Option* seed_opt = check_cmd->add_option("--seed", seed_value, "sampling seed (default FDODE_SEED or built-in)");
  CLI::Option* check_t_opt = check_cmd->add_option("--t-end", check_t_end, "end of the time range (default t0 + 6)");
  check_cmd->add_option("--epsilon1", check.epsilon1, "slack in the base-solution bound")->capture_default_str();

  ConvergenceArgs conv;
  CLI::App* conv_cmd = app.add_subcommand("convergence", "sup error per rank; writes convergence.csv");
  add_common(conv_cmd);
  conv_cmd->add_option("--ranks", conv.ranks, "rank range A..B")->capture_default_str();
  conv_cmd->add_option("--h", conv.h, "grid step")->required();
  conv_cmd->add_option("--t-end", conv.t_end, "end of the time interval")->required();
  conv_cmd->add_option("--inner", conv.inner, "RK4 steps per interval")->capture_default_str();
  conv_cmd->add_option("--tol", conv.tol, "reference tolerance when no exact solution is known")
      ->capture_default_str();

  CompareArgs cmp;
  CLI::App* cmp_cmd = app.add_subcommand("compare", "FD vs ADM vs reference; writes compare.csv");
  add_common(cmp_cmd);
  cmp_cmd->add_option("--rank", cmp.rank, "rank for FD and ADM")->required();
  cmp_cmd->add_option("--h", cmp.h, "grid step")->required();
  cmp_cmd->add_option("--t-end", cmp.t_end, "end of the time interval")->required();
  cmp_cmd->add_option("--tol", cmp.tol, "reference tolerance")->capture_default_str();
  cmp_cmd->add_option("--inner", cmp.inner, "RK4 steps per interval")->capture_default_str();
  cmp_cmd->add_option("--points", cmp.points, "report times")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForVersion& e) {
    out << tool_version() << '\n';
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return exit_usage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  if (seed_opt->count() > 0) {
    check.seed = seed_value;
  }
  if (check_t_opt->count() > 0) {
    check.t_end = check_t_end;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    Output output(common.out_dir);
    json params;
    if (name == "solve") {
      params = run_solve(common, solve, output, out);
    } else if (name == "adm") {
      params = run_adm(common, adm, output, out);
    } else if (name == "check") {
      params = run_check(common, check, output, out);
    } else if (name == "convergence") {
      params = run_convergence(common, conv, output, out);
    } else {
      params = run_compare(common, cmp, output, out);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(output, name, params, seconds);
    return exit_ok;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << sub->help();
    return exit_usage;
  } catch (const ParseError& e) {
    err << "problem file error: " << e.what() << '\n';
    return exit_problem;
  } catch (const NumericalFailure& e) {
    err << "numerical failure in " << e.module() << ": " << e.what() << '\n';
    return exit_numerical;
  } catch (const HypothesisViolated& e) {
    err << "hypothesis violated: " << e.what() << " (deficit " << csv_number(e.deficit()) << ")\n";
    return exit_numerical;
  } catch (const InvalidArgument& e) {
    // load_problem reports unreadable files this way; everything else is bad input.
    const std::string what = e.what();
    if (what.rfind("cannot open problem file", 0) == 0) {
      err << "problem file error: " << what << '\n';
      return exit_problem;
    }
    err << "error: " << what << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_numerical;
  }
}

}  // namespace fdode
