#include "qbaf/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

#include <CLI11.hpp>

#include "qbaf/core.hpp"
#include "qbaf/engine.hpp"
#include "qbaf/genbench.hpp"
#include "qbaf/postulates.hpp"
#include "qbaf/semantics.hpp"

namespace qbaf {

namespace {

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream ss;
  if (path == "-") {
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open \"" + path + "\"");
  ss << f.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, std::ostream& out, const std::string& text) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open \"" + path + "\" for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing \"" + path + "\"");
}

bool color_enabled(const std::ostream& out) {
  if (std::getenv("NO_COLOR") != nullptr) return false;
  return &out == static_cast<const std::ostream*>(&std::cout) && isatty(fileno(stdout)) != 0;
}

std::string fmt(const char* f, ...) {
  char buf[160];
  va_list ap;
  va_start(ap, f);
  vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

const char* bool_word(bool b) { return b ? "true" : "false"; }

std::vector<int> parse_int_list(const std::vector<std::string>& items) {
  std::vector<int> out;
  for (const std::string& s : items) out.push_back(std::stoi(s));
  return out;
}

std::vector<double> parse_double_list(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const std::string& s : items) out.push_back(std::stod(s));
  return out;
}

// Shared --semantics/--q/--gamma/--k flag block; the dedicated flags override
// whatever the compact spec string carries.
struct SpecFlags {
  std::string semantics = "ddrl";
  std::string q;
  double gamma = 1.0;
  double k = 100.0;
  CLI::Option* q_opt = nullptr;
  CLI::Option* gamma_opt = nullptr;
  CLI::Option* k_opt = nullptr;

  void attach(CLI::App* sub) {
    sub->add_option("--semantics", semantics,
                    "Semantics, e.g. ddrl, mqe:q=max, drl:gamma=0.5 (default ddrl)");
    q_opt = sub->add_option("--q", q, "Normalizer: sum or max")
                ->check(CLI::IsMember({"sum", "max"}));
    gamma_opt = sub->add_option("--gamma", gamma, "Influence weight (default 1)");
    k_opt = sub->add_option("--k", k, "Smooth clamp sharpness (default 100)");
  }

  SemanticsSpec resolve() const {
    SemanticsSpec spec = parse_semantics_spec(semantics);
    if (q_opt && q_opt->count() > 0) spec.q = (q == "max") ? QSel::Max : QSel::Sum;
    if (gamma_opt && gamma_opt->count() > 0) spec.gamma = gamma;
    if (k_opt && k_opt->count() > 0) spec.k = k;
    if (spec.gamma < 0) throw std::invalid_argument("gamma must be >= 0");
    if (spec.k < 1) throw std::invalid_argument("k must be >= 1");
    return spec;
  }
};

int cmd_solve(const Qbaf& q, const SemanticsSpec& spec, const SolveConfig& cfg,
              const std::string& traj_path, const std::string& out_path, std::ostream& out) {
  SolveResult res = solve(q, spec, cfg);

  std::vector<int> order(q.size());
  for (int i = 0; i < q.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return q.argument(a).id < q.argument(b).id; });

  std::string body;
  for (int i : order) body += q.argument(i).id + " " + fmt("%.6f", res.strengths[i]) + "\n";
  body += std::string("status ") + status_name(res.status);
  if (res.oscillation_period) body += " period " + std::to_string(*res.oscillation_period);
  body += " iterations " + std::to_string(res.iterations) + "\n";

  if (!traj_path.empty()) write_output(traj_path, out, trajectory_csv(q, res.trajectory));
  write_output(out_path, out, body);
  return res.status == SolveStatus::Converged ? 0 : 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Gradual semantics for quantitative bipolar argumentation frameworks"};
  app.require_subcommand(1);

  // --- solve ---
  auto* solve_cmd = app.add_subcommand("solve", "Compute final strengths of a framework");
  std::string solve_file = "-";
  solve_cmd->add_option("file", solve_file, "Framework JSON path, or - for stdin");
  SpecFlags solve_spec;
  solve_spec.attach(solve_cmd);
  std::string mode = "auto";
  solve_cmd->add_option("--mode", mode, "auto, discrete, or continuous")
      ->check(CLI::IsMember({"auto", "discrete", "continuous"}));
  double eps = 1e-6;
  solve_cmd->add_option("--eps", eps, "Convergence threshold (default 1e-6)");
  int max_iter = 10000;
  solve_cmd->add_option("--max-iter", max_iter, "Iteration cap (default 10000)");
  double step = 0.05;
  solve_cmd->add_option("--step", step, "Continuous-mode step size in (0,1] (default 0.05)");
  std::string traj_path;
  solve_cmd->add_option("--trajectory", traj_path, "Write the iteration trajectory CSV here");
  std::string solve_out;
  solve_cmd->add_option("-o,--output", solve_out, "Write the report here instead of stdout");

  // --- analyze ---
  auto* analyze_cmd = app.add_subcommand("analyze", "Print graph structure facts");
  std::string analyze_file = "-";
  analyze_cmd->add_option("file", analyze_file, "Framework JSON path, or - for stdin");
  std::string analyze_out;
  analyze_cmd->add_option("-o,--output", analyze_out, "Write the report here instead of stdout");

  // --- postulates ---
  auto* post_cmd = app.add_subcommand("postulates", "Check the twelve principles on random frameworks");
  SpecFlags post_spec;
  post_spec.attach(post_cmd);
  int post_n = 200;
  post_cmd->add_option("--n", post_n, "Number of sampled frameworks (default 200)");
  std::uint64_t post_seed = 7;
  post_cmd->add_option("--seed", post_seed, "Sampling seed (default 7)");
  bool post_json = false;
  post_cmd->add_flag("--json", post_json, "Emit the full JSON report instead of the matrix");
  std::string post_out;
  post_cmd->add_option("-o,--output", post_out, "Write the report here instead of stdout");

  // --- gen ---
  auto* gen_cmd = app.add_subcommand("gen", "Generate a framework");
  std::string gen_kind;
  gen_cmd->add_option("--kind", gen_kind, "ladder, acyclic, or cyclic")
      ->required()
      ->check(CLI::IsMember({"ladder", "acyclic", "cyclic"}));
  int gen_n = 0;
  gen_cmd->add_option("--n", gen_n, "Supporter count (ladder) or argument count (cyclic)");
  double gen_density = 0.1;
  gen_cmd->add_option("--density", gen_density, "Edge density for cyclic (default 0.1)");
  std::uint64_t gen_seed = 0;
  gen_cmd->add_option("--seed", gen_seed, "Generator seed (default 0)");
  bool gen_unit_tau = false;
  gen_cmd->add_flag("--force-unit-tau", gen_unit_tau,
                    "Ladder test hook: set every initial strength to 1");
  std::string gen_out;
  gen_cmd->add_option("-o,--output", gen_out, "Write the framework here instead of stdout");

  // --- bench ---
  auto* bench_cmd = app.add_subcommand("bench", "Run an experiment and emit CSV");
  std::string bench_exp;
  bench_cmd->add_option("--exp", bench_exp, "distance, gamma, or runtime")
      ->required()
      ->check(CLI::IsMember({"distance", "gamma", "runtime"}));
  std::string bench_specs = "mqe,ddrl";
  bench_cmd->add_option("--semantics", bench_specs,
                        "Comma-separated semantics list (gamma sweep uses the first)");
  std::vector<std::string> bench_sizes;
  bench_cmd->add_option("--sizes", bench_sizes, "Comma-separated sizes")->delimiter(',');
  int bench_per = 10;
  bench_cmd->add_option("--per", bench_per, "Frameworks per size (default 10)");
  std::uint64_t bench_seed = 0;
  bench_cmd->add_option("--seed", bench_seed, "Experiment seed (default 0)");
  std::vector<std::string> bench_gammas;
  bench_cmd->add_option("--gammas", bench_gammas, "Gamma values for the sweep")->delimiter(',');
  std::string bench_dataset = "ladders";
  bench_cmd->add_option("--dataset", bench_dataset, "gamma sweep dataset")
      ->check(CLI::IsMember({"ladders", "random_acyclic"}));
  double bench_eps = 1e-4;
  bench_cmd->add_option("--eps", bench_eps, "Runtime experiment threshold (default 1e-4)");
  int bench_max_iter = 10000;
  bench_cmd->add_option("--max-iter", bench_max_iter, "Runtime experiment cap (default 10000)");
  bool bench_unit_tau = false;
  bench_cmd->add_flag("--force-unit-tau", bench_unit_tau,
                      "Distance test hook: all-1 initial strengths");
  std::string bench_out;
  bench_cmd->add_option("-o,--output", bench_out, "Write the CSV here instead of stdout");

  // --- bound ---
  auto* bound_cmd = app.add_subcommand("bound", "Print the guaranteed-convergence gamma bound");
  std::string bound_file = "-";
  bound_cmd->add_option("file", bound_file, "Framework JSON path, or - for stdin");
  std::string bound_q = "sum";
  bound_cmd->add_option("--q", bound_q, "Normalizer: sum or max")
      ->check(CLI::IsMember({"sum", "max"}));
  std::string bound_out;
  bound_cmd->add_option("-o,--output", bound_out, "Write the report here instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (app.got_subcommand(solve_cmd)) {
      Qbaf q = parse_qbaf(read_input(solve_file, in));
      SolveConfig cfg;
      cfg.mode = mode == "auto"       ? SolveMode::AcyclicAuto
                 : mode == "discrete" ? SolveMode::Discrete
                                      : SolveMode::Continuous;
      cfg.epsilon = eps;
      cfg.max_iter = max_iter;
      cfg.step_h = step;
      cfg.record_trajectory = !traj_path.empty();
      return cmd_solve(q, solve_spec.resolve(), cfg, traj_path, solve_out, out);
    }

    if (app.got_subcommand(analyze_cmd)) {
      Qbaf q = parse_qbaf(read_input(analyze_file, in));
      GraphInfo gi = analyze_graph(q);
      std::string body = fmt("acyclic=%s d=%d one_cycle=%s sccs=%d\n", bool_word(gi.acyclic),
                             gi.max_in_degree, bool_word(gi.at_most_one_cycle),
                             static_cast<int>(gi.sccs.size()));
      write_output(analyze_out, out, body);
      return 0;
    }

    if (app.got_subcommand(post_cmd)) {
      SemanticsSpec spec = post_spec.resolve();
      std::vector<PostulateReport> reports = run_postulate_suite(spec, post_n, post_seed);
      bool color = post_out.empty() && color_enabled(out);
      std::string body = post_json ? reports_json(reports) : render_matrix(reports, color);
      write_output(post_out, out, body);
      bool all = std::all_of(reports.begin(), reports.end(),
                             [](const PostulateReport& r) { return r.passed(); });
      return all ? 0 : 1;
    }

    if (app.got_subcommand(gen_cmd)) {
      Qbaf q = gen_kind == "ladder"    ? gen_ladder(gen_n, gen_seed, gen_unit_tau)
               : gen_kind == "acyclic" ? gen_random_acyclic(gen_seed)
                                       : gen_random_cyclic(gen_n, gen_density, gen_seed);
      write_output(gen_out, out, serialize_qbaf(q));
      return 0;
    }

    if (app.got_subcommand(bench_cmd)) {
      std::vector<ExperimentRow> rows;
      if (bench_exp == "distance") {
        std::vector<int> ns = bench_sizes.empty() ? std::vector<int>{1, 2, 5, 10, 100}
                                                  : parse_int_list(bench_sizes);
        rows = exp_distance_vs_n(parse_semantics_list(bench_specs), ns, bench_per, bench_seed,
                                 bench_unit_tau);
      } else if (bench_exp == "gamma") {
        SemanticsSpec spec = parse_semantics_list(bench_specs).at(0);
        if (spec.family != Family::Drl && spec.family != Family::Ddrl)
          throw std::invalid_argument("gamma sweep needs drl or ddrl semantics");
        std::vector<double> gammas;
        if (bench_gammas.empty())
          for (int i = 0; i <= 12; ++i) gammas.push_back(0.25 * i);
        else
          gammas = parse_double_list(bench_gammas);
        rows = exp_gamma_sweep(spec.family, spec.q, gammas, bench_dataset, bench_seed);
      } else {
        std::vector<int> sizes = bench_sizes.empty() ? std::vector<int>{100, 200, 500}
                                                     : parse_int_list(bench_sizes);
        SolveConfig cfg;
        cfg.mode = SolveMode::Discrete;
        cfg.epsilon = bench_eps;
        cfg.max_iter = bench_max_iter;
        rows = exp_runtime_convergence(sizes, bench_per, parse_semantics_list(bench_specs), cfg,
                                       bench_seed);
      }
      write_output(bench_out, out, rows_csv(rows));
      return 0;
    }

    // bound
    Qbaf q = parse_qbaf(read_input(bound_file, in));
    GraphInfo gi = analyze_graph(q);
    double bound = convergence_bound(q, bound_q == "max" ? QSel::Max : QSel::Sum);
    std::string body = std::isinf(bound) ? fmt("d=%d gamma<inf\n", gi.max_in_degree)
                                         : fmt("d=%d gamma<%.6f\n", gi.max_in_degree, bound);
    write_output(bound_out, out, body);
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qbaf
