// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: generate instances, compute reward potentials,
// plan with the base or strengthened encoding, and benchmark settings
// side by side.
//
// Exit codes: 0 usable output, 2 infeasible (or no incumbent), 1 usage or
// I/O errors.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "reluplan/branch_and_bound.hpp"
#include "reluplan/compile.hpp"
#include "reluplan/domains.hpp"
#include "reluplan/errors.hpp"
#include "reluplan/json_io.hpp"
#include "reluplan/lp_format.hpp"
#include "reluplan/potentials.hpp"
#include "reluplan/simplex.hpp"

namespace {

using namespace reluplan;
using Clock = std::chrono::steady_clock;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;

std::vector<int> parse_widths(const std::string& text) {
  std::vector<int> widths;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) widths.push_back(std::stoi(part));
  return widths;
}

std::string stem_of(const std::string& path) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path;
  return path.substr(0, dot);
}

std::string fmt_opt(const std::optional<double>& v) {
  if (!v) return "";
  std::ostringstream out;
  out.precision(10);
  out << *v;
  return out.str();
}

struct GenArgs {
  std::string domain = "navigation";
  int size = 8;
  int width = 8;
  std::string widths;
  int horizon = 10;
  std::uint32_t seed = 1;
  std::string out = "instance.json";
};

int run_gen(const GenArgs& args) {
  DomainSpec spec;
  if (args.domain == "navigation")
    spec.kind = DomainSpec::Kind::Navigation;
  else if (args.domain == "reservoir")
    spec.kind = DomainSpec::Kind::Reservoir;
  else if (args.domain == "hvac")
    spec.kind = DomainSpec::Kind::Hvac;
  else if (args.domain == "random")
    spec.kind = DomainSpec::Kind::Random;
  else
    throw Error("unknown domain '" + args.domain + "'");
  spec.size = args.size;
  spec.width = args.width;
  if (!args.widths.empty()) spec.widths = parse_widths(args.widths);
  spec.horizon = args.horizon;
  spec.seed = args.seed;

  const auto [instance, net] = generate(spec);
  write_file(args.out, instance_to_json(instance, net));
  std::cout << "wrote " << args.out << " (" << net.structure() << ", |U|="
            << net.num_hidden_units() << ", H=" << instance.horizon << ")\n";
  return kExitOk;
}

struct PotentialArgs {
  std::string instance;
  int intervals = 1;
  double lambda = -1.0;
  double epsilon = 1e-6;
  std::string out = "potentials.json";
  std::string trace;
};

int run_potentials(const PotentialArgs& args) {
  const LoadedInstance li = load_instance_file(args.instance);
  const auto nb =
      li.net.propagate_bounds(li.instance.state_box(), li.instance.action_box());

  PotentialsConfig cfg;
  cfg.intervals = args.intervals;
  cfg.lambda = args.lambda;
  cfg.epsilon = args.epsilon;
  const auto [pot, trace] = compute_potentials(li.net, li.instance, nb, cfg);

  write_file(args.out, potentials_to_json(pot));
  const std::string trace_path =
      args.trace.empty() ? stem_of(args.out) + "_trace.csv" : args.trace;
  write_file(trace_path, trace.csv());

  std::cout << "certified potentials for " << pot.num_units() << " units, N="
            << pot.intervals << ", lambda=" << pot.lambda << ", violation="
            << pot.certified_violation << " after "
            << trace.iterations.size() << " iterations\n"
            << "wrote " << args.out << " and " << trace_path << "\n";
  return kExitOk;
}

struct PlanArgs {
  std::string instance;
  std::string strengthen;
  double time_limit = 60.0;
  std::int64_t node_limit = 0;
  std::string export_lp;
  std::string out = "plan.json";
  std::string stats = "stats.json";
};

int run_plan(const PlanArgs& args) {
  const LoadedInstance li = load_instance_file(args.instance);
  const auto nb =
      li.net.propagate_bounds(li.instance.state_box(), li.instance.action_box());

  CompiledModel compiled;
  if (args.strengthen.empty()) {
    compiled = compile_base(li.instance, li.net, nb);
  } else {
    const RewardPotentials pot =
        potentials_from_json(read_file(args.strengthen));
    compiled = compile_strengthened(li.instance, li.net, nb, pot);
  }
  if (!args.export_lp.empty()) {
    write_file(args.export_lp, write_lp(compiled.model));
    std::cout << "wrote " << args.export_lp << "\n";
  }

  MilpParams params;
  params.time_limit_s = args.time_limit > 0 ? args.time_limit : kInf;
  params.node_limit = args.node_limit;
  const MilpResult res = solve_milp(compiled.model, params);
  write_file(args.stats, stats_to_json(res.stats));

  std::cout << "status " << to_string(res.status) << ", dual "
            << res.stats.dual << ", nodes " << res.stats.nodes_closed
            << " closed / " << res.stats.nodes_open << " open\n";
  if (res.status == SolveStatus::Infeasible) {
    std::cerr << "instance is infeasible\n";
    return kExitInfeasible;
  }
  if (res.status == SolveStatus::Unbounded) {
    std::cerr << "model is unbounded; check the instance domains\n";
    return kExitInfeasible;
  }
  if (!res.stats.primal) {
    std::cerr << "no incumbent within the limits; stats written to "
              << args.stats << "\n";
    return kExitInfeasible;
  }

  Plan plan;
  plan.actions.assign(li.instance.horizon,
                      std::vector<double>(li.instance.num_actions(), 0.0));
  for (int t = 1; t <= li.instance.horizon; ++t)
    for (int a = 0; a < li.instance.num_actions(); ++a)
      plan.actions[t - 1][a] = res.values[compiled.action_var(a, t)];

  const auto report = check_plan(li.instance, li.net, plan, 1e-5);
  if (!report.valid) {
    std::cerr << "refusing to emit an invalid plan; worst violation "
              << report.max_magnitude << " ("
              << report.violations.front().describe() << ")\n";
    return kExitUsage;
  }
  write_file(args.out, plan_to_json(plan, report.trajectory, res.objective));
  std::cout << "objective " << res.objective << " (simulated total reward "
            << report.trajectory.total_reward << ")\nwrote " << args.out
            << " and " << args.stats << "\n";
  return kExitOk;
}

struct BenchArgs {
  std::string instance;
  std::string settings = "base,n2";
  double time_limit = 60.0;
  std::int64_t node_limit = 0;
  std::string out = "bench";
};

struct BenchRow {
  std::string setting;
  double potentials_time = 0.0;
  double cumulative_time = 0.0;
  std::optional<double> primal;
  std::optional<double> dual;
  std::int64_t nodes_open = 0;
  std::int64_t nodes_closed = 0;
  std::optional<double> root_relaxation;
  std::string status = "error";
  bool best = false;
  SolveStats stats;
};

int run_bench(const BenchArgs& args) {
  const LoadedInstance li = load_instance_file(args.instance);
  const auto nb =
      li.net.propagate_bounds(li.instance.state_box(), li.instance.action_box());

  std::vector<std::string> settings;
  {
    std::stringstream ss(args.settings);
    std::string part;
    while (std::getline(ss, part, ',')) settings.push_back(part);
  }

  std::vector<BenchRow> rows;
  for (const std::string& setting : settings) {
    BenchRow row;
    row.setting = setting;
    try {
      CompiledModel compiled;
      if (setting == "base") {
        compiled = compile_base(li.instance, li.net, nb);
      } else if (setting.size() >= 2 && setting[0] == 'n') {
        const int n = std::stoi(setting.substr(1));
        PotentialsConfig cfg;
        cfg.intervals = n;
        const auto t0 = Clock::now();
        const auto [pot, trace] =
            compute_potentials(li.net, li.instance, nb, cfg);
        row.potentials_time =
            std::chrono::duration<double>(Clock::now() - t0).count();
        compiled = compile_strengthened(li.instance, li.net, nb, pot);
      } else {
        throw Error("unknown setting '" + setting + "' (use base or n<K>)");
      }
      row.root_relaxation = root_relaxation(compiled);

      MilpParams params;
      params.time_limit_s = args.time_limit > 0 ? args.time_limit : kInf;
      params.node_limit = args.node_limit;
      const MilpResult res = solve_milp(compiled.model, params);
      row.cumulative_time = row.potentials_time + res.stats.solve_seconds;
      row.primal = res.stats.primal;
      row.dual = res.stats.dual;
      row.nodes_open = res.stats.nodes_open;
      row.nodes_closed = res.stats.nodes_closed;
      row.status = to_string(res.status);
      row.stats = res.stats;
    } catch (const Error& e) {
      row.status = std::string("error: ") + e.what();
      row.cumulative_time = row.potentials_time;
    }
    rows.push_back(std::move(row));
  }

  // Best setting: runtime first (finished runs only), then primal, then
  // dual bound quality.
  int best = -1;
  const auto better = [&](const BenchRow& a, const BenchRow& b) {
    const double ta = a.status == "optimal" ? a.cumulative_time : kInf;
    const double tb = b.status == "optimal" ? b.cumulative_time : kInf;
    if (ta != tb) return ta < tb;
    const double pa = a.primal.value_or(-kInf);
    const double pb = b.primal.value_or(-kInf);
    if (pa != pb) return pa > pb;
    const double da = a.dual.value_or(kInf);
    const double db = b.dual.value_or(kInf);
    return da < db;
  };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].status.rfind("error", 0) == 0) continue;
    if (best < 0 || better(rows[i], rows[best])) best = static_cast<int>(i);
  }
  if (best >= 0) rows[best].best = true;

  std::ostringstream csv;
  csv.precision(10);
  csv << "setting,potentials_time_s,cumulative_time_s,primal,dual,nodes_open,"
         "nodes_closed,root_relaxation,status,best\n";
  for (const BenchRow& row : rows) {
    csv << row.setting << ',' << row.potentials_time << ','
        << row.cumulative_time << ',' << fmt_opt(row.primal) << ','
        << fmt_opt(row.dual) << ',' << row.nodes_open << ','
        << row.nodes_closed << ',' << fmt_opt(row.root_relaxation) << ','
        << row.status << ',' << (row.best ? 1 : 0) << '\n';
  }
  write_file(args.out + ".csv", csv.str());

  std::ostringstream js;
  js << "{\n  \"rows\": [\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const BenchRow& r = rows[i];
    js << "    {\"setting\": \"" << r.setting << "\", \"potentials_time_s\": "
       << r.potentials_time << ", \"cumulative_time_s\": " << r.cumulative_time
       << ", \"primal\": " << (r.primal ? std::to_string(*r.primal) : "null")
       << ", \"dual\": " << (r.dual ? std::to_string(*r.dual) : "null")
       << ", \"nodes_open\": " << r.nodes_open << ", \"nodes_closed\": "
       << r.nodes_closed << ", \"root_relaxation\": "
       << (r.root_relaxation ? std::to_string(*r.root_relaxation) : "null")
       << ", \"status\": \"" << r.status << "\", \"best\": "
       << (r.best ? "true" : "false") << "}" << (i + 1 < rows.size() ? "," : "")
       << "\n";
  }
  js << "  ]\n}\n";
  write_file(args.out + ".json", js.str());

  for (const BenchRow& row : rows) {
    if (row.status.rfind("error", 0) == 0) continue;
    write_file(args.out + "_" + row.setting + "_timeline.csv",
               row.stats.timeline_csv());
  }

  for (const BenchRow& row : rows)
    std::cout << row.setting << ": status " << row.status << ", cumul "
              << row.cumulative_time << "s, primal " << fmt_opt(row.primal)
              << ", dual " << fmt_opt(row.dual) << ", nodes "
              << row.nodes_closed << (row.best ? "  [best]" : "") << "\n";
  std::cout << "wrote " << args.out << ".csv, " << args.out << ".json and "
            << "per-setting timelines\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planning with ReLU network transition models: MILP "
               "compilation strengthened by unit reward potentials"};
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "Generate an instance file");
  gen->add_option("--domain", gen_args.domain,
                  "navigation | reservoir | hvac | random");
  gen->add_option("--size", gen_args.size, "maze side / reservoirs / rooms");
  gen->add_option("--width", gen_args.width, "hidden width (named domains)");
  gen->add_option("--widths", gen_args.widths,
                  "colon-separated widths for random nets, e.g. 4:6:2");
  gen->add_option("--horizon", gen_args.horizon, "plan horizon");
  gen->add_option("--seed", gen_args.seed, "generator seed");
  gen->add_option("-o,--out", gen_args.out, "output instance file");

  PotentialArgs pot_args;
  CLI::App* pot = app.add_subcommand(
      "potentials", "Compute certified unit reward potentials");
  pot->add_option("instance", pot_args.instance, "instance JSON")->required();
  pot->add_option("--intervals", pot_args.intervals,
                  "activation intervals per unit (N)");
  pot->add_option("--lambda", pot_args.lambda,
                  "regularizer weight (default 1/sqrt(max big-M))");
  pot->add_option("--epsilon", pot_args.epsilon, "violation tolerance");
  pot->add_option("-o,--out", pot_args.out, "potentials JSON output");
  pot->add_option("--trace", pot_args.trace,
                  "iteration trace CSV (default <out>_trace.csv)");

  PlanArgs plan_args;
  CLI::App* plan = app.add_subcommand("plan", "Solve an instance");
  plan->add_option("instance", plan_args.instance, "instance JSON")
      ->required();
  plan->add_option("--strengthen", plan_args.strengthen,
                   "potentials JSON; adds the reward-bound constraints");
  plan->add_option("--time-limit", plan_args.time_limit,
                   "seconds (0 = unlimited)");
  plan->add_option("--node-limit", plan_args.node_limit,
                   "branch-and-bound nodes (0 = unlimited)");
  plan->add_option("--export-lp", plan_args.export_lp,
                   "write the compiled model in LP format");
  plan->add_option("-o,--out", plan_args.out, "plan JSON output");
  plan->add_option("--stats", plan_args.stats, "solver stats JSON output");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand(
      "bench", "Compare encodings on one instance");
  bench->add_option("instance", bench_args.instance, "instance JSON")
      ->required();
  bench->add_option("--settings", bench_args.settings,
                    "comma list: base, n1, n2, n3, ...");
  bench->add_option("--time-limit", bench_args.time_limit,
                    "seconds per setting (0 = unlimited)");
  bench->add_option("--node-limit", bench_args.node_limit,
                    "node cap per setting (0 = unlimited)");
  bench->add_option("-o,--out", bench_args.out,
                    "report stem; writes <stem>.csv/.json and timelines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return run_gen(gen_args);
    if (pot->parsed()) return run_potentials(pot_args);
    if (plan->parsed()) return run_plan(plan_args);
    if (bench->parsed()) return run_bench(bench_args);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const std::string what = e.what();
    if (what.find("infeasible") != std::string::npos ||
        what.find("degenerate") != std::string::npos)
      return kExitInfeasible;
    return kExitUsage;
  }
  return kExitUsage;
}
