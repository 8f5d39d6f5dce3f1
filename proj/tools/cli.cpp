#include "cli.hpp"

#include "bench.hpp"

#include "atm/io.hpp"
#include "atm/reduction.hpp"
#include "atm/solvers.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <ostream>

namespace atm::cli {

namespace {

struct Options {
  std::string cnf;
  std::string out;
  std::string instance;
  std::string plan;
  std::string method = "bnb";
  std::size_t beam_width = 8;
  std::uint64_t budget = kDefaultNodeBudget;
  bool no_transpositions = false;
  std::string alpha;
  bool trace = false;
  std::string suite;

  SearchOptions search() const {
    SearchOptions s;
    s.budget = budget;
    s.transpositions = !no_transpositions;
    return s;
  }
};

std::string format_weights(const std::vector<Scalar>& weights) {
  std::string out = "[";
  for (std::size_t i = 0; i < weights.size(); ++i) out += (i == 0 ? "" : ", ") + weights[i].to_string();
  return out + "]";
}

int cmd_reduce(const Options& o, std::ostream& out) {
  const auto normalized = normalize_cnf(io::read_dimacs(o.cnf));
  switch (normalized.status) {
    case NormalizedCnf::Status::unsatisfiable:
      fmt::print(out, "UNSATISFIABLE: the formula contains an empty clause; nothing encoded\n");
      return kSuccess;
    case NormalizedCnf::Status::trivially_satisfiable:
      fmt::print(out, "TRIVIALLY SATISFIABLE: every clause is a tautology; nothing encoded\n");
      return kSuccess;
    case NormalizedCnf::Status::normal: break;
  }
  const ReductionArtifact art = encode_reduction(normalized.formula);
  io::write_instance(io::from_artifact(art), o.out);
  fmt::print(out, "n={} m={} d={} K={} N={} p={}\nwrote {}\n", art.formula.n, art.formula.m(), art.instance.d(),
             art.instance.matrix_count(), art.instance.horizon(), format_rational(art.p), o.out);
  return kSuccess;
}

int cmd_solve(const Options& o, std::ostream& out) {
  const Instance inst = io::read_instance_file(o.instance).instance;
  SolveResult r;
  switch (parse_solve_method(o.method)) {
    case SolveMethod::enumeration: r = enumerate_solve(inst, o.search()); break;
    case SolveMethod::branch_and_bound: r = branch_and_bound_solve(inst, o.search()); break;
    case SolveMethod::beam: r = beam_search(inst, o.beam_width); break;
  }
  fmt::print(out, "method: {}\nvalue: {}\nplan: {}\nnodes_explored: {}\nnodes_pruned: {}\n", to_string(r.method),
             r.value.to_string(), to_string(r.plan), r.nodes_explored, r.nodes_pruned);
  if (!o.out.empty()) {
    io::write_plan(r.plan, o.out, fmt::format("method {} value {}", to_string(r.method), r.value.to_string()));
  }
  return kSuccess;
}

int cmd_decide(const Options& o, std::ostream& out) {
  const Instance inst = io::read_instance_file(o.instance).instance;
  const Scalar alpha = parse_scalar(o.alpha, inst.mode());
  const Decision decision = decide_threshold(inst, alpha, o.search());
  if (!decision.attained) {
    fmt::print(out, "NOT ATTAINED\nnodes_explored: {}\nnodes_pruned: {}\n", decision.nodes_explored,
               decision.nodes_pruned);
    return kSuccess;
  }
  fmt::print(out, "ATTAINED\nvalue: {}\nplan: {}\nnodes_explored: {}\nnodes_pruned: {}\n",
             decision.witness_value->to_string(), to_string(*decision.witness), decision.nodes_explored,
             decision.nodes_pruned);
  if (!o.out.empty()) {
    io::write_plan(*decision.witness, o.out,
                   fmt::format("witness for alpha {} value {}", alpha.to_string(), decision.witness_value->to_string()));
  }
  return kSuccess;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const Instance inst = io::read_instance_file(o.instance).instance;
  const Plan plan = io::read_plan(o.plan);
  const Scalar value = evaluate_plan(inst, plan);
  if (o.trace) {
    const auto points = trajectory(inst, plan);
    for (std::size_t t = 0; t < points.size(); ++t) {
      const std::string step = t == 0 ? "start" : fmt::format("after {}", inst.label(plan[t - 1]).empty()
                                                                             ? std::to_string(plan[t - 1])
                                                                             : inst.label(plan[t - 1]));
      fmt::print(out, "step {} ({}): {}\n", t, step, format_weights(points[t]));
    }
  }
  fmt::print(out, "value: {}\n", value.to_string());
  return kSuccess;
}

int cmd_decode(const Options& o, std::ostream& out) {
  const ReductionArtifact art = io::to_artifact(io::read_instance_file(o.instance));
  const Assignment a = decode_assignment(art, io::read_plan(o.plan));
  fmt::print(out, "{}\n", to_string(a));
  return kSuccess;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto normalized = normalize_cnf(io::read_dimacs(o.cnf));
  if (normalized.status != NormalizedCnf::Status::normal) {
    fmt::print(out, "{}: nothing to encode\n",
               normalized.status == NormalizedCnf::Status::unsatisfiable ? "UNSATISFIABLE (empty clause)"
                                                                         : "TRIVIALLY SATISFIABLE");
    return kSuccess;
  }
  const RoundtripReport report = verify_roundtrip(normalized.formula, o.search());
  fmt::print(out, "n={} m={}\nsat_bruteforce: {}\n", normalized.formula.n, normalized.formula.m(),
             report.sat ? "satisfiable" : "unsatisfiable");
  if (report.sat_witness) fmt::print(out, "sat_witness: {}\n", to_string(*report.sat_witness));
  fmt::print(out, "decide_threshold(alpha=1): {}\n", report.attained ? "attained" : "not attained");
  if (report.threshold_witness) fmt::print(out, "threshold_witness: {}\n", to_string(*report.threshold_witness));
  if (report.decoded) fmt::print(out, "decoded: {}\n", to_string(*report.decoded));
  for (const auto& problem : report.problems) fmt::print(out, "problem: {}\n", problem);
  if (!report.ok()) {
    fmt::print(out, "DISAGREEMENT\n");
    return kVerificationFailed;
  }
  fmt::print(out, "AGREE\n");
  return kSuccess;
}

int cmd_bench(const Options& o, std::ostream& out) {
  const auto rows = bench::run_suite(bench::load_suite(o.suite), o.search());
  io::write_text(o.out, bench::to_csv(rows));
  fmt::print(out, "{} rows written to {}\n", rows.size(), o.out);
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Treatment-plan solvers and the 3-SAT reduction for the antibiotics time machine", "atm"};
  app.require_subcommand(1);
  Options o;

  auto add_search = [&](CLI::App* cmd) {
    cmd->add_option("--budget", o.budget, "maximum search nodes")->capture_default_str();
    cmd->add_flag("--no-transpositions", o.no_transpositions, "do not skip repeated (depth, distribution) nodes");
  };

  auto* reduce = app.add_subcommand("reduce", "encode a DIMACS formula as an instance file");
  reduce->add_option("--cnf", o.cnf, "DIMACS CNF input")->required();
  reduce->add_option("--out", o.out, "instance file to write")->required();

  auto* solve = app.add_subcommand("solve", "maximise the target mass over all plans");
  solve->add_option("instance", o.instance)->required();
  solve->add_option("--method", o.method)->check(CLI::IsMember({"enum", "bnb", "beam"}))->capture_default_str();
  solve->add_option("--beam-width", o.beam_width)->check(CLI::PositiveNumber)->capture_default_str();
  solve->add_option("--out", o.out, "plan file to write");
  add_search(solve);

  auto* decide = app.add_subcommand("decide", "is some plan's value at least alpha?");
  decide->add_option("instance", o.instance)->required();
  decide->add_option("--alpha", o.alpha, "threshold, rational (1/2) or decimal (0.5)")->required();
  decide->add_option("--out", o.out, "witness plan file to write");
  add_search(decide);

  auto* simulate = app.add_subcommand("simulate", "evaluate a plan");
  simulate->add_option("instance", o.instance)->required();
  simulate->add_option("plan", o.plan)->required();
  simulate->add_flag("--trace", o.trace, "print the distribution after every step");

  auto* decode = app.add_subcommand("decode", "read the assignment off a value-1 plan of a reduction instance");
  decode->add_option("instance", o.instance)->required();
  decode->add_option("plan", o.plan)->required();

  auto* verify = app.add_subcommand("verify-roundtrip", "check SAT <-> threshold-1 agreement on a formula");
  verify->add_option("--cnf", o.cnf)->required();
  add_search(verify);

  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark suite and write CSV");
  bench_cmd->add_option("--suite", o.suite, "suite file or random:<count>:<seed>")->required();
  bench_cmd->add_option("--out", o.out, "CSV output")->required();
  add_search(bench_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsageError;
  }

  try {
    if (reduce->parsed()) return cmd_reduce(o, out);
    if (solve->parsed()) return cmd_solve(o, out);
    if (decide->parsed()) return cmd_decide(o, out);
    if (simulate->parsed()) return cmd_simulate(o, out);
    if (decode->parsed()) return cmd_decode(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (bench_cmd->parsed()) return cmd_bench(o, out);
  } catch (const BudgetExceeded& e) {
    fmt::print(err, "error: {} (K^N or node count: {})\n", e.what(), e.required());
    return kBudgetExceeded;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace atm::cli
