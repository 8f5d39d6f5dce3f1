#pragma once

#include "atm/core.hpp"
#include "atm/solvers.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace atm::bench {

struct MethodSpec {
  SolveMethod method = SolveMethod::branch_and_bound;
  std::size_t beam_width = 8;

  std::string name() const;
};

struct BenchCase {
  std::string name;
  Instance instance;
  std::vector<MethodSpec> methods;
};

/// A suite is either "random:<count>:<seed>" (random float instances with
/// d=4, K=3, N=5 under enum, bnb and beam:4) or a file whose lines read
///
///   <instance.json | formula.cnf> <method> [<method> ...]
///
/// with methods enum, bnb, beam or beam:<width>. Paths are relative to the
/// suite file; '#' starts a comment. Formulas are reduced before solving.
std::vector<BenchCase> load_suite(const std::string& spec);

MethodSpec parse_method_spec(const std::string& text);

struct BenchRow {
  std::string instance;
  std::string method;
  std::optional<Scalar> value;  // empty when the budget ran out
  std::uint64_t nodes_explored = 0;
  std::uint64_t nodes_pruned = 0;
  double wall_ms = 0.0;
};

std::vector<BenchRow> run_suite(const std::vector<BenchCase>& cases, const SearchOptions& options);

/// Header "instance,method,value,nodes_explored,nodes_pruned,wall_ms".
std::string to_csv(const std::vector<BenchRow>& rows);

}  // namespace atm::bench
