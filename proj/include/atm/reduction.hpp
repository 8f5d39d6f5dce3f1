#pragma once

// Compiles a 3-SAT formula into a time-machine instance whose optimum is 1
// exactly when the formula is satisfiable, plus the certificate maps in both
// directions.
//
// States: s=0 (start and target), d=1 (death, absorbing), f=2 (tally), then
// per variable i the triple x_i, x_i-, x_i+ at 3+3i.., then one state c_j per
// clause. Matrices: S=0, F=1, then seven T matrices per clause, one for each
// non-forbidden sign tuple in lexicographic order ('-' < '+').
//
//   S : s -> p * (sum x_i + sum c_j), everything else -> d
//   F : x_i-, x_i+, f -> s, everything else -> d
//   T_c^v : s -> d, c -> f, x_l -> x_l^{v_l}, x_l^{-v_l} -> d for the clause's
//           three variables l, everything else fixed
//
// with p = 1/(n+m), horizon N = m+2 and threshold 1.

#include "atm/cnf.hpp"
#include "atm/core.hpp"
#include "atm/solvers.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace atm {

struct ReductionArtifact {
  Instance instance;
  CnfFormula formula;
  std::map<std::string, std::size_t> state_table;
  std::map<std::string, std::size_t> matrix_table;
  Rational p;
};

namespace layout {
inline constexpr std::size_t kStart = 0;
inline constexpr std::size_t kDeath = 1;
inline constexpr std::size_t kTally = 2;
inline constexpr std::size_t kMatrixS = 0;
inline constexpr std::size_t kMatrixF = 1;

inline std::size_t variable(std::size_t i) { return 3 + 3 * i; }
inline std::size_t variable_sign(std::size_t i, Sign s) { return 3 + 3 * i + (s == Sign::minus ? 1 : 2); }
inline std::size_t clause(std::size_t n, std::size_t j) { return 3 + 3 * n + j; }
inline std::size_t state_count(std::size_t n, std::size_t m) { return 3 * n + m + 3; }
inline std::size_t matrix_count(std::size_t m) { return 7 * m + 2; }

/// Sign tuple as a 3-bit code, first component most significant, '+' = 1.
inline unsigned tuple_code(const std::array<Sign, 3>& v) {
  return (v[0] == Sign::plus ? 4u : 0u) | (v[1] == Sign::plus ? 2u : 0u) | (v[2] == Sign::plus ? 1u : 0u);
}
std::array<Sign, 3> tuple_from_code(unsigned code);

/// Matrix index of T_{c_j}^v, or nullopt when v is the clause's forbidden tuple.
std::optional<std::size_t> clause_matrix(const Clause& c, std::size_t j, const std::array<Sign, 3>& v);

/// Clause index of a T matrix, nullopt for S and F.
inline std::optional<std::size_t> clause_of_matrix(std::size_t k) {
  if (k < 2) return std::nullopt;
  return (k - 2) / 7;
}
}  // namespace layout

/// "T{j}:{σσσ}" with σ = m|p.
std::string clause_matrix_label(std::size_t j, const std::array<Sign, 3>& v);

/// Throws InvalidFormula when `f` violates the formula requirements.
ReductionArtifact encode_reduction(const CnfFormula& f);

/// Rebuilds the artifact from its formula and checks it matches `instance`
/// bit for bit. Used when reading an artifact back from disk.
ReductionArtifact artifact_from_instance(Instance instance, const CnfFormula& f);

/// Plan [S, T_{c_1}^{a|c_1}, ..., T_{c_m}^{a|c_m}, F]. Throws
/// PreconditionFailed naming the first clause `a` does not satisfy.
Plan satisfying_plan(const ReductionArtifact& art, const Assignment& a);

/// Reads the assignment off the penultimate distribution of a value-1 plan.
/// Throws PreconditionFailed when the plan's value is not exactly 1.
Assignment decode_assignment(const ReductionArtifact& art, const Plan& plan);

/// Empty when the plan is S, then one T matrix for each clause in some
/// order, then F; otherwise a description of the first deviation.
std::string plan_structure_problem(const ReductionArtifact& art, const Plan& plan);

struct RoundtripReport {
  bool sat = false;
  bool attained = false;
  std::optional<Assignment> sat_witness;
  std::optional<Plan> threshold_witness;
  std::optional<Assignment> decoded;
  /// Failed cross-checks; empty means everything agreed.
  std::vector<std::string> problems;
  std::uint64_t nodes_explored = 0;

  bool agree() const { return sat == attained; }
  bool ok() const { return agree() && problems.empty(); }
};

/// Runs the SAT oracle and the threshold-1 decision on the encoded instance
/// and cross-checks both certificate maps when they say yes.
RoundtripReport verify_roundtrip(const CnfFormula& f, const SearchOptions& options = {});

}  // namespace atm
