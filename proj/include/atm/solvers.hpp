#pragma once

// Exact and heuristic maximisation of the target mass over length-N plans,
// and the threshold decision built on the same search.

#include "atm/core.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace atm {

/// A solver needed more search nodes than its budget allows.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string required, std::uint64_t budget);
  /// Decimal node count that was needed (K^N for enumeration), or the
  /// count at which the search was stopped.
  const std::string& required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::string required_;
  std::uint64_t budget_;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

struct SearchOptions {
  /// Maximum apply() calls. Enumeration checks K^N against it up front.
  std::uint64_t budget = kDefaultNodeBudget;
  /// Skip a node whose (depth, distribution) pair was already searched.
  /// Never changes the returned value or plan, only node counts.
  bool transpositions = true;
  /// Stored (depth, distribution) keys; past this the table stops growing.
  std::size_t transposition_limit = 1u << 18;
};

/// Single-bacterium relaxation: rows[r][i] is the best chance of sitting on
/// the target after r more steps from state i when the matrix may be chosen
/// per state and per step. Summed against a population it bounds every plan.
template <class T>
class ValueTable {
 public:
  ValueTable(std::size_t d, std::size_t horizon) : d_(d), horizon_(horizon), values_((horizon + 1) * d, T(0)) {}

  std::size_t d() const { return d_; }
  std::size_t horizon() const { return horizon_; }
  std::span<const T> row(std::size_t remaining) const { return {values_.data() + remaining * d_, d_}; }
  std::span<T> mutable_row(std::size_t remaining) { return {values_.data() + remaining * d_, d_}; }
  const T& at(std::size_t remaining, std::size_t state) const { return values_[remaining * d_ + state]; }

  /// sum_i v[i] * rows[remaining][i]
  T bound(std::span<const T> v, std::size_t remaining) const;

 private:
  std::size_t d_;
  std::size_t horizon_;
  std::vector<T> values_;
};

template <class T>
ValueTable<T> mdp_value_table(const InstanceData<T>& data);

enum class SolveMethod { enumeration, branch_and_bound, beam };

std::string_view to_string(SolveMethod method);
SolveMethod parse_solve_method(std::string_view text);

struct SolveResult {
  Scalar value;
  Plan plan;
  std::uint64_t nodes_explored = 0;
  std::uint64_t nodes_pruned = 0;
  SolveMethod method = SolveMethod::enumeration;
};

/// Tries all K^N plans; returns the lexicographically smallest optimum.
/// Throws BudgetExceeded when K^N > options.budget.
SolveResult enumerate_solve(const Instance& instance, const SearchOptions& options = {});

/// Depth-first search in ascending matrix order, pruning a subtree when its
/// relaxation bound cannot strictly beat the incumbent. Returns the first
/// plan that reaches the final optimum in that order.
SolveResult branch_and_bound_solve(const Instance& instance, const SearchOptions& options = {});

/// Keeps the `width` best prefixes per level by relaxation bound (ties to
/// the lexicographically smaller prefix). Never exceeds the optimum.
SolveResult beam_search(const Instance& instance, std::size_t width);

struct Decision {
  bool attained = false;
  std::optional<Plan> witness;
  std::optional<Scalar> witness_value;
  std::uint64_t nodes_explored = 0;
  std::uint64_t nodes_pruned = 0;
};

/// Is there a full plan with value >= alpha? Exact instances compare
/// exactly; float instances accept value >= alpha - 1e-12. `alpha` must be in
/// the instance's numeric mode and within [0,1].
Decision decide_threshold(const Instance& instance, const Scalar& alpha, const SearchOptions& options = {});

}  // namespace atm
