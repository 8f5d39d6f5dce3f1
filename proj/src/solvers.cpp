#include "atm/solvers.hpp"

#include "atm/simd.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <functional>
#include <unordered_set>

namespace atm {

BudgetExceeded::BudgetExceeded(std::string required, std::uint64_t budget)
    : Error(fmt::format("search budget exceeded: needs {} nodes, budget is {}", required, budget)),
      required_(std::move(required)),
      budget_(budget) {}

std::string_view to_string(SolveMethod method) {
  switch (method) {
    case SolveMethod::enumeration: return "enum";
    case SolveMethod::branch_and_bound: return "bnb";
    case SolveMethod::beam: return "beam";
  }
  return "?";
}

SolveMethod parse_solve_method(std::string_view text) {
  if (text == "enum") return SolveMethod::enumeration;
  if (text == "bnb") return SolveMethod::branch_and_bound;
  if (text == "beam") return SolveMethod::beam;
  throw FormatError(fmt::format("unknown method '{}' (expected enum, bnb or beam)", text));
}

template <class T>
T ValueTable<T>::bound(std::span<const T> v, std::size_t remaining) const {
  auto u = row(remaining);
  if constexpr (std::is_same_v<T, double>) {
    return simd::active().dot(v.data(), u.data(), d_);
  } else {
    Rational sum(0);
    for (std::size_t i = 0; i < d_; ++i) {
      if (sgn(v[i]) == 0 || sgn(u[i]) == 0) continue;
      sum += v[i] * u[i];
    }
    return sum;
  }
}

template <class T>
ValueTable<T> mdp_value_table(const InstanceData<T>& data) {
  const std::size_t d = data.d;
  ValueTable<T> table(d, data.horizon);
  table.mutable_row(0)[data.target] = T(1);
  if (data.horizon == 0) return table;

  if constexpr (std::is_same_v<T, double>) {
    // vecmat(u, M^T) yields M u, so transpose once and reuse the row kernel.
    std::vector<std::vector<double>> transposed;
    for (const auto& m : data.matrices) {
      std::vector<double> t(d * d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) t[j * d + i] = m.at(i, j);
      transposed.push_back(std::move(t));
    }
    const auto& kernels = simd::active();
    std::vector<double> candidate(d);
    for (std::size_t r = 1; r <= data.horizon; ++r) {
      auto prev = table.row(r - 1);
      auto best = table.mutable_row(r);
      kernels.vecmat(prev.data(), transposed[0].data(), best.data(), d);
      for (std::size_t k = 1; k < transposed.size(); ++k) {
        kernels.vecmat(prev.data(), transposed[k].data(), candidate.data(), d);
        kernels.vmax(best.data(), candidate.data(), d);
      }
    }
  } else {
    Rational sum;
    for (std::size_t r = 1; r <= data.horizon; ++r) {
      auto prev = table.row(r - 1);
      auto best = table.mutable_row(r);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < data.matrices.size(); ++k) {
          auto m_row = data.matrices[k].row(i);
          sum = 0;
          for (std::size_t j = 0; j < d; ++j) {
            if (sgn(m_row[j]) == 0 || sgn(prev[j]) == 0) continue;
            sum += m_row[j] * prev[j];
          }
          if (k == 0 || sum > best[i]) best[i] = sum;
        }
      }
    }
  }
  return table;
}

namespace {

std::size_t hash_value(double x) { return std::hash<std::uint64_t>{}(std::bit_cast<std::uint64_t>(x)); }

std::size_t hash_value(const Rational& x) {
  auto word = [](const mpz_class& z) -> std::size_t {
    const auto size = mpz_size(z.get_mpz_t());
    return size == 0 ? 0 : static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), 0)) ^ (size << 7);
  };
  return word(x.get_num()) * 0x9e3779b97f4a7c15ull + word(x.get_den()) + (sgn(x) < 0 ? 1 : 0);
}

template <class T>
struct WeightsHash {
  std::size_t operator()(const std::vector<T>& v) const {
    std::size_t h = v.size();
    for (const auto& x : v) h = (h ^ hash_value(x)) * 0x100000001b3ull;
    return h;
  }
};

/// Per-depth set of already searched distributions.
template <class T>
class TranspositionTable {
 public:
  TranspositionTable(std::size_t depths, bool enabled, std::size_t limit)
      : sets_(enabled ? depths : 0), limit_(limit) {}

  /// True when (depth, v) was seen before; otherwise records it.
  bool seen_before(std::size_t depth, const std::vector<T>& v) {
    if (sets_.empty()) return false;
    auto& set = sets_[depth];
    if (set.contains(v)) return true;
    if (size_ < limit_) {
      set.insert(v);
      ++size_;
    }
    return false;
  }

 private:
  std::vector<std::unordered_set<std::vector<T>, WeightsHash<T>>> sets_;
  std::size_t limit_;
  std::size_t size_ = 0;
};

std::string power_string(std::size_t base, std::size_t exponent) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), base, exponent);
  return p.get_str();
}

bool power_exceeds(std::size_t base, std::size_t exponent, std::uint64_t limit) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), base, exponent);
  return cmp(p, mpz_class(std::to_string(limit))) > 0;
}

/// Depth-first search shared by enumeration, branch-and-bound and the
/// threshold decision. Buffers hold one distribution per depth.
template <class T>
class DepthFirstSearch {
 public:
  enum class Goal { enumerate, optimize, decide };

  DepthFirstSearch(const InstanceData<T>& data, Goal goal, const SearchOptions& options)
      : data_(data),
        goal_(goal),
        options_(options),
        levels_(data.horizon + 1, std::vector<T>(data.d, T(0))),
        transpositions_(data.horizon + 1, options.transpositions && goal != Goal::enumerate,
                        options.transposition_limit) {
    if (goal_ != Goal::enumerate) table_.emplace(mdp_value_table(data));
    auto start = data.start.weights();
    std::copy(start.begin(), start.end(), levels_[0].begin());
  }

  void set_alpha(T alpha) { alpha_ = std::move(alpha); }

  void run() {
    explored_ = 1;
    if (goal_ == Goal::decide && below_alpha(table_->bound(levels_[0], data_.horizon))) {
      ++pruned_;
      return;
    }
    descend(0);
  }

  bool has_best() const { return best_.has_value(); }
  const T& best_value() const { return *best_; }
  const Plan& best_plan() const { return best_plan_; }
  std::uint64_t explored() const { return explored_; }
  std::uint64_t pruned() const { return pruned_; }

 private:
  bool meets_alpha(const T& value) const {
    if constexpr (std::is_same_v<T, double>) {
      return value >= alpha_ - kCompareTolerance;
    } else {
      return value >= alpha_;
    }
  }
  bool below_alpha(const T& bound) const { return !meets_alpha(bound); }

  bool prune(const T& bound) const {
    switch (goal_) {
      case Goal::enumerate: return false;
      case Goal::optimize: return best_.has_value() && bound <= *best_;
      case Goal::decide: return below_alpha(bound);
    }
    return false;
  }

  void descend(std::size_t depth) {
    if (depth == data_.horizon) {
      const T& value = levels_[depth][data_.target];
      if (goal_ == Goal::decide) {
        if (meets_alpha(value)) {
          best_ = value;
          best_plan_ = prefix_;
          done_ = true;
        }
        return;
      }
      if (!best_ || value > *best_) {
        best_ = value;
        best_plan_ = prefix_;
      }
      return;
    }
    const std::size_t remaining = data_.horizon - depth - 1;
    for (std::size_t k = 0; k < data_.matrices.size() && !done_; ++k) {
      auto& next = levels_[depth + 1];
      apply_into(std::span<const T>(levels_[depth]), data_.matrices[k], std::span<T>(next));
      if (++explored_ > options_.budget + 1) {
        throw BudgetExceeded(std::to_string(explored_ - 1), options_.budget);
      }
      if (goal_ != Goal::enumerate) {
        if (prune(table_->bound(next, remaining)) || transpositions_.seen_before(depth + 1, next)) {
          ++pruned_;
          continue;
        }
      }
      prefix_.steps.push_back(k);
      descend(depth + 1);
      prefix_.steps.pop_back();
    }
  }

  const InstanceData<T>& data_;
  Goal goal_;
  SearchOptions options_;
  std::optional<ValueTable<T>> table_;
  std::vector<std::vector<T>> levels_;
  TranspositionTable<T> transpositions_;
  Plan prefix_;
  std::optional<T> best_;
  Plan best_plan_;
  T alpha_{};
  bool done_ = false;
  std::uint64_t explored_ = 0;
  std::uint64_t pruned_ = 0;
};

template <class T>
SolveResult finish(const DepthFirstSearch<T>& search, SolveMethod method) {
  return SolveResult{Scalar(search.best_value()), search.best_plan(), search.explored(), search.pruned(), method};
}

template <class T>
struct BeamEntry {
  std::vector<T> weights;
  Plan prefix;
  T score;
};

template <class T>
SolveResult beam_search_typed(const InstanceData<T>& data, std::size_t width) {
  const auto table = mdp_value_table(data);
  SolveResult result;
  result.method = SolveMethod::beam;
  result.nodes_explored = 1;

  std::vector<T> start(data.start.weights().begin(), data.start.weights().end());
  T root_score = table.bound(start, data.horizon);
  std::vector<BeamEntry<T>> beam{BeamEntry<T>{std::move(start), Plan{}, std::move(root_score)}};

  for (std::size_t depth = 0; depth < data.horizon; ++depth) {
    const std::size_t remaining = data.horizon - depth - 1;
    std::vector<BeamEntry<T>> candidates;
    candidates.reserve(beam.size() * data.matrices.size());
    for (const auto& entry : beam) {
      for (std::size_t k = 0; k < data.matrices.size(); ++k) {
        std::vector<T> next(data.d, T(0));
        apply_into(std::span<const T>(entry.weights), data.matrices[k], std::span<T>(next));
        ++result.nodes_explored;
        Plan prefix = entry.prefix;
        prefix.steps.push_back(k);
        T score = table.bound(next, remaining);
        candidates.push_back(BeamEntry<T>{std::move(next), std::move(prefix), std::move(score)});
      }
    }
    std::sort(candidates.begin(), candidates.end(), [](const BeamEntry<T>& a, const BeamEntry<T>& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.prefix < b.prefix;
    });
    if (candidates.size() > width) {
      result.nodes_pruned += candidates.size() - width;
      candidates.resize(width);
    }
    beam = std::move(candidates);
  }

  // At full depth the score is exactly the target mass, so the sort above has
  // already ranked the finished plans.
  const auto& winner = beam.front();
  result.value = Scalar(winner.weights[data.target]);
  result.plan = winner.prefix;
  return result;
}

}  // namespace

SolveResult enumerate_solve(const Instance& instance, const SearchOptions& options) {
  const std::size_t k = instance.matrix_count();
  const std::size_t n = instance.horizon();
  if (power_exceeds(k, n, options.budget)) throw BudgetExceeded(power_string(k, n), options.budget);
  SearchOptions unbounded = options;
  unbounded.budget = std::numeric_limits<std::uint64_t>::max() - 1;
  return instance.visit([&](const auto& data) {
    using T = typename std::decay_t<decltype(data)>::value_type;
    DepthFirstSearch<T> search(data, DepthFirstSearch<T>::Goal::enumerate, unbounded);
    search.run();
    return finish(search, SolveMethod::enumeration);
  });
}

SolveResult branch_and_bound_solve(const Instance& instance, const SearchOptions& options) {
  return instance.visit([&](const auto& data) {
    using T = typename std::decay_t<decltype(data)>::value_type;
    DepthFirstSearch<T> search(data, DepthFirstSearch<T>::Goal::optimize, options);
    search.run();
    return finish(search, SolveMethod::branch_and_bound);
  });
}

SolveResult beam_search(const Instance& instance, std::size_t width) {
  if (width == 0) throw PreconditionFailed("beam width must be at least 1");
  return instance.visit([&](const auto& data) { return beam_search_typed(data, width); });
}

Decision decide_threshold(const Instance& instance, const Scalar& alpha, const SearchOptions& options) {
  if (alpha.mode() != instance.mode()) {
    throw ModeMismatch(fmt::format("alpha is {} but the instance is {}", to_string(alpha.mode()),
                                   to_string(instance.mode())));
  }
  if (alpha.to_double() < 0.0 || alpha.to_double() > 1.0 ||
      (alpha.is_exact() && (alpha.exact() < 0 || alpha.exact() > 1))) {
    throw PreconditionFailed(fmt::format("alpha {} outside [0,1]", alpha.to_string()));
  }
  return instance.visit([&](const auto& data) {
    using T = typename std::decay_t<decltype(data)>::value_type;
    DepthFirstSearch<T> search(data, DepthFirstSearch<T>::Goal::decide, options);
    if constexpr (std::is_same_v<T, double>) {
      search.set_alpha(alpha.floating());
    } else {
      search.set_alpha(alpha.exact());
    }
    search.run();
    Decision decision;
    decision.attained = search.has_best();
    if (decision.attained) {
      decision.witness = search.best_plan();
      decision.witness_value = Scalar(search.best_value());
    }
    decision.nodes_explored = search.explored();
    decision.nodes_pruned = search.pruned();
    return decision;
  });
}

template class ValueTable<Rational>;
template class ValueTable<double>;
template ValueTable<Rational> mdp_value_table(const InstanceData<Rational>&);
template ValueTable<double> mdp_value_table(const InstanceData<double>&);

}  // namespace atm
