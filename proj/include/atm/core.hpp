#pragma once

// Populations, transition matrices and treatment-plan evaluation.
//
// Populations are row vectors multiplied on the right: one antibiotic step
// maps v to vT. Every type here is available in an exact (Rational) and a
// floating (double) flavour; an Instance carries exactly one of them.

#include "atm/scalar.hpp"

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace atm {

inline constexpr double kRowSumTolerance = 1e-9;
inline constexpr double kCompareTolerance = 1e-12;

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Plan has the wrong length or references a matrix that does not exist.
class InvalidPlan : public Error {
 public:
  using Error::Error;
};

/// A sequence of matrix indices, applied left to right.
struct Plan {
  std::vector<std::size_t> steps;

  std::size_t size() const { return steps.size(); }
  bool empty() const { return steps.empty(); }
  std::size_t operator[](std::size_t t) const { return steps[t]; }

  friend auto operator<=>(const Plan&, const Plan&) = default;
  friend bool operator==(const Plan&, const Plan&) = default;
};

std::string to_string(const Plan& plan);

/// A point of the probability simplex over the d states.
template <class T>
class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(std::vector<T> weights) : weights_(std::move(weights)) {}

  static Distribution unit(std::size_t d, std::size_t state) {
    std::vector<T> w(d, T(0));
    w.at(state) = T(1);
    return Distribution(std::move(w));
  }

  std::size_t size() const { return weights_.size(); }
  const T& operator[](std::size_t i) const { return weights_[i]; }
  std::span<const T> weights() const { return weights_; }
  std::vector<T>& mutable_weights() { return weights_; }

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  std::vector<T> weights_;
};

/// Square matrix stored row-major. Stochasticity is checked by
/// validate_instance, not by the constructor.
template <class T>
class StochasticMatrix {
 public:
  StochasticMatrix() = default;
  StochasticMatrix(std::size_t dim, std::vector<T> entries, std::string label = {});

  static StochasticMatrix identity(std::size_t dim, std::string label = {});

  std::size_t dim() const { return dim_; }
  const T& at(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  T& at(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  std::span<const T> row(std::size_t i) const { return {entries_.data() + i * dim_, dim_}; }
  std::span<const T> entries() const { return entries_; }
  const std::string& label() const { return label_; }

  friend bool operator==(const StochasticMatrix&, const StochasticMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<T> entries_;
  std::string label_;
};

/// Unvalidated instance contents in one numeric flavour.
template <class T>
struct InstanceData {
  using value_type = T;

  std::size_t d = 0;
  std::size_t horizon = 0;
  std::vector<StochasticMatrix<T>> matrices;
  Distribution<T> start;
  std::size_t target = 0;

  std::size_t matrix_count() const { return matrices.size(); }
  friend bool operator==(const InstanceData&, const InstanceData&) = default;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

template <class T>
ValidationReport validate_instance(const InstanceData<T>& data);

class InvalidInstance : public Error {
 public:
  explicit InvalidInstance(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// A validated instance. Immutable after construction.
class Instance {
 public:
  using Exact = InstanceData<Rational>;
  using Float = InstanceData<double>;

  /// Throws InvalidInstance when any invariant fails.
  explicit Instance(Exact data);
  explicit Instance(Float data);

  NumericMode mode() const {
    return std::holds_alternative<Exact>(data_) ? NumericMode::exact : NumericMode::floating;
  }
  std::size_t d() const;
  std::size_t matrix_count() const;
  std::size_t horizon() const;
  std::size_t target() const;
  const std::string& label(std::size_t k) const;

  const Exact& exact() const;
  const Float& floating() const;

  template <class T>
  const InstanceData<T>& as() const {
    if constexpr (std::is_same_v<T, Rational>) {
      return exact();
    } else {
      return floating();
    }
  }

  template <class F>
  decltype(auto) visit(F&& f) const {
    return std::visit(std::forward<F>(f), data_);
  }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::variant<Exact, Float> data_;
};

ValidationReport validate_instance(const Instance& instance);

/// out = v * matrix. `out` must not alias `v`.
template <class T>
void apply_into(std::span<const T> v, const StochasticMatrix<T>& matrix, std::span<T> out);

template <class T>
Distribution<T> apply(const Distribution<T>& v, const StochasticMatrix<T>& matrix);

/// Throws InvalidPlan unless every index is < K and, when `full` is set,
/// the plan length equals the horizon.
void check_plan(const Instance& instance, const Plan& plan, bool full);

/// Final distribution after running `plan` (any length up to the horizon).
template <class T>
Distribution<T> run_plan(const InstanceData<T>& data, const Plan& plan);

/// Probability mass on the target state after the full plan.
Scalar evaluate_plan(const Instance& instance, const Plan& plan);

/// Distributions before the first step and after every step.
template <class T>
std::vector<Distribution<T>> trajectory(const InstanceData<T>& data, const Plan& plan);

std::vector<std::vector<Scalar>> trajectory(const Instance& instance, const Plan& plan);

template <class T>
std::vector<Scalar> to_scalars(std::span<const T> values) {
  return std::vector<Scalar>(values.begin(), values.end());
}

}  // namespace atm
