#include "atm/core.hpp"

#include "atm/simd.hpp"

#include <fmt/format.h>

#include <cmath>

namespace atm {

std::string to_string(const Plan& plan) {
  std::string out;
  for (std::size_t t = 0; t < plan.size(); ++t) {
    if (t > 0) out += ' ';
    out += std::to_string(plan[t]);
  }
  return out;
}

template <class T>
StochasticMatrix<T>::StochasticMatrix(std::size_t dim, std::vector<T> entries, std::string label)
    : dim_(dim), entries_(std::move(entries)), label_(std::move(label)) {
  if (entries_.size() != dim_ * dim_) {
    throw DimensionMismatch(
        fmt::format("matrix of dimension {} needs {} entries, got {}", dim_, dim_ * dim_, entries_.size()));
  }
}

template <class T>
StochasticMatrix<T> StochasticMatrix<T>::identity(std::size_t dim, std::string label) {
  std::vector<T> entries(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) entries[i * dim + i] = T(1);
  return StochasticMatrix(dim, std::move(entries), std::move(label));
}

std::string ValidationReport::summary() const {
  if (ok()) return "ok";
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v;
  }
  return out;
}

InvalidInstance::InvalidInstance(ValidationReport report)
    : Error("invalid instance: " + report.summary()), report_(std::move(report)) {}

namespace {

std::string show(const Rational& x) { return format_rational(x); }
std::string show(double x) { return format_double(x); }

bool is_zero(const Rational& x) { return sgn(x) == 0; }
bool is_zero(double x) { return x == 0.0; }

bool in_unit_interval(const Rational& x) { return x >= 0 && x <= 1; }
bool in_unit_interval(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

bool sums_to_one(const Rational& sum) { return sum == 1; }
bool sums_to_one(double sum) { return std::isfinite(sum) && std::fabs(sum - 1.0) <= kRowSumTolerance; }

std::string sum_requirement(const Rational&) { return "≠ 1"; }
std::string sum_requirement(double) { return "∉ 1±1e-9"; }

template <class T>
void check_weights(std::span<const T> weights, const std::string& where, std::vector<std::string>& out) {
  T sum(0);
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (is_zero(weights[j])) continue;
    if (!in_unit_interval(weights[j])) {
      out.push_back(fmt::format("{} entry {} = {} outside [0,1]", where, j, show(weights[j])));
    }
    sum += weights[j];
  }
  if (!sums_to_one(sum)) out.push_back(fmt::format("{}: row sum {} {}", where, show(sum), sum_requirement(sum)));
}

}  // namespace

template <class T>
ValidationReport validate_instance(const InstanceData<T>& data) {
  ValidationReport report;
  auto& out = report.violations;
  if (data.d < 1) out.push_back("d must be at least 1");
  if (data.matrices.empty()) out.push_back("K must be at least 1");
  for (std::size_t k = 0; k < data.matrices.size(); ++k) {
    const auto& m = data.matrices[k];
    std::string name = m.label().empty() ? fmt::format("matrix {}", k) : fmt::format("matrix {} ({})", k, m.label());
    if (m.dim() != data.d || m.entries().size() != data.d * data.d) {
      out.push_back(fmt::format("{} has dimension {}, expected {}", name, m.dim(), data.d));
      continue;
    }
    for (std::size_t i = 0; i < data.d; ++i) check_weights(m.row(i), fmt::format("{} row {}", name, i), out);
  }
  if (data.start.size() != data.d) {
    out.push_back(fmt::format("start has length {}, expected {}", data.start.size(), data.d));
  } else if (data.d > 0) {
    check_weights(data.start.weights(), std::string("start"), out);
  }
  if (data.target >= data.d) out.push_back(fmt::format("target {} out of range [0,{})", data.target, data.d));
  return report;
}

Instance::Instance(Exact data) : data_(std::move(data)) {
  if (auto report = validate_instance(std::get<Exact>(data_)); !report.ok()) throw InvalidInstance(report);
}

Instance::Instance(Float data) : data_(std::move(data)) {
  if (auto report = validate_instance(std::get<Float>(data_)); !report.ok()) throw InvalidInstance(report);
}

std::size_t Instance::d() const {
  return visit([](const auto& data) { return data.d; });
}
std::size_t Instance::matrix_count() const {
  return visit([](const auto& data) { return data.matrices.size(); });
}
std::size_t Instance::horizon() const {
  return visit([](const auto& data) { return data.horizon; });
}
std::size_t Instance::target() const {
  return visit([](const auto& data) { return data.target; });
}
const std::string& Instance::label(std::size_t k) const {
  return visit([k](const auto& data) -> const std::string& { return data.matrices.at(k).label(); });
}

const Instance::Exact& Instance::exact() const {
  if (auto* data = std::get_if<Exact>(&data_)) return *data;
  throw ModeMismatch("instance is in float mode");
}

const Instance::Float& Instance::floating() const {
  if (auto* data = std::get_if<Float>(&data_)) return *data;
  throw ModeMismatch("instance is in exact mode");
}

ValidationReport validate_instance(const Instance& instance) {
  return instance.visit([](const auto& data) { return validate_instance(data); });
}

template <class T>
void apply_into(std::span<const T> v, const StochasticMatrix<T>& matrix, std::span<T> out) {
  const std::size_t d = matrix.dim();
  if (v.size() != d || out.size() != d) {
    throw DimensionMismatch(fmt::format("vector of length {} times {}x{} matrix", v.size(), d, d));
  }
  if constexpr (std::is_same_v<T, double>) {
    simd::active().vecmat(v.data(), matrix.entries().data(), out.data(), d);
  } else {
    for (auto& x : out) x = 0;
    Rational term;
    for (std::size_t i = 0; i < d; ++i) {
      if (sgn(v[i]) == 0) continue;
      auto row = matrix.row(i);
      for (std::size_t j = 0; j < d; ++j) {
        if (sgn(row[j]) == 0) continue;
        term = v[i] * row[j];
        out[j] += term;
      }
    }
  }
}

template <class T>
Distribution<T> apply(const Distribution<T>& v, const StochasticMatrix<T>& matrix) {
  std::vector<T> out(matrix.dim(), T(0));
  apply_into(v.weights(), matrix, std::span<T>(out));
  return Distribution<T>(std::move(out));
}

void check_plan(const Instance& instance, const Plan& plan, bool full) {
  if (full && plan.size() != instance.horizon()) {
    throw InvalidPlan(fmt::format("plan has {} steps, horizon is {}", plan.size(), instance.horizon()));
  }
  if (!full && plan.size() > instance.horizon()) {
    throw InvalidPlan(fmt::format("plan has {} steps, longer than horizon {}", plan.size(), instance.horizon()));
  }
  for (std::size_t t = 0; t < plan.size(); ++t) {
    if (plan[t] >= instance.matrix_count()) {
      throw InvalidPlan(fmt::format("step {} uses matrix {}, only {} exist", t, plan[t], instance.matrix_count()));
    }
  }
}

template <class T>
Distribution<T> run_plan(const InstanceData<T>& data, const Plan& plan) {
  std::vector<T> current(data.start.weights().begin(), data.start.weights().end());
  std::vector<T> next(data.d, T(0));
  for (std::size_t k : plan.steps) {
    apply_into(std::span<const T>(current), data.matrices.at(k), std::span<T>(next));
    std::swap(current, next);
  }
  return Distribution<T>(std::move(current));
}

Scalar evaluate_plan(const Instance& instance, const Plan& plan) {
  check_plan(instance, plan, true);
  return instance.visit([&](const auto& data) { return Scalar(run_plan(data, plan)[data.target]); });
}

template <class T>
std::vector<Distribution<T>> trajectory(const InstanceData<T>& data, const Plan& plan) {
  std::vector<Distribution<T>> points;
  points.reserve(plan.size() + 1);
  points.push_back(data.start);
  for (std::size_t k : plan.steps) points.push_back(apply(points.back(), data.matrices.at(k)));
  return points;
}

std::vector<std::vector<Scalar>> trajectory(const Instance& instance, const Plan& plan) {
  check_plan(instance, plan, false);
  return instance.visit([&](const auto& data) {
    std::vector<std::vector<Scalar>> out;
    for (const auto& point : trajectory(data, plan)) out.push_back(to_scalars(point.weights()));
    return out;
  });
}

#define ATM_INSTANTIATE(T)                                                                       \
  template class StochasticMatrix<T>;                                                            \
  template ValidationReport validate_instance(const InstanceData<T>&);                           \
  template void apply_into(std::span<const T>, const StochasticMatrix<T>&, std::span<T>);        \
  template Distribution<T> apply(const Distribution<T>&, const StochasticMatrix<T>&);            \
  template Distribution<T> run_plan(const InstanceData<T>&, const Plan&);                        \
  template std::vector<Distribution<T>> trajectory(const InstanceData<T>&, const Plan&);

ATM_INSTANTIATE(Rational)
ATM_INSTANTIATE(double)

}  // namespace atm
