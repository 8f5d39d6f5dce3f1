#include "atm/reduction.hpp"

#include <fmt/format.h>

namespace atm {

namespace layout {

std::array<Sign, 3> tuple_from_code(unsigned code) {
  auto bit = [&](unsigned b) { return (code & b) ? Sign::plus : Sign::minus; };
  return {bit(4), bit(2), bit(1)};
}

std::optional<std::size_t> clause_matrix(const Clause& c, std::size_t j, const std::array<Sign, 3>& v) {
  const unsigned code = tuple_code(v);
  const unsigned forbidden = tuple_code(c.forbidden());
  if (code == forbidden) return std::nullopt;
  return 2 + 7 * j + (code < forbidden ? code : code - 1);
}

}  // namespace layout

std::string clause_matrix_label(std::size_t j, const std::array<Sign, 3>& v) {
  std::string signs;
  for (Sign s : v) signs += s == Sign::plus ? 'p' : 'm';
  return fmt::format("T{}:{}", j, signs);
}

namespace {

using ExactMatrix = StochasticMatrix<Rational>;

/// Builds a 0/1 matrix from a state -> state map.
ExactMatrix deterministic(std::size_t d, const std::vector<std::size_t>& image, std::string label) {
  std::vector<Rational> entries(d * d);
  for (std::size_t z = 0; z < d; ++z) entries[z * d + image[z]] = 1;
  return ExactMatrix(d, std::move(entries), std::move(label));
}

struct Encoded {
  Instance::Exact data;
  std::map<std::string, std::size_t> states;
  std::map<std::string, std::size_t> matrices;
  Rational p;
};

Encoded build(const CnfFormula& f) {
  using namespace layout;
  const std::size_t n = f.n;
  const std::size_t m = f.m();
  const std::size_t d = state_count(n, m);

  Encoded out;
  out.p = Rational(1, n + m);
  out.p.canonicalize();

  out.states["s"] = kStart;
  out.states["d"] = kDeath;
  out.states["f"] = kTally;
  for (std::size_t i = 0; i < n; ++i) {
    out.states[fmt::format("x{}", i)] = variable(i);
    out.states[fmt::format("x{}-", i)] = variable_sign(i, Sign::minus);
    out.states[fmt::format("x{}+", i)] = variable_sign(i, Sign::plus);
  }
  for (std::size_t j = 0; j < m; ++j) out.states[fmt::format("c{}", j)] = clause(n, j);

  std::vector<ExactMatrix> matrices;

  // S
  {
    std::vector<Rational> entries(d * d);
    for (std::size_t i = 0; i < n; ++i) entries[kStart * d + variable(i)] = out.p;
    for (std::size_t j = 0; j < m; ++j) entries[kStart * d + clause(n, j)] = out.p;
    for (std::size_t z = 1; z < d; ++z) entries[z * d + kDeath] = 1;
    matrices.emplace_back(d, std::move(entries), "S");
  }
  // F
  {
    std::vector<std::size_t> image(d, kDeath);
    image[kTally] = kStart;
    for (std::size_t i = 0; i < n; ++i) {
      image[variable_sign(i, Sign::minus)] = kStart;
      image[variable_sign(i, Sign::plus)] = kStart;
    }
    matrices.push_back(deterministic(d, image, "F"));
  }
  // T_c^v
  for (std::size_t j = 0; j < m; ++j) {
    const Clause& c = f.clauses[j];
    const unsigned forbidden = tuple_code(c.forbidden());
    for (unsigned code = 0; code < 8; ++code) {
      if (code == forbidden) continue;
      const auto v = tuple_from_code(code);
      std::vector<std::size_t> image(d);
      for (std::size_t z = 0; z < d; ++z) image[z] = z;
      image[kStart] = kDeath;
      image[clause(n, j)] = kTally;
      for (std::size_t l = 0; l < 3; ++l) {
        const std::size_t var = c.literals[l].variable;
        image[variable(var)] = variable_sign(var, v[l]);
        image[variable_sign(var, flip(v[l]))] = kDeath;
      }
      matrices.push_back(deterministic(d, image, clause_matrix_label(j, v)));
    }
  }
  for (std::size_t k = 0; k < matrices.size(); ++k) out.matrices[matrices[k].label()] = k;

  out.data.d = d;
  out.data.horizon = m + 2;
  out.data.matrices = std::move(matrices);
  out.data.start = Distribution<Rational>::unit(d, kStart);
  out.data.target = kStart;
  return out;
}

}  // namespace

ReductionArtifact encode_reduction(const CnfFormula& f) {
  check_formula(f);
  Encoded e = build(f);
  return ReductionArtifact{Instance(std::move(e.data)), f, std::move(e.states), std::move(e.matrices), e.p};
}

ReductionArtifact artifact_from_instance(Instance instance, const CnfFormula& f) {
  ReductionArtifact art = encode_reduction(f);
  if (!(art.instance == instance)) {
    throw InvalidFormula("instance does not match the reduction of its embedded formula");
  }
  return art;
}

Plan satisfying_plan(const ReductionArtifact& art, const Assignment& a) {
  const auto& f = art.formula;
  if (a.size() != f.n) {
    throw PreconditionFailed(fmt::format("assignment has {} values, formula has {} variables", a.size(), f.n));
  }
  Plan plan;
  plan.steps.push_back(layout::kMatrixS);
  for (std::size_t j = 0; j < f.m(); ++j) {
    const Clause& c = f.clauses[j];
    std::array<Sign, 3> v{};
    for (std::size_t l = 0; l < 3; ++l) v[l] = a[c.literals[l].variable];
    auto k = layout::clause_matrix(c, j, v);
    if (!k) throw PreconditionFailed(fmt::format("assignment does not satisfy clause {}", j));
    plan.steps.push_back(*k);
  }
  plan.steps.push_back(layout::kMatrixF);
  return plan;
}

Assignment decode_assignment(const ReductionArtifact& art, const Plan& plan) {
  const auto& data = art.instance.exact();
  check_plan(art.instance, plan, true);
  const Rational value = run_plan(data, plan)[data.target];
  if (value != 1) {
    throw PreconditionFailed(fmt::format("plan value is {}, decoding needs exactly 1", format_rational(value)));
  }
  Plan prefix{std::vector<std::size_t>(plan.steps.begin(), plan.steps.end() - 1)};
  const auto before_last = run_plan(data, prefix);
  Assignment a(art.formula.n);
  for (std::size_t i = 0; i < art.formula.n; ++i) {
    const bool minus = sgn(before_last[layout::variable_sign(i, Sign::minus)]) > 0;
    const bool plus = sgn(before_last[layout::variable_sign(i, Sign::plus)]) > 0;
    if (minus == plus) {
      throw Error(fmt::format("variable {} has {} signed states carrying weight before the last step", i,
                              minus ? "both" : "neither of its"));
    }
    a[i] = plus ? Sign::plus : Sign::minus;
  }
  return a;
}

std::string plan_structure_problem(const ReductionArtifact& art, const Plan& plan) {
  const std::size_t m = art.formula.m();
  if (plan.size() != m + 2) return fmt::format("plan has {} steps, expected {}", plan.size(), m + 2);
  if (plan[0] != layout::kMatrixS) return fmt::format("first step is {}, not S", art.instance.label(plan[0]));
  if (plan[m + 1] != layout::kMatrixF) return fmt::format("last step is {}, not F", art.instance.label(plan[m + 1]));
  std::vector<int> uses(m, 0);
  for (std::size_t t = 1; t <= m; ++t) {
    auto j = layout::clause_of_matrix(plan[t]);
    if (!j) return fmt::format("step {} is {}, not a clause matrix", t, art.instance.label(plan[t]));
    ++uses.at(*j);
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (uses[j] != 1) return fmt::format("clause {} has {} matrices in the plan", j, uses[j]);
  }
  return {};
}

RoundtripReport verify_roundtrip(const CnfFormula& f, const SearchOptions& options) {
  RoundtripReport report;
  const ReductionArtifact art = encode_reduction(f);

  const SatResult sat = sat_bruteforce(f);
  report.sat = sat.satisfiable;
  report.sat_witness = sat.witness;

  const Decision decision = decide_threshold(art.instance, Scalar(Rational(1)), options);
  report.attained = decision.attained;
  report.threshold_witness = decision.witness;
  report.nodes_explored = decision.nodes_explored;

  if (!report.agree()) {
    report.problems.push_back(fmt::format("SAT oracle says {}, threshold decision says {}",
                                          report.sat ? "satisfiable" : "unsatisfiable",
                                          report.attained ? "attained" : "not attained"));
    return report;
  }
  if (!report.sat) return report;

  // Assignment -> plan.
  const Plan built = satisfying_plan(art, *sat.witness);
  if (evaluate_plan(art.instance, built) != Scalar(Rational(1))) {
    report.problems.push_back("plan built from the SAT witness does not reach value 1");
  }
  if (auto problem = plan_structure_problem(art, built); !problem.empty()) {
    report.problems.push_back("plan built from the SAT witness: " + problem);
  }
  if (decode_assignment(art, built) != *sat.witness) {
    report.problems.push_back("decoding the plan built from the SAT witness does not return the witness");
  }

  // Plan -> assignment.
  const Plan& found = *decision.witness;
  if (auto problem = plan_structure_problem(art, found); !problem.empty()) {
    report.problems.push_back("threshold witness: " + problem);
  }
  report.decoded = decode_assignment(art, found);
  for (std::size_t j = 0; j < f.m(); ++j) {
    if (!clause_satisfied(f.clauses[j], *report.decoded)) {
      report.problems.push_back(fmt::format("decoded assignment violates clause {}", j));
    }
  }
  return report;
}

}  // namespace atm
