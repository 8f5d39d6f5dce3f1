#include "atm/cnf.hpp"

#include "atm/solvers.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cstdlib>
#include <map>

namespace atm {

std::string to_string(const Assignment& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i > 0) out += ' ';
    out += fmt::format("x{}={}", i + 1, to_char(a[i]));
  }
  return out;
}

std::string formula_problem(const CnfFormula& f) {
  if (f.clauses.empty()) return "formula has no clauses";
  std::vector<bool> used(f.n, false);
  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    const auto& lits = f.clauses[j].literals;
    for (std::size_t a = 0; a < 3; ++a) {
      if (lits[a].variable >= f.n) {
        return fmt::format("clause {} uses variable {} but n = {}", j, lits[a].variable, f.n);
      }
      used[lits[a].variable] = true;
      for (std::size_t b = a + 1; b < 3; ++b) {
        if (lits[a].variable == lits[b].variable) {
          return fmt::format("clause {} repeats variable {}", j, lits[a].variable);
        }
      }
    }
  }
  for (std::size_t i = 0; i < f.n; ++i) {
    if (!used[i]) return fmt::format("variable {} occurs in no clause", i);
  }
  return {};
}

void check_formula(const CnfFormula& f) {
  if (auto problem = formula_problem(f); !problem.empty()) throw InvalidFormula(problem);
}

bool clause_satisfied(const Clause& c, const Assignment& a) {
  for (const auto& lit : c.literals) {
    if (a.at(lit.variable) != lit.epsilon) return true;
  }
  return false;
}

bool formula_satisfied(const CnfFormula& f, const Assignment& a) {
  return std::all_of(f.clauses.begin(), f.clauses.end(), [&](const Clause& c) { return clause_satisfied(c, a); });
}

Sign epsilon_of_literal(int literal) { return literal > 0 ? Sign::minus : Sign::plus; }

NormalizedCnf normalize_cnf(const RawCnf& raw) {
  NormalizedCnf result;
  if (raw.clauses.empty()) throw InvalidFormula("formula has no clauses");

  // Deduplicate literals, drop tautologies, detect empty clauses.
  std::vector<std::vector<int>> kept;
  for (const auto& clause : raw.clauses) {
    if (clause.empty()) {
      result.status = NormalizedCnf::Status::unsatisfiable;
      return result;
    }
    std::vector<int> lits;
    bool tautology = false;
    for (int lit : clause) {
      if (lit == 0 || static_cast<std::size_t>(std::abs(lit)) > raw.n) {
        throw InvalidFormula(fmt::format("literal {} out of range for n = {}", lit, raw.n));
      }
      if (std::find(lits.begin(), lits.end(), -lit) != lits.end()) tautology = true;
      if (std::find(lits.begin(), lits.end(), lit) == lits.end()) lits.push_back(lit);
    }
    if (!tautology) kept.push_back(std::move(lits));
  }
  if (kept.empty()) {
    result.status = NormalizedCnf::Status::trivially_satisfiable;
    return result;
  }

  // Compact the surviving variables, keeping their relative order.
  std::map<std::size_t, std::size_t> compact;
  for (const auto& clause : kept)
    for (int lit : clause) compact.emplace(static_cast<std::size_t>(std::abs(lit)) - 1, 0);
  std::size_t next = 0;
  for (auto& [original, index] : compact) {
    index = next++;
    result.origin.push_back(static_cast<long>(original));
  }

  auto literal = [&](int lit) {
    return Literal{compact.at(static_cast<std::size_t>(std::abs(lit)) - 1), epsilon_of_literal(lit)};
  };
  auto fresh = [&] {
    result.origin.push_back(-1);
    return next++;
  };
  auto positive = [](std::size_t v) { return Literal{v, Sign::minus}; };
  auto negative = [](std::size_t v) { return Literal{v, Sign::plus}; };

  auto& out = result.formula.clauses;
  for (const auto& clause : kept) {
    if (clause.size() == 1) {
      const Literal a = literal(clause[0]);
      const std::size_t z1 = fresh(), z2 = fresh();
      for (Sign s1 : {Sign::minus, Sign::plus})
        for (Sign s2 : {Sign::minus, Sign::plus}) out.push_back(Clause{{a, Literal{z1, s1}, Literal{z2, s2}}});
    } else if (clause.size() == 2) {
      const Literal a = literal(clause[0]), b = literal(clause[1]);
      const std::size_t z = fresh();
      out.push_back(Clause{{a, b, positive(z)}});
      out.push_back(Clause{{a, b, negative(z)}});
    } else if (clause.size() == 3) {
      out.push_back(Clause{{literal(clause[0]), literal(clause[1]), literal(clause[2])}});
    } else {
      // (l1 l2 y1) (-y1 l3 y2) ... (-y_{k-3} l_{k-1} l_k)
      std::size_t link = fresh();
      out.push_back(Clause{{literal(clause[0]), literal(clause[1]), positive(link)}});
      for (std::size_t t = 2; t + 2 < clause.size(); ++t) {
        const std::size_t following = fresh();
        out.push_back(Clause{{negative(link), literal(clause[t]), positive(following)}});
        link = following;
      }
      out.push_back(Clause{{negative(link), literal(clause[clause.size() - 2]), literal(clause.back())}});
    }
  }
  result.formula.n = next;
  return result;
}

SatResult sat_bruteforce(const CnfFormula& f) {
  if (f.n > kMaxBruteforceVariables) {
    throw BudgetExceeded(fmt::format("2^{}", f.n), std::uint64_t{1} << kMaxBruteforceVariables);
  }
  Assignment a(f.n, Sign::minus);
  const std::uint64_t total = std::uint64_t{1} << f.n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::size_t i = 0; i < f.n; ++i) a[i] = ((mask >> (f.n - 1 - i)) & 1) ? Sign::plus : Sign::minus;
    if (formula_satisfied(f, a)) return SatResult{true, a};
  }
  return SatResult{};
}

std::string formula_digest(const CnfFormula& f) {
  std::string text = fmt::format("n {} m {}\n", f.n, f.m());
  for (const auto& c : f.clauses) {
    for (const auto& lit : c.literals) text += fmt::format("{}{} ", to_char(lit.epsilon), lit.variable);
    text += '\n';
  }
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return fmt::format("fnv1a64:{:016x}", h);
}

}  // namespace atm
