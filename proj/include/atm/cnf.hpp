#pragma once

// 3-SAT in the sign-tuple convention: a clause stores the one sign tuple
// that falsifies it, and an assignment satisfies the clause iff it differs
// from that tuple somewhere.

#include "atm/scalar.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace atm {

enum class Sign : std::uint8_t { minus, plus };

inline Sign flip(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }
inline char to_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

struct Literal {
  std::size_t variable = 0;
  Sign epsilon = Sign::minus;

  friend bool operator==(const Literal&, const Literal&) = default;
};

struct Clause {
  std::array<Literal, 3> literals;

  std::array<Sign, 3> forbidden() const {
    return {literals[0].epsilon, literals[1].epsilon, literals[2].epsilon};
  }
  friend bool operator==(const Clause&, const Clause&) = default;
};

struct CnfFormula {
  std::size_t n = 0;
  std::vector<Clause> clauses;

  std::size_t m() const { return clauses.size(); }
  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

using Assignment = std::vector<Sign>;

std::string to_string(const Assignment& a);

class InvalidFormula : public Error {
 public:
  using Error::Error;
};

/// Empty string when `f` meets the reduction's requirements: m >= 1,
/// three distinct in-range variables per clause, every variable used.
std::string formula_problem(const CnfFormula& f);
void check_formula(const CnfFormula& f);

bool clause_satisfied(const Clause& c, const Assignment& a);
bool formula_satisfied(const CnfFormula& f, const Assignment& a);

/// Clauses as DIMACS literal lists (1-based, negative for negated).
struct RawCnf {
  std::size_t n = 0;
  std::vector<std::vector<int>> clauses;
};

/// Standard literal -> sign tuple: literal x is false when x = -, so a
/// positive literal falsifies at epsilon = -, a negated one at epsilon = +.
Sign epsilon_of_literal(int literal);

struct NormalizedCnf {
  enum class Status {
    normal,
    /// Every clause was a tautology; no formula was produced.
    trivially_satisfiable,
    /// The input contains an empty clause; no formula was produced.
    unsatisfiable
  };
  Status status = Status::normal;
  CnfFormula formula;
  /// Input variable (0-based) behind each normalized variable, or -1 for
  /// padding/chaining variables introduced here.
  std::vector<long> origin;
};

/// Equisatisfiable rewrite into exact-width clauses over distinct variables:
/// duplicate literals merged, tautologies dropped, unused variables removed,
/// short clauses padded with fresh variables and long ones chained.
NormalizedCnf normalize_cnf(const RawCnf& raw);

struct SatResult {
  bool satisfiable = false;
  std::optional<Assignment> witness;
};

inline constexpr std::size_t kMaxBruteforceVariables = 25;

/// Scans assignments in lexicographic order ('-' before '+', variable 0
/// most significant); returns the first satisfier. Throws for n > 25.
SatResult sat_bruteforce(const CnfFormula& f);

/// Stable 64-bit FNV-1a digest of the formula's canonical text.
std::string formula_digest(const CnfFormula& f);

}  // namespace atm
