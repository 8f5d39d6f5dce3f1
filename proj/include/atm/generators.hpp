#pragma once

// Seeded random instances and formulas for benchmarks and property tests.

#include "atm/cnf.hpp"
#include "atm/core.hpp"

#include <random>

namespace atm::gen {

using Rng = std::mt19937_64;

/// Rows drawn uniformly and normalised; some entries forced to zero so the
/// instances have sparse, structured transitions as well as dense ones.
Instance random_float_instance(Rng& rng, std::size_t d, std::size_t k, std::size_t horizon);

/// Entries are multiples of 1/denominator.
Instance random_exact_instance(Rng& rng, std::size_t d, std::size_t k, std::size_t horizon,
                               unsigned denominator = 6);

/// m clauses over three distinct variables drawn from n >= 3, random signs.
/// Variables that end up unused are not removed.
CnfFormula random_3cnf(Rng& rng, std::size_t n, std::size_t m);

/// Random DIMACS-style clauses of width 1..max_width (repeats allowed).
RawCnf random_raw_cnf(Rng& rng, std::size_t n, std::size_t m, std::size_t max_width);

/// The eight clauses over variables 0,1,2 whose forbidden tuples cover all
/// of {+,-}^3; unsatisfiable.
CnfFormula all_tuples_formula();

}  // namespace atm::gen
