#include "atm/generators.hpp"

#include <algorithm>
#include <numeric>

namespace atm::gen {

Instance random_float_instance(Rng& rng, std::size_t d, std::size_t k, std::size_t horizon) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Instance::Float data;
  data.d = d;
  data.horizon = horizon;
  for (std::size_t m = 0; m < k; ++m) {
    std::vector<double> entries(d * d);
    for (std::size_t i = 0; i < d; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        double x = unit(rng);
        if (unit(rng) < 0.3) x = 0.0;
        entries[i * d + j] = x;
        sum += x;
      }
      if (sum == 0.0) {
        entries[i * d + i] = 1.0;
        continue;
      }
      for (std::size_t j = 0; j < d; ++j) entries[i * d + j] /= sum;
    }
    data.matrices.emplace_back(d, std::move(entries));
  }
  data.start = Distribution<double>::unit(d, 0);
  data.target = 0;
  return Instance(std::move(data));
}

Instance random_exact_instance(Rng& rng, std::size_t d, std::size_t k, std::size_t horizon, unsigned denominator) {
  std::uniform_int_distribution<std::size_t> column(0, d - 1);
  Instance::Exact data;
  data.d = d;
  data.horizon = horizon;
  for (std::size_t m = 0; m < k; ++m) {
    std::vector<Rational> entries(d * d);
    for (std::size_t i = 0; i < d; ++i) {
      // Drop `denominator` unit quanta into random columns.
      for (unsigned q = 0; q < denominator; ++q) entries[i * d + column(rng)] += Rational(1, denominator);
    }
    for (auto& x : entries) x.canonicalize();
    data.matrices.emplace_back(d, std::move(entries));
  }
  data.start = Distribution<Rational>::unit(d, 0);
  data.target = 0;
  return Instance(std::move(data));
}

CnfFormula random_3cnf(Rng& rng, std::size_t n, std::size_t m) {
  std::vector<std::size_t> vars(n);
  std::iota(vars.begin(), vars.end(), 0);
  std::bernoulli_distribution coin(0.5);
  CnfFormula f;
  f.n = n;
  for (std::size_t j = 0; j < m; ++j) {
    std::shuffle(vars.begin(), vars.end(), rng);
    Clause c;
    for (std::size_t l = 0; l < 3; ++l) c.literals[l] = Literal{vars[l], coin(rng) ? Sign::plus : Sign::minus};
    f.clauses.push_back(c);
  }
  return f;
}

RawCnf random_raw_cnf(Rng& rng, std::size_t n, std::size_t m, std::size_t max_width) {
  std::uniform_int_distribution<std::size_t> width(1, max_width);
  std::uniform_int_distribution<int> var(1, static_cast<int>(n));
  std::bernoulli_distribution coin(0.5);
  RawCnf raw;
  raw.n = n;
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<int> clause;
    const std::size_t w = width(rng);
    for (std::size_t l = 0; l < w; ++l) clause.push_back(coin(rng) ? var(rng) : -var(rng));
    raw.clauses.push_back(std::move(clause));
  }
  return raw;
}

CnfFormula all_tuples_formula() {
  CnfFormula f;
  f.n = 3;
  for (unsigned code = 0; code < 8; ++code) {
    Clause c;
    for (std::size_t l = 0; l < 3; ++l) {
      c.literals[l] = Literal{l, (code >> (2 - l)) & 1 ? Sign::plus : Sign::minus};
    }
    f.clauses.push_back(c);
  }
  return f;
}

}  // namespace atm::gen
