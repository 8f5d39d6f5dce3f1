#include "atm/io.hpp"

#include <fmt/format.h>

#include <cerrno>
#include <cstdlib>
#include <sstream>

namespace atm::io {

namespace {

long parse_long(const std::string& token, std::size_t line) {
  char* end = nullptr;
  errno = 0;
  long value = std::strtol(token.c_str(), &end, 10);
  if (token.empty() || *end != '\0' || errno == ERANGE) {
    throw FormatError(fmt::format("line {}: expected an integer, got '{}'", line, token));
  }
  return value;
}

}  // namespace

RawCnf parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  long declared_clauses = 0;
  RawCnf cnf;
  std::vector<int> current;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream words(line);
    std::string first;
    if (!(words >> first)) continue;
    if (first == "c") continue;
    if (first == "%") break;  // SATLIB files end with "%\n0"
    if (first == "p") {
      std::string kind, n_text, m_text, extra;
      if (have_header || !(words >> kind >> n_text >> m_text) || kind != "cnf" || (words >> extra)) {
        throw FormatError(fmt::format("line {}: malformed header '{}'", line_no, line));
      }
      const long n = parse_long(n_text, line_no);
      declared_clauses = parse_long(m_text, line_no);
      if (n < 0 || declared_clauses < 0) throw FormatError(fmt::format("line {}: negative size in header", line_no));
      cnf.n = static_cast<std::size_t>(n);
      have_header = true;
      continue;
    }
    if (!have_header) throw FormatError(fmt::format("line {}: clause data before 'p cnf' header", line_no));
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) {
      const long lit = parse_long(token, line_no);
      if (lit == 0) {
        cnf.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (static_cast<std::size_t>(lit < 0 ? -lit : lit) > cnf.n) {
        throw FormatError(fmt::format("line {}: variable {} exceeds n = {}", line_no, lit < 0 ? -lit : lit, cnf.n));
      }
      current.push_back(static_cast<int>(lit));
    }
  }
  if (!have_header) throw FormatError("missing 'p cnf' header");
  if (!current.empty()) throw FormatError("last clause is missing its terminating 0");
  if (cnf.clauses.size() != static_cast<std::size_t>(declared_clauses)) {
    throw FormatError(
        fmt::format("header declares {} clauses, found {}", declared_clauses, cnf.clauses.size()));
  }
  return cnf;
}

RawCnf read_dimacs(const std::filesystem::path& path) { return parse_dimacs(read_text(path)); }

}  // namespace atm::io
