#include "bench.hpp"

#include "atm/generators.hpp"
#include "atm/io.hpp"

#include <fmt/format.h>

#include <chrono>
#include <sstream>

namespace atm::bench {

std::string MethodSpec::name() const {
  if (method == SolveMethod::beam) return fmt::format("beam:{}", beam_width);
  return std::string(to_string(method));
}

MethodSpec parse_method_spec(const std::string& text) {
  MethodSpec spec;
  const auto colon = text.find(':');
  spec.method = parse_solve_method(text.substr(0, colon));
  if (colon != std::string::npos) {
    if (spec.method != SolveMethod::beam) throw FormatError(fmt::format("only beam takes a width: '{}'", text));
    const std::string width = text.substr(colon + 1);
    if (width.empty() || width.find_first_not_of("0123456789") != std::string::npos || std::stoull(width) == 0) {
      throw FormatError(fmt::format("bad beam width in '{}'", text));
    }
    spec.beam_width = std::stoull(width);
  }
  return spec;
}

namespace {

std::vector<BenchCase> random_suite(const std::string& spec) {
  unsigned long count = 0, seed = 0;
  char trailing = 0;
  if (std::sscanf(spec.c_str(), "random:%lu:%lu%c", &count, &seed, &trailing) != 2) {
    throw FormatError(fmt::format("random suite must look like random:<count>:<seed>, got '{}'", spec));
  }
  gen::Rng rng(seed);
  std::vector<BenchCase> cases;
  for (unsigned long i = 0; i < count; ++i) {
    cases.push_back(BenchCase{fmt::format("random-{}-{}", seed, i), gen::random_float_instance(rng, 4, 3, 5),
                              {parse_method_spec("enum"), parse_method_spec("bnb"), parse_method_spec("beam:4")}});
  }
  return cases;
}

Instance load_instance(const std::filesystem::path& path) {
  if (path.extension() == ".cnf") {
    auto normalized = normalize_cnf(io::read_dimacs(path));
    if (normalized.status != NormalizedCnf::Status::normal) {
      throw FormatError(fmt::format("'{}' normalizes to a trivial formula; nothing to encode", path.string()));
    }
    return encode_reduction(normalized.formula).instance;
  }
  return io::read_instance_file(path).instance;
}

}  // namespace

std::vector<BenchCase> load_suite(const std::string& spec) {
  if (spec.rfind("random:", 0) == 0) return random_suite(spec);

  const std::filesystem::path suite_path(spec);
  std::istringstream lines(io::read_text(suite_path));
  std::string line;
  std::vector<BenchCase> cases;
  while (std::getline(lines, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string path_text;
    if (!(words >> path_text)) continue;
    std::vector<MethodSpec> methods;
    for (std::string m; words >> m;) methods.push_back(parse_method_spec(m));
    if (methods.empty()) throw FormatError(fmt::format("suite line for '{}' names no method", path_text));
    std::filesystem::path path(path_text);
    if (path.is_relative()) path = suite_path.parent_path() / path;
    cases.push_back(BenchCase{path_text, load_instance(path), std::move(methods)});
  }
  return cases;
}

std::vector<BenchRow> run_suite(const std::vector<BenchCase>& cases, const SearchOptions& options) {
  std::vector<BenchRow> rows;
  for (const auto& c : cases) {
    for (const auto& m : c.methods) {
      BenchRow row;
      row.instance = c.name;
      row.method = m.name();
      const auto begin = std::chrono::steady_clock::now();
      try {
        SolveResult r;
        switch (m.method) {
          case SolveMethod::enumeration: r = enumerate_solve(c.instance, options); break;
          case SolveMethod::branch_and_bound: r = branch_and_bound_solve(c.instance, options); break;
          case SolveMethod::beam: r = beam_search(c.instance, m.beam_width); break;
        }
        row.value = r.value;
        row.nodes_explored = r.nodes_explored;
        row.nodes_pruned = r.nodes_pruned;
      } catch (const BudgetExceeded&) {
        row.value.reset();
      }
      row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - begin).count();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string to_csv(const std::vector<BenchRow>& rows) {
  std::string out = "instance,method,value,nodes_explored,nodes_pruned,wall_ms\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{:.3f}\n", r.instance, r.method, r.value ? r.value->to_string() : "NA",
                       r.nodes_explored, r.nodes_pruned, r.wall_ms);
  }
  return out;
}

}  // namespace atm::bench
