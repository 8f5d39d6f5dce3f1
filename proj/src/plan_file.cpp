#include "atm/io.hpp"

#include <fmt/format.h>

#include <sstream>

namespace atm::io {

Plan parse_plan(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  Plan plan;
  bool seen = false;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (seen) throw FormatError("plan file holds more than one plan line");
    seen = true;
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) {
      if (token.find_first_not_of("0123456789") != std::string::npos) {
        throw FormatError(fmt::format("plan index '{}' is not a non-negative integer", token));
      }
      plan.steps.push_back(std::stoull(token));
    }
  }
  return plan;
}

Plan read_plan(const std::filesystem::path& path) { return parse_plan(read_text(path)); }

std::string format_plan(const Plan& plan, std::string_view comment) {
  std::string out;
  if (!comment.empty()) out += fmt::format("# {}\n", comment);
  return out + to_string(plan) + "\n";
}

void write_plan(const Plan& plan, const std::filesystem::path& path, std::string_view comment) {
  write_text(path, format_plan(plan, comment));
}

}  // namespace atm::io
