#pragma once

#include "atm/cnf.hpp"
#include "atm/core.hpp"
#include "atm/reduction.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace atm::io {

// ---------------------------------------------------------------------------
// DIMACS CNF
// ---------------------------------------------------------------------------

/// Reads "p cnf n m" plus m zero-terminated clauses. Comment lines start with
/// 'c'; a clause may span lines. Variables stay 1-based in the result.
RawCnf parse_dimacs(std::string_view text);
RawCnf read_dimacs(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Instance files (JSON, format_version 1)
// ---------------------------------------------------------------------------

inline constexpr int kFormatVersion = 1;

struct ReductionMeta {
  std::map<std::string, std::size_t> state_table;
  std::map<std::string, std::size_t> matrix_table;
  Rational p;
  std::string formula_digest;
  CnfFormula formula;
};

struct InstanceFile {
  Instance instance;
  std::optional<ReductionMeta> reduction;
};

InstanceFile from_artifact(const ReductionArtifact& art);

/// Rebuilds the artifact from reduction metadata. Throws FormatError when the
/// file has none or when the metadata and matrices disagree.
ReductionArtifact to_artifact(const InstanceFile& file);

std::string write_instance(const InstanceFile& file);
void write_instance(const InstanceFile& file, const std::filesystem::path& path);

/// Parses and re-validates; throws FormatError or InvalidInstance.
InstanceFile read_instance(std::string_view text);
InstanceFile read_instance_file(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Plan files: one line of 0-based indices, '#' comment lines.
// ---------------------------------------------------------------------------

Plan parse_plan(std::string_view text);
Plan read_plan(const std::filesystem::path& path);
std::string format_plan(const Plan& plan, std::string_view comment = {});
void write_plan(const Plan& plan, const std::filesystem::path& path, std::string_view comment = {});

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace atm::io
