#include "atm/io.hpp"

#include <fmt/format.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace atm::io {

using nlohmann::json;

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
  out << text;
  if (!out) throw Error(fmt::format("write to '{}' failed", path.string()));
}

InstanceFile from_artifact(const ReductionArtifact& art) {
  return InstanceFile{art.instance, ReductionMeta{art.state_table, art.matrix_table, art.p,
                                                  formula_digest(art.formula), art.formula}};
}

ReductionArtifact to_artifact(const InstanceFile& file) {
  if (!file.reduction) throw FormatError("instance file carries no reduction_meta");
  const auto& meta = *file.reduction;
  if (formula_digest(meta.formula) != meta.formula_digest) {
    throw FormatError("reduction_meta formula does not match its digest");
  }
  ReductionArtifact art = artifact_from_instance(file.instance, meta.formula);
  if (art.state_table != meta.state_table || art.matrix_table != meta.matrix_table || art.p != meta.p) {
    throw FormatError("reduction_meta tables do not match the embedded formula");
  }
  return art;
}

namespace {

std::string number_text(const Rational& x) { return json(format_rational(x)).dump(); }
std::string number_text(double x) { return format_double(x); }

template <class T>
std::string vector_text(std::span<const T> values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += number_text(values[i]);
  }
  return out + "]";
}

std::string table_text(const std::map<std::string, std::size_t>& table, const std::string& indent) {
  // Listed in index order so the file reads like the layout.
  std::vector<std::pair<std::size_t, std::string>> entries;
  for (const auto& [name, index] : table) entries.emplace_back(index, name);
  std::sort(entries.begin(), entries.end());
  std::string out = "{";
  for (std::size_t e = 0; e < entries.size(); ++e) {
    out += e == 0 ? "\n" : ",\n";
    out += fmt::format("{}  {}: {}", indent, json(entries[e].second).dump(), entries[e].first);
  }
  return out + "\n" + indent + "}";
}

std::string formula_text(const CnfFormula& f, const std::string& indent) {
  std::string out = fmt::format("{{\n{0}  \"n\": {1},\n{0}  \"clauses\": [", indent, f.n);
  for (std::size_t j = 0; j < f.m(); ++j) {
    out += j == 0 ? "\n" : ",\n";
    out += indent + "    [";
    for (std::size_t l = 0; l < 3; ++l) {
      const auto& lit = f.clauses[j].literals[l];
      out += fmt::format("{}[{}, \"{}\"]", l == 0 ? "" : ", ", lit.variable, to_char(lit.epsilon));
    }
    out += "]";
  }
  return out + "\n" + indent + "  ]\n" + indent + "}";
}

template <class T>
T read_number(const json& value, NumericMode mode) {
  if constexpr (std::is_same_v<T, Rational>) {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.dump());
    throw FormatError(fmt::format("exact-mode number must be a \"num/den\" string, got {}", value.dump()));
  } else {
    (void)mode;
    if (value.is_number()) return value.get<double>();
    if (value.is_string()) return parse_scalar(value.get<std::string>(), NumericMode::floating).floating();
    throw FormatError(fmt::format("expected a number, got {}", value.dump()));
  }
}

std::size_t read_count(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_unsigned()) {
    throw FormatError(fmt::format("field '{}' must be a non-negative integer", key));
  }
  return doc[key].get<std::size_t>();
}

const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) throw FormatError(fmt::format("missing field '{}'", key));
  return doc[key];
}

template <class T>
InstanceData<T> read_data(const json& doc, NumericMode mode) {
  InstanceData<T> data;
  data.d = read_count(doc, "d");
  const std::size_t k = read_count(doc, "K");
  data.horizon = read_count(doc, "N");
  data.target = read_count(doc, "target");

  const json& matrices = require(doc, "matrices");
  if (!matrices.is_array() || matrices.size() != k) {
    throw FormatError(fmt::format("'matrices' must hold K = {} matrices", k));
  }
  std::vector<std::string> labels(k);
  if (doc.contains("labels")) {
    const json& l = doc["labels"];
    if (!l.is_array() || l.size() != k) throw FormatError(fmt::format("'labels' must hold K = {} strings", k));
    for (std::size_t i = 0; i < k; ++i) labels[i] = l[i].get<std::string>();
  }
  for (std::size_t idx = 0; idx < k; ++idx) {
    const json& rows = matrices[idx];
    if (!rows.is_array() || rows.size() != data.d) {
      throw FormatError(fmt::format("matrix {} must have d = {} rows", idx, data.d));
    }
    std::vector<T> entries;
    entries.reserve(data.d * data.d);
    for (std::size_t i = 0; i < data.d; ++i) {
      if (!rows[i].is_array() || rows[i].size() != data.d) {
        throw FormatError(fmt::format("matrix {} row {} must have d = {} entries", idx, i, data.d));
      }
      for (const auto& x : rows[i]) entries.push_back(read_number<T>(x, mode));
    }
    data.matrices.emplace_back(data.d, std::move(entries), std::move(labels[idx]));
  }

  if (doc.contains("start")) {
    const json& start = doc["start"];
    if (!start.is_array() || start.size() != data.d) {
      throw FormatError(fmt::format("'start' must have d = {} entries", data.d));
    }
    std::vector<T> weights;
    for (const auto& x : start) weights.push_back(read_number<T>(x, mode));
    data.start = Distribution<T>(std::move(weights));
  } else if (data.d > 0) {
    data.start = Distribution<T>::unit(data.d, 0);
  }
  return data;
}

std::map<std::string, std::size_t> read_table(const json& value, const char* name) {
  if (!value.is_object()) throw FormatError(fmt::format("'{}' must be an object", name));
  std::map<std::string, std::size_t> table;
  for (const auto& [key, index] : value.items()) {
    if (!index.is_number_unsigned()) throw FormatError(fmt::format("'{}' entry '{}' must be an index", name, key));
    table[key] = index.get<std::size_t>();
  }
  return table;
}

CnfFormula read_formula(const json& value) {
  CnfFormula f;
  f.n = read_count(value, "n");
  for (const auto& c : require(value, "clauses")) {
    if (!c.is_array() || c.size() != 3) throw FormatError("formula clauses must have three literals");
    Clause clause;
    for (std::size_t l = 0; l < 3; ++l) {
      const auto& lit = c[l];
      if (!lit.is_array() || lit.size() != 2 || !lit[0].is_number_unsigned() || !lit[1].is_string()) {
        throw FormatError("formula literal must be [variable, \"+\"|\"-\"]");
      }
      const auto sign = lit[1].get<std::string>();
      if (sign != "+" && sign != "-") throw FormatError(fmt::format("bad sign '{}'", sign));
      clause.literals[l] = Literal{lit[0].get<std::size_t>(), sign == "+" ? Sign::plus : Sign::minus};
    }
    f.clauses.push_back(clause);
  }
  return f;
}

}  // namespace

std::string write_instance(const InstanceFile& file) {
  const Instance& inst = file.instance;
  std::string out = "{\n";
  out += fmt::format("  \"format_version\": {},\n", kFormatVersion);
  out += fmt::format("  \"numeric_mode\": \"{}\",\n", to_string(inst.mode()));
  out += fmt::format("  \"d\": {},\n  \"K\": {},\n  \"N\": {},\n  \"target\": {},\n", inst.d(), inst.matrix_count(),
                     inst.horizon(), inst.target());
  inst.visit([&](const auto& data) {
    using T = typename std::decay_t<decltype(data)>::value_type;
    out += "  \"start\": " + vector_text<T>(data.start.weights()) + ",\n";
    out += "  \"matrices\": [";
    for (std::size_t k = 0; k < data.matrices.size(); ++k) {
      out += k == 0 ? "\n    [" : ",\n    [";
      for (std::size_t i = 0; i < data.d; ++i) {
        out += i == 0 ? "\n      " : ",\n      ";
        out += vector_text<T>(data.matrices[k].row(i));
      }
      out += "\n    ]";
    }
    out += "\n  ]";
    bool labelled = false;
    for (const auto& m : data.matrices) labelled = labelled || !m.label().empty();
    if (labelled) {
      out += ",\n  \"labels\": [";
      for (std::size_t k = 0; k < data.matrices.size(); ++k) {
        out += (k == 0 ? "" : ", ") + json(data.matrices[k].label()).dump();
      }
      out += "]";
    }
  });
  if (file.reduction) {
    const auto& meta = *file.reduction;
    out += ",\n  \"reduction_meta\": {\n";
    out += "    \"state_table\": " + table_text(meta.state_table, "    ") + ",\n";
    out += "    \"matrix_table\": " + table_text(meta.matrix_table, "    ") + ",\n";
    out += "    \"p\": " + json(format_rational(meta.p)).dump() + ",\n";
    out += "    \"formula_digest\": " + json(meta.formula_digest).dump() + ",\n";
    out += "    \"formula\": " + formula_text(meta.formula, "    ") + "\n";
    out += "  }";
  }
  out += "\n}\n";
  return out;
}

void write_instance(const InstanceFile& file, const std::filesystem::path& path) {
  write_text(path, write_instance(file));
}

InstanceFile read_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(fmt::format("instance file is not valid JSON: {}", e.what()));
  }
  if (!doc.is_object()) throw FormatError("instance file must be a JSON object");
  try {
    const json& version = require(doc, "format_version");
    if (!version.is_number_integer() || version.get<int>() != kFormatVersion) {
      throw FormatError(fmt::format("unsupported format_version {}, expected {}", version.dump(), kFormatVersion));
    }
    const NumericMode mode = parse_numeric_mode(require(doc, "numeric_mode").get<std::string>());

    std::optional<Instance> instance;
    if (mode == NumericMode::exact) {
      instance.emplace(read_data<Rational>(doc, mode));
    } else {
      instance.emplace(read_data<double>(doc, mode));
    }

    std::optional<ReductionMeta> meta;
    if (doc.contains("reduction_meta")) {
      const json& r = doc["reduction_meta"];
      meta.emplace(ReductionMeta{read_table(require(r, "state_table"), "state_table"),
                                 read_table(require(r, "matrix_table"), "matrix_table"),
                                 parse_rational(require(r, "p").get<std::string>()),
                                 require(r, "formula_digest").get<std::string>(),
                                 read_formula(require(r, "formula"))});
    }
    return InstanceFile{std::move(*instance), std::move(meta)};
  } catch (const json::exception& e) {
    throw FormatError(fmt::format("malformed instance file: {}", e.what()));
  }
}

InstanceFile read_instance_file(const std::filesystem::path& path) { return read_instance(read_text(path)); }

}  // namespace atm::io
