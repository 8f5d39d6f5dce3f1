#include "atm/generators.hpp"
#include "atm/io.hpp"

#include <doctest.h>

#include <algorithm>

using namespace atm;

namespace {

bool throws_with(auto&& f, const std::string& needle) {
  try {
    f();
  } catch (const std::exception& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

const char* kTwoState = R"({
  "format_version": 1,
  "numeric_mode": "float",
  "d": 2, "K": 1, "N": 1, "target": 1,
  "start": [1, 0],
  "matrices": [[[0.25, 0.75], [0, 1]]]
})";

}  // namespace

TEST_CASE("parse_dimacs") {
  SUBCASE("comments, multi-line clauses, percent terminator") {
    const RawCnf cnf = io::parse_dimacs("c hello\np cnf 3 2\n1 -2\n 3 0\n-1 0\n%\n0\n");
    CHECK(cnf.n == 3);
    CHECK(cnf.clauses == std::vector<std::vector<int>>{{1, -2, 3}, {-1}});
  }
  SUBCASE("errors") {
    CHECK(throws_with([] { io::parse_dimacs("p cnf 1\n1 0\n"); }, "malformed header"));
    CHECK(throws_with([] { io::parse_dimacs("p cnf 2 1\n3 0\n"); }, "exceeds n = 2"));
    CHECK(throws_with([] { io::parse_dimacs("p cnf 2 1\n1 2\n"); }, "terminating 0"));
    CHECK(throws_with([] { io::parse_dimacs("p cnf 2 2\n1 2 0\n"); }, "2"));
    CHECK(throws_with([] { io::parse_dimacs("1 2 0\n"); }, "before 'p cnf'"));
    CHECK(throws_with([] { io::parse_dimacs("c nothing\n"); }, "missing 'p cnf'"));
  }
}

TEST_CASE("instance files") {
  SUBCASE("float round trip is lossless") {
    gen::Rng rng(3);
    const Instance inst = gen::random_float_instance(rng, 4, 3, 5);
    const auto back = io::read_instance(io::write_instance(io::InstanceFile{inst, std::nullopt}));
    CHECK(back.instance.floating().matrices.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
      const auto a = back.instance.floating().matrices[k].entries(), b = inst.floating().matrices[k].entries();
      CHECK(std::equal(a.begin(), a.end(), b.begin(), b.end()));
    }
    CHECK(back.instance.floating().start.weights().size() == 4);
    CHECK_FALSE(back.reduction.has_value());
  }
  SUBCASE("exact round trip with reduction metadata") {
    const CnfFormula f{4,
                       {Clause{{Literal{0, Sign::minus}, Literal{1, Sign::plus}, Literal{2, Sign::minus}}},
                        Clause{{Literal{1, Sign::plus}, Literal{2, Sign::plus}, Literal{3, Sign::minus}}}}};
    const ReductionArtifact art = encode_reduction(f);
    const std::string text = io::write_instance(io::from_artifact(art));
    CHECK(text.find("\"p\": \"1/6\"") != std::string::npos);
    const auto file = io::read_instance(text);
    REQUIRE(file.reduction.has_value());
    CHECK(file.reduction->formula == f);
    CHECK(file.reduction->formula_digest == formula_digest(f));
    const ReductionArtifact again = io::to_artifact(file);
    CHECK(again.state_table == art.state_table);
    CHECK(again.matrix_table == art.matrix_table);
    CHECK(again.p == art.p);
    for (std::size_t k = 0; k < art.instance.matrix_count(); ++k) {
      const auto a = again.instance.exact().matrices[k].entries(), b = art.instance.exact().matrices[k].entries();
      CHECK(std::equal(a.begin(), a.end(), b.begin(), b.end()));
      CHECK(again.instance.label(k) == art.instance.label(k));
    }
  }
  SUBCASE("start defaults to the unit vector on state 0") {
    std::string text = kTwoState;
    text.replace(text.find("\"start\": [1, 0],"), 17, "");
    const auto file = io::read_instance(text);
    CHECK(file.instance.floating().start.weights()[0] == 1.0);
  }
  SUBCASE("float rows within tolerance are accepted") {
    std::string text = kTwoState;
    text.replace(text.find("0.75"), 4, "0.7499999999");
    CHECK_NOTHROW(io::read_instance(text));
    text = kTwoState;
    text.replace(text.find("0.75"), 4, "0.73");
    CHECK(throws_with([&] { io::read_instance(text); }, "row sum"));
  }
  SUBCASE("exact numbers are fraction strings") {
    const char* ok = R"({"format_version": 1, "numeric_mode": "exact", "d": 2, "K": 1, "N": 1, "target": 0,
                         "matrices": [[["1/3", "2/3"], [0, 1]]]})";
    CHECK(io::read_instance(ok).instance.exact().matrices[0].at(0, 1) == Rational(2, 3));
    const char* zero_den = R"({"format_version": 1, "numeric_mode": "exact", "d": 1, "K": 1, "N": 1, "target": 0,
                               "matrices": [[["1/0"]]]})";
    CHECK_THROWS_AS(io::read_instance(zero_den), FormatError);
  }
  SUBCASE("version, shape and JSON errors") {
    std::string text = kTwoState;
    text.replace(text.find("\"format_version\": 1"), 19, "\"format_version\": 2");
    CHECK(throws_with([&] { io::read_instance(text); }, "format_version"));
    text = kTwoState;
    text.replace(text.find("\"K\": 1"), 6, "\"K\": 2");
    CHECK(throws_with([&] { io::read_instance(text); }, "K = 2"));
    CHECK_THROWS_AS(io::read_instance("{"), FormatError);
    CHECK_THROWS_AS(io::read_instance("[]"), FormatError);
    CHECK_THROWS_AS(io::to_artifact(io::read_instance(kTwoState)), FormatError);
  }
  SUBCASE("metadata that disagrees with the matrices is rejected") {
    const CnfFormula f{3, {Clause{{Literal{0, Sign::minus}, Literal{1, Sign::minus}, Literal{2, Sign::minus}}}}};
    auto file = io::from_artifact(encode_reduction(f));
    file.reduction->formula.clauses[0].literals[0].epsilon = Sign::plus;
    CHECK_THROWS(io::to_artifact(file));
  }
}

TEST_CASE("plan files") {
  CHECK(io::parse_plan("# comment\n0 3 1\n") == Plan{{0, 3, 1}});
  CHECK(io::parse_plan("\n") == Plan{});
  CHECK_THROWS_AS(io::parse_plan("0 -1\n"), FormatError);
  CHECK_THROWS_AS(io::parse_plan("0 1\n2\n"), FormatError);
  const Plan p{{4, 0, 2}};
  CHECK(io::parse_plan(io::format_plan(p, "value 1/2")) == p);
  CHECK(io::format_plan(p, "value 1/2").rfind("# value 1/2\n", 0) == 0);
}
