#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "graphzeta/errors.hpp"

using gz::Complex;
using nlohmann::json;

namespace {

struct Run {
  int status;
  std::string text;
  json doc() const { return json::parse(text); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  const int status = gz::cli::run(args, out);
  return {status, out.str()};
}

}  // namespace

TEST_CASE("complex parsing") {
  using gz::cli::parse_complex;
  CHECK(parse_complex("2") == Complex(2, 0));
  CHECK(parse_complex("0.3+0.2i") == Complex(0.3, 0.2));
  CHECK(parse_complex("-i") == Complex(0, -1));
  CHECK(parse_complex("i") == Complex(0, 1));
  CHECK(parse_complex("1e-3-4e-2i") == Complex(1e-3, -4e-2));
  CHECK(parse_complex("0.5+0i") == Complex(0.5, 0));
  CHECK(parse_complex("-2.5e+1i") == Complex(0, -25));
  CHECK_THROWS_AS(parse_complex(""), gz::ParseError);
  CHECK_THROWS_AS(parse_complex("abc"), gz::ParseError);
  CHECK_THROWS_AS(parse_complex("1+2k"), gz::ParseError);
}

TEST_CASE("region omega_w reports disconnection") {
  const Run r = run({"region", "--kind", "omega_w", "--w", "0.5+0i", "--d", "2"});
  REQUIRE(r.status == 0);
  const json doc = r.doc();
  CHECK(doc["schema"] == "graphzeta/1");
  CHECK(doc["disconnects"] == true);
  CHECK(doc["oracle_disconnects"] == true);
  CHECK(doc["points"].size() > 10);
  CHECK(doc.contains("provenance"));
}

TEST_CASE("verify-det on K4") {
  const Run r = run({"verify-det", "--fixture", "K4", "--u", "0", "--M", "30", "--zgrid", "20"});
  REQUIRE(r.status == 0);
  const json doc = r.doc();
  CHECK(doc["samples"].size() == 20);
  CHECK(doc["max_residual"].get<double>() <= 1e-8);
  CHECK(doc["provenance"]["truncation_M"] == 30);
}

TEST_CASE("eval on the Z-lattice closed form") {
  const Run r = run({"eval", "--fixture", "clair", "--z", "2", "--u", "0"});
  REQUIRE(r.status == 0);
  const json doc = r.doc();
  CHECK(doc["value"]["re"].get<double>() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(doc["value"]["im"].get<double>() == doctest::Approx(0.0));
}

TEST_CASE("eval on C4 against the closed form") {
  const Run r = run({"eval", "--fixture", "C4", "--z", "0.3", "--u", "0", "--M", "40"});
  REQUIRE(r.status == 0);
  CHECK(r.doc()["value"]["re"].get<double>() == doctest::Approx(std::pow(1 - std::pow(0.3, 4), -0.5)).epsilon(1e-12));
}

TEST_CASE("series with the enumeration oracle") {
  const Run r = run({"series", "--fixture", "K4", "--u", "0.5", "--M", "6", "--oracle"});
  REQUIRE(r.status == 0);
  for (const auto& row : r.doc()["coefficients"]) {
    CHECK(row["N"]["re"].get<double>() == doctest::Approx(row["oracle_N"]["re"].get<double>()));
    CHECK(row["N"]["im"].get<double>() == doctest::Approx(row["oracle_N"]["im"].get<double>()));
  }
  CHECK(r.doc()["coefficients"][3]["N"]["re"].get<double>() == doctest::Approx(9.1875));
}

TEST_CASE("exit codes and error records") {
  const Run domain = run({"eval", "--fixture", "K4", "--z", "1", "--u", "0"});
  CHECK(domain.status == 2);
  CHECK(domain.doc()["error"]["kind"] == "DomainError");

  setenv("ZETA_BUDGET", "10", 1);
  const Run budget = run({"series", "--fixture", "petersen", "--M", "8", "--oracle"});
  unsetenv("ZETA_BUDGET");
  CHECK(budget.status == 3);
  CHECK(budget.doc()["error"]["kind"] == "BudgetExceeded");

  const Run unknown = run({"series", "--fixture", "nonsense"});
  CHECK(unknown.status == 1);
  CHECK(unknown.doc()["error"]["kind"] == "ParseError");

  const Run usage = run({"eval", "--bogus"});
  CHECK(usage.status == 1);
  CHECK(usage.doc().contains("error"));
}

TEST_CASE("identical inputs give byte-identical output") {
  const std::vector<std::string> args{"verify-funceq", "--fixture", "petersen", "--u", "0.2", "--zgrid", "10"};
  const Run a = run(args), b = run(args);
  REQUIRE(a.status == 0);
  CHECK(a.text == b.text);
  CHECK(a.doc()["max_difference"].get<double>() <= 1e-8);
  const std::vector<std::string> spec{"spectrum", "--fixture", "clair", "--grid", "64", "--format", "csv"};
  CHECK(run(spec).text == run(spec).text);
}

TEST_CASE("csv output and output files") {
  const Run r = run({"spectrum", "--fixture", "K4", "--grid", "16", "--format", "csv"});
  REQUIRE(r.status == 0);
  std::istringstream in(r.text);
  std::string header;
  std::getline(in, header);
  CHECK(header == "lambda,F");
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  CHECK(lines == 17);

  const std::string path = "graphzeta_cli_test_output.json";
  const Run f = run({"fixtures", "--output", path});
  CHECK(f.status == 0);
  CHECK(f.text.empty());
  std::ifstream file(path);
  const json doc = json::parse(file);
  CHECK(doc["command"] == "fixtures");
  std::remove(path.c_str());
}

TEST_CASE("functional equation check refuses irregular graphs") {
  const Run r = run({"verify-funceq", "--fixture", "path:4"});
  CHECK(r.status == 2);
}
