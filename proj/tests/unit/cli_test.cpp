#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "alpha_luroth/cli.hpp"

using alpha_luroth::cli::run;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("mset JSON for Luroth") {
  const Result r = call({"mset", "--partition", "luroth", "--depth", "3"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["depth"] == 3);
  CHECK(doc["intervals"].size() == 8);
  CHECK(doc["merged"].size() == 8);
  CHECK(doc["verdict"] == "finite_union");
  CHECK(doc["count"] == 8);
  CHECK(doc["intervals"][0].contains("radius"));
  CHECK(doc["evidence"].is_array());
}

TEST_CASE("gvalues signs for Luroth") {
  const Result r = call({"gvalues", "--partition", "luroth", "-n", "7"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0] == "n,g,G,radius,sign");
  const std::string expected = "+++----";
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(rows[i + 1].back() == expected[i]);
}

TEST_CASE("dyadic cdf") {
  const Result r = call({"cdf", "--partition", "dyadic", "--eps", "all-zero", "--z", "0.25"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].rfind("0.25,0.25,", 0) == 0);
}

TEST_CASE("cdf default grid and empirical column") {
  const Result r = call({"cdf", "-p", "luroth", "--empirical", "2000", "--seed", "5"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  CHECK(rows.size() == 100);
  CHECK(rows[0] == "z,F_analytic,radius,F_empirical");
  CHECK(call({"cdf", "-p", "luroth", "--empirical", "2000", "--seed", "5"}).out == r.out);
}

TEST_CASE("expand emits JSON lines") {
  const Result r = call({"expand", "-p", "luroth", "--x", "3/7", "-n", "4"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 4);
  const json first = json::parse(rows[0]);
  CHECK(first["d"] == 2);
  CHECK(first["s"] == 0);
  const Result t = call({"theta", "-p", "luroth", "--x", "0.3", "--eps", "period:01", "-n", "30"});
  REQUIRE(t.code == 0);
  CHECK(json::parse(t.out)["max_residual"].get<double>() <= 1e-12);
}

TEST_CASE("exit codes") {
  CHECK(call({"gvalues", "-p", "nope"}).code == 2);
  CHECK(call({"gvalues", "-p", "luroth", "--tol", "0"}).code == 2);
  CHECK(call({"gvalues", "-p", "luroth", "--tol", "-1"}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({}).code == 2);
  CHECK(call({"mset", "-p", "luroth", "--depth", "25"}).code == 2);
  CHECK(call({"expand", "-p", "luroth", "--x", "2"}).code == 2);
  CHECK(call({"dim", "-p", "dyadic"}).code == 1);
  CHECK(call({"classify", "-p", "two-periodic:1/3,21/40"}).code == 0);
  CHECK(call({"classify", "-p", "two-periodic:1/3,21/40", "--strict"}).code == 3);
  CHECK(call({"classify", "-p", "luroth", "--strict"}).code == 0);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("dim CSV for a Cantor set") {
  const Result r = call({"dim", "-p", "geometric:0.4", "--kmax", "10"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  CHECK(rows.size() == 11);
  CHECK(rows[0] == "k,I,dimH_approx,dimP_approx");
}

TEST_CASE("format override and partition table") {
  const Result r = call({"gvalues", "-p", "dyadic", "-n", "3", "--format", "json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["rows"].size() == 3);
  CHECK(doc["rows"][0]["g"].is_null());
  CHECK(doc["rows"][1]["sign"] == "0");
  const Result p = call({"partition", "-p", "geometric:2/5", "-n", "4"});
  REQUIRE(p.code == 0);
  CHECK(json::parse(p.out)["rows"].size() == 4);
  CHECK(call({"gvalues", "-p", "dyadic", "--format", "xml"}).code == 2);
}

TEST_CASE("output is byte-identical across runs") {
  const std::vector<std::string> args{"classify", "-p", R"({"generator":{"two_periodic":{"ratio":"1/2","even_factor":"3/5"}}})"};
  CHECK(call(args).out == call(args).out);
}
