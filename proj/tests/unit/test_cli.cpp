#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "momentlab/cli.hpp"

using namespace momentlab;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

int count(const std::string& text, const std::string& needle) {
  int c = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++c;
  return c;
}

}  // namespace

TEST_CASE("bounds") {
  const auto r = run({"bounds", "--k", "3", "--I", "1"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["r_refined"].get<double>() >= 0.3662);
  CHECK(j["r_upper"].get<double>() >= 0.78492);
  CHECK(run({"bounds", "--k", "4", "--I", "1,3"}).code == kExitOk);
  CHECK(run({"bounds", "--k", "3", "--preset", "nae"}).code == kExitOk);
  const auto bad = run({"bounds", "--k", "3", "--I", "0,1"});
  CHECK(bad.code == kExitUsage);
  CHECK_FALSE(bad.err.empty());
  CHECK(run({"bounds", "--k", "3", "--I", "1", "--delta", "0.4"}).code == kExitUsage);
  CHECK(run({"nonsense"}).code == kExitUsage);
}

TEST_CASE("profile") {
  const auto r = run({"profile", "--k", "13", "--I", "1,8,12", "--r", "0.64", "--grid", "2001"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("\ndelta,g,gamma\n") != std::string::npos);
  CHECK(count(r.out, "# delta*=") == 3);
  const auto one = run({"profile", "--k", "3", "--I", "1", "--r", "0.3"});
  CHECK(count(one.out, "# delta*=0.333333") == 1);
  CHECK(one.out.find("\n0.000000,0,0\n") != std::string::npos);
  CHECK(run({"profile", "--k", "3", "--I", "1", "--r", "0.3", "--grid", "1"}).code == kExitUsage);
}

TEST_CASE("surface") {
  const auto r = run({"surface", "--k", "3", "--I", "1", "--delta", "0.3333333", "--r", "0.3662"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("\nmu,G,t,Gamma\n") != std::string::npos);
  const auto pos = r.out.find("# argmax mu=");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(r.out.substr(pos + 12)) == doctest::Approx(0.6667).epsilon(1e-3));
  CHECK(run({"surface", "--k", "3", "--I", "1", "--delta", "1", "--r", "0.3"}).code == kExitUsage);
  CHECK(run({"surface", "--k", "3", "--I", "1", "--delta", "0", "--r", "0.3"}).code == kExitUsage);
}

TEST_CASE("experiment") {
  const std::vector<std::string> args = {"experiment", "--k",    "3",  "--I",      "1",   "--n",     "30",
                                         "--r-min",    "0.2",    "--r-max", "1.0", "--r-step", "0.2", "--trials",
                                         "20",         "--seed", "7",  "--report-crossing"};
  const auto a = run(args);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == run(args).out);
  CHECK(count(a.out, "\n") == 2 + 5 + 1);  // comment, header, 5 rows, crossing
  CHECK(a.out.find("# crossing") != std::string::npos);
  auto zero = args;
  zero[13] = "0";
  CHECK(run(zero).code == kExitUsage);
}

TEST_CASE("verify filters") {
  const auto r = run({"verify", "--only", "oracle", "--max-n", "3"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("PASS exact oracle") != std::string::npos);
  const auto c = run({"verify", "--only", "appendix-c", "--k", "5"});
  CHECK(c.code == kExitVerifyFailed);
  CHECK(c.out.find("stage_iii") != std::string::npos);
  CHECK(run({"verify", "--only", "bogus"}).code == kExitUsage);
}

TEST_CASE("generate and solve") {
  const auto g = run({"generate", "--k", "3", "--I", "1", "--n", "12", "--m", "4", "--seed", "1"});
  REQUIRE(g.code == kExitOk);
  CHECK(g.out.rfind("CSPI 1", 0) == 0);
}
