#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "gcrit/cli.hpp"
#include "gcrit/errors.hpp"

using namespace gcrit;

namespace {

UsageError::Kind usage_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const UsageError& e) {
    return e.kind();
  }
  FAIL("expected a UsageError");
  return UsageError::Kind::InvalidValue;
}

int run(const std::string& args) {
  const std::string command = std::string(GCRIT_BINARY) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string capture(const std::string& args) {
  const std::string command = std::string(GCRIT_BINARY) + " " + args + " 2>/dev/null";
  std::string out;
  if (FILE* pipe = popen(command.c_str(), "r")) {
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    pclose(pipe);
  }
  return out;
}

RunRequest request(const std::string& potential, int ell, std::vector<std::string> methods, int n) {
  RunRequest r;
  r.potential = potential;
  r.ell = ell;
  r.methods = std::move(methods);
  r.n_max = n;
  return r;
}

}  // namespace

TEST_CASE("potential selectors") {
  CHECK(select_potential("sw").label() == "SW");
  CHECK(select_potential("Square_Well").label() == "SW");
  CHECK(select_potential("exp").label() == "E");
  CHECK(select_potential("exponential").label() == "E");
  CHECK(select_potential("PE").label() == "PE");
  CHECK(usage_kind([] { select_potential("gauss"); }) == UsageError::Kind::UnknownPotential);
  CHECK(usage_kind([] { select_potential("file:/nonexistent/table.dat"); }) == UsageError::Kind::UnknownPotential);
}

TEST_CASE("method lists") {
  CHECK(parse_methods("alpha,omega,alpha") == std::vector<std::string>{"alpha", "omega"});
  CHECK(parse_methods("chadan").size() == 1);
  CHECK(usage_kind([] { parse_methods("none"); }) == UsageError::Kind::UnknownMethod);
  CHECK(usage_kind([] { parse_methods(""); }) == UsageError::Kind::UnknownMethod);
  CHECK(usage_kind([] { parse_format("xml"); }) == UsageError::Kind::InvalidValue);
  RunRequest bad;
  bad.n_max = 0;
  CHECK_THROWS_AS(bad.validate(), UsageError);
}

TEST_CASE("bounds records") {
  const auto k = cmd_bounds(request("exponential", 0, {"kellogg"}, 4));
  REQUIRE(k.size() >= 4);
  const double expected[] = {1.5323, 1.4480, 1.4459, 1.4458};
  for (int n = 0; n < 4; ++n) {
    CHECK(k[n].method == "kellogg");
    CHECK(k[n].n == n + 1);
    CHECK(k[n].bound_type == BoundType::upper);
    CHECK(k[n].provenance == Provenance::sequence);
    CHECK(std::abs(k[n].value - expected[n]) < 1.5e-4);
  }
  const auto ao = cmd_bounds(request("sw", 0, {"alpha", "omega"}, 1));
  REQUIRE(ao.size() == 4);
  CHECK(ao[0].bound_type == BoundType::lower);
  CHECK(ao[0].value == doctest::Approx(2.4).epsilon(1e-10));
  CHECK(ao[1].value == doctest::Approx(2.5).epsilon(1e-10));
  CHECK(ao[2].method == "bracket");
  CHECK(ao[2].value == ao[0].value);
  CHECK(ao[3].value == ao[1].value);
}

TEST_CASE("every emitted upper bound lies above every lower bound") {
  const auto all = cmd_bounds(request("pe", 1, known_methods(), 3));
  double lower = 0.0;
  double upper = INFINITY;
  for (const auto& r : all) {
    CHECK(std::isfinite(r.value));
    if (r.bound_type == BoundType::lower) lower = std::max(lower, r.value);
    if (r.bound_type == BoundType::upper) upper = std::min(upper, r.value);
  }
  CHECK(lower > 0.0);
  CHECK(lower <= upper);
}

TEST_CASE("oracle records") {
  const auto sw = cmd_oracle(request("sw", 1, {"power"}, 4));
  REQUIRE(sw.size() == 2);
  CHECK(sw[0].provenance == Provenance::oracle);
  CHECK(sw[1].provenance == Provenance::closed_form);
  CHECK(std::abs(sw[0].value / sw[1].value - 1.0) < 1e-8);
  const auto pe = cmd_oracle(request("pe", 0, {"power"}, 4));
  REQUIRE(pe.size() == 1);
  CHECK(std::abs(pe[0].value - 0.67668) < 1.5e-5);
}

TEST_CASE("record formats") {
  const auto records = cmd_bounds(request("sw", 0, {"alpha", "omega"}, 2));
  const auto csv = format_records(records, OutputFormat::csv);
  CHECK(csv.rfind("potential,ell,method,n,value,bound_type,provenance\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(records.size()) + 1);
  const auto json = nlohmann::json::parse(format_records(records, OutputFormat::json));
  REQUIRE(json.size() == records.size());
  CHECK(json[0]["method"] == "alpha");
  CHECK(json[0]["bound_type"] == "lower");
  CHECK(json[0]["value"].get<double>() == records[0].value);
  CHECK(format_records(records, OutputFormat::text) == format_records(records, OutputFormat::text));
}

TEST_CASE("tolerance from the environment") {
  ::unsetenv("GCRIT_TOL");
  CHECK(scheme_from_environment().rel_tolerance == QuadratureScheme{}.rel_tolerance);
  ::setenv("GCRIT_TOL", "1e-9", 1);
  CHECK(scheme_from_environment().rel_tolerance == 1e-9);
  RunRequest r;
  CHECK(r.scheme().rel_tolerance == 1e-9);
  r.tolerance = 1e-11;
  CHECK(r.scheme().rel_tolerance == 1e-11);
  ::unsetenv("GCRIT_TOL");
}

TEST_CASE("binary exit codes and stable output") {
  CHECK(run("bounds --potential sw --ell 0 --method alpha,omega --iters 1") == 0);
  CHECK(run("bounds --potential sw --ell 0 --method none") == 1);
  CHECK(run("bounds --potential gauss") == 1);
  CHECK(run("bounds --ell -1") == 1);
  CHECK(run("frobnicate") == 1);
  CHECK(run("reproduce --table 9") == 1);
  CHECK(run("reproduce --table 4") == 0);
  CHECK(run("reproduce --table 1") == 3);
  CHECK(run("reproduce --table 5") == 0);
  CHECK(run("oracle --potential sw --ell 1") == 0);
  const auto first = capture("bounds --potential exp --ell 0 --method kellogg,alpha,omega --format csv");
  const auto second = capture("bounds --potential exp --ell 0 --method kellogg,alpha,omega --format csv");
  CHECK(!first.empty());
  CHECK(first == second);
  const auto table = capture("reproduce --table 2");
  CHECK(table.find("52.105") != std::string::npos);
}

TEST_CASE("tabulated potential from a file") {
  const std::string path = "test_cli_table.dat";
  {
    std::ofstream out(path);
    out << "# radius value\n";
    for (int i = 0; i <= 40; ++i) {
      const double r = 0.1 * i;
      out << r << " " << std::exp(-r) << "\n";
    }
  }
  const auto records = cmd_oracle(request("file:" + path, 0, {"power"}, 4));
  REQUIRE(records.size() == 1);
  CHECK(std::isfinite(records[0].value));
  CHECK(records[0].value > 1.4458);
  std::remove(path.c_str());
}
