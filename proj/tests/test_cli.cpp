#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <unistd.h>

#include "milnor/cli.hpp"

using namespace milnor;

namespace {

RunConfig make(const std::string& command, const std::string& germ) {
  RunConfig c;
  c.command = command;
  c.germ = germ;
  return c;
}

int run(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  args.insert(args.begin(), "milnor-kit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST_CASE("direction parsing") {
  CHECK(parse_direction("1,2,3") == RationalVector{1, 2, 3});
  CHECK(parse_direction(" 1/2 , -3 ") == RationalVector{Rational(1, 2), -3});
  CHECK_THROWS_AS(parse_direction("1,,2"), ConfigError);
  CHECK_THROWS_AS(parse_direction("a"), ConfigError);
  CHECK_THROWS_AS(parse_direction("0,0"), ConfigError);
  CHECK_THROWS_AS(parse_direction("1/0"), ConfigError);
}

TEST_CASE("config files") {
  RunConfig c = make("polar", "x^2");
  apply_config_text("# oracle\nepsilon = 0.2\ngrid=16\neta_slice = 1e-6 # trailing\n\ncap = 40\ndirection = 1,2\n", c);
  CHECK(c.oracle_cfg.epsilon == 0.2);
  CHECK(c.oracle_cfg.grid == 16);
  CHECK(c.oracle_cfg.eta_slice == 1e-6);
  CHECK(c.cap == 40);
  CHECK(c.direction == RationalVector{1, 2});
  CHECK_THROWS_AS(apply_config_text("foo = 1", c), ConfigError);
  CHECK_THROWS_AS(apply_config_text("epsilon 1", c), ConfigError);
  CHECK_THROWS_AS(apply_config_text("grid = 1.5", c), ConfigError);
  CHECK_THROWS_AS(apply_config_file("/nonexistent/milnor.cfg", c), ConfigError);
}

TEST_CASE("FNV-1a") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
}

TEST_CASE("cache keys cover the configuration") {
  RunConfig a = make("chi", "x^2 + y^2");
  RunConfig b = a;
  CHECK(cache_key_text(a, "x^2 + y^2") == cache_key_text(b, "x^2 + y^2"));
  b.oracle_cfg.epsilon = 0.2;
  CHECK(cache_key_text(a, "x^2 + y^2") != cache_key_text(b, "x^2 + y^2"));
  b = a;
  b.command = "degree";
  CHECK(cache_key_text(a, "x^2 + y^2") != cache_key_text(b, "x^2 + y^2"));
  b = a;
  b.oracle = true;
  CHECK(cache_key_text(a, "x^2 + y^2") != cache_key_text(b, "x^2 + y^2"));
  b = a;
  b.cap = 10;
  CHECK(cache_key_text(a, "x^2 + y^2") != cache_key_text(b, "x^2 + y^2"));
}

TEST_CASE("degree command") {
  auto r = execute(make("degree", "x^2+y^2"));
  CHECK(r.exit_code == 0);
  CHECK(r.report["results"]["elk"]["degree"] == 1);
  CHECK(r.report["input"]["germ"] == "x^2 + y^2");
  CHECK(r.report["schema_version"] == kSchemaVersion);

  RunConfig c = make("degree", "x^2-y^2");
  c.oracle = true;
  r = execute(c);
  CHECK(r.exit_code == 0);
  CHECK(r.report["results"]["elk"]["degree"] == -1);
  CHECK(r.report["results"]["oracle"]["degree"] == -1);
  CHECK(r.report["results"]["agree"] == true);

  r = execute(make("degree", "(x-y)^2"));
  CHECK(r.exit_code == 2);
  CHECK(r.report["error"]["kind"] == "not_isolated");
  CHECK_FALSE(r.report.contains("results"));

  r = execute(make("degree", "x^2 +"));
  CHECK(r.exit_code == 1);
  CHECK(r.report["error"]["kind"] == "parse");

  r = execute(make("degree", "x^40"));
  CHECK(r.exit_code == 0);
  RunConfig capped = make("degree", "x^40");
  capped.cap = 8;
  CHECK(execute(capped).exit_code == 3);
}

TEST_CASE("chi command") {
  auto r = execute(make("chi", "x^2*y - y^4 - y*z^3"));
  CHECK(r.exit_code == 0);
  CHECK(r.report["results"]["route"] == "weighted_homogeneous");
  CHECK(r.report["results"]["euler"]["chi_fibre_neg"] == 2);
  CHECK(r.report["results"]["euler"]["chi_fibre_pos"] == 2);

  r = execute(make("chi", "x^3 + x^2*z - y^2"));
  CHECK(r.report["results"]["euler"]["chi_fibre_neg"] == 0);
  CHECK(r.report["results"]["euler"]["chi_fibre_pos"] == 2);

  r = execute(make("chi", "x^2 + y^2"));
  CHECK(r.report["results"]["euler"]["chi_fibre_neg"] == 0);
  CHECK(r.report["results"]["euler"]["chi_fibre_pos"] == 0);

  r = execute(make("chi", "x^2 + y^2 + x^3*y"));
  CHECK(r.exit_code == 0);
  CHECK(r.report["results"]["route"] == "isolated");

  r = execute(make("chi", "y^2 + x^3*y^2"));
  CHECK(r.exit_code == 2);
  CHECK(r.report["error"]["message"].get<std::string>().find("polar") != std::string::npos);

  RunConfig c = make("chi", "x^2 - y^2");
  c.d = 2;
  r = execute(c);
  CHECK(r.exit_code == 0);
  CHECK(r.report["results"]["route"] == "radial_pair");
  CHECK(r.report["results"]["euler"]["chi_fibre_pos"] == 2);
}

TEST_CASE("szafraniec command") {
  auto r = execute(make("szafraniec", "x^3 + x^2*z - y^2"));
  CHECK(r.exit_code == 0);
  CHECK(r.report["results"]["pair"]["p"] == 6);
  CHECK(r.report["results"]["pair"]["omega"] == "1/6*x^6 + 1/6*z^6 + 1/4*y^4");
  CHECK(execute(make("szafraniec", "x^2 + y^2 + x^3*y")).exit_code == 2);
}

TEST_CASE("polar command") {
  auto r = execute(make("polar", "y^2 - z*x^2"));
  CHECK(r.exit_code == 0);
  const auto& res = r.report["results"];
  CHECK(res["lambda_plus"] == 0);
  CHECK(res["lambda_minus"] == -2);
  CHECK(res["gamma_plus"] == -1);
  CHECK(res["gamma_minus"] == 1);
  CHECK(res["chi_fibre_neg"] == 2);
  CHECK(res["chi_fibre_pos"] == 0);

  RunConfig c = make("polar", "y^2 - z*x^2");
  c.direction = RationalVector{1, 1};
  CHECK(execute(c).exit_code == 1);
  CHECK(execute(make("polar", "x^3")).exit_code == 2);
}

TEST_CASE("le-iomdine with a small exponent") {
  RunConfig c = make("le-iomdine", "y^2 - z*x^2");
  c.k = 2;
  const auto r = execute(c);
  // k = 2 passes the isolation screen, so the run completes with failing identities.
  CHECK(r.exit_code == 2);
  CHECK(r.report["results"]["all_pass"] == false);
}

TEST_CASE("front end") {
  std::string out, err;
  CHECK(run({"degree", "x^2+y^2"}, &out) == 0);
  CHECK(out.find("degree: 1") != std::string::npos);
  CHECK(run({"degree", "--json", "--no-cache", "x^2+y^2"}, &out) == 0);
  CHECK(Json::parse(out)["results"]["elk"]["degree"] == 1);
  CHECK(run({"degree", "(x-y)^2"}, &out, &err) == 2);
  CHECK(err.find("not_isolated") != std::string::npos);
  CHECK(run({"frobnicate", "x"}, &out, &err) == 1);
  CHECK(run({"degree"}, &out, &err) == 1);
  CHECK(run({"degree", "--k", "two", "x"}, &out, &err) == 1);
  CHECK(run({"polar", "--direction", "1,a", "x^2+y^2"}, &out, &err) == 1);
  CHECK(run({"degree", "--vars", "y,x", "--json", "x^2 - y^3"}, &out) == 0);
  CHECK(Json::parse(out)["input"]["variables"] == Json::array({"y", "x"}));
  CHECK(run({"--help"}, &out) == 0);
  CHECK(run({"chi", "--timing", "--json", "x^2+y^2"}, &out) == 0);
  CHECK(Json::parse(out).contains("timing"));
  CHECK(run({"chi", "--json", "x^2+y^2"}, &out) == 0);
  CHECK_FALSE(Json::parse(out).contains("timing"));
}

TEST_CASE("cached and fresh runs are byte identical") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("milnor-kit-test-cache-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  ::setenv("MILNOR_KIT_CACHE", dir.c_str(), 1);
  std::string fresh, first, second;
  CHECK(run({"chi", "--json", "--no-cache", "x^3 + x^2*z - y^2"}, &fresh) == 0);
  CHECK(run({"chi", "--json", "x^3 + x^2*z - y^2"}, &first) == 0);
  CHECK(run({"chi", "--json", "x^3 + x^2*z - y^2"}, &second) == 0);
  CHECK(fresh == first);
  CHECK(first == second);
  CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}) == 1);
  // Different config, different entry.
  CHECK(run({"chi", "--json", "--cap", "40", "x^3 + x^2*z - y^2"}, &second) == 0);
  CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}) == 2);
  CHECK(run({"degree", "--json", "(x-y)^2"}, &first) == 2);
  CHECK(run({"degree", "--json", "(x-y)^2"}, &second) == 2);
  CHECK(first == second);
  ::unsetenv("MILNOR_KIT_CACHE");
  fs::remove_all(dir);
}

TEST_CASE("unwritable cache directory disables caching") {
  RunConfig c = make("degree", "x^2");
  c.cache_dir = "/proc/milnor-kit-cannot-write";
  const auto r = execute_cached(c);
  CHECK(r.exit_code == 0);
  CHECK(r.report["results"]["elk"]["degree"] == 1);
}

TEST_CASE("text rendering") {
  const auto r = execute(make("polar", "y^2 - z*x^3"));
  const std::string text = render_text(r.report);
  CHECK(text.find("lambda_plus: -1") != std::string::npos);
  CHECK(text.find("ok ") != std::string::npos);
}
