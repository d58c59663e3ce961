#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <fmt/format.h>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& stdin_text = "") {
  const fs::path dir = fs::temp_directory_path();
  const fs::path in = dir / fmt::format("dhym_cli_in_{}.json", ::getpid());
  std::ofstream(in) << stdin_text;
  const std::string cmd = fmt::format("\"{}\" {} < \"{}\" 2>/dev/null", DHYM_CLI, args, in.string());
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  fs::remove(in);
  return r;
}

std::string degenerate_config(double scale) {
  const double th = 2 * std::numbers::pi / 3 - std::atan(2.0);
  return fmt::format(R"({{"n": 3, "a": {:.17g}, "p": {:.17g}, "q": {:.17g}}})", std::sqrt(5.0) * std::cos(th),
                     -scale * std::sqrt(5.0) * std::sin(th), 2.0 * scale);
}

}  // namespace

TEST_CASE("analyze exit codes per verdict") {
  CHECK(run("analyze", R"({"n": 2, "a": 2, "p": 2, "q": 1})").code == 0);
  CHECK(run("analyze", degenerate_config(2.0)).code == 1);
  CHECK(run("analyze", degenerate_config(1.0)).code == 2);
  const double p = 2 * std::tan(std::numbers::pi / 3);
  CHECK(run("analyze", fmt::format(R"({{"n": 3, "a": 2, "p": {:.17g}, "q": 0}})", p)).code == 2);
  CHECK(run("analyze", "{").code == 64);
  CHECK(run("analyze", R"({"n": 2, "a": 2, "p": 2, "q": 1, "colour": "red"})").code == 64);
  CHECK(run("analyze --config /nonexistent/config.json").code == 64);
}

TEST_CASE("analyze writes JSON to --out") {
  const fs::path out = fs::temp_directory_path() / fmt::format("dhym_cli_out_{}.json", ::getpid());
  const Run r = run(fmt::format("analyze --out \"{}\"", out.string()), R"({"n": 3, "a": 2, "p": 0, "q": 0})");
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("\"verdict\": \"exists\"") != std::string::npos);
  fs::remove(out);
}

TEST_CASE("solve output and exit codes") {
  const Run r = run("solve", R"({"n": 3, "a": 2, "p": 0, "q": 0})");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("x,f,f_prime,residual,theta\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') >= 258);
  CHECK(run("solve", degenerate_config(1.0)).code == 2);
  CHECK(run("solve", degenerate_config(2.0)).code == 1);

  const fs::path out = fs::temp_directory_path() / fmt::format("dhym_cli_curve_{}.csv", ::getpid());
  const Run s = run(fmt::format("solve --out \"{}\"", out.string()), R"({"n": 4, "a": 3, "p": 1, "q": 0.3})");
  CHECK(s.code == 0);
  CHECK(s.out.find("\"endpoint_error\"") != std::string::npos);
  CHECK(s.out.find("\"verified\": true") != std::string::npos);
  fs::remove(out);
}

TEST_CASE("sweep requires its section") {
  CHECK(run("sweep", R"({"n": 2, "a": 2, "p": 0, "q": 0})").code == 64);
  const Run r = run("sweep --threads 2",
                    R"({"n": 2, "a": 2, "p": 0, "q": 0, "sweep": {"p_min": -1, "p_max": 1, "p_count": 3,
                       "q_min": -1, "q_max": 1, "q_count": 2}})");
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 7);
}

TEST_CASE("figure window errors exit 64") {
  CHECK(run("figure", R"({"n": 3, "a": 2, "p": 0, "q": 0, "figure": {"window": [1.5, 3, -3, 3]}})").code == 64);
  const Run r = run("figure", R"({"n": 3, "a": 2, "p": 0.5, "q": 0.1})");
  CHECK(r.code == 0);
  CHECK(r.out.find("<svg") != std::string::npos);
}

TEST_CASE("identical configs give byte-identical output") {
  const std::string cfg = R"({"n": 6, "a": 2.2, "p": 0.9, "q": 0.3,
    "sweep": {"p_min": -2, "p_max": 2, "p_count": 9, "q_min": -2, "q_max": 2, "q_count": 9},
    "figure": {"samples": 128, "width": 400}})";
  for (const char* cmd : {"analyze", "solve", "sweep", "figure"}) {
    const Run a = run(cmd, cfg);
    const Run b = run(cmd, cfg);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}

TEST_CASE("randomized check is reproducible per seed") {
  const Run a = run("check --seed 5 --count 300");
  const Run b = run("check --seed 5 --count 300");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != run("check --seed 6 --count 300").out);
}
