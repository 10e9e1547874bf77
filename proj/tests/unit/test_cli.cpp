#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "fcpm/io.hpp"

namespace fs = std::filesystem;
using fcpm::Json;

namespace {

struct Run {
  int rc;
  std::string out;
  Json json() const { return Json::parse(out); }
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + FCPM_BIN + std::string(" ") + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("fcpm_cli_" + std::to_string(::getpid()))) { fs::create_directories(path_); }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  std::string write(const std::string& name, const std::string& text) const {
    const auto file = path_ / name;
    std::ofstream(file) << text;
    return file.string();
  }

 private:
  fs::path path_;
};

const TempDir& tmp() {
  static TempDir dir;
  return dir;
}

std::string f4() { return tmp().write("f4.json", R"({"p":2,"m":2,"a":["1/2","1/3"],"B":[["1/5","1/7"]]})"); }

}  // namespace

TEST_CASE("singular-poly") {
  auto r = run("singular-poly --p 2 --m 2");
  REQUIRE(r.rc == 0);
  auto j = r.json();
  CHECK(j["result"]["string"] == "1 - 2*x1 - 2*x2 + x1^2 - 2*x1*x2 + x2^2");
  CHECK(j["result"]["degree"] == 2);
}

TEST_CASE("rank-check") {
  auto r = run("rank-check --p 2 --z \"[1/3,1/5]\"");
  REQUIRE(r.rc == 0);
  CHECK(r.json()["result"]["rank"] == 4);
  CHECK(r.json()["result"]["drop"] == false);
  auto drop = run("rank-check --p 2 --z \"[1/2,1/2]\"");
  REQUIRE(drop.rc == 0);
  CHECK(drop.json()["result"]["drop"] == true);
  auto sampled = run("rank-check --p 3 --m 2 --seed 5");
  REQUIRE(sampled.rc == 0);
  CHECK(sampled.json()["result"]["rank"] == 9);
}

TEST_CASE("eval and phi") {
  auto r = run("eval --params " + f4() + " --x \"[0.04,0.09]\"");
  REQUIRE(r.rc == 0);
  CHECK(std::abs(r.json()["result"]["value"][0].get<double>() - 1.2092644320076706) < 1e-12);
  auto f = run("eval --mode float --params " + f4() + " --x \"[0.04,0.09]\"");
  REQUIRE(f.rc == 0);
  CHECK(f.json()["diagnostics"]["mode"] == "float");
  auto phi = run("phi --params " + f4() + " --x \"[0.04,0.09]\" --label \"(1,0)\"");
  REQUIRE(phi.rc == 0);
  CHECK(phi.json()["result"]["solutions"].size() == 1);
}

TEST_CASE("output is byte-identical across runs") {
  const std::string args = "verify-pde --params " + f4() + " --order 6";
  auto a = run(args);
  auto b = run(args);
  REQUIRE(a.rc == 0);
  CHECK(a.out == b.out);
  auto c = run("verify-integral --params " + f4() + " --seed 3");
  auto d = run("verify-integral --params " + f4() + " --seed 3");
  REQUIRE(c.rc == 0);
  CHECK(c.out == d.out);
}

TEST_CASE("pretty output") {
  auto r = run("singular-poly --p 2 --m 1 --pretty");
  REQUIRE(r.rc == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') > 3);
  CHECK(r.json()["result"]["degree"] == 1);
}

TEST_CASE("validation failures exit with status 2 and name the condition") {
  auto bad = tmp().write("bad.json", R"({"p":2,"m":2,"a":["1/2","1/3"],"B":[["1/5","-2"]]})");
  auto r = run("eval --params " + bad + " --x \"[0.01,0.01]\"");
  CHECK(r.rc == 2);
  auto err = r.json()["diagnostics"]["error"];
  CHECK(err["type"] == "ValidationError");
  CHECK(err["conditions"][0].get<std::string>().find("b_{1,2}") != std::string::npos);

  auto ng = tmp().write("ng.json", R"({"p":2,"m":2,"a":["1/2","1/3"],"B":[["1/5","1/2"]]})");
  auto g = run("verify-pde --params " + ng);
  CHECK(g.rc == 2);
  CHECK(g.json()["diagnostics"]["error"]["conditions"].dump().find("J=(0,1)") != std::string::npos);

  CHECK(run("eval --params " + f4() + " --x \"[0.3,0.3]\"").rc == 2);
  CHECK(run("eval --params " + f4() + " --x \"[0.3,\"").rc == 2);
  CHECK(run("eval --params /nonexistent/file.json --x \"[0.1,0.1]\"").rc == 2);
  CHECK(run("singular-poly --p 1 --m 2").rc == 2);
  CHECK(run("eval --bogus").rc == 2);
  CHECK(run("--help").rc == 0);
}

TEST_CASE("shell cap from the environment") {
  auto r = run("eval --params " + f4() + " --x \"[0.2,0.2]\"", "FCPM_MAX_SHELLS=3");
  REQUIRE(r.rc == 0);
  auto j = r.json();
  CHECK(j["result"]["converged"] == false);
  CHECK(j["diagnostics"]["max_shells"] == 3);
  CHECK_FALSE(j["diagnostics"]["warnings"].empty());
  CHECK(run("eval --params " + f4() + " --x \"[0.2,0.2]\"", "FCPM_MAX_SHELLS=-4").rc == 2);
}

TEST_CASE("check replays every command") {
  const std::string p = f4();
  const std::vector<std::string> commands{
      "eval --params " + p + " --x \"[0.04,0.09]\"",
      "phi --params " + p + " --x \"[0.04,0.09]\"",
      "singular-poly --p 3 --m 2",
      "rank-check --p 2 --z \"[1/3,1/5]\"",
      "verify-pde --params " + p + " --order 5",
      "verify-integral --params " + p + " --order 4 --draws 3",
      "domain-check --params " + p + " --x \"[0.5,0.5]\"",
  };
  int i = 0;
  for (const auto& c : commands) {
    auto r = run(c);
    REQUIRE(r.rc == 0);
    auto saved = tmp().write("env" + std::to_string(i++) + ".json", r.out);
    auto replayed = run("--check " + saved);
    CHECK(replayed.rc == 0);
    CHECK(replayed.json()["result"]["match"] == true);
  }
  auto tampered = run(commands[0]).json();
  tampered["result"]["value"][0] = 2.0;
  auto saved = tmp().write("tampered.json", tampered.dump());
  CHECK(run("--check " + saved).rc == 2);
}
