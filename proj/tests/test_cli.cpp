#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(QGRAV_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> data_lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream is(s);
  for (std::string line; std::getline(is, line);)
    if (!line.empty() && line[0] != '#') v.push_back(line);
  return v;
}

}  // namespace

TEST_CASE("fig1 columns and kernel values at the origin") {
  const Run r = run("figures fig1 --points 5");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# ", 0) == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "u,R_lorentzian,R_freefall,R_opto");
  CHECK(lines[3] == "0,1,1,0.9375");
}

TEST_CASE("fig3 schema") {
  const Run r = run("figures fig3 --points 10");
  REQUIRE(r.code == 0);
  const auto lines = data_lines(r.out);
  CHECK(lines[0] == "platform,t_src_K,sigma_v_mps,t_int_s,retention_kc,retention_freefall_proxy,caveat");
  CHECK(lines.size() == 1 + 30 + 6);
}

TEST_CASE("experiments table") {
  const Run r = run("experiments table");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("sigma_v_thermal_2uK,0.0138") != std::string::npos);
  CHECK(r.out.find("# g_standard = 9.81") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("freefall --sigma -1").code == 1);
  CHECK(run("kc --contrast 2").code == 1);
  CHECK(run("kernel eval --alpha1 2").code == 2);
  CHECK(run("--no-such-flag freefall").code == 1);
  CHECK(run("").code == 1);
  CHECK(run("--help").code == 0);
}

TEST_CASE("records format") {
  const Run r = run("kc --T 0.5 1 --format records");
  REQUIRE(r.code == 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  CHECK(nlohmann::json::parse(line).contains("meta"));
  int rows = 0;
  while (std::getline(is, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.contains("full_retention"));
    ++rows;
  }
  CHECK(rows == 2);
}

TEST_CASE("config file with flag override") {
  const auto path = std::filesystem::temp_directory_path() / "qgrav_cli_test.ini";
  {
    std::ofstream f(path);
    f << "[freefall]\nsigma = 2\ng = 0.25\n";
  }
  const Run a = run("--config " + path.string() + " freefall");
  CHECK(a.out.find("# sigma = 2\n") != std::string::npos);
  CHECK(a.out.find("# g = 0.25\n") != std::string::npos);
  const Run b = run("--config " + path.string() + " freefall --g 0.5");
  CHECK(b.out.find("# sigma = 2\n") != std::string::npos);
  CHECK(b.out.find("# g = 0.5\n") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("output file and determinism") {
  const auto path = std::filesystem::temp_directory_path() / "qgrav_cli_test.csv";
  REQUIRE(run("opto --u -0.5 0.5 --t 1 2 --quadrature 1024 --out " + path.string()).code == 0);
  std::ifstream f(path);
  const std::string first((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  CHECK(data_lines(first).size() == 5);
  CHECK(first == run("opto --u -0.5 0.5 --t 1 2 --quadrature 1024").out);
  std::filesystem::remove(path);
}
