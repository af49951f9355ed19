#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(FREEWAY_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  std::array<char, 4096> buf;
  while (size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string field(const std::string& out, const std::string& key) {
  std::stringstream ss(out);
  for (std::string line; std::getline(ss, line);)
    if (line.rfind(key + "\t", 0) == 0) return line.substr(key.size() + 1);
  return {};
}

}  // namespace

TEST_CASE("solve in deterministic mode prints the 57-step all-up crossing") {
  const Run r = cli("solve --seed 0 --start-t 0 --deterministic-mode");
  CHECK(r.code == 0);
  CHECK(field(r.out, "length") == "57");
  CHECK(field(r.out, "actions") == std::string(57, '1'));
  CHECK_FALSE(field(r.out, "nodes_expanded").empty());
  // Global flags may also come before the subcommand.
  CHECK(cli("--deterministic-mode solve --seed 0").out == r.out);
}

TEST_CASE("baseline prints one row per seed, reproducibly") {
  const Run a = cli("baseline --seeds 0..99");
  CHECK(a.code == 0);
  std::stringstream ss(a.out);
  std::string line;
  std::getline(ss, line);
  CHECK(line == "seed\tscore");
  int rows = 0;
  while (std::getline(ss, line) && !line.empty()) ++rows;
  CHECK(rows == 100);
  std::getline(ss, line);
  CHECK(line == "score\tseeds");
  CHECK(cli("baseline --seeds 0..99 --workers 3").out == a.out);
  CHECK(cli("baseline --seeds 9..3").code == 2);
}

TEST_CASE("dataset files are byte-identical across runs and worker counts") {
  const Run a = cli("dataset --n 10 --sampling-seed 7 --out cli_d1.csv");
  const Run b = cli("dataset --n 10 --sampling-seed 7 --out cli_d2.csv --workers 4");
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  CHECK(a.out == b.out);
  const std::string d1 = slurp("cli_d1.csv");
  CHECK(d1.rfind("seed,start_t,length,actions,all_up,solvable\n", 0) == 0);
  CHECK(d1 == slurp("cli_d2.csv"));
  CHECK(field(a.out, "scenarios") == "10");
  std::filesystem::remove("cli_d1.csv");
  std::filesystem::remove("cli_d2.csv");
}

TEST_CASE("play writes a trace that render can draw") {
  const Run p = cli("play --seed 1 --out cli_trace.json");
  CHECK(p.code == 0);
  CHECK(std::stoi(field(p.out, "score")) > 0);
  const Run f = cli("render --trace cli_trace.json --t 0");
  CHECK(f.code == 0);
  CHECK(f.out.rfind("t=0", 0) == 0);
  CHECK(f.out.find('C') != std::string::npos);
  CHECK(cli("render --trace cli_trace.json --t 0").out == f.out);
  CHECK(cli("render --trace cli_trace.json --t 99999").code == 2);
  CHECK(cli("render --trace cli_trace.json --t 0 --animate").code == 2);
  std::filesystem::remove("cli_trace.json");
}

TEST_CASE("exit codes") {
  CHECK(cli("--bogus").code == 2);
  CHECK(cli("solve").code == 2);
  CHECK(cli("").code == 2);
  CHECK(cli("solve --seed 0 --start-t 2775").code == 1);  // game ends first
  CHECK(cli("--help").code == 0);
  const Run cfg = cli("--print-config");
  CHECK(cfg.code == 0);
  CHECK(cfg.out.find("\"cool_hit\": 12") != std::string::npos);

  std::ofstream("cli_cfg.json") << R"({"deterministic_mode": true, "rollout": false})";
  CHECK(field(cli("--config cli_cfg.json solve --seed 0").out, "length") == "57");
  std::ofstream("cli_cfg.json") << R"({"bad_field": 1})";
  CHECK(cli("--config cli_cfg.json solve --seed 0").code == 1);
  std::filesystem::remove("cli_cfg.json");
}
