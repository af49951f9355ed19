#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "freeway/freeway.h"

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("freeway_capi_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Config {
  fw_config* ptr = nullptr;
  Config() { REQUIRE(fw_config_new(&ptr) == FW_OK); }
  ~Config() { fw_config_free(ptr); }
};

}  // namespace

TEST_CASE("status strings and last error") {
  CHECK(std::string(fw_status_string(FW_OK)) == "ok");
  CHECK(std::string(fw_status_string(FW_ERR_NO_PATH)) == "no path");
  CHECK(fw_config_new(nullptr) == FW_ERR_USAGE);
  CHECK(std::strlen(fw_last_error()) > 0);
}

TEST_CASE("config handles") {
  Config cfg;
  size_t len = 0;
  REQUIRE(fw_config_to_json(cfg.ptr, nullptr, 0, &len) == FW_OK);
  std::string text(len + 1, '\0');
  CHECK(fw_config_to_json(cfg.ptr, text.data(), 4, &len) == FW_ERR_BUFFER);
  REQUIRE(fw_config_to_json(cfg.ptr, text.data(), text.size(), &len) == FW_OK);
  text.resize(len);
  CHECK(text.find("\"knockback\": 24") != std::string::npos);

  fw_config* parsed = nullptr;
  REQUIRE(fw_config_parse(R"({"cool_top": 5, "deterministic_mode": true})", &parsed) == FW_OK);
  fw_config_free(parsed);
  CHECK(fw_config_parse(R"({"nope": 1})", &parsed) == FW_ERR_PARSE);
  CHECK(std::string(fw_last_error()).find("nope") != std::string::npos);
  CHECK(fw_config_load("/nonexistent/x.json", &parsed) == FW_ERR_IO);

  const std::string path = temp_path("cfg.json");
  std::ofstream(path) << R"({"deterministic_mode": true})";
  fw_config* loaded = nullptr;
  REQUIRE(fw_config_load(path.c_str(), &loaded) == FW_OK);
  fw_solution* sol = nullptr;
  REQUIRE(fw_solve(loaded, 0, 0, &sol) == FW_OK);
  CHECK(fw_solution_length(sol) == 57);
  fw_solution_free(sol);
  fw_config_free(loaded);
  std::filesystem::remove(path);
}

TEST_CASE("session stepping and the 128-byte observation") {
  Config cfg;
  fw_session* s = nullptr;
  REQUIRE(fw_session_new(cfg.ptr, 0, &s) == FW_OK);
  uint8_t ram[FW_RAM_SIZE];
  REQUIRE(fw_session_ram(s, ram) == FW_OK);
  CHECK(ram[14] == 6);
  CHECK(ram[106] == 0);
  for (int i = 108; i < 118; ++i) CHECK(ram[i] == 0);

  fw_step_result r{};
  REQUIRE(fw_session_step(s, FW_ACTION_UP, &r) == FW_OK);
  CHECK(r.t_after == 1);
  CHECK(r.new_y == 9);  // first draw for seed 0 is 3
  CHECK(fw_session_y(s) == 9);
  CHECK(fw_session_t(s) == 1);
  CHECK(fw_session_step(s, 7, &r) == FW_ERR_USAGE);

  const int32_t len = fw_session_game_length(s);
  CHECK(len == 2779);
  while (fw_session_t(s) < len) REQUIRE(fw_session_step(s, FW_ACTION_UP, nullptr) == FW_OK);
  CHECK(fw_session_score(s) > 0);
  CHECK(fw_session_step(s, FW_ACTION_UP, &r) == FW_ERR_GAME_OVER);
  REQUIRE(fw_session_ram(s, ram) == FW_OK);
  for (int i = 108; i < 118; ++i) CHECK(ram[i] < 160);
  fw_session_free(s);
}

TEST_CASE("solving through the C API") {
  Config cfg;
  fw_solution* sol = nullptr;
  REQUIRE(fw_solve(cfg.ptr, 77, 300, &sol) == FW_OK);
  CHECK(fw_solution_start_t(sol) == 300);
  CHECK(fw_solution_start_y(sol) == 6);
  CHECK(fw_solution_length(sol) >= 43);
  CHECK(std::strlen(fw_solution_actions(sol)) == static_cast<size_t>(fw_solution_length(sol)));
  CHECK(fw_solution_nodes_created(sol) >= fw_solution_nodes_expanded(sol));
  fw_solution_free(sol);

  REQUIRE(fw_solve_prefix(cfg.ptr, 77, "1110", &sol) == FW_OK);
  CHECK(fw_solution_start_t(sol) == 4);
  fw_solution_free(sol);
  CHECK(fw_solve_prefix(cfg.ptr, 77, "11x", &sol) == FW_ERR_USAGE);
  CHECK(fw_solve(cfg.ptr, 0, -1, &sol) == FW_ERR_USAGE);
  CHECK(fw_solve(cfg.ptr, 0, 2770, &sol) == FW_ERR_NO_PATH);
}

TEST_CASE("full games and traces") {
  Config cfg;
  fw_trace* trace = nullptr;
  REQUIRE(fw_play(cfg.ptr, 2, &trace) == FW_OK);
  CHECK(fw_trace_seed(trace) == 2);
  CHECK(fw_trace_score(trace) == static_cast<int32_t>(fw_trace_crossing_count(trace)));
  CHECK(std::strlen(fw_trace_actions(trace)) == fw_trace_action_count(trace));
  CHECK(fw_trace_verify(trace, cfg.ptr) == FW_OK);
  int32_t st = -1, len = -1;
  REQUIRE(fw_trace_crossing(trace, 0, &st, &len) == FW_OK);
  CHECK(st == 0);
  CHECK(len >= 43);
  CHECK(fw_trace_crossing(trace, 1000, &st, &len) == FW_ERR_USAGE);

  const std::string path = temp_path("trace.json");
  REQUIRE(fw_trace_save(trace, path.c_str()) == FW_OK);
  fw_trace* loaded = nullptr;
  REQUIRE(fw_trace_load(path.c_str(), &loaded) == FW_OK);
  CHECK(fw_trace_score(loaded) == fw_trace_score(trace));
  CHECK(std::string(fw_trace_actions(loaded)) == fw_trace_actions(trace));
  CHECK(fw_trace_verify(loaded, cfg.ptr) == FW_OK);

  // Same trace under different physics no longer replays.
  fw_config* det = nullptr;
  REQUIRE(fw_config_parse(R"({"deterministic_mode": true})", &det) == FW_OK);
  CHECK(fw_trace_verify(loaded, det) == FW_ERR_PARSE);
  fw_config_free(det);

  size_t n = 0;
  REQUIRE(fw_trace_render(loaded, cfg.ptr, 0, nullptr, 0, &n) == FW_OK);
  std::string frame(n + 1, '\0');
  REQUIRE(fw_trace_render(loaded, cfg.ptr, 0, frame.data(), frame.size(), &n) == FW_OK);
  CHECK(frame.find("t=0") == 0);
  CHECK(fw_trace_render(loaded, cfg.ptr, 1'000'000, nullptr, 0, &n) == FW_ERR_USAGE);

  std::ofstream(path) << R"({"seed":1})";
  fw_trace* broken = nullptr;
  CHECK(fw_trace_load(path.c_str(), &broken) == FW_ERR_PARSE);
  fw_trace_free(loaded);
  fw_trace_free(trace);
  std::filesystem::remove(path);
}

TEST_CASE("baseline scores") {
  Config cfg;
  std::vector<int32_t> a(8), b(8);
  REQUIRE(fw_baseline(cfg.ptr, 0, a.size(), 1, a.data()) == FW_OK);
  REQUIRE(fw_baseline(cfg.ptr, 0, b.size(), 4, b.data()) == FW_OK);
  CHECK(a == b);
  for (int32_t s : a) CHECK(s > 0);
}

TEST_CASE("datasets") {
  Config cfg;
  fw_dataset* d = nullptr;
  REQUIRE(fw_dataset_generate(cfg.ptr, 12, 7, 2, &d) == FW_OK);
  CHECK(fw_dataset_size(d) == 12);
  fw_dataset_row row{};
  REQUIRE(fw_dataset_row_at(d, 0, &row) == FW_OK);
  CHECK(row.solvable == 1);
  CHECK(std::strlen(row.actions) == static_cast<size_t>(row.length));
  CHECK(fw_dataset_row_at(d, 12, &row) == FW_ERR_USAGE);

  size_t nbins = 0;
  REQUIRE(fw_dataset_histogram(d, 10, nullptr, nullptr, 0, &nbins) == FW_OK);
  std::vector<int32_t> lo(nbins);
  std::vector<uint64_t> counts(nbins);
  REQUIRE(fw_dataset_histogram(d, 10, lo.data(), counts.data(), nbins, &nbins) == FW_OK);
  uint64_t total = 0;
  for (uint64_t c : counts) total += c;
  CHECK(total == 12);
  CHECK(fw_dataset_histogram(d, 0, nullptr, nullptr, 0, &nbins) == FW_ERR_USAGE);

  const std::string p1 = temp_path("d1.csv"), p2 = temp_path("d2.csv");
  REQUIRE(fw_dataset_save(d, p1.c_str()) == FW_OK);
  fw_dataset* d2 = nullptr;
  REQUIRE(fw_dataset_generate(cfg.ptr, 12, 7, 1, &d2) == FW_OK);
  REQUIRE(fw_dataset_save(d2, p2.c_str()) == FW_OK);
  CHECK(slurp(p1) == slurp(p2));

  fw_dataset* loaded = nullptr;
  REQUIRE(fw_dataset_load(p1.c_str(), &loaded) == FW_OK);
  CHECK(fw_dataset_size(loaded) == 12);
  std::ofstream(p2) << "seed,start_t,length,actions,all_up,solvable\n1,2,1,9,0,1\n";
  fw_dataset* bad = nullptr;
  CHECK(fw_dataset_load(p2.c_str(), &bad) == FW_ERR_PARSE);
  CHECK(std::string(fw_last_error()).find("line 2") != std::string::npos);
  CHECK(fw_dataset_generate(cfg.ptr, 0, 7, 1, &bad) == FW_ERR_USAGE);

  fw_dataset_free(loaded);
  fw_dataset_free(d2);
  fw_dataset_free(d);
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
}
