#include "freeway/freeway.h"

#include <cstring>
#include <new>
#include <string>

#include "freeway/config_io.hpp"
#include "freeway/experiments.hpp"
#include "freeway/trace_io.hpp"

struct fw_config {
  freeway::RunConfig run;
};

struct fw_session {
  freeway::GameConfig config;
  freeway::GameState state;
};

struct fw_solution {
  freeway::oracle::CrossingSolution solution;
  std::string actions;
};

struct fw_trace {
  freeway::experiments::GameTrace trace;
  std::string actions;
};

struct fw_dataset {
  std::vector<freeway::trace_io::DatasetRow> rows;
};

namespace {

thread_local std::string g_last_error;

fw_status fail(fw_status status, const char* what) {
  g_last_error = what;
  return status;
}

// Runs `body` and maps library exceptions onto status codes.
template <typename F>
fw_status guarded(F&& body) {
  try {
    return body();
  } catch (const freeway::UsageError& e) {
    return fail(FW_ERR_USAGE, e.what());
  } catch (const freeway::GameOverError& e) {
    return fail(FW_ERR_GAME_OVER, e.what());
  } catch (const freeway::NoPathError& e) {
    return fail(FW_ERR_NO_PATH, e.what());
  } catch (const freeway::ParseError& e) {
    return fail(FW_ERR_PARSE, e.what());
  } catch (const freeway::ConsistencyError& e) {
    return fail(FW_ERR_INTERNAL, e.what());
  } catch (const freeway::Error& e) {
    return fail(FW_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(FW_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FW_ERR_INTERNAL, e.what());
  }
}

fw_status copy_text(const std::string& text, char* buf, size_t cap, size_t* len) {
  if (len) *len = text.size();
  if (!buf) return FW_OK;
  if (cap < text.size() + 1) return fail(FW_ERR_BUFFER, "output buffer too small");
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return FW_OK;
}

#define FW_REQUIRE(cond, msg) \
  do {                        \
    if (!(cond)) return fail(FW_ERR_USAGE, msg); \
  } while (0)

fw_status wrap_solution(freeway::oracle::CrossingSolution sol, fw_solution** out) {
  auto* handle = new fw_solution{std::move(sol), {}};
  handle->actions = freeway::actions_to_string(handle->solution.actions);
  *out = handle;
  return FW_OK;
}

fw_status wrap_trace(freeway::experiments::GameTrace trace, fw_trace** out) {
  auto* handle = new fw_trace{std::move(trace), {}};
  handle->actions = freeway::actions_to_string(handle->trace.actions);
  *out = handle;
  return FW_OK;
}

}  // namespace

extern "C" {

const char* fw_last_error(void) { return g_last_error.c_str(); }

const char* fw_status_string(fw_status status) {
  switch (status) {
    case FW_OK: return "ok";
    case FW_ERR_USAGE: return "usage error";
    case FW_ERR_GAME_OVER: return "game over";
    case FW_ERR_NO_PATH: return "no path";
    case FW_ERR_PARSE: return "parse error";
    case FW_ERR_IO: return "i/o error";
    case FW_ERR_BUFFER: return "buffer too small";
    case FW_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

fw_status fw_config_new(fw_config** out) {
  FW_REQUIRE(out, "out must not be NULL");
  return guarded([&] {
    *out = new fw_config{};
    return FW_OK;
  });
}

fw_status fw_config_parse(const char* json, fw_config** out) {
  FW_REQUIRE(json && out, "json and out must not be NULL");
  return guarded([&] {
    *out = new fw_config{freeway::config_from_json(json)};
    return FW_OK;
  });
}

fw_status fw_config_load(const char* path, fw_config** out) {
  FW_REQUIRE(path && out, "path and out must not be NULL");
  return guarded([&] {
    *out = new fw_config{freeway::load_config_file(path)};
    return FW_OK;
  });
}

fw_status fw_config_set_deterministic(fw_config* config, int enabled) {
  FW_REQUIRE(config, "config must not be NULL");
  config->run.game.deterministic_mode = enabled != 0;
  return FW_OK;
}

fw_status fw_config_set_rollout(fw_config* config, int enabled) {
  FW_REQUIRE(config, "config must not be NULL");
  config->run.search.rollout = enabled != 0;
  return FW_OK;
}

fw_status fw_config_to_json(const fw_config* config, char* buf, size_t cap, size_t* len) {
  FW_REQUIRE(config, "config must not be NULL");
  return guarded([&] { return copy_text(freeway::config_to_json(config->run), buf, cap, len); });
}

void fw_config_free(fw_config* config) { delete config; }

fw_status fw_session_new(const fw_config* config, uint64_t seed, fw_session** out) {
  FW_REQUIRE(config && out, "config and out must not be NULL");
  return guarded([&] {
    *out = new fw_session{config->run.game, freeway::reset(seed, config->run.game)};
    return FW_OK;
  });
}

fw_status fw_session_step(fw_session* session, int action, fw_step_result* out) {
  FW_REQUIRE(session, "session must not be NULL");
  return guarded([&] {
    const freeway::StepResult r = freeway::advance(session->state, freeway::action_from_code(action), session->config);
    if (out) *out = {r.new_y, r.moved_y, r.collided ? 1 : 0, r.crossed ? 1 : 0, r.t_after};
    return FW_OK;
  });
}

fw_status fw_session_ram(const fw_session* session, uint8_t out[FW_RAM_SIZE]) {
  FW_REQUIRE(session && out, "session and out must not be NULL");
  return guarded([&] {
    const auto ram = freeway::encode_ram(session->state, session->config);
    std::memcpy(out, ram.data(), ram.size());
    return FW_OK;
  });
}

int32_t fw_session_t(const fw_session* session) { return session ? session->state.t : -1; }
int32_t fw_session_y(const fw_session* session) { return session ? session->state.y : -1; }
int32_t fw_session_score(const fw_session* session) { return session ? session->state.score : -1; }
int32_t fw_session_cooldown(const fw_session* session) { return session ? session->state.cooldown : -1; }
int32_t fw_session_game_length(const fw_session* session) {
  return session ? freeway::game_length(session->state.seed, session->config) : -1;
}
void fw_session_free(fw_session* session) { delete session; }

fw_status fw_solve(const fw_config* config, uint64_t seed, int32_t start_t, fw_solution** out) {
  FW_REQUIRE(config && out, "config and out must not be NULL");
  FW_REQUIRE(start_t >= 0, "start_t must be non-negative");
  return guarded([&] {
    const std::vector<freeway::Action> prefix(static_cast<std::size_t>(start_t), freeway::Action::Stay);
    return wrap_solution(freeway::oracle::solve_crossing(seed, prefix, config->run.game, config->run.search), out);
  });
}

fw_status fw_solve_prefix(const fw_config* config, uint64_t seed, const char* prefix, fw_solution** out) {
  FW_REQUIRE(config && prefix && out, "config, prefix and out must not be NULL");
  return guarded([&] {
    const auto actions = freeway::actions_from_string(prefix);
    return wrap_solution(freeway::oracle::solve_crossing(seed, actions, config->run.game, config->run.search), out);
  });
}

int32_t fw_solution_length(const fw_solution* s) { return s ? s->solution.length : -1; }
const char* fw_solution_actions(const fw_solution* s) { return s ? s->actions.c_str() : nullptr; }
int32_t fw_solution_start_t(const fw_solution* s) { return s ? s->solution.start.t : -1; }
int32_t fw_solution_start_y(const fw_solution* s) { return s ? s->solution.start.y : -1; }
uint64_t fw_solution_nodes_expanded(const fw_solution* s) { return s ? s->solution.nodes_expanded : 0; }
uint64_t fw_solution_nodes_created(const fw_solution* s) { return s ? s->solution.nodes_created : 0; }
void fw_solution_free(fw_solution* s) { delete s; }

fw_status fw_play(const fw_config* config, uint64_t seed, fw_trace** out) {
  FW_REQUIRE(config && out, "config and out must not be NULL");
  return guarded([&] {
    return wrap_trace(freeway::experiments::play_full_game(seed, config->run.game, config->run.search), out);
  });
}

fw_status fw_trace_load(const char* path, fw_trace** out) {
  FW_REQUIRE(path && out, "path and out must not be NULL");
  return guarded([&] { return wrap_trace(freeway::trace_io::read_trace(path), out); });
}

fw_status fw_trace_save(const fw_trace* trace, const char* path) {
  FW_REQUIRE(trace && path, "trace and path must not be NULL");
  return guarded([&] {
    freeway::trace_io::write_trace(trace->trace, path);
    return FW_OK;
  });
}

uint64_t fw_trace_seed(const fw_trace* trace) { return trace ? trace->trace.seed : 0; }
int32_t fw_trace_score(const fw_trace* trace) { return trace ? trace->trace.score : -1; }
size_t fw_trace_action_count(const fw_trace* trace) { return trace ? trace->trace.actions.size() : 0; }
const char* fw_trace_actions(const fw_trace* trace) { return trace ? trace->actions.c_str() : nullptr; }
size_t fw_trace_crossing_count(const fw_trace* trace) { return trace ? trace->trace.crossings.size() : 0; }

fw_status fw_trace_crossing(const fw_trace* trace, size_t index, int32_t* start_t, int32_t* length) {
  FW_REQUIRE(trace, "trace must not be NULL");
  FW_REQUIRE(index < trace->trace.crossings.size(), "crossing index out of range");
  const auto& c = trace->trace.crossings[index];
  if (start_t) *start_t = c.start_t;
  if (length) *length = c.length;
  return FW_OK;
}

fw_status fw_trace_verify(const fw_trace* trace, const fw_config* config) {
  FW_REQUIRE(trace && config, "trace and config must not be NULL");
  return guarded([&] {
    const auto& t = trace->trace;
    const auto replayed = freeway::experiments::retrace(t.seed, t.actions, t.crossings, config->run.game);
    if (replayed.y_series != t.y_series) return fail(FW_ERR_PARSE, "replayed Y series differs from the trace");
    if (replayed.score != t.score) return fail(FW_ERR_PARSE, "replayed score differs from the trace");
    return FW_OK;
  });
}

fw_status fw_trace_render(const fw_trace* trace, const fw_config* config, int32_t t, char* buf, size_t cap,
                          size_t* len) {
  FW_REQUIRE(trace && config, "trace and config must not be NULL");
  return guarded([&] {
    return copy_text(freeway::trace_io::render_ascii(trace->trace, t, config->run.game), buf, cap, len);
  });
}

void fw_trace_free(fw_trace* trace) { delete trace; }

fw_status fw_baseline(const fw_config* config, uint64_t first_seed, size_t count, unsigned workers,
                      int32_t* scores) {
  FW_REQUIRE(config && (scores || count == 0), "config and scores must not be NULL");
  return guarded([&] {
    const auto s = freeway::experiments::baseline_scores(first_seed, count, config->run.game, workers);
    for (std::size_t i = 0; i < s.size(); ++i) scores[i] = s[i];
    return FW_OK;
  });
}

fw_status fw_dataset_generate(const fw_config* config, size_t n, uint64_t sampling_seed, unsigned workers,
                              fw_dataset** out) {
  FW_REQUIRE(config && out, "config and out must not be NULL");
  return guarded([&] {
    const auto results =
        freeway::experiments::generate_dataset(n, sampling_seed, config->run.game, workers, config->run.search);
    auto* handle = new fw_dataset{};
    handle->rows.reserve(results.size());
    for (const auto& r : results) handle->rows.push_back(freeway::trace_io::to_row(r));
    *out = handle;
    return FW_OK;
  });
}

fw_status fw_dataset_load(const char* path, fw_dataset** out) {
  FW_REQUIRE(path && out, "path and out must not be NULL");
  return guarded([&] {
    *out = new fw_dataset{freeway::trace_io::read_dataset(std::string(path))};
    return FW_OK;
  });
}

fw_status fw_dataset_save(const fw_dataset* dataset, const char* path) {
  FW_REQUIRE(dataset && path, "dataset and path must not be NULL");
  return guarded([&] {
    freeway::trace_io::write_dataset(dataset->rows, std::string(path));
    return FW_OK;
  });
}

size_t fw_dataset_size(const fw_dataset* dataset) { return dataset ? dataset->rows.size() : 0; }

fw_status fw_dataset_row_at(const fw_dataset* dataset, size_t index, fw_dataset_row* out) {
  FW_REQUIRE(dataset && out, "dataset and out must not be NULL");
  FW_REQUIRE(index < dataset->rows.size(), "row index out of range");
  const auto& r = dataset->rows[index];
  *out = {r.seed, r.start_t, r.length, r.all_up ? 1 : 0, r.solvable ? 1 : 0, r.actions.c_str()};
  return FW_OK;
}

fw_status fw_dataset_histogram(const fw_dataset* dataset, int32_t bin_width, int32_t* bin_lo, uint64_t* counts,
                               size_t cap, size_t* nbins) {
  FW_REQUIRE(dataset, "dataset must not be NULL");
  return guarded([&] {
    std::vector<freeway::experiments::ScenarioResult> results;
    results.reserve(dataset->rows.size());
    for (const auto& r : dataset->rows) {
      freeway::experiments::ScenarioResult s;
      s.spec = {r.seed, r.start_t};
      s.solvable = r.solvable;
      s.length = r.length;
      results.push_back(s);
    }
    const auto hist = freeway::experiments::length_histogram(results, bin_width);
    if (nbins) *nbins = hist.size();
    if (!bin_lo && !counts) return FW_OK;
    if (!bin_lo || !counts || cap < hist.size()) return fail(FW_ERR_BUFFER, "histogram buffers too small");
    for (std::size_t i = 0; i < hist.size(); ++i) {
      bin_lo[i] = hist[i].first;
      counts[i] = hist[i].second;
    }
    return FW_OK;
  });
}

void fw_dataset_free(fw_dataset* dataset) { delete dataset; }

}  // extern "C"
