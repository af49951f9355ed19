// freeway: command-line front end over the C API.
//
//   freeway solve --seed S --start-t T
//   freeway play --seed S [--out trace.json]
//   freeway baseline --seeds A..B
//   freeway dataset --n N --sampling-seed K --out data.csv
//   freeway render --trace trace.json (--t T | --animate)
//
// Global flags: --deterministic-mode --no-rollout --workers K --config FILE
// --print-config. Exit status: 0 success, 1 domain error, 2 usage error.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "freeway/freeway.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using ConfigPtr = std::unique_ptr<fw_config, Deleter<fw_config, fw_config_free>>;
using SolutionPtr = std::unique_ptr<fw_solution, Deleter<fw_solution, fw_solution_free>>;
using TracePtr = std::unique_ptr<fw_trace, Deleter<fw_trace, fw_trace_free>>;
using DatasetPtr = std::unique_ptr<fw_dataset, Deleter<fw_dataset, fw_dataset_free>>;

struct Failure {
  int code;
};

void check(fw_status status) {
  if (status == FW_OK) return;
  std::cerr << "freeway: " << fw_status_string(status) << ": " << fw_last_error() << "\n";
  throw Failure{status == FW_ERR_USAGE ? kExitUsage : kExitDomain};
}

std::string render_frame(const fw_trace* trace, const fw_config* config, int32_t t) {
  size_t len = 0;
  check(fw_trace_render(trace, config, t, nullptr, 0, &len));
  std::string text(len + 1, '\0');
  check(fw_trace_render(trace, config, t, text.data(), text.size(), &len));
  text.resize(len);
  return text;
}

// "A..B" inclusive, or a single seed.
bool parse_seed_range(const std::string& text, std::uint64_t& first, std::uint64_t& last) {
  try {
    const auto dots = text.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      first = last = std::stoull(text, &used);
      return used == text.size();
    }
    const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    first = std::stoull(a, &used);
    if (used != a.size()) return false;
    last = std::stoull(b, &used);
    return used == b.size() && first <= last;
  } catch (const std::exception&) {
    return false;
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Freeway simulator and A-Star crossing oracle"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  bool deterministic = false, no_rollout = false, print_config = false;
  unsigned workers = 1;
  std::string config_path;
  app.add_flag("--deterministic-mode", deterministic, "No car jitter, chicken steps exactly 3");
  app.add_flag("--no-rollout", no_rollout, "Disable the Up-chain rollout during search");
  app.add_option("--workers", workers, "Worker threads for dataset and baseline")->check(CLI::Range(1u, 1024u));
  app.add_option("--config", config_path, "JSON file overriding game constants")->check(CLI::ExistingFile);
  app.add_flag("--print-config", print_config, "Print the effective configuration as JSON");

  std::uint64_t seed = 0;
  int start_t = 0;
  auto* solve = app.add_subcommand("solve", "Shortest crossing after start_t stay actions");
  solve->add_option("--seed", seed, "Game seed")->required();
  solve->add_option("--start-t", start_t, "Timestep to start crossing from")->check(CLI::NonNegativeNumber);

  std::string out_path;
  auto* play = app.add_subcommand("play", "Full game played by the oracle");
  play->add_option("--seed", seed, "Game seed")->required();
  play->add_option("--out", out_path, "Write the trace as JSON");

  std::string seeds_text = "0..99";
  auto* baseline = app.add_subcommand("baseline", "Always-up scores over a seed range");
  baseline->add_option("--seeds", seeds_text, "Seed range A..B (inclusive)");

  std::size_t n = 0;
  std::uint64_t sampling_seed = 0;
  auto* dataset = app.add_subcommand("dataset", "Single-crossing scenario dataset");
  dataset->add_option("--n", n, "Number of scenarios")->required()->check(CLI::PositiveNumber);
  dataset->add_option("--sampling-seed", sampling_seed, "Seed of the scenario sampler")->required();
  dataset->add_option("--out", out_path, "CSV output path")->required();
  int bin_width = 10;
  dataset->add_option("--bin-width", bin_width, "Histogram bin width")->check(CLI::PositiveNumber);

  std::string trace_path;
  int frame_t = 0;
  bool animate = false;
  auto* render = app.add_subcommand("render", "Text frames of a recorded trace");
  render->add_option("--trace", trace_path, "Trace JSON file")->required()->check(CLI::ExistingFile);
  auto* t_opt = render->add_option("--t", frame_t, "Timestep to draw");
  auto* anim_opt = render->add_flag("--animate", animate, "Draw every frame");
  t_opt->excludes(anim_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    fw_config* raw = nullptr;
    check(config_path.empty() ? fw_config_new(&raw) : fw_config_load(config_path.c_str(), &raw));
    ConfigPtr config(raw);
    if (deterministic) check(fw_config_set_deterministic(config.get(), 1));
    if (no_rollout) check(fw_config_set_rollout(config.get(), 0));

    if (print_config) {
      size_t len = 0;
      check(fw_config_to_json(config.get(), nullptr, 0, &len));
      std::string text(len + 1, '\0');
      check(fw_config_to_json(config.get(), text.data(), text.size(), &len));
      text.resize(len);
      std::cout << text;
      if (app.get_subcommands().empty()) return kExitOk;
    }
    if (app.get_subcommands().empty()) {
      std::cerr << app.help();
      return kExitUsage;
    }

    if (*solve) {
      fw_solution* s = nullptr;
      check(fw_solve(config.get(), seed, start_t, &s));
      SolutionPtr sol(s);
      std::cout << "seed\t" << seed << "\n"
                << "start_t\t" << fw_solution_start_t(sol.get()) << "\n"
                << "length\t" << fw_solution_length(sol.get()) << "\n"
                << "actions\t" << fw_solution_actions(sol.get()) << "\n"
                << "nodes_expanded\t" << fw_solution_nodes_expanded(sol.get()) << "\n"
                << "nodes_created\t" << fw_solution_nodes_created(sol.get()) << "\n";
    } else if (*play) {
      fw_trace* t = nullptr;
      check(fw_play(config.get(), seed, &t));
      TracePtr trace(t);
      if (!out_path.empty()) check(fw_trace_save(trace.get(), out_path.c_str()));
      std::cout << "seed\t" << seed << "\n"
                << "score\t" << fw_trace_score(trace.get()) << "\n"
                << "timesteps\t" << fw_trace_action_count(trace.get()) << "\n"
                << "crossing\tstart_t\tlength\n";
      for (size_t i = 0; i < fw_trace_crossing_count(trace.get()); ++i) {
        int32_t st = 0, len = 0;
        check(fw_trace_crossing(trace.get(), i, &st, &len));
        std::cout << i << "\t" << st << "\t" << len << "\n";
      }
    } else if (*baseline) {
      std::uint64_t first = 0, last = 0;
      if (!parse_seed_range(seeds_text, first, last)) {
        std::cerr << "freeway: --seeds expects A..B with A <= B, got '" << seeds_text << "'\n";
        return kExitUsage;
      }
      std::vector<int32_t> scores(static_cast<std::size_t>(last - first + 1));
      check(fw_baseline(config.get(), first, scores.size(), workers, scores.data()));
      std::map<int32_t, std::size_t> distribution;
      std::cout << "seed\tscore\n";
      for (std::size_t i = 0; i < scores.size(); ++i) {
        std::cout << first + i << "\t" << scores[i] << "\n";
        ++distribution[scores[i]];
      }
      std::cout << "\nscore\tseeds\n";
      for (const auto& [score, count] : distribution) std::cout << score << "\t" << count << "\n";
    } else if (*dataset) {
      fw_dataset* d = nullptr;
      check(fw_dataset_generate(config.get(), n, sampling_seed, workers, &d));
      DatasetPtr data(d);
      check(fw_dataset_save(data.get(), out_path.c_str()));
      std::size_t solvable = 0, all_up = 0;
      long total = 0;
      int32_t min_len = 0, max_len = 0;
      for (size_t i = 0; i < fw_dataset_size(data.get()); ++i) {
        fw_dataset_row row{};
        check(fw_dataset_row_at(data.get(), i, &row));
        if (!row.solvable) continue;
        if (solvable == 0 || row.length < min_len) min_len = row.length;
        if (solvable == 0 || row.length > max_len) max_len = row.length;
        ++solvable;
        all_up += row.all_up ? 1 : 0;
        total += row.length;
      }
      char buf[64];
      std::cout << "scenarios\t" << fw_dataset_size(data.get()) << "\n"
                << "solvable\t" << solvable << "\n"
                << "all_up\t" << all_up << "\n";
      if (solvable > 0) {
        std::snprintf(buf, sizeof(buf), "%.4f", static_cast<double>(all_up) / static_cast<double>(solvable));
        std::cout << "all_up_fraction\t" << buf << "\n";
        std::snprintf(buf, sizeof(buf), "%.2f", static_cast<double>(total) / static_cast<double>(solvable));
        std::cout << "mean_length\t" << buf << "\n"
                  << "min_length\t" << min_len << "\n"
                  << "max_length\t" << max_len << "\n";
      }
      size_t nbins = 0;
      check(fw_dataset_histogram(data.get(), bin_width, nullptr, nullptr, 0, &nbins));
      std::vector<int32_t> lo(nbins);
      std::vector<uint64_t> counts(nbins);
      check(fw_dataset_histogram(data.get(), bin_width, lo.data(), counts.data(), nbins, &nbins));
      std::cout << "\nbin_lo\tcount\n";
      for (size_t i = 0; i < nbins; ++i) std::cout << lo[i] << "\t" << counts[i] << "\n";
    } else if (*render) {
      fw_trace* t = nullptr;
      check(fw_trace_load(trace_path.c_str(), &t));
      TracePtr trace(t);
      if (animate) {
        for (size_t k = 0; k <= fw_trace_action_count(trace.get()); ++k) {
          if (k) std::cout << "\n";
          std::cout << render_frame(trace.get(), config.get(), static_cast<int32_t>(k));
        }
      } else {
        std::cout << render_frame(trace.get(), config.get(), frame_t);
      }
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
