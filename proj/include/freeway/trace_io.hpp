#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "freeway/experiments.hpp"

namespace freeway::trace_io {

inline constexpr const char* kDatasetHeader = "seed,start_t,length,actions,all_up,solvable";

// One line of a scenario dataset. Unsolvable rows carry length 0, no actions
// and all_up 0.
struct DatasetRow {
  std::uint64_t seed = 0;
  int start_t = 0;
  int length = 0;
  std::string actions;
  bool all_up = false;
  bool solvable = false;

  friend bool operator==(const DatasetRow&, const DatasetRow&) = default;
};

DatasetRow to_row(const experiments::ScenarioResult& result);

// Throws ParseError on the first invariant a row violates.
void validate_row(const DatasetRow& row, std::size_t line = 0);

void write_dataset(std::ostream& out, const std::vector<DatasetRow>& rows);
void write_dataset(const std::vector<DatasetRow>& rows, const std::string& path);
std::vector<DatasetRow> read_dataset(std::istream& in);
std::vector<DatasetRow> read_dataset(const std::string& path);

std::string trace_to_json(const experiments::GameTrace& trace);
experiments::GameTrace trace_from_json(const std::string& text);
void write_trace(const experiments::GameTrace& trace, const std::string& path);
experiments::GameTrace read_trace(const std::string& path);

inline constexpr int kRenderColumns = 40;

// Text frame of the road at timestep t: a header, the top strip, lanes 9..0
// and the start strip. Every line has the same width.
std::string render_ascii(const experiments::GameTrace& trace, int t, const GameConfig& config);

}  // namespace freeway::trace_io
