#include "freeway/trace_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace freeway::trace_io {

namespace {

using Json = nlohmann::ordered_json;

template <typename Int>
Int parse_int(const std::string& field, const char* name, std::size_t line) {
  Int value{};
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end)
    throw ParseError(std::string("field '") + name + "' is not an integer: '" + field + "'", line);
  return value;
}

bool parse_flag(const std::string& field, const char* name, std::size_t line) {
  if (field == "0") return false;
  if (field == "1") return true;
  throw ParseError(std::string("field '") + name + "' must be 0 or 1, got '" + field + "'", line);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return in;
}

}  // namespace

DatasetRow to_row(const experiments::ScenarioResult& result) {
  DatasetRow row;
  row.seed = result.spec.seed;
  row.start_t = result.spec.start_t;
  row.solvable = result.solvable;
  if (result.solvable) {
    row.length = result.length;
    row.actions = result.actions;
    row.all_up = result.all_up;
  }
  return row;
}

void validate_row(const DatasetRow& row, std::size_t line) {
  if (row.start_t < 0) throw ParseError("start_t must be non-negative", line);
  for (char c : row.actions)
    if (c < '0' || c > '2') throw ParseError(std::string("action character '") + c + "' not in {0,1,2}", line);
  if (row.solvable) {
    if (row.length < 1 || static_cast<std::size_t>(row.length) != row.actions.size())
      throw ParseError("length does not match the action count", line);
    const bool up_only = std::all_of(row.actions.begin(), row.actions.end(), [](char c) { return c == '1'; });
    if (row.all_up != up_only) throw ParseError("all_up flag disagrees with the actions", line);
  } else if (row.length != 0 || !row.actions.empty() || row.all_up) {
    throw ParseError("unsolvable rows must have length 0, no actions and all_up 0", line);
  }
}

void write_dataset(std::ostream& out, const std::vector<DatasetRow>& rows) {
  out << kDatasetHeader << '\n';
  for (const DatasetRow& r : rows) {
    validate_row(r);
    out << r.seed << ',' << r.start_t << ',' << r.length << ',' << r.actions << ',' << (r.all_up ? 1 : 0) << ','
        << (r.solvable ? 1 : 0) << '\n';
  }
}

void write_dataset(const std::vector<DatasetRow>& rows, const std::string& path) {
  std::ofstream out = open_out(path);
  write_dataset(out, rows);
  if (!out) throw Error("failed writing '" + path + "'");
}

std::vector<DatasetRow> read_dataset(std::istream& in) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) throw ParseError("missing header", lineno);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kDatasetHeader) throw ParseError("unexpected header '" + line + "'", lineno);

  std::vector<DatasetRow> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (in.peek() == std::char_traits<char>::eof()) break;
      throw ParseError("blank line", lineno);
    }
    const auto fields = split_csv(line);
    if (fields.size() != 6)
      throw ParseError("expected 6 fields, got " + std::to_string(fields.size()), lineno);
    DatasetRow r;
    r.seed = parse_int<std::uint64_t>(fields[0], "seed", lineno);
    r.start_t = parse_int<int>(fields[1], "start_t", lineno);
    r.length = parse_int<int>(fields[2], "length", lineno);
    r.actions = fields[3];
    r.all_up = parse_flag(fields[4], "all_up", lineno);
    r.solvable = parse_flag(fields[5], "solvable", lineno);
    validate_row(r, lineno);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<DatasetRow> read_dataset(const std::string& path) {
  std::ifstream in = open_in(path);
  return read_dataset(in);
}

std::string trace_to_json(const experiments::GameTrace& trace) {
  Json j;
  j["seed"] = trace.seed;
  j["actions"] = actions_to_string(trace.actions);
  j["score"] = trace.score;
  Json crossings = Json::array();
  for (const auto& c : trace.crossings) crossings.push_back(Json{{"start_t", c.start_t}, {"length", c.length}});
  j["crossings"] = std::move(crossings);
  j["y_series"] = trace.y_series;
  return j.dump(1) + "\n";
}

experiments::GameTrace trace_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("trace is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("trace must be a JSON object");
  static const std::vector<std::string> keys{"seed", "actions", "score", "crossings", "y_series"};
  for (const auto& item : j.items())
    if (std::find(keys.begin(), keys.end(), item.key()) == keys.end())
      throw ParseError("unknown trace field '" + item.key() + "'");
  for (const auto& k : keys)
    if (!j.contains(k)) throw ParseError("trace is missing field '" + k + "'");

  auto non_negative = [](const Json& v, const std::string& what) {
    if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0))
      throw ParseError(what + " must be a non-negative integer");
    return v.get<std::int64_t>();
  };

  experiments::GameTrace trace;
  if (!j["seed"].is_number_unsigned()) throw ParseError("seed must be a non-negative integer");
  trace.seed = j["seed"].get<std::uint64_t>();
  if (!j["actions"].is_string()) throw ParseError("actions must be a string");
  try {
    trace.actions = actions_from_string(j["actions"].get<std::string>());
  } catch (const UsageError& e) {
    throw ParseError(e.what());
  }
  trace.score = static_cast<int>(non_negative(j["score"], "score"));
  if (!j["crossings"].is_array()) throw ParseError("crossings must be an array");
  for (const Json& c : j["crossings"]) {
    if (!c.is_object() || c.size() != 2 || !c.contains("start_t") || !c.contains("length"))
      throw ParseError("each crossing must be {start_t, length}");
    trace.crossings.push_back({static_cast<int>(non_negative(c["start_t"], "crossing start_t")),
                               static_cast<int>(non_negative(c["length"], "crossing length"))});
  }
  if (!j["y_series"].is_array()) throw ParseError("y_series must be an array");
  for (const Json& y : j["y_series"]) trace.y_series.push_back(static_cast<int>(non_negative(y, "y_series entry")));

  if (trace.y_series.size() != trace.actions.size() + 1)
    throw ParseError("y_series must have exactly one more entry than actions");
  if (static_cast<std::size_t>(trace.score) != trace.crossings.size())
    throw ParseError("score " + std::to_string(trace.score) + " does not match " +
                     std::to_string(trace.crossings.size()) + " crossings");
  return trace;
}

void write_trace(const experiments::GameTrace& trace, const std::string& path) {
  std::ofstream out = open_out(path);
  out << trace_to_json(trace);
  if (!out) throw Error("failed writing '" + path + "'");
}

experiments::GameTrace read_trace(const std::string& path) {
  std::ifstream in = open_in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return trace_from_json(buf.str());
}

std::string render_ascii(const experiments::GameTrace& trace, int t, const GameConfig& config) {
  if (t < 0 || static_cast<std::size_t>(t) >= trace.y_series.size())
    throw UsageError("timestep " + std::to_string(t) + " outside the trace (0.." +
                     std::to_string(static_cast<long>(trace.y_series.size()) - 1) + ")");
  const int y = trace.y_series[static_cast<std::size_t>(t)];
  int score = 0;
  for (const auto& c : trace.crossings)
    if (c.start_t + c.length <= t) ++score;

  // Rows top to bottom: 0 top strip, 1..10 lanes 9..0, 11 start strip.
  int chicken_row;
  if (y > lane_band(kLaneCount - 1, config).hi) {
    chicken_row = 0;
  } else if (y < lane_band(0, config).lo) {
    chicken_row = kLaneCount + 1;
  } else {
    const int lane = std::min(kLaneCount - 1, (y - config.lane_base) / config.lane_width_step);
    chicken_row = kLaneCount - lane;
  }
  const int chicken_col = ((config.collide_x_lo + config.collide_x_hi) / 2) * kRenderColumns / config.x_range;

  auto row_line = [&](const std::string& label, int row, int car_col, char car) {
    std::string cells(kRenderColumns, '.');
    if (car_col >= 0) cells[static_cast<std::size_t>(car_col)] = car;
    if (row == chicken_row) {
      char& c = cells[static_cast<std::size_t>(chicken_col)];
      c = (c == '.') ? 'C' : '*';
    }
    return label + " |" + cells + "|\n";
  };

  std::string frame;
  char header[64];
  std::snprintf(header, sizeof(header), "t=%-5d y=%-4d score=%-4d", t, y, score);
  std::string head(header);
  const std::size_t width = 6 + 2 + kRenderColumns + 1;
  head.resize(width, ' ');
  frame += head + "\n";
  frame += row_line("top   ", 0, -1, ' ');
  for (int lane = kLaneCount - 1; lane >= 0; --lane) {
    const int x = car_x(trace.seed, lane, t, config);
    const char car = config.directions[static_cast<std::size_t>(lane)] > 0 ? '>' : '<';
    char label[8];
    std::snprintf(label, sizeof(label), "lane%-2d", lane);
    frame += row_line(label, kLaneCount - lane, x * kRenderColumns / config.x_range, car);
  }
  frame += row_line("start ", kLaneCount + 1, -1, ' ');
  return frame;
}

}  // namespace freeway::trace_io
