#include "freeway/oracle.hpp"

#include <algorithm>
#include <string>

namespace freeway::oracle {

namespace {

std::string describe(NodeKey key) {
  return "(" + std::to_string(key.t) + ", " + std::to_string(key.y) + ")";
}

}  // namespace

SearchGraph::SearchGraph(int t_origin, int t_limit, int y_min, int y_cap)
    : t_origin_(t_origin), t_limit_(t_limit), y_min_(y_min), y_cap_(y_cap) {
  const auto rows = static_cast<std::size_t>(t_limit - t_origin + 1);
  const auto cols = static_cast<std::size_t>(y_cap - y_min + 1);
  slots_.assign(rows * cols, -1);
}

bool SearchGraph::in_slab(NodeKey key) const {
  return key.t >= t_origin_ && key.t <= t_limit_ && key.y >= y_min_ && key.y <= y_cap_;
}

std::size_t SearchGraph::slot(NodeKey key) const {
  const auto cols = static_cast<std::size_t>(y_cap_ - y_min_ + 1);
  return static_cast<std::size_t>(key.t - t_origin_) * cols + static_cast<std::size_t>(key.y - y_min_);
}

std::optional<std::size_t> SearchGraph::index_of(NodeKey key) const {
  if (!in_slab(key)) return std::nullopt;
  const std::int32_t s = slots_[slot(key)];
  if (s < 0) return std::nullopt;
  return static_cast<std::size_t>(s);
}

const NodeRecord* SearchGraph::find(NodeKey key) const {
  auto idx = index_of(key);
  return idx ? &nodes_[*idx] : nullptr;
}

std::size_t SearchGraph::insert(NodeRecord record) {
  if (!in_slab(record.key)) throw ConsistencyError("node key " + describe(record.key) + " outside the search slab");
  std::int32_t& s = slots_[slot(record.key)];
  if (s >= 0) throw ConsistencyError("node key " + describe(record.key) + " already pinned");
  s = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(std::move(record));
  return nodes_.size() - 1;
}

int heuristic(int y, const GameConfig& config) {
  if (y >= config.y_cross) return 0;
  return (config.y_cross - y + config.step_max - 1) / config.step_max;
}

std::vector<Action> reconstruct_path(const SearchGraph& graph, NodeKey terminal) {
  const NodeRecord* node = graph.find(terminal);
  if (!node) throw ConsistencyError("no node at " + describe(terminal));
  const int terminal_g = node->g;
  std::vector<Action> actions;
  while (node->parent) {
    if (!node->action_from_parent) throw ConsistencyError("node " + describe(node->key) + " has a parent but no action");
    actions.push_back(*node->action_from_parent);
    const NodeRecord* parent = graph.find(*node->parent);
    if (!parent || parent->g + 1 != node->g)
      throw ConsistencyError("broken parent chain at " + describe(node->key));
    node = parent;
  }
  if (static_cast<int>(actions.size()) != terminal_g - node->g)
    throw ConsistencyError("path length disagrees with g at " + describe(terminal));
  std::reverse(actions.begin(), actions.end());
  return actions;
}

CrossingSearch::CrossingSearch(const GameState& start, const GameConfig& config, SearchOptions options)
    : config_(config),
      options_(options),
      graph_(start.t, std::max(start.t, game_length(start.seed, config)), config.y_min, config.y_cap) {
  if (start.t >= graph_.t_limit()) throw UsageError("cannot search from a finished game");
  if (start.cooldown > 0) throw UsageError("search start must have cooldown 0; burn the cooldown first");
  if (start.y >= config.y_cross) throw UsageError("search start is already across the road");
  NodeRecord root;
  root.key = {start.t, start.y};
  root.g = 0;
  root.kind = NodeKind::Open;
  root.cached_state = start;
  graph_.insert(std::move(root));
}

int CrossingSearch::estimate(int y) const { return options_.use_heuristic ? heuristic(y, config_) : 0; }

void CrossingSearch::push(std::size_t node) {
  const NodeRecord& r = graph_.at(node);
  frontier_.push({r.g + estimate(r.key.y), r.g, next_seq_++, node});
}

std::optional<std::size_t> CrossingSearch::make_child(std::size_t parent, Action action) {
  const NodeRecord& p = graph_.at(parent);
  if (p.key.t >= graph_.t_limit()) return std::nullopt;
  GameState state = *p.cached_state;
  const StepResult r = advance(state, action, config_);
  const NodeKey key{r.t_after, r.moved_y};
  if (graph_.contains(key)) return std::nullopt;

  NodeRecord child;
  child.key = key;
  child.g = p.g + 1;
  child.parent = p.key;
  child.action_from_parent = action;
  child.kind = r.collided ? NodeKind::Collision : (r.crossed ? NodeKind::Terminal : NodeKind::Open);
  child.cached_state = state;
  const std::size_t idx = graph_.insert(std::move(child));
  if (graph_.at(idx).kind != NodeKind::Collision) push(idx);
  return idx;
}

std::vector<std::size_t> CrossingSearch::expand(std::size_t node) {
  NodeRecord& r = graph_.at(node);
  if (r.kind != NodeKind::Open) throw UsageError("only open nodes can be expanded");
  r.kind = NodeKind::Closed;
  ++nodes_expanded_;
  std::vector<std::size_t> created;
  for (Action a : kExpansionOrder)
    if (auto child = make_child(node, a)) created.push_back(*child);
  return created;
}

std::vector<std::size_t> CrossingSearch::rollout_up(std::size_t from) {
  const NodeKind k = graph_.at(from).kind;
  if (k == NodeKind::Collision || k == NodeKind::Terminal)
    throw UsageError("rollout must start from a non-collision, non-terminal node");
  std::vector<std::size_t> chain;
  std::size_t current = from;
  while (auto next = make_child(current, Action::Up)) {
    chain.push_back(*next);
    if (graph_.at(*next).kind != NodeKind::Open) break;
    current = *next;
  }
  return chain;
}

CrossingSolution CrossingSearch::run() {
  if (ran_) throw UsageError("CrossingSearch::run called twice");
  ran_ = true;
  push(start_index());
  while (!frontier_.empty()) {
    const FrontierEntry top = frontier_.top();
    frontier_.pop();
    if (options_.record_pops) popped_f_.push_back(top.f);
    const NodeRecord& node = graph_.at(top.node);
    if (node.kind == NodeKind::Terminal) {
      CrossingSolution sol;
      sol.start = graph_.at(start_index()).key;
      sol.actions = reconstruct_path(graph_, node.key);
      sol.length = static_cast<int>(sol.actions.size());
      sol.nodes_expanded = nodes_expanded_;
      sol.nodes_created = graph_.size();
      return sol;
    }
    if (node.kind != NodeKind::Open) continue;
    if (options_.rollout) rollout_up(top.node);
    expand(top.node);
  }
  throw NoPathError("no crossing reachable before the game ends (start t=" +
                    std::to_string(graph_.at(start_index()).key.t) + ")");
}

CrossingSolution solve_crossing_from(const GameState& start, const GameConfig& config, SearchOptions options) {
  CrossingSearch search(start, config, options);
  return search.run();
}

CrossingSolution solve_crossing(std::uint64_t seed, std::span<const Action> prefix, const GameConfig& config,
                                SearchOptions options) {
  return solve_crossing_from(replay(seed, prefix, config), config, options);
}

}  // namespace freeway::oracle
