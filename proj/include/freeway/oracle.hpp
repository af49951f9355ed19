#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "freeway/env.hpp"

// A-Star over (timestep, Y) nodes. The chicken's next Y depends on the whole
// action history, so each key is pinned to the first path that reached it and
// that path's replayed state defines the node's outgoing edges.
namespace freeway::oracle {

struct NodeKey {
  int t = 0;
  int y = 0;

  friend bool operator==(const NodeKey&, const NodeKey&) = default;
};

enum class NodeKind : std::uint8_t { Open, Closed, Collision, Terminal };

struct NodeRecord {
  NodeKey key;
  int g = 0;
  std::optional<NodeKey> parent;
  std::optional<Action> action_from_parent;
  NodeKind kind = NodeKind::Open;
  // State reached by replaying the canonical path; collision and terminal
  // nodes keep the post-step state (knocked back or reset to the bottom).
  std::optional<GameState> cached_state;
};

// Nodes of one solve, addressable by key. Keys are confined to the slab
// t in [t_origin, t_limit], y in [y_min, y_cap].
class SearchGraph {
 public:
  SearchGraph(int t_origin, int t_limit, int y_min, int y_cap);

  const NodeRecord* find(NodeKey key) const;
  std::optional<std::size_t> index_of(NodeKey key) const;
  bool contains(NodeKey key) const { return index_of(key).has_value(); }

  // Returns the new node's index. The key must not exist yet.
  std::size_t insert(NodeRecord record);

  const NodeRecord& at(std::size_t index) const { return nodes_[index]; }
  NodeRecord& at(std::size_t index) { return nodes_[index]; }
  std::span<const NodeRecord> nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }

  int t_origin() const { return t_origin_; }
  int t_limit() const { return t_limit_; }

 private:
  std::size_t slot(NodeKey key) const;
  bool in_slab(NodeKey key) const;

  int t_origin_;
  int t_limit_;
  int y_min_;
  int y_cap_;
  std::vector<std::int32_t> slots_;
  std::vector<NodeRecord> nodes_;
};

struct SearchOptions {
  // false gives uniform-cost search over the same pinned graph.
  bool use_heuristic = true;
  bool rollout = true;
  // Keep the f-value of every popped node.
  bool record_pops = false;
};

struct CrossingSolution {
  NodeKey start;
  std::vector<Action> actions;
  int length = 0;
  std::uint64_t nodes_expanded = 0;
  std::uint64_t nodes_created = 0;
};

// Remaining-timestep lower bound: every step covers at most step_max Y units.
int heuristic(int y, const GameConfig& config);

// Actions along parent links from the start node to `terminal`, forward order.
std::vector<Action> reconstruct_path(const SearchGraph& graph, NodeKey terminal);

class CrossingSearch {
 public:
  // The start state must have cooldown 0 and an unfinished game.
  CrossingSearch(const GameState& start, const GameConfig& config, SearchOptions options = {});

  // Runs to the first popped terminal. Throws NoPathError when the frontier
  // empties. Call once.
  CrossingSolution run();

  // One A-Star expansion in Up, Stay, Down order. Returns the indices of the
  // nodes it created; existing keys keep their parent.
  std::vector<std::size_t> expand(std::size_t node);

  // Chains Up actions from `from` until a collision, a terminal, an existing
  // key or the game end. Returns the indices of the created chain.
  std::vector<std::size_t> rollout_up(std::size_t from);

  const SearchGraph& graph() const { return graph_; }
  std::size_t start_index() const { return 0; }
  const std::vector<int>& popped_f() const { return popped_f_; }
  std::uint64_t nodes_expanded() const { return nodes_expanded_; }

 private:
  struct FrontierEntry {
    int f;
    int g;
    std::uint64_t seq;
    std::size_t node;
  };
  struct FrontierOrder {
    // priority_queue keeps the "largest" on top, so invert: smaller f first,
    // then larger g, then earlier insertion.
    bool operator()(const FrontierEntry& a, const FrontierEntry& b) const {
      if (a.f != b.f) return a.f > b.f;
      if (a.g != b.g) return a.g < b.g;
      return a.seq > b.seq;
    }
  };

  int estimate(int y) const;
  void push(std::size_t node);
  // Steps the node's canonical state with `action`; creates and returns the
  // child unless its key already exists.
  std::optional<std::size_t> make_child(std::size_t parent, Action action);

  GameConfig config_;
  SearchOptions options_;
  SearchGraph graph_;
  std::priority_queue<FrontierEntry, std::vector<FrontierEntry>, FrontierOrder> frontier_;
  std::uint64_t next_seq_ = 0;
  std::uint64_t nodes_expanded_ = 0;
  std::vector<int> popped_f_;
  bool ran_ = false;
};

// Replays `prefix` from a fresh game and solves the next crossing. The
// returned actions follow the prefix.
CrossingSolution solve_crossing(std::uint64_t seed, std::span<const Action> prefix, const GameConfig& config,
                                SearchOptions options = {});

CrossingSolution solve_crossing_from(const GameState& start, const GameConfig& config, SearchOptions options = {});

}  // namespace freeway::oracle
