#include "efpa/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace efpa {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

// Hopcroft-Karp phases over plain adjacency lists. Left vertices and their
// neighbors are scanned in ascending order so the result is a pure function
// of the graph.
class HopcroftKarp {
 public:
  explicit HopcroftKarp(const LikeGraph& graph)
      : graph_(graph),
        pair_left_(graph.n_left, -1),
        pair_right_(graph.m_right, -1),
        dist_(graph.n_left, kInf) {}

  Matching run() {
    while (bfs_layers()) {
      for (int x = 0; x < graph_.n_left; ++x) {
        if (pair_left_[x] == -1) {
          augment(x);
        }
      }
    }
    Matching matching;
    matching.pair_of_left.resize(graph_.n_left);
    matching.pair_of_right.resize(graph_.m_right);
    for (int x = 0; x < graph_.n_left; ++x) {
      if (pair_left_[x] != -1) matching.pair_of_left[x] = pair_left_[x];
    }
    for (int y = 0; y < graph_.m_right; ++y) {
      if (pair_right_[y] != -1) matching.pair_of_right[y] = pair_right_[y];
    }
    return matching;
  }

 private:
  bool bfs_layers() {
    std::queue<int> queue;
    for (int x = 0; x < graph_.n_left; ++x) {
      if (pair_left_[x] == -1) {
        dist_[x] = 0;
        queue.push(x);
      } else {
        dist_[x] = kInf;
      }
    }
    bool reachable_free_right = false;
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop();
      for (int y : graph_.adjacency[x]) {
        const int next = pair_right_[y];
        if (next == -1) {
          reachable_free_right = true;
        } else if (dist_[next] == kInf) {
          dist_[next] = dist_[x] + 1;
          queue.push(next);
        }
      }
    }
    return reachable_free_right;
  }

  bool augment(int x) {
    for (int y : graph_.adjacency[x]) {
      const int next = pair_right_[y];
      if (next == -1 || (dist_[next] == dist_[x] + 1 && augment(next))) {
        pair_left_[x] = y;
        pair_right_[y] = x;
        return true;
      }
    }
    dist_[x] = kInf;
    return false;
  }

  const LikeGraph& graph_;
  std::vector<int> pair_left_;
  std::vector<int> pair_right_;
  std::vector<int> dist_;
};

void validate_graph(const LikeGraph& graph) {
  if (graph.adjacency.size() != static_cast<std::size_t>(graph.n_left)) {
    throw std::invalid_argument("like-graph adjacency size mismatch");
  }
  for (const auto& neighbors : graph.adjacency) {
    if (!std::is_sorted(neighbors.begin(), neighbors.end())) {
      throw std::invalid_argument("like-graph adjacency must be ascending");
    }
    for (int y : neighbors) {
      if (y < 0 || y >= graph.m_right) {
        throw std::invalid_argument("like-graph neighbor out of range");
      }
    }
  }
}

void validate_matching(const LikeGraph& graph, const Matching& matching) {
  if (matching.pair_of_left.size() != static_cast<std::size_t>(graph.n_left) ||
      matching.pair_of_right.size() != static_cast<std::size_t>(graph.m_right)) {
    throw std::invalid_argument("matching dimensions do not fit the graph");
  }
  for (int x = 0; x < graph.n_left; ++x) {
    const auto& y = matching.pair_of_left[x];
    if (!y) continue;
    if (*y < 0 || *y >= graph.m_right ||
        matching.pair_of_right[*y] != std::optional<int>(x)) {
      throw std::invalid_argument("matching vectors are inconsistent");
    }
    const auto& adj = graph.adjacency[x];
    if (!std::binary_search(adj.begin(), adj.end(), *y)) {
      throw std::invalid_argument("matched edge is not in the graph");
    }
  }
  for (int y = 0; y < graph.m_right; ++y) {
    const auto& x = matching.pair_of_right[y];
    if (x && matching.pair_of_left[*x] != std::optional<int>(y)) {
      throw std::invalid_argument("matching vectors are inconsistent");
    }
  }
}

}  // namespace

LikeGraph build_like_graph(const Instance& instance) {
  if (classify_utilities(instance).tag != UtilityClass::Tag::Binary) {
    throw std::invalid_argument("like-graph requires binary utilities");
  }
  LikeGraph graph;
  graph.n_left = instance.n_agents();
  graph.m_right = instance.m_resources();
  graph.adjacency.resize(graph.n_left);
  for (int a = 0; a < graph.n_left; ++a) {
    for (int r = 0; r < graph.m_right; ++r) {
      if (instance.utility(a, r) == 1) {
        graph.adjacency[a].push_back(r);
      }
    }
  }
  return graph;
}

int Matching::cardinality() const {
  int count = 0;
  for (const auto& y : pair_of_left) {
    if (y) ++count;
  }
  return count;
}

Matching maximum_matching(const LikeGraph& graph) {
  validate_graph(graph);
  return HopcroftKarp(graph).run();
}

EfmPartition efm_partition(const LikeGraph& graph) {
  validate_graph(graph);
  const Matching matching = HopcroftKarp(graph).run();

  std::vector<char> seen_left(graph.n_left, 0);
  std::vector<char> seen_right(graph.m_right, 0);
  std::queue<int> frontier;  // left vertices
  for (int x = 0; x < graph.n_left; ++x) {
    if (!matching.pair_of_left[x]) {
      seen_left[x] = 1;
      frontier.push(x);
    }
  }
  while (!frontier.empty()) {
    const int x = frontier.front();
    frontier.pop();
    for (int y : graph.adjacency[x]) {
      if (matching.pair_of_left[x] == std::optional<int>(y)) continue;
      if (seen_right[y]) continue;
      seen_right[y] = 1;
      const auto& next = matching.pair_of_right[y];
      if (next && !seen_left[*next]) {
        seen_left[*next] = 1;
        frontier.push(*next);
      }
    }
  }

  EfmPartition partition;
  for (int x = 0; x < graph.n_left; ++x) {
    (seen_left[x] ? partition.x_s : partition.x_l).push_back(x);
  }
  for (int y = 0; y < graph.m_right; ++y) {
    (seen_right[y] ? partition.y_s : partition.y_l).push_back(y);
  }
  return partition;
}

Matching max_envy_free_matching(const LikeGraph& graph) {
  validate_graph(graph);
  const Matching matching = HopcroftKarp(graph).run();
  const EfmPartition partition = efm_partition(graph);

  // The seeded maximum matching pairs every x_l vertex inside y_l, so its
  // restriction to x_l is already the x_l-saturating matching we need.
  std::vector<char> keep_left(graph.n_left, 0);
  for (int x : partition.x_l) keep_left[x] = 1;

  Matching restricted;
  restricted.pair_of_left.resize(graph.n_left);
  restricted.pair_of_right.resize(graph.m_right);
  for (int x = 0; x < graph.n_left; ++x) {
    if (!keep_left[x] || !matching.pair_of_left[x]) continue;
    const int y = *matching.pair_of_left[x];
    restricted.pair_of_left[x] = y;
    restricted.pair_of_right[y] = x;
  }
  for (int x : partition.x_l) {
    if (!restricted.pair_of_left[x]) {
      throw std::logic_error("partition invariant violated: x_l vertex unmatched");
    }
  }
  return restricted;
}

bool is_envy_free_matching(const LikeGraph& graph, const Matching& matching) {
  validate_graph(graph);
  validate_matching(graph, matching);
  for (int x = 0; x < graph.n_left; ++x) {
    if (matching.pair_of_left[x]) continue;
    for (int y : graph.adjacency[x]) {
      if (matching.pair_of_right[y]) return false;
    }
  }
  return true;
}

}  // namespace efpa
