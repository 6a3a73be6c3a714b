#pragma once

#include <optional>
#include <vector>

#include "efpa/core.hpp"

namespace efpa {

// Bipartite like-graph of a binary instance: agents on the left, resources
// on the right, an edge wherever the utility is 1.
struct LikeGraph {
  int n_left = 0;
  int m_right = 0;
  std::vector<std::vector<int>> adjacency;  // per agent, ascending resource ids

  bool operator==(const LikeGraph&) const = default;
};

// Throws std::invalid_argument unless the instance is binary.
LikeGraph build_like_graph(const Instance& instance);

struct Matching {
  std::vector<std::optional<int>> pair_of_left;   // length n
  std::vector<std::optional<int>> pair_of_right;  // length m

  int cardinality() const;

  bool operator==(const Matching&) const = default;
};

// Maximum-cardinality matching via layered augmentation. Deterministic:
// vertices and edges are always scanned in ascending index order.
Matching maximum_matching(const LikeGraph& graph);

// The unique split of the graph such that all envy-free matchings live in
// the induced subgraph on (x_l, y_l). Index sets are kept sorted.
struct EfmPartition {
  std::vector<int> x_s, x_l;
  std::vector<int> y_s, y_l;

  bool operator==(const EfmPartition&) const = default;
};

// Seeds a maximum matching, then walks alternating paths (non-matching
// edges leftward-out, matching edges rightward-out) from every unsaturated
// left vertex; everything reached forms the S side.
EfmPartition efm_partition(const LikeGraph& graph);

// An x_l-saturating matching inside the induced subgraph on (x_l, y_l);
// always an envy-free matching of the whole graph.
Matching max_envy_free_matching(const LikeGraph& graph);

// True iff no unmatched left vertex is adjacent to any matched right vertex.
bool is_envy_free_matching(const LikeGraph& graph, const Matching& matching);

}  // namespace efpa
