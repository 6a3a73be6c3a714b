#include "efpa/solvers.hpp"

#include <algorithm>
#include <map>

#include "efpa/matching.hpp"

namespace efpa {

namespace {

using Clock = std::chrono::steady_clock;

SolverResult finish_no(std::string algorithm, std::int64_t nodes, Clock::time_point started) {
  SolverResult result;
  result.answer = Answer::No;
  result.stats.algorithm_used = std::move(algorithm);
  result.stats.nodes_explored = nodes;
  result.stats.elapsed = Clock::now() - started;
  return result;
}

// All YES paths funnel through here so a defective witness can never escape.
SolverResult finish_yes(const Instance& instance, Measure measure, std::int64_t threshold,
                        Allocation witness, std::string algorithm, std::int64_t nodes,
                        Clock::time_point started) {
  const VerifyReport report = verify_allocation(instance, witness, measure, threshold);
  if (!report.ok) {
    throw std::logic_error("solver produced an invalid witness: " + report.diagnostic);
  }
  SolverResult result;
  result.answer = Answer::Yes;
  result.witness = std::move(witness);
  result.stats.algorithm_used = std::move(algorithm);
  result.stats.nodes_explored = nodes;
  result.stats.elapsed = Clock::now() - started;
  return result;
}

void require_binary(const Instance& instance) {
  if (classify_utilities(instance).tag != UtilityClass::Tag::Binary) {
    throw std::invalid_argument("this algorithm requires binary utilities");
  }
}

void require_threshold_at_least(std::int64_t threshold, std::int64_t minimum) {
  if (threshold < minimum) {
    throw std::invalid_argument("threshold below what this algorithm covers");
  }
}

Allocation allocation_from_matching(const Instance& instance, const Matching& matching) {
  Allocation allocation = Allocation::empty(instance.m_resources());
  for (int r = 0; r < instance.m_resources(); ++r) {
    if (matching.pair_of_right[r]) allocation.owner[r] = *matching.pair_of_right[r];
  }
  return allocation;
}

// Bounded first-success search over owner vectors of a resource subset.
// Owner candidates are tried in index order, then Unallocated, so the first
// accepted allocation is deterministic. `size_lower_bound` enables the sound
// cardinality prune; utility pruning uses the fact that a binary resource
// adds at most one unit of welfare.
class RestrictedEnumeration {
 public:
  RestrictedEnumeration(const Instance& instance, std::vector<int> resources,
                        std::vector<int> owners, Measure measure, std::int64_t threshold)
      : instance_(instance),
        resources_(std::move(resources)),
        owners_(std::move(owners)),
        measure_(measure),
        threshold_(threshold) {}

  std::optional<Allocation> run(std::int64_t& nodes) {
    current_ = Allocation::empty(instance_.m_resources());
    nodes_ = 0;
    const bool found = descend(0, 0, 0);
    nodes = nodes_;
    return found ? std::optional<Allocation>(current_) : std::nullopt;
  }

 private:
  bool accepted() const {
    ++nodes_;
    return measure_value(instance_, current_, measure_) >= threshold_ &&
           is_envy_free(instance_, current_);
  }

  bool descend(std::size_t depth, std::int64_t allocated, std::int64_t welfare) {
    if (depth == resources_.size()) {
      return accepted();
    }
    const std::int64_t remaining = static_cast<std::int64_t>(resources_.size() - depth);
    if (measure_ == Measure::Size && allocated + remaining < threshold_) return false;
    if (measure_ == Measure::Usw && welfare + remaining < threshold_) return false;

    const int r = resources_[depth];
    for (int owner : owners_) {
      current_.owner[r] = owner;
      const std::int64_t gain = instance_.utility(owner, r);
      if (descend(depth + 1, allocated + 1, welfare + gain)) return true;
    }
    current_.owner[r] = std::nullopt;
    return descend(depth + 1, allocated, welfare);
  }

  const Instance& instance_;
  const std::vector<int> resources_;
  const std::vector<int> owners_;
  const Measure measure_;
  const std::int64_t threshold_;
  Allocation current_;
  mutable std::int64_t nodes_ = 0;
};

// Groups `resources` by which of the `agents` like them; group keys and
// member lists stay in ascending order.
std::map<std::vector<int>, std::vector<int>> bucket_by_liked_set(
    const Instance& instance, const std::vector<int>& resources,
    const std::vector<int>& agents) {
  std::map<std::vector<int>, std::vector<int>> buckets;
  for (int r : resources) {
    std::vector<int> liked_by;
    for (int a : agents) {
      if (instance.utility(a, r) == 1) liked_by.push_back(a);
    }
    buckets[liked_by].push_back(r);
  }
  return buckets;
}

// Equal bundles of `per_agent` resources drawn from one bucket: agents in
// the liked set value every bundle alike, everyone else values them at zero.
Allocation equal_bundles_from_bucket(const Instance& instance, const std::vector<int>& agents,
                                     const std::vector<int>& bucket, std::int64_t per_agent) {
  Allocation allocation = Allocation::empty(instance.m_resources());
  std::size_t next = 0;
  for (int a : agents) {
    for (std::int64_t i = 0; i < per_agent; ++i) {
      allocation.owner[bucket[next++]] = a;
    }
  }
  return allocation;
}

}  // namespace

SolverResult solve_binary_esw(const Instance& instance, std::int64_t threshold) {
  const auto started = Clock::now();
  require_binary(instance);
  require_threshold_at_least(threshold, 0);

  const int n = instance.n_agents();
  const int m = instance.m_resources();
  // threshold > m makes the product check redundant and keeps it overflow-free.
  if (threshold > m || threshold * n > m) {
    return finish_no("esw-copy-matching", 0, started);
  }

  // t copies of each agent on the left, all resources on the right.
  LikeGraph copies;
  copies.n_left = static_cast<int>(threshold * n);
  copies.m_right = m;
  copies.adjacency.resize(copies.n_left);
  for (int a = 0; a < n; ++a) {
    std::vector<int> liked;
    for (int r = 0; r < m; ++r) {
      if (instance.utility(a, r) == 1) liked.push_back(r);
    }
    for (std::int64_t c = 0; c < threshold; ++c) {
      copies.adjacency[a * threshold + c] = liked;
    }
  }

  const Matching matching = maximum_matching(copies);
  if (matching.cardinality() < copies.n_left) {
    return finish_no("esw-copy-matching", matching.cardinality(), started);
  }
  Allocation witness = Allocation::empty(m);
  for (int r = 0; r < m; ++r) {
    if (matching.pair_of_right[r]) {
      witness.owner[r] = static_cast<int>(*matching.pair_of_right[r] / threshold);
    }
  }
  return finish_yes(instance, Measure::Esw, threshold, std::move(witness),
                    "esw-copy-matching", matching.cardinality(), started);
}

SolverResult solve_binary_usw(const Instance& instance, std::int64_t threshold) {
  const auto started = Clock::now();
  require_binary(instance);
  require_threshold_at_least(threshold, 1);

  // Binary welfare can never exceed the resource count.
  if (threshold > instance.m_resources()) {
    return finish_no("usw-efm-fpt", 0, started);
  }

  const LikeGraph graph = build_like_graph(instance);
  const EfmPartition partition = efm_partition(graph);

  if (partition.x_l.empty()) {
    return finish_no("usw-efm-fpt", 0, started);
  }
  if (static_cast<std::int64_t>(partition.x_l.size()) >= threshold) {
    Allocation witness = allocation_from_matching(instance, max_envy_free_matching(graph));
    return finish_yes(instance, Measure::Usw, threshold, std::move(witness), "usw-efm-fpt",
                      0, started);
  }

  // Resources nobody likes carry no welfare; they are dropped here and only
  // here (they still matter for the size measure).
  std::vector<int> liked_y_l;
  for (int r : partition.y_l) {
    for (int a : partition.x_l) {
      if (instance.utility(a, r) == 1) {
        liked_y_l.push_back(r);
        break;
      }
    }
  }

  const auto buckets = bucket_by_liked_set(instance, liked_y_l, partition.x_l);
  for (const auto& [liked_by, bucket] : buckets) {
    if (static_cast<std::int64_t>(bucket.size()) > threshold * threshold) {
      Allocation witness =
          equal_bundles_from_bucket(instance, partition.x_l, bucket, threshold);
      return finish_yes(instance, Measure::Usw, threshold, std::move(witness),
                        "usw-efm-fpt", 0, started);
    }
  }

  RestrictedEnumeration search(instance, liked_y_l, partition.x_l, Measure::Usw, threshold);
  std::int64_t nodes = 0;
  if (auto witness = search.run(nodes)) {
    return finish_yes(instance, Measure::Usw, threshold, std::move(*witness), "usw-efm-fpt",
                      nodes, started);
  }
  return finish_no("usw-efm-fpt", nodes, started);
}

SolverResult solve_binary_size(const Instance& instance, std::int64_t threshold) {
  const auto started = Clock::now();
  require_binary(instance);
  require_threshold_at_least(threshold, 1);

  const int n = instance.n_agents();
  const LikeGraph graph = build_like_graph(instance);
  const EfmPartition partition = efm_partition(graph);

  if (static_cast<std::int64_t>(partition.y_l.size()) < threshold) {
    return finish_no("size-efm-fpt", 0, started);
  }

  if (n > threshold) {
    // Matching witness, then x_s agents pick distinct leftover y_l resources
    // (worth nothing to them) until either side runs out.
    Allocation witness = allocation_from_matching(instance, max_envy_free_matching(graph));
    std::vector<int> leftovers;
    for (int r : partition.y_l) {
      if (!witness.owner[r]) leftovers.push_back(r);
    }
    std::size_t next = 0;
    for (int a : partition.x_s) {
      if (next >= leftovers.size()) break;
      witness.owner[leftovers[next++]] = a;
    }
    return finish_yes(instance, Measure::Size, threshold, std::move(witness), "size-efm-fpt",
                      0, started);
  }

  std::vector<int> all_agents(n);
  for (int a = 0; a < n; ++a) all_agents[a] = a;

  const auto buckets = bucket_by_liked_set(instance, partition.y_l, all_agents);
  for (const auto& [liked_by, bucket] : buckets) {
    if (static_cast<std::int64_t>(bucket.size()) >= threshold * n) {
      Allocation witness = equal_bundles_from_bucket(instance, all_agents, bucket, threshold);
      return finish_yes(instance, Measure::Size, threshold, std::move(witness),
                        "size-efm-fpt", 0, started);
    }
  }

  RestrictedEnumeration search(instance, partition.y_l, all_agents, Measure::Size, threshold);
  std::int64_t nodes = 0;
  if (auto witness = search.run(nodes)) {
    return finish_yes(instance, Measure::Size, threshold, std::move(*witness), "size-efm-fpt",
                      nodes, started);
  }
  return finish_no("size-efm-fpt", nodes, started);
}

SolverResult solve_binary_mcar(const Instance& instance, std::int64_t threshold,
                               const OracleBudget& budget) {
  const auto started = Clock::now();
  require_binary(instance);
  require_threshold_at_least(threshold, 0);

  if (threshold == 0) {
    return finish_yes(instance, Measure::Mcar, 0, Allocation::empty(instance.m_resources()),
                      "empty-allocation", 0, started);
  }
  if (threshold >= 2) {
    // No fast path is known beyond threshold 1.
    return oracle_solve(Query{instance, Measure::Mcar, threshold}, budget);
  }

  const LikeGraph graph = build_like_graph(instance);
  const EfmPartition partition = efm_partition(graph);
  if (static_cast<std::int64_t>(partition.y_l.size()) < instance.n_agents()) {
    return finish_no("mcar-efm-poly", 0, started);
  }

  Allocation witness = allocation_from_matching(instance, max_envy_free_matching(graph));
  std::vector<int> leftovers;
  for (int r : partition.y_l) {
    if (!witness.owner[r]) leftovers.push_back(r);
  }
  std::size_t next = 0;
  for (int a : partition.x_s) {
    witness.owner[leftovers[next++]] = a;
  }
  return finish_yes(instance, Measure::Mcar, threshold, std::move(witness), "mcar-efm-poly",
                    0, started);
}

SolverResult solve_bivalued_t1(const Instance& instance) {
  const auto started = Clock::now();
  const int n = instance.n_agents();
  const int m = instance.m_resources();
  for (int a = 0; a < n; ++a) {
    for (int r = 0; r < m; ++r) {
      const std::int64_t u = instance.utility(a, r);
      if (u != 1 && u != 2) {
        throw std::invalid_argument("this algorithm requires {1,2}-valued utilities");
      }
    }
  }

  // Phase 1: one resource per agent. Shifting every value down by one turns
  // the question into the binary exactly-one criterion |X| <= |y_l|, and a
  // singleton-bundle witness stays envy-free after shifting back.
  std::vector<std::vector<std::int64_t>> shifted(n, std::vector<std::int64_t>(m));
  for (int a = 0; a < n; ++a) {
    for (int r = 0; r < m; ++r) {
      shifted[a][r] = instance.utility(a, r) - 1;
    }
  }
  const Instance shifted_instance = Instance::make(std::move(shifted));
  const LikeGraph graph = build_like_graph(shifted_instance);
  const EfmPartition partition = efm_partition(graph);
  if (static_cast<std::int64_t>(partition.y_l.size()) >= n) {
    Allocation witness =
        allocation_from_matching(shifted_instance, max_envy_free_matching(graph));
    std::vector<int> leftovers;
    for (int r : partition.y_l) {
      if (!witness.owner[r]) leftovers.push_back(r);
    }
    std::size_t next = 0;
    for (int a : partition.x_s) {
      witness.owner[leftovers[next++]] = a;
    }
    return finish_yes(instance, Measure::Mcar, 1, std::move(witness), "bivalued-two-phase",
                      0, started);
  }

  // Phase 2: some agents take a single resource they value at 2, the rest
  // take exactly two resources. First success in index order wins.
  Allocation current = Allocation::empty(m);
  std::vector<char> used(m, 0);
  std::int64_t nodes = 0;

  auto assign_agent = [&](auto&& self, int agent) -> bool {
    if (agent == n) {
      ++nodes;
      return is_envy_free(instance, current);
    }
    for (int r = 0; r < m; ++r) {
      if (used[r] || instance.utility(agent, r) != 2) continue;
      used[r] = 1;
      current.owner[r] = agent;
      if (self(self, agent + 1)) return true;
      used[r] = 0;
      current.owner[r] = std::nullopt;
    }
    for (int r1 = 0; r1 < m; ++r1) {
      if (used[r1]) continue;
      used[r1] = 1;
      current.owner[r1] = agent;
      for (int r2 = r1 + 1; r2 < m; ++r2) {
        if (used[r2]) continue;
        used[r2] = 1;
        current.owner[r2] = agent;
        if (self(self, agent + 1)) return true;
        used[r2] = 0;
        current.owner[r2] = std::nullopt;
      }
      used[r1] = 0;
      current.owner[r1] = std::nullopt;
    }
    return false;
  };

  if (assign_agent(assign_agent, 0)) {
    return finish_yes(instance, Measure::Mcar, 1, std::move(current), "bivalued-two-phase",
                      nodes, started);
  }
  return finish_no("bivalued-two-phase", nodes, started);
}

SolverResult solve(const Query& query, AlgorithmChoice choice, const OracleBudget& budget) {
  const auto started = Clock::now();
  if (query.threshold < 0) {
    throw std::invalid_argument("threshold must be non-negative");
  }
  const Instance& instance = query.instance;
  const std::int64_t t = query.threshold;

  if (choice == AlgorithmChoice::Oracle) {
    return oracle_solve(query, budget);
  }

  const UtilityClass cls = classify_utilities(instance);
  const bool binary = cls.tag == UtilityClass::Tag::Binary;
  if ((choice == AlgorithmChoice::PolyBinary || choice == AlgorithmChoice::FptBinary) &&
      !binary) {
    throw std::invalid_argument("requested algorithm requires binary utilities");
  }

  if (t == 0) {
    // Every measure of the empty allocation is 0.
    return finish_yes(instance, query.measure, 0, Allocation::empty(instance.m_resources()),
                      "empty-allocation", 0, started);
  }

  if (choice == AlgorithmChoice::PolyBinary || choice == AlgorithmChoice::FptBinary) {
    const bool poly = choice == AlgorithmChoice::PolyBinary;
    switch (query.measure) {
      case Measure::Esw:
        return solve_binary_esw(instance, t);
      case Measure::Usw:
        if (poly && t > 1) {
          throw std::invalid_argument("no polynomial route for usw beyond threshold 1");
        }
        return solve_binary_usw(instance, t);
      case Measure::Size:
        if (poly && t > 1) {
          throw std::invalid_argument("no polynomial route for size beyond threshold 1");
        }
        return solve_binary_size(instance, t);
      case Measure::Mcar:
        if (t > 1) {
          throw std::invalid_argument("no fast route for mcar beyond threshold 1");
        }
        return solve_binary_mcar(instance, t, budget);
    }
  }

  // Auto routing.
  if (binary) {
    switch (query.measure) {
      case Measure::Esw: return solve_binary_esw(instance, t);
      case Measure::Usw: return solve_binary_usw(instance, t);
      case Measure::Size: return solve_binary_size(instance, t);
      case Measure::Mcar: return solve_binary_mcar(instance, t, budget);
    }
  }
  if (cls.tag == UtilityClass::Tag::Bivalued && t == 1) {
    return solve_bivalued_t1(instance);
  }
  return oracle_solve(query, budget);
}

}  // namespace efpa
