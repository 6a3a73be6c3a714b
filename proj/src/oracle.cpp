#include "efpa/oracle.hpp"

#include <algorithm>

namespace efpa {

namespace {

// (n+1)^m with overflow saturation against `cap`; returns cap+1 when the
// true value exceeds it.
std::int64_t saturating_state_count(int n, int m, std::int64_t cap) {
  const std::int64_t base = static_cast<std::int64_t>(n) + 1;
  std::int64_t total = 1;
  for (int i = 0; i < m; ++i) {
    if (total > cap / base) return cap + 1;
    total *= base;
  }
  return total;
}

class OwnerVectorSearch {
 public:
  OwnerVectorSearch(const Query& query, const OracleBudget& budget)
      : instance_(query.instance),
        measure_(query.measure),
        threshold_(query.threshold),
        budget_(budget),
        n_(query.instance.n_agents()),
        m_(query.instance.m_resources()),
        started_(std::chrono::steady_clock::now()) {
    owner_.assign(m_, std::nullopt);
    own_value_.assign(n_, 0);
    own_count_.assign(n_, 0);
    cross_value_.assign(static_cast<std::size_t>(n_) * n_, 0);

    // Suffix tables for the measure upper bounds.
    subtree_.assign(m_ + 1, 1);
    for (int depth = m_ - 1; depth >= 0; --depth) {
      subtree_[depth] = subtree_[depth + 1] * (n_ + 1);
    }
    suffix_best_.assign(m_ + 1, 0);
    suffix_agent_.assign(static_cast<std::size_t>(n_) * (m_ + 1), 0);
    for (int r = m_ - 1; r >= 0; --r) {
      std::int64_t best = 0;
      for (int a = 0; a < n_; ++a) {
        const std::int64_t u = instance_.utility(a, r);
        best = std::max(best, u);
        suffix_agent_[idx(a, r)] = suffix_agent_[idx(a, r + 1)] + u;
      }
      suffix_best_[r] = suffix_best_[r + 1] + best;
    }
  }

  SolverResult run() {
    SolverResult result;
    result.stats.algorithm_used = "oracle-enumeration";
    const bool found = descend(0);
    result.answer = found ? Answer::Yes : Answer::No;
    if (found) result.witness = Allocation{owner_};
    result.stats.nodes_explored = resolved_;
    result.stats.elapsed = std::chrono::steady_clock::now() - started_;
    return result;
  }

 private:
  std::size_t idx(int a, int r) const {
    return static_cast<std::size_t>(a) * (m_ + 1) + r;
  }

  // Largest value the measure can still reach given the fixed prefix; exact
  // for Size, an upper bound for the others.
  std::int64_t measure_upper_bound(int depth) const {
    const std::int64_t remaining = m_ - depth;
    switch (measure_) {
      case Measure::Usw: {
        std::int64_t usw = 0;
        for (std::int64_t v : own_value_) usw += v;
        return usw + suffix_best_[depth];
      }
      case Measure::Esw: {
        std::int64_t bound = kMaxUtility * static_cast<std::int64_t>(m_ + 1);
        for (int a = 0; a < n_; ++a) {
          bound = std::min(bound, own_value_[a] + suffix_agent_[idx(a, depth)]);
        }
        return bound;
      }
      case Measure::Size: {
        std::int64_t allocated = 0;
        for (std::int64_t c : own_count_) allocated += c;
        return allocated + remaining;
      }
      case Measure::Mcar: {
        std::int64_t bound = m_;
        for (std::int64_t c : own_count_) bound = std::min(bound, c + remaining);
        return bound;
      }
    }
    throw std::logic_error("unreachable measure");
  }

  bool leaf_accepts() const {
    std::int64_t value = 0;
    switch (measure_) {
      case Measure::Usw:
        for (std::int64_t v : own_value_) value += v;
        break;
      case Measure::Esw:
        value = *std::min_element(own_value_.begin(), own_value_.end());
        break;
      case Measure::Size:
        for (std::int64_t c : own_count_) value += c;
        break;
      case Measure::Mcar:
        value = *std::min_element(own_count_.begin(), own_count_.end());
        break;
    }
    if (value < threshold_) return false;
    for (int a = 0; a < n_; ++a) {
      const std::int64_t own = cross_value_[static_cast<std::size_t>(a) * n_ + a];
      for (int b = 0; b < n_; ++b) {
        if (cross_value_[static_cast<std::size_t>(a) * n_ + b] > own) return false;
      }
    }
    return true;
  }

  void check_clock() {
    if (++clock_phase_ % 4096 != 0) return;
    if (std::chrono::steady_clock::now() - started_ > budget_.max_elapsed) {
      throw BudgetExceededError("oracle wall-clock budget exceeded");
    }
  }

  bool descend(int depth) {
    check_clock();
    if (depth == m_) {
      ++resolved_;
      return leaf_accepts();
    }
    if (measure_upper_bound(depth) < threshold_) {
      resolved_ += subtree_[depth];  // the whole subtree fails the measure
      return false;
    }
    // Unallocated is the smallest digit, then agents in index order.
    if (descend(depth + 1)) return true;
    for (int a = 0; a < n_; ++a) {
      assign(depth, a);
      if (descend(depth + 1)) return true;
      unassign(depth, a);
    }
    return false;
  }

  void assign(int r, int owner) {
    owner_[r] = owner;
    own_value_[owner] += instance_.utility(owner, r);
    own_count_[owner] += 1;
    for (int a = 0; a < n_; ++a) {
      cross_value_[static_cast<std::size_t>(a) * n_ + owner] += instance_.utility(a, r);
    }
  }

  void unassign(int r, int owner) {
    owner_[r] = std::nullopt;
    own_value_[owner] -= instance_.utility(owner, r);
    own_count_[owner] -= 1;
    for (int a = 0; a < n_; ++a) {
      cross_value_[static_cast<std::size_t>(a) * n_ + owner] -= instance_.utility(a, r);
    }
  }

  const Instance& instance_;
  const Measure measure_;
  const std::int64_t threshold_;
  const OracleBudget budget_;
  const int n_;
  const int m_;
  const std::chrono::steady_clock::time_point started_;

  std::vector<std::optional<int>> owner_;
  std::vector<std::int64_t> own_value_;
  std::vector<std::int64_t> own_count_;
  std::vector<std::int64_t> cross_value_;
  std::vector<std::int64_t> subtree_;
  std::vector<std::int64_t> suffix_best_;
  std::vector<std::int64_t> suffix_agent_;
  std::int64_t resolved_ = 0;
  std::uint64_t clock_phase_ = 0;
};

}  // namespace

SolverResult oracle_solve(const Query& query, const OracleBudget& budget) {
  if (query.threshold < 0) {
    throw std::invalid_argument("threshold must be non-negative");
  }
  if (budget.max_owner_vectors <= 0 || budget.max_elapsed.count() <= 0) {
    throw std::invalid_argument("oracle budget must be positive");
  }
  const std::int64_t states =
      saturating_state_count(query.instance.n_agents(), query.instance.m_resources(),
                             budget.max_owner_vectors);
  if (states > budget.max_owner_vectors) {
    throw BudgetExceededError("owner-vector space exceeds the oracle budget");
  }
  return OwnerVectorSearch(query, budget).run();
}

Allocation normalize_ef_allocation(const Instance& instance, const Allocation& allocation) {
  if (classify_utilities(instance).tag != UtilityClass::Tag::Binary) {
    throw std::invalid_argument("normalization requires binary utilities");
  }
  validate_allocation(instance, allocation);
  if (!is_envy_free(instance, allocation)) {
    throw std::invalid_argument("normalization requires an envy-free allocation");
  }

  const int n = instance.n_agents();
  const int m = instance.m_resources();
  Allocation normalized = Allocation::empty(m);
  for (int a = 0; a < n; ++a) {
    // Keep the lowest-index liked resource of a positive-value bundle.
    for (int r = 0; r < m; ++r) {
      if (allocation.owner[r] == a && instance.utility(a, r) == 1) {
        normalized.owner[r] = a;
        break;
      }
    }
  }
  return normalized;
}

bool check_ef_property(const Instance& instance, const Allocation& allocation,
                       const EfmPartition& partition) {
  if (classify_utilities(instance).tag != UtilityClass::Tag::Binary) {
    throw std::invalid_argument("check requires binary utilities");
  }
  validate_allocation(instance, allocation);
  for (int a : partition.x_s) {
    if (bundle_utility(instance, a, allocation, a) != 0) return false;
  }
  std::vector<char> in_y_l(instance.m_resources(), 0);
  for (int r : partition.y_l) in_y_l[r] = 1;
  for (int r = 0; r < instance.m_resources(); ++r) {
    if (allocation.owner[r] && !in_y_l[r]) return false;
  }
  return true;
}

}  // namespace efpa
