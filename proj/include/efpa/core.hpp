#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace efpa {

// Utility entries are capped at 2^31-1 so that bundle sums and welfare
// totals always fit comfortably in 64 bits.
inline constexpr std::int64_t kMaxUtility = 2147483647;

// Thrown when an enumeration exceeds its owner-vector or wall-clock budget.
// Distinct from a NO answer: the question is unresolved.
class BudgetExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Measure { Usw, Esw, Size, Mcar };

std::string to_string(Measure measure);
std::optional<Measure> measure_from_string(const std::string& name);

// Agents 0..n-1 and resources 0..m-1 are the canonical identities; labels
// are cosmetic. Immutable after construction.
class Instance {
 public:
  // Validates: at least one agent, rectangular matrix, entries in
  // [0, kMaxUtility], labels (when present) matching dimensions and unique
  // within their axis. Throws std::invalid_argument otherwise.
  static Instance make(std::vector<std::vector<std::int64_t>> utilities,
                       std::vector<std::string> agent_labels = {},
                       std::vector<std::string> resource_labels = {});

  int n_agents() const { return n_; }
  int m_resources() const { return m_; }

  std::int64_t utility(int agent, int resource) const {
    check_agent(agent);
    check_resource(resource);
    return utilities_[static_cast<std::size_t>(agent) * m_ + resource];
  }

  const std::vector<std::string>& agent_labels() const { return agent_labels_; }
  const std::vector<std::string>& resource_labels() const { return resource_labels_; }

  void check_agent(int agent) const;
  void check_resource(int resource) const;

  bool operator==(const Instance&) const = default;

 private:
  Instance() = default;

  int n_ = 0;
  int m_ = 0;
  std::vector<std::int64_t> utilities_;  // row-major n x m
  std::vector<std::string> agent_labels_;
  std::vector<std::string> resource_labels_;
};

// Owner-indexed allocation: one owner (or none) per resource, so bundle
// disjointness is structural rather than checked.
struct Allocation {
  std::vector<std::optional<int>> owner;

  static Allocation empty(int m_resources) {
    return Allocation{std::vector<std::optional<int>>(m_resources)};
  }

  bool operator==(const Allocation&) const = default;
};

// Throws std::invalid_argument unless `allocation` has exactly one entry per
// resource and every named owner is a valid agent index.
void validate_allocation(const Instance& instance, const Allocation& allocation);

// Value-set classification. `identical` is orthogonal to the tag: it records
// whether all agents share one utility row.
struct UtilityClass {
  enum class Tag { Binary, Bivalued, Ternary, General };

  Tag tag = Tag::General;
  std::int64_t low = 0;   // v for Ternary; 1 for Bivalued
  std::int64_t high = 0;  // u for Ternary; 2 for Bivalued
  bool identical = false;

  bool operator==(const UtilityClass&) const = default;
};

std::string to_string(UtilityClass::Tag tag);

struct Query {
  Instance instance;
  Measure measure = Measure::Usw;
  std::int64_t threshold = 0;
};

enum class Answer { Yes, No };

struct SolveStats {
  std::string algorithm_used;
  std::int64_t nodes_explored = 0;
  std::chrono::duration<double> elapsed{0};
};

struct SolverResult {
  Answer answer = Answer::No;
  std::optional<Allocation> witness;  // present exactly when answer == Yes
  SolveStats stats;
};

// Sum of `agent`'s utilities over the resources owned by `target`.
std::int64_t bundle_utility(const Instance& instance, int agent,
                            const Allocation& allocation, int target);

// True iff no agent values another agent's bundle strictly above its own.
bool is_envy_free(const Instance& instance, const Allocation& allocation);

// Lexicographically first (a, a') with a envying a', or nullopt.
std::optional<std::pair<int, int>> first_envious_pair(const Instance& instance,
                                                      const Allocation& allocation);

std::int64_t measure_value(const Instance& instance, const Allocation& allocation,
                           Measure measure);

// Most specific tag wins: Binary > Bivalued > Ternary > General.
UtilityClass classify_utilities(const Instance& instance);

// Envy-freeness plus measure threshold, with a diagnostic naming the first
// violated constraint (used by the verify command and by solver self-checks).
struct VerifyReport {
  bool ok = false;
  std::string diagnostic;  // empty when ok
};

VerifyReport verify_allocation(const Instance& instance, const Allocation& allocation,
                               Measure measure, std::int64_t threshold);

}  // namespace efpa
