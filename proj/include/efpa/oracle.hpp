#pragma once

#include <chrono>
#include <cstdint>

#include "efpa/core.hpp"
#include "efpa/matching.hpp"

namespace efpa {

// Caps for the exhaustive enumeration: a hard limit on the (n+1)^m owner
// vectors plus a wall-clock limit.
struct OracleBudget {
  std::int64_t max_owner_vectors = 10'000'000;
  std::chrono::duration<double> max_elapsed = std::chrono::hours{1};
};

// Ground-truth decision by exhaustion over all owner vectors, lexicographic
// with Unallocated ordered before agent 0. Sound measure-based pruning only;
// envy is never judged on a partial vector. Throws BudgetExceededError when
// the state space exceeds the vector cap or the wall clock runs out.
SolverResult oracle_solve(const Query& query, const OracleBudget& budget = {});

// Shrinks an envy-free allocation of a binary instance: agents with positive
// bundle value keep their lowest-index liked resource, everyone else keeps
// nothing. The result is envy-free and induces an envy-free matching.
Allocation normalize_ef_allocation(const Instance& instance, const Allocation& allocation);

// True iff every x_s agent's bundle value is 0 and every allocated resource
// lies in y_l.
bool check_ef_property(const Instance& instance, const Allocation& allocation,
                       const EfmPartition& partition);

}  // namespace efpa
