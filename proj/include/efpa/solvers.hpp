#pragma once

#include <cstdint>

#include "efpa/core.hpp"
#include "efpa/oracle.hpp"

namespace efpa {

// Auto picks the best route for the query's utility class, measure and
// threshold; the explicit choices force a route and reject queries their
// algorithm does not cover.
enum class AlgorithmChoice { Auto, PolyBinary, FptBinary, Oracle };

// Decision with witness. Every YES result is re-verified (envy-freeness and
// measure threshold) before it is returned.
SolverResult solve(const Query& query, AlgorithmChoice choice = AlgorithmChoice::Auto,
                   const OracleBudget& budget = {});

// Egalitarian welfare for binary utilities, any threshold: matching on a
// graph with t copies of each agent.
SolverResult solve_binary_esw(const Instance& instance, std::int64_t threshold);

// Utilitarian welfare for binary utilities, threshold >= 1: partition check,
// then bucket shortcut, then bounded enumeration.
SolverResult solve_binary_usw(const Instance& instance, std::int64_t threshold);

// Allocation size for binary utilities, threshold >= 1: same skeleton with
// the agent set compared against the threshold.
SolverResult solve_binary_size(const Instance& instance, std::int64_t threshold);

// Min-cardinality for binary utilities. Threshold 1 reduces to comparing
// |X| with |y_l|; larger thresholds fall back to the oracle.
SolverResult solve_binary_mcar(const Instance& instance, std::int64_t threshold,
                               const OracleBudget& budget = {});

// Threshold-1 decision for {1,2}-valued utilities, shared by all four
// measures: a shifted-binary matching phase, then a shape-restricted search
// (one liked resource, or exactly two resources, per agent).
SolverResult solve_bivalued_t1(const Instance& instance);

}  // namespace efpa
