#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "efpa/core.hpp"

namespace efpa {

// A multiset of 3n positive integers with a whole-number part sum b.
// Construction rejects inputs whose numbers reach b; the conventional
// b/4 < e_i range is reported as warnings only.
class ThreePartitionInput {
 public:
  static ThreePartitionInput make(std::vector<std::int64_t> numbers);

  const std::vector<std::int64_t>& numbers() const { return numbers_; }
  int group_count() const { return group_count_; }      // n
  std::int64_t part_sum() const { return part_sum_; }   // b

  std::vector<std::string> warnings() const;

 private:
  ThreePartitionInput() = default;
  std::vector<std::int64_t> numbers_;
  int group_count_ = 0;
  std::int64_t part_sum_ = 0;
};

// A ground set of size 3n and a collection of arity-3 index sets. Triples
// may repeat elements; degenerate triples simply never take part in an
// exact cover.
class X3cInput {
 public:
  static X3cInput make(int ground_set_size, std::vector<std::array<int, 3>> sets);

  int ground_set_size() const { return ground_set_size_; }
  int group_count() const { return ground_set_size_ / 3; }  // n
  const std::vector<std::array<int, 3>>& sets() const { return sets_; }

  // Appends copies of the first triple until at least `min_sets` sets are
  // present; duplicated triples leave the yes/no answer unchanged.
  X3cInput padded(std::size_t min_sets) const;

 private:
  X3cInput() = default;
  int ground_set_size_ = 0;
  std::vector<std::array<int, 3>> sets_;
};

// n agents, n+1 resources, all utilities 1.
Instance gen_folklore(int n);

// Identical utilities: 3n+1 agents; 3n resources valued e_i + b and 2n+1
// resources valued 4b.
Instance gen_identical_3partition(const ThreePartitionInput& input);

// Adds two shadow agents and two shadow resources per original resource;
// the explicit overload takes the (v, u) pair, the other derives it from a
// ternary classification.
Instance gen_shadow_extension(const Instance& base, std::int64_t v, std::int64_t u);
Instance gen_shadow_extension(const Instance& base);

// Cover agents plus one special agent over normal/small/dummy/special
// resources; u = k*v with k >= 3. Pads the input to more than 3n sets.
Instance gen_x3c_kv(const X3cInput& input, std::int64_t v, int k);

// The u = 2v construction with standard agents b, c, d, three kinds of
// observers, blank resources and four special resources. Pads to more than
// 3n sets.
Instance gen_x3c_2v(const X3cInput& input, std::int64_t v);

// The u = k*v + c construction (0 < c < v) with booster agents and
// rrd/rdd guard agents over element/dummy/booster/guard resources. Pads to
// more than n sets.
Instance gen_x3c_kvc(const X3cInput& input, std::int64_t v, std::int64_t k, std::int64_t c);

// Reproducible matrix drawn uniformly from the class's value set; the
// identical flag draws one row and repeats it. General draws from 0..9.
Instance gen_random(int n, int m, const UtilityClass& cls, std::uint64_t seed);

}  // namespace efpa
