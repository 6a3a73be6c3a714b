#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "efpa/core.hpp"
#include "efpa/generators.hpp"

using namespace efpa;

namespace {

Instance make_instance(std::vector<std::vector<std::int64_t>> rows) {
  return Instance::make(std::move(rows));
}

Allocation owners(std::vector<std::optional<int>> owner) {
  return Allocation{std::move(owner)};
}

}  // namespace

TEST_CASE("instance construction validates its inputs") {
  CHECK_THROWS_AS(Instance::make({}), std::invalid_argument);
  CHECK_THROWS_AS(make_instance({{1, 2}, {1}}), std::invalid_argument);
  CHECK_THROWS_AS(make_instance({{-1}}), std::invalid_argument);
  CHECK_THROWS_AS(make_instance({{kMaxUtility + 1}}), std::invalid_argument);
  CHECK_NOTHROW(make_instance({{kMaxUtility}}));

  CHECK_THROWS_AS(Instance::make({{1, 1}}, {"a", "b"}), std::invalid_argument);
  CHECK_THROWS_AS(Instance::make({{1}, {1}}, {"a", "a"}), std::invalid_argument);
  CHECK_THROWS_AS(Instance::make({{1, 1}}, {}, {"r", "r"}), std::invalid_argument);
  CHECK_NOTHROW(Instance::make({{1, 1}}, {"a"}, {"r0", "r1"}));

  // An instance with no resources is legal.
  const Instance empty = make_instance({{}, {}});
  CHECK(empty.n_agents() == 2);
  CHECK(empty.m_resources() == 0);
}

TEST_CASE("bundle utility sums the target bundle") {
  const Instance two = make_instance({{3, 5}});
  CHECK(bundle_utility(two, 0, owners({0, 0}), 0) == 8);
  CHECK(bundle_utility(two, 0, Allocation::empty(2), 0) == 0);

  const Instance folklore = gen_folklore(2);  // 2 agents, 3 unit resources
  CHECK(bundle_utility(folklore, 0, owners({0, 0, 1}), 0) == 2);

  CHECK_THROWS_AS(bundle_utility(two, 1, owners({0, 0}), 0), std::invalid_argument);
  CHECK_THROWS_AS(bundle_utility(two, 0, owners({0}), 0), std::invalid_argument);
}

TEST_CASE("envy detection") {
  const Instance contested = make_instance({{1}, {1}});
  CHECK(is_envy_free(contested, Allocation::empty(1)));
  CHECK_FALSE(is_envy_free(contested, owners({0})));
  CHECK(first_envious_pair(contested, owners({0})) == std::pair{1, 0});

  const Instance folklore = gen_folklore(2);
  CHECK_FALSE(is_envy_free(folklore, owners({0, 0, 1})));
  CHECK(first_envious_pair(folklore, owners({0, 0, 1})) == std::pair{1, 0});
  CHECK(is_envy_free(folklore, owners({0, 1, std::nullopt})));
}

TEST_CASE("measure values") {
  const Instance diagonal = make_instance({{1, 0}, {0, 1}});
  const Allocation matched = owners({0, 1});
  CHECK(measure_value(diagonal, matched, Measure::Usw) == 2);
  CHECK(measure_value(diagonal, matched, Measure::Esw) == 1);
  CHECK(measure_value(diagonal, matched, Measure::Size) == 2);
  CHECK(measure_value(diagonal, matched, Measure::Mcar) == 1);

  const Allocation none = Allocation::empty(2);
  for (Measure measure : {Measure::Usw, Measure::Esw, Measure::Size, Measure::Mcar}) {
    CHECK(measure_value(diagonal, none, measure) == 0);
  }

  const Instance folklore = gen_folklore(2);
  CHECK(measure_value(folklore, owners({0, 1, std::nullopt}), Measure::Size) == 2);
}

TEST_CASE("utility classification") {
  CHECK(classify_utilities(make_instance({{0, 1}, {1, 1}})).tag == UtilityClass::Tag::Binary);
  CHECK(classify_utilities(make_instance({{0, 0}})).tag == UtilityClass::Tag::Binary);

  const UtilityClass bivalued = classify_utilities(make_instance({{1, 2}, {2, 2}}));
  CHECK(bivalued.tag == UtilityClass::Tag::Bivalued);
  CHECK(bivalued.low == 1);
  CHECK(bivalued.high == 2);

  const UtilityClass ternary = classify_utilities(make_instance({{0, 2}, {6, 2}}));
  CHECK(ternary.tag == UtilityClass::Tag::Ternary);
  CHECK(ternary.low == 2);
  CHECK(ternary.high == 6);

  // {0,1,2} has three values, two of them positive.
  const UtilityClass mixed = classify_utilities(make_instance({{0, 1, 2}}));
  CHECK(mixed.tag == UtilityClass::Tag::Ternary);
  CHECK(mixed.low == 1);
  CHECK(mixed.high == 2);

  CHECK(classify_utilities(make_instance({{0, 1, 2, 5}})).tag == UtilityClass::Tag::General);

  CHECK(classify_utilities(make_instance({{1, 2}, {1, 2}})).identical);
  CHECK_FALSE(classify_utilities(make_instance({{1, 2}, {2, 1}})).identical);
}

TEST_CASE("empty allocation is envy-free on random instances") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const int m = static_cast<int>(rng() % 6);
    UtilityClass cls;
    cls.tag = UtilityClass::Tag::General;
    const Instance instance = gen_random(n, m, cls, rng());
    CHECK(is_envy_free(instance, Allocation::empty(m)));
    for (Measure measure : {Measure::Usw, Measure::Esw, Measure::Size, Measure::Mcar}) {
      CHECK(measure_value(instance, Allocation::empty(m), measure) == 0);
    }
  }
}

TEST_CASE("welfare and cardinality bounds hold on random allocations") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int m = static_cast<int>(rng() % 7);
    UtilityClass cls;
    cls.tag = UtilityClass::Tag::General;
    const Instance instance = gen_random(n, m, cls, rng());
    Allocation allocation = Allocation::empty(m);
    for (int r = 0; r < m; ++r) {
      const int pick = static_cast<int>(rng() % (n + 1));
      if (pick < n) allocation.owner[r] = pick;
    }
    CHECK(n * measure_value(instance, allocation, Measure::Mcar) <=
          measure_value(instance, allocation, Measure::Size));
    CHECK(n * measure_value(instance, allocation, Measure::Esw) <=
          measure_value(instance, allocation, Measure::Usw));
  }
}

TEST_CASE("measures are invariant under consistent resource permutation") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int m = 1 + static_cast<int>(rng() % 6);
    UtilityClass cls;
    cls.tag = UtilityClass::Tag::General;
    const Instance instance = gen_random(n, m, cls, rng());
    Allocation allocation = Allocation::empty(m);
    for (int r = 0; r < m; ++r) {
      const int pick = static_cast<int>(rng() % (n + 1));
      if (pick < n) allocation.owner[r] = pick;
    }

    std::vector<int> perm(m);
    for (int r = 0; r < m; ++r) perm[r] = r;
    std::shuffle(perm.begin(), perm.end(), rng);

    std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(m));
    Allocation permuted = Allocation::empty(m);
    for (int r = 0; r < m; ++r) {
      for (int a = 0; a < n; ++a) rows[a][perm[r]] = instance.utility(a, r);
      permuted.owner[perm[r]] = allocation.owner[r];
    }
    const Instance shuffled = Instance::make(rows);
    for (Measure measure : {Measure::Usw, Measure::Esw, Measure::Size, Measure::Mcar}) {
      CHECK(measure_value(instance, allocation, measure) ==
            measure_value(shuffled, permuted, measure));
    }
  }
}

TEST_CASE("envy-freeness is invariant under consistent agent relabeling") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int m = 1 + static_cast<int>(rng() % 6);
    UtilityClass cls;
    cls.tag = UtilityClass::Tag::Binary;
    const Instance instance = gen_random(n, m, cls, rng());
    Allocation allocation = Allocation::empty(m);
    for (int r = 0; r < m; ++r) {
      const int pick = static_cast<int>(rng() % (n + 1));
      if (pick < n) allocation.owner[r] = pick;
    }

    std::vector<int> perm(n);
    for (int a = 0; a < n; ++a) perm[a] = a;
    std::shuffle(perm.begin(), perm.end(), rng);

    std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(m));
    Allocation relabeled = Allocation::empty(m);
    for (int a = 0; a < n; ++a) {
      for (int r = 0; r < m; ++r) rows[perm[a]][r] = instance.utility(a, r);
    }
    for (int r = 0; r < m; ++r) {
      if (allocation.owner[r]) relabeled.owner[r] = perm[*allocation.owner[r]];
    }
    const Instance shuffled = Instance::make(rows);
    CHECK(is_envy_free(instance, allocation) == is_envy_free(shuffled, relabeled));
  }
}

TEST_CASE("verification reports the first violation") {
  const Instance folklore = gen_folklore(2);
  const VerifyReport envy =
      verify_allocation(folklore, owners({0, 0, 1}), Measure::Size, 3);
  CHECK_FALSE(envy.ok);
  CHECK(envy.diagnostic == "agent 1 envies agent 0");

  const VerifyReport shortfall =
      verify_allocation(folklore, owners({0, 1, std::nullopt}), Measure::Size, 3);
  CHECK_FALSE(shortfall.ok);
  CHECK(shortfall.diagnostic == "size 2 < threshold 3");

  CHECK(verify_allocation(folklore, owners({0, 1, std::nullopt}), Measure::Size, 2).ok);
}
