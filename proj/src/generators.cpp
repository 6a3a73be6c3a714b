#include "efpa/generators.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace efpa {

namespace {

std::vector<std::vector<std::int64_t>> zero_matrix(std::size_t n, std::size_t m) {
  return std::vector<std::vector<std::int64_t>>(n, std::vector<std::int64_t>(m, 0));
}

}  // namespace

ThreePartitionInput ThreePartitionInput::make(std::vector<std::int64_t> numbers) {
  if (numbers.empty() || numbers.size() % 3 != 0) {
    throw std::invalid_argument("need a positive multiple of three numbers");
  }
  const int n = static_cast<int>(numbers.size() / 3);
  std::int64_t sum = 0;
  for (std::int64_t e : numbers) {
    if (e <= 0) throw std::invalid_argument("numbers must be positive");
    sum += e;
  }
  if (sum % n != 0) {
    throw std::invalid_argument("numbers do not split into equal part sums");
  }
  const std::int64_t b = sum / n;
  for (std::int64_t e : numbers) {
    if (e >= b) {
      throw std::invalid_argument("every number must be smaller than the part sum");
    }
  }
  ThreePartitionInput input;
  input.numbers_ = std::move(numbers);
  input.group_count_ = n;
  input.part_sum_ = b;
  return input;
}

std::vector<std::string> ThreePartitionInput::warnings() const {
  std::vector<std::string> notes;
  for (std::size_t i = 0; i < numbers_.size(); ++i) {
    if (4 * numbers_[i] <= part_sum_) {
      std::ostringstream out;
      out << "number " << numbers_[i] << " at position " << i
          << " is not above b/4 (b = " << part_sum_
          << "); conventional inputs keep every number above that bound";
      notes.push_back(out.str());
    }
  }
  return notes;
}

X3cInput X3cInput::make(int ground_set_size, std::vector<std::array<int, 3>> sets) {
  if (ground_set_size <= 0 || ground_set_size % 3 != 0) {
    throw std::invalid_argument("ground set size must be a positive multiple of three");
  }
  if (sets.empty()) {
    throw std::invalid_argument("need at least one set");
  }
  for (const auto& triple : sets) {
    for (int element : triple) {
      if (element < 0 || element >= ground_set_size) {
        throw std::invalid_argument("set element out of the ground set");
      }
    }
  }
  X3cInput input;
  input.ground_set_size_ = ground_set_size;
  input.sets_ = std::move(sets);
  return input;
}

X3cInput X3cInput::padded(std::size_t min_sets) const {
  X3cInput copy = *this;
  while (copy.sets_.size() < min_sets) {
    copy.sets_.push_back(copy.sets_.front());
  }
  return copy;
}

Instance gen_folklore(int n) {
  if (n < 1) throw std::invalid_argument("need at least one agent");
  return Instance::make(
      std::vector<std::vector<std::int64_t>>(n, std::vector<std::int64_t>(n + 1, 1)));
}

Instance gen_identical_3partition(const ThreePartitionInput& input) {
  const int n = input.group_count();
  const std::int64_t b = input.part_sum();
  if (4 * b > kMaxUtility) {
    throw std::invalid_argument("part sum too large for the utility cap");
  }
  std::vector<std::int64_t> row;
  row.reserve(input.numbers().size() + 2 * n + 1);
  for (std::int64_t e : input.numbers()) {
    row.push_back(e + b);
  }
  for (int i = 0; i < 2 * n + 1; ++i) {
    row.push_back(4 * b);
  }
  return Instance::make(
      std::vector<std::vector<std::int64_t>>(3 * n + 1, row));
}

Instance gen_shadow_extension(const Instance& base, std::int64_t v, std::int64_t u) {
  if (v <= 0 || u <= v) {
    throw std::invalid_argument("need 0 < v < u");
  }
  if (u > kMaxUtility) {
    throw std::invalid_argument("u exceeds the utility cap");
  }
  const int n = base.n_agents();
  const int m = base.m_resources();
  for (int a = 0; a < n; ++a) {
    for (int r = 0; r < m; ++r) {
      const std::int64_t value = base.utility(a, r);
      if (value != 0 && value != v && value != u) {
        throw std::invalid_argument("base utilities must lie in {0, v, u}");
      }
    }
  }

  // Agents: originals, then the two shadows of each resource. Resources:
  // originals, then the two shadows of each resource.
  const int total_agents = n + 2 * m;
  const int total_resources = 3 * m;
  auto utilities = zero_matrix(total_agents, total_resources);

  for (int a = 0; a < n; ++a) {
    for (int r = 0; r < m; ++r) {
      utilities[a][r] = base.utility(a, r);
    }
    for (int r = m; r < total_resources; ++r) {
      utilities[a][r] = v;  // originals want every shadow resource a little
    }
  }
  for (int j = 0; j < m; ++j) {
    for (int twin = 0; twin < 2; ++twin) {
      auto& row = utilities[n + 2 * j + twin];
      row[j] = v;  // the one original resource this shadow cares about
      for (int r = m; r < total_resources; ++r) {
        row[r] = u;
      }
    }
  }
  return Instance::make(std::move(utilities));
}

Instance gen_shadow_extension(const Instance& base) {
  const UtilityClass cls = classify_utilities(base);
  if (cls.tag != UtilityClass::Tag::Ternary) {
    throw std::invalid_argument("cannot derive (v, u): base is not ternary");
  }
  return gen_shadow_extension(base, cls.low, cls.high);
}

Instance gen_x3c_kv(const X3cInput& raw, std::int64_t v, int k) {
  if (k < 3) throw std::invalid_argument("need k >= 3");
  if (v <= 0 || k * v > kMaxUtility) throw std::invalid_argument("v out of range");

  const int n = raw.group_count();
  const X3cInput input = raw.padded(static_cast<std::size_t>(3 * n) + 1);
  const int m = static_cast<int>(input.sets().size());
  const std::int64_t u = static_cast<std::int64_t>(k) * v;

  // Resources: 3n normal, (k-3)n small, m-n dummy, one special.
  const int normal = 3 * n;
  const int small = (k - 3) * n;
  const int dummy = m - n;
  const int total_resources = normal + small + dummy + 1;
  const int special = total_resources - 1;

  auto utilities = zero_matrix(m + 1, total_resources);
  for (int j = 0; j < m; ++j) {
    auto& row = utilities[j];
    for (int element : input.sets()[j]) {
      row[element] = v;
    }
    for (int r = normal; r < normal + small; ++r) row[r] = v;
    for (int r = normal + small; r < special; ++r) row[r] = u;
    row[special] = u;
  }
  utilities[m][special] = u;  // the special agent wants only the special resource
  return Instance::make(std::move(utilities));
}

Instance gen_x3c_2v(const X3cInput& raw, std::int64_t v) {
  if (v <= 0 || 2 * v > kMaxUtility) throw std::invalid_argument("v out of range");

  const int n = raw.group_count();
  const X3cInput input = raw.padded(static_cast<std::size_t>(3 * n) + 1);
  const std::int64_t m = static_cast<std::int64_t>(input.sets().size());

  const std::int64_t normal = 3 * n;
  const std::int64_t small = n;
  const std::int64_t dummy = 2 * (m - n);

  // Observer counts follow the construction's stated totals; type 1 walks
  // normal pairs with a dummy index below m, type 2 walks normal x dummy
  // with a repetition index below m selecting the small resource.
  const std::int64_t type1 = normal * (normal - 1) / 2 * m;
  const std::int64_t type2 = 3 * m * n * dummy;
  const std::int64_t observers = type1 + type2 + 1;
  const std::int64_t blank = 2 * observers;

  const std::int64_t total_agents = m + 3 + observers;
  const std::int64_t total_resources = normal + small + dummy + blank + 4;
  if (total_agents > 200000 || total_resources > 400000) {
    throw std::invalid_argument("construction too large to materialize");
  }

  const std::int64_t small_base = normal;
  const std::int64_t dummy_base = normal + small;
  const std::int64_t blank_base = dummy_base + dummy;
  const std::int64_t special_base = blank_base + blank;

  auto utilities = zero_matrix(static_cast<std::size_t>(total_agents),
                               static_cast<std::size_t>(total_resources));

  // Cover agents.
  for (std::int64_t j = 0; j < m; ++j) {
    auto& row = utilities[j];
    for (int element : input.sets()[j]) row[element] = v;
    for (std::int64_t r = small_base; r < dummy_base; ++r) row[r] = v;
    for (std::int64_t r = dummy_base; r < blank_base; ++r) row[r] = 2 * v;
    for (int s = 0; s < 4; ++s) row[special_base + s] = 2 * v;
  }

  // Standard agents b, c, d and their special-resource values.
  const std::int64_t b_agent = m, c_agent = m + 1, d_agent = m + 2;
  const std::int64_t two = 2 * v;
  utilities[b_agent][special_base + 0] = two;
  utilities[b_agent][special_base + 2] = two;
  utilities[c_agent][special_base + 0] = two;
  utilities[c_agent][special_base + 1] = v;
  utilities[c_agent][special_base + 2] = two;
  utilities[c_agent][special_base + 3] = v;
  utilities[d_agent][special_base + 2] = two;

  std::int64_t next_observer = m + 3;
  auto observer_row = [&]() -> std::vector<std::int64_t>& {
    auto& row = utilities[next_observer++];
    for (std::int64_t r = blank_base; r < special_base; ++r) row[r] = two;
    for (int s = 0; s < 4; ++s) row[special_base + s] = two;
    return row;
  };

  for (std::int64_t i = 0; i < normal; ++i) {
    for (std::int64_t j = i + 1; j < normal; ++j) {
      for (std::int64_t k = 0; k < m; ++k) {
        auto& row = observer_row();
        row[i] = two;
        row[j] = two;
        row[dummy_base + k] = two;
      }
    }
  }
  for (std::int64_t i = 0; i < normal; ++i) {
    for (std::int64_t j = 0; j < dummy; ++j) {
      for (std::int64_t rep = 0; rep < m; ++rep) {
        auto& row = observer_row();
        row[i] = two;
        row[dummy_base + j] = two;
        row[small_base + rep % n] = two;
      }
    }
  }
  {
    auto& row = observer_row();  // the lone type-3 observer
    for (std::int64_t r = small_base; r < blank_base; ++r) row[r] = two;
  }
  if (next_observer != total_agents) {
    throw std::logic_error("observer bookkeeping mismatch");
  }
  return Instance::make(std::move(utilities));
}

Instance gen_x3c_kvc(const X3cInput& raw, std::int64_t v, std::int64_t k, std::int64_t c) {
  if (k <= 0 || v <= 0 || c <= 0 || c >= v) {
    throw std::invalid_argument("need k > 0 and 0 < c < v");
  }
  const std::int64_t u = k * v + c;
  if (u > kMaxUtility) throw std::invalid_argument("u exceeds the utility cap");

  const int n = raw.group_count();
  const X3cInput input = raw.padded(static_cast<std::size_t>(n) + 1);
  const std::int64_t m = static_cast<std::int64_t>(input.sets().size());

  const std::int64_t k1 = k + 1;
  const std::int64_t k2 = 2 * u / v + 1;  // least k' with k'*v > 2u

  const std::int64_t element = 3 * n;
  const std::int64_t dummy = 3 * (m - n);
  const std::int64_t rrd_guards = element * (element - 1) / 2 * dummy;
  const std::int64_t rdd_guards = dummy * (dummy - 1) / 2 * element;

  const std::int64_t total_agents = m + 3 + rrd_guards + rdd_guards;
  const std::int64_t total_resources =
      element + dummy + 1 + k1 + k2 + k2 * rrd_guards + k2 * rdd_guards;
  if (total_agents > 200000 || total_resources > 400000) {
    throw std::invalid_argument("construction too large to materialize");
  }

  const std::int64_t dummy_base = element;
  const std::int64_t b1_base = dummy_base + dummy;      // single resource s^b1
  const std::int64_t b2_base = b1_base + 1;             // k1 resources
  const std::int64_t b3_base = b2_base + k1;            // k2 resources
  const std::int64_t rrd_base = b3_base + k2;           // k2 per rrd guard, shared pool
  const std::int64_t rdd_base = rrd_base + k2 * rrd_guards;

  auto utilities = zero_matrix(static_cast<std::size_t>(total_agents),
                               static_cast<std::size_t>(total_resources));

  for (std::int64_t j = 0; j < m; ++j) {
    auto& row = utilities[j];
    for (int e : input.sets()[j]) row[e] = u;
    for (std::int64_t r = dummy_base; r < b1_base; ++r) row[r] = u;
    for (int s = 0; s < 3; ++s) row[b3_base + s] = u;
  }

  auto& b1 = utilities[m];
  b1[b1_base] = u;
  auto& b2 = utilities[m + 1];
  b2[b1_base] = u;
  for (std::int64_t r = 0; r < k1; ++r) b2[b2_base + r] = v;
  auto& b3 = utilities[m + 2];
  b3[b2_base] = u;
  b3[b2_base + 1] = u;
  for (std::int64_t r = 0; r < k2; ++r) b3[b3_base + r] = v;

  std::int64_t next_agent = m + 3;
  auto guard_row = [&](std::int64_t pool_base, std::int64_t pool_size)
      -> std::vector<std::int64_t>& {
    auto& row = utilities[next_agent++];
    for (std::int64_t r = 0; r < pool_size; ++r) row[pool_base + r] = v;
    row[b3_base] = u;
    row[b3_base + 1] = u;
    return row;
  };

  for (std::int64_t r1 = 0; r1 < element; ++r1) {
    for (std::int64_t r2 = r1 + 1; r2 < element; ++r2) {
      for (std::int64_t d = 0; d < dummy; ++d) {
        auto& row = guard_row(rrd_base, k2 * rrd_guards);
        row[r1] = u;
        row[r2] = u;
        row[dummy_base + d] = u;
      }
    }
  }
  for (std::int64_t r1 = 0; r1 < element; ++r1) {
    for (std::int64_t d1 = 0; d1 < dummy; ++d1) {
      for (std::int64_t d2 = d1 + 1; d2 < dummy; ++d2) {
        auto& row = guard_row(rdd_base, k2 * rdd_guards);
        row[r1] = u;
        row[dummy_base + d1] = u;
        row[dummy_base + d2] = u;
      }
    }
  }
  if (next_agent != total_agents) {
    throw std::logic_error("guard bookkeeping mismatch");
  }
  return Instance::make(std::move(utilities));
}

Instance gen_random(int n, int m, const UtilityClass& cls, std::uint64_t seed) {
  if (n < 1 || m < 0) throw std::invalid_argument("bad dimensions");

  std::vector<std::int64_t> values;
  switch (cls.tag) {
    case UtilityClass::Tag::Binary:
      values = {0, 1};
      break;
    case UtilityClass::Tag::Bivalued:
      values = {1, 2};
      break;
    case UtilityClass::Tag::Ternary:
      if (!(0 < cls.low && cls.low < cls.high) || cls.high > kMaxUtility) {
        throw std::invalid_argument("ternary parameters need 0 < v < u");
      }
      values = {0, cls.low, cls.high};
      break;
    case UtilityClass::Tag::General:
      for (int i = 0; i <= 9; ++i) values.push_back(i);
      break;
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
  const int distinct_rows = cls.identical ? 1 : n;
  std::vector<std::vector<std::int64_t>> utilities;
  utilities.reserve(n);
  for (int a = 0; a < distinct_rows; ++a) {
    std::vector<std::int64_t> row(m);
    for (int r = 0; r < m; ++r) row[r] = values[pick(rng)];
    utilities.push_back(std::move(row));
  }
  while (static_cast<int>(utilities.size()) < n) {
    utilities.push_back(utilities.front());
  }
  return Instance::make(std::move(utilities));
}

}  // namespace efpa
