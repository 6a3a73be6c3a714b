#include "efpa/core.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

namespace efpa {

std::string to_string(Measure measure) {
  switch (measure) {
    case Measure::Usw: return "usw";
    case Measure::Esw: return "esw";
    case Measure::Size: return "size";
    case Measure::Mcar: return "mcar";
  }
  return "?";
}

std::optional<Measure> measure_from_string(const std::string& name) {
  if (name == "usw") return Measure::Usw;
  if (name == "esw") return Measure::Esw;
  if (name == "size") return Measure::Size;
  if (name == "mcar") return Measure::Mcar;
  return std::nullopt;
}

std::string to_string(UtilityClass::Tag tag) {
  switch (tag) {
    case UtilityClass::Tag::Binary: return "binary";
    case UtilityClass::Tag::Bivalued: return "bivalued";
    case UtilityClass::Tag::Ternary: return "ternary";
    case UtilityClass::Tag::General: return "general";
  }
  return "?";
}

Instance Instance::make(std::vector<std::vector<std::int64_t>> utilities,
                        std::vector<std::string> agent_labels,
                        std::vector<std::string> resource_labels) {
  if (utilities.empty()) {
    throw std::invalid_argument("instance needs at least one agent");
  }
  const std::size_t n = utilities.size();
  const std::size_t m = utilities.front().size();
  for (const auto& row : utilities) {
    if (row.size() != m) {
      throw std::invalid_argument("utility matrix is not rectangular");
    }
    for (std::int64_t value : row) {
      if (value < 0) {
        throw std::invalid_argument("utilities must be non-negative");
      }
      if (value > kMaxUtility) {
        throw std::invalid_argument("utility entry exceeds the 2^31-1 cap");
      }
    }
  }

  auto check_labels = [](const std::vector<std::string>& labels, std::size_t count,
                         const char* axis) {
    if (labels.empty()) return;
    if (labels.size() != count) {
      throw std::invalid_argument(std::string(axis) + " labels do not match dimension");
    }
    std::unordered_set<std::string> seen;
    for (const auto& label : labels) {
      if (!seen.insert(label).second) {
        throw std::invalid_argument(std::string(axis) + " labels must be unique");
      }
    }
  };
  check_labels(agent_labels, n, "agent");
  check_labels(resource_labels, m, "resource");

  Instance instance;
  instance.n_ = static_cast<int>(n);
  instance.m_ = static_cast<int>(m);
  instance.utilities_.reserve(n * m);
  for (const auto& row : utilities) {
    instance.utilities_.insert(instance.utilities_.end(), row.begin(), row.end());
  }
  instance.agent_labels_ = std::move(agent_labels);
  instance.resource_labels_ = std::move(resource_labels);
  return instance;
}

void Instance::check_agent(int agent) const {
  if (agent < 0 || agent >= n_) {
    throw std::invalid_argument("agent index out of range");
  }
}

void Instance::check_resource(int resource) const {
  if (resource < 0 || resource >= m_) {
    throw std::invalid_argument("resource index out of range");
  }
}

void validate_allocation(const Instance& instance, const Allocation& allocation) {
  if (allocation.owner.size() != static_cast<std::size_t>(instance.m_resources())) {
    throw std::invalid_argument("allocation length does not match resource count");
  }
  for (const auto& owner : allocation.owner) {
    if (owner && (*owner < 0 || *owner >= instance.n_agents())) {
      throw std::invalid_argument("allocation owner index out of range");
    }
  }
}

std::int64_t bundle_utility(const Instance& instance, int agent,
                            const Allocation& allocation, int target) {
  instance.check_agent(agent);
  instance.check_agent(target);
  validate_allocation(instance, allocation);
  std::int64_t total = 0;
  for (int r = 0; r < instance.m_resources(); ++r) {
    if (allocation.owner[r] == target) {
      total += instance.utility(agent, r);
    }
  }
  return total;
}

namespace {

// value[a][b] = u_a(bundle of b), built in one pass over the resources.
std::vector<std::int64_t> cross_values(const Instance& instance,
                                       const Allocation& allocation) {
  const int n = instance.n_agents();
  std::vector<std::int64_t> value(static_cast<std::size_t>(n) * n, 0);
  for (int r = 0; r < instance.m_resources(); ++r) {
    if (!allocation.owner[r]) continue;
    const int b = *allocation.owner[r];
    for (int a = 0; a < n; ++a) {
      value[static_cast<std::size_t>(a) * n + b] += instance.utility(a, r);
    }
  }
  return value;
}

}  // namespace

std::optional<std::pair<int, int>> first_envious_pair(const Instance& instance,
                                                      const Allocation& allocation) {
  validate_allocation(instance, allocation);
  const int n = instance.n_agents();
  const auto value = cross_values(instance, allocation);
  for (int a = 0; a < n; ++a) {
    const std::int64_t own = value[static_cast<std::size_t>(a) * n + a];
    for (int b = 0; b < n; ++b) {
      if (b == a) continue;
      if (value[static_cast<std::size_t>(a) * n + b] > own) {
        return std::make_pair(a, b);
      }
    }
  }
  return std::nullopt;
}

bool is_envy_free(const Instance& instance, const Allocation& allocation) {
  return !first_envious_pair(instance, allocation).has_value();
}

std::int64_t measure_value(const Instance& instance, const Allocation& allocation,
                           Measure measure) {
  validate_allocation(instance, allocation);
  const int n = instance.n_agents();
  std::vector<std::int64_t> own_value(n, 0);
  std::vector<std::int64_t> own_count(n, 0);
  for (int r = 0; r < instance.m_resources(); ++r) {
    if (!allocation.owner[r]) continue;
    const int a = *allocation.owner[r];
    own_value[a] += instance.utility(a, r);
    own_count[a] += 1;
  }
  switch (measure) {
    case Measure::Usw: {
      std::int64_t sum = 0;
      for (std::int64_t v : own_value) sum += v;
      return sum;
    }
    case Measure::Esw:
      return *std::min_element(own_value.begin(), own_value.end());
    case Measure::Size: {
      std::int64_t sum = 0;
      for (std::int64_t c : own_count) sum += c;
      return sum;
    }
    case Measure::Mcar:
      return *std::min_element(own_count.begin(), own_count.end());
  }
  throw std::logic_error("unreachable measure");
}

UtilityClass classify_utilities(const Instance& instance) {
  const int n = instance.n_agents();
  const int m = instance.m_resources();

  std::set<std::int64_t> values;
  for (int a = 0; a < n; ++a) {
    for (int r = 0; r < m; ++r) {
      values.insert(instance.utility(a, r));
    }
  }

  bool identical = true;
  for (int a = 1; a < n && identical; ++a) {
    for (int r = 0; r < m; ++r) {
      if (instance.utility(a, r) != instance.utility(0, r)) {
        identical = false;
        break;
      }
    }
  }

  UtilityClass cls;
  cls.identical = identical;

  const bool has_zero = values.count(0) > 0;
  std::vector<std::int64_t> positives(values.begin(), values.end());
  if (has_zero) positives.erase(positives.begin());

  if (positives.empty() || (positives.size() == 1 && positives[0] == 1)) {
    cls.tag = UtilityClass::Tag::Binary;
    cls.low = 0;
    cls.high = 1;
  } else if (!has_zero && positives.size() <= 2 && positives.back() <= 2) {
    // Value set within {1,2} and no zeros.
    cls.tag = UtilityClass::Tag::Bivalued;
    cls.low = 1;
    cls.high = 2;
  } else if (positives.size() == 2) {
    cls.tag = UtilityClass::Tag::Ternary;
    cls.low = positives[0];
    cls.high = positives[1];
  } else {
    cls.tag = UtilityClass::Tag::General;
  }
  return cls;
}

VerifyReport verify_allocation(const Instance& instance, const Allocation& allocation,
                               Measure measure, std::int64_t threshold) {
  validate_allocation(instance, allocation);
  if (auto envy = first_envious_pair(instance, allocation)) {
    std::ostringstream out;
    out << "agent " << envy->first << " envies agent " << envy->second;
    return {false, out.str()};
  }
  const std::int64_t value = measure_value(instance, allocation, measure);
  if (value < threshold) {
    std::ostringstream out;
    out << to_string(measure) << " " << value << " < threshold " << threshold;
    return {false, out.str()};
  }
  return {true, {}};
}

}  // namespace efpa
