#include "efpa/io.hpp"

#include <algorithm>

#include <json.hpp>

namespace efpa {

namespace {

using nlohmann::json;

json parse_object(const std::string& text, std::initializer_list<const char*> allowed) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error& error) {
    throw std::invalid_argument(std::string("invalid JSON: ") + error.what());
  }
  if (!document.is_object()) {
    throw std::invalid_argument("document must be a JSON object");
  }
  for (const auto& [key, value] : document.items()) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* name) { return key == name; }) == allowed.end()) {
      throw std::invalid_argument("unknown key \"" + key + "\"");
    }
  }
  return document;
}

std::vector<std::string> parse_labels(const json& document, const char* key) {
  std::vector<std::string> labels;
  if (!document.contains(key)) return labels;
  const json& array = document.at(key);
  if (!array.is_array()) {
    throw std::invalid_argument(std::string(key) + " must be an array of strings");
  }
  for (const json& entry : array) {
    if (!entry.is_string()) {
      throw std::invalid_argument(std::string(key) + " must be an array of strings");
    }
    labels.push_back(entry.get<std::string>());
  }
  return labels;
}

}  // namespace

Instance parse_instance_document(const std::string& text) {
  const json document = parse_object(text, {"utilities", "agents", "resources"});
  if (!document.contains("utilities") || !document.at("utilities").is_array()) {
    throw std::invalid_argument("document needs a \"utilities\" array");
  }
  std::vector<std::vector<std::int64_t>> utilities;
  for (const json& row : document.at("utilities")) {
    if (!row.is_array()) {
      throw std::invalid_argument("utilities must be an array of arrays");
    }
    std::vector<std::int64_t> values;
    for (const json& entry : row) {
      if (!entry.is_number_integer()) {
        throw std::invalid_argument("utilities must be integers");
      }
      values.push_back(entry.get<std::int64_t>());
    }
    utilities.push_back(std::move(values));
  }
  return Instance::make(std::move(utilities), parse_labels(document, "agents"),
                        parse_labels(document, "resources"));
}

std::string serialize_instance_document(const Instance& instance) {
  json document;
  json rows = json::array();
  for (int a = 0; a < instance.n_agents(); ++a) {
    json row = json::array();
    for (int r = 0; r < instance.m_resources(); ++r) {
      row.push_back(instance.utility(a, r));
    }
    rows.push_back(std::move(row));
  }
  document["utilities"] = std::move(rows);
  if (!instance.agent_labels().empty()) document["agents"] = instance.agent_labels();
  if (!instance.resource_labels().empty()) document["resources"] = instance.resource_labels();
  return document.dump(2) + "\n";
}

Allocation parse_allocation_document(const std::string& text, const Instance& instance) {
  const json document = parse_object(text, {"owner"});
  if (!document.contains("owner") || !document.at("owner").is_array()) {
    throw std::invalid_argument("document needs an \"owner\" array");
  }
  Allocation allocation;
  for (const json& entry : document.at("owner")) {
    if (entry.is_null()) {
      allocation.owner.push_back(std::nullopt);
    } else if (entry.is_number_integer()) {
      allocation.owner.push_back(entry.get<int>());
    } else {
      throw std::invalid_argument("owner entries must be agent indices or null");
    }
  }
  validate_allocation(instance, allocation);
  return allocation;
}

std::string serialize_allocation_document(const Allocation& allocation) {
  json owners = json::array();
  for (const auto& owner : allocation.owner) {
    if (owner) {
      owners.push_back(*owner);
    } else {
      owners.push_back(nullptr);
    }
  }
  json document;
  document["owner"] = std::move(owners);
  return document.dump(2) + "\n";
}

}  // namespace efpa
