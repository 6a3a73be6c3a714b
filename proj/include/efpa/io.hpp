#pragma once

#include <string>

#include "efpa/core.hpp"

namespace efpa {

// Instance document: {"utilities": [[...]], "agents": [...], "resources": [...]}
// with the label arrays optional and unknown keys rejected.
Instance parse_instance_document(const std::string& text);
std::string serialize_instance_document(const Instance& instance);

// Allocation document: {"owner": [agent-index-or-null, ...]} of length m.
Allocation parse_allocation_document(const std::string& text, const Instance& instance);
std::string serialize_allocation_document(const Allocation& allocation);

}  // namespace efpa
