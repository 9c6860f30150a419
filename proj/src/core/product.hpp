// Copyright 2026 scentest contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include "core/validation.hpp"

namespace scentest::product {

enum class NodeKind {
  system,
  component,
  hardware_component,
  software_component,
  hardware_part,
  hardware_subpart,
  hardware_elementary_subpart,
  software_unit,
};

/// Item decomposition tree. Kinds are declared by the author, never
/// inferred; level assignment is developer-relative.
struct DecompositionNode {
  std::string id;
  NodeKind kind = NodeKind::component;
  std::vector<DecompositionNode> children;
};

struct VehicleFunction {
  std::string id;
  std::string description;
  std::vector<std::string> implemented_by;  // item ids, >= 1
};

struct ItemDefinition {
  std::string id;
  std::string functionality;
  std::vector<std::string> functional_scenarios;  // 0..*
  std::vector<std::string> derived_requirements;
};

struct Item {
  std::string id;
  std::string definition;            // ItemDefinition id
  std::vector<std::string> systems;  // decomposition root ids, >= 1
};

struct Requirement {
  std::string id;
  std::string statement;
  std::vector<std::string> verified_by;  // evaluation criterion ids, 0..*
};

struct ProductModel {
  std::vector<VehicleFunction> functions;
  std::vector<Item> items;
  std::vector<ItemDefinition> definitions;
  std::vector<Requirement> requirements;
  std::vector<DecompositionNode> decompositions;
};

/// Kind/children rules plus tree-ness (unique ids, single parent).
ValidationReport validate_decomposition(const DecompositionNode& root);

/// Decomposition rules plus intra-model cross references.
ValidationReport validate_product_model(const ProductModel& m);

const char* to_string(NodeKind kind);

}  // namespace scentest::product
