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

#include "core/product.hpp"

#include <algorithm>
#include <set>

namespace scentest::product {

namespace {

bool is_component_kind(NodeKind k) {
  return k == NodeKind::component || k == NodeKind::hardware_component ||
         k == NodeKind::software_component;
}

struct TreeChecker {
  ValidationReport report;
  std::set<std::string> seen_ids;

  void check(const DecompositionNode& node, const std::string& path) {
    if (node.id.empty()) {
      report.add(path + ".id", "node id must be non-empty");
    } else if (!seen_ids.insert(node.id).second) {
      report.add(path, "tree structure violated: node '" + node.id +
                           "' appears more than once");
    }

    std::size_t components = 0, hw_parts = 0, sw_units = 0, hw_subparts = 0,
                systems = 0, elementary = 0, other = 0;
    for (const DecompositionNode& ch : node.children) {
      if (is_component_kind(ch.kind)) {
        ++components;
      } else if (ch.kind == NodeKind::hardware_part) {
        ++hw_parts;
      } else if (ch.kind == NodeKind::software_unit) {
        ++sw_units;
      } else if (ch.kind == NodeKind::hardware_subpart) {
        ++hw_subparts;
      } else if (ch.kind == NodeKind::system) {
        ++systems;
      } else if (ch.kind == NodeKind::hardware_elementary_subpart) {
        ++elementary;
      } else {
        ++other;
      }
    }
    (void)other;

    switch (node.kind) {
      case NodeKind::system:
        // A system relates components or subsystems (nested systems).
        if (node.children.empty()) {
          report.add(path, "a system consists of one or more components or "
                           "subsystems");
        }
        if (hw_parts + sw_units + hw_subparts + elementary > 0) {
          report.add(path, "a system may only contain components or subsystems");
        }
        break;
      case NodeKind::component:
      case NodeKind::hardware_component:
      case NodeKind::software_component:
        // One or more hardware parts and/or one or more software units,
        // possible subcomponents, with 0..* multiplicity at every level: a
        // component may also appear undecomposed.
        if (systems > 0 || hw_subparts > 0 || elementary > 0) {
          report.add(path, "a component may only contain subcomponents, "
                           "hardware parts, and software units");
        }
        if (node.kind == NodeKind::hardware_component && sw_units > 0) {
          report.add(path, "a hardware component consists of hardware only");
        }
        if (node.kind == NodeKind::software_component && hw_parts > 0) {
          report.add(path, "a software component consists of software only");
        }
        break;
      case NodeKind::hardware_part:
        if (node.children.size() != static_cast<std::size_t>(hw_subparts)) {
          report.add(path, "a hardware part consists of hardware subparts only");
        }
        break;
      case NodeKind::hardware_subpart:
        if (node.children.size() !=
            static_cast<std::size_t>(hw_subparts + elementary)) {
          report.add(path, "a hardware subpart consists of hardware subparts "
                           "or hardware elementary subparts only");
        }
        break;
      case NodeKind::hardware_elementary_subpart:
        if (!node.children.empty()) {
          report.add(path, "a hardware elementary subpart is at the lowest "
                           "level of decomposition and has no children");
        }
        break;
      case NodeKind::software_unit:
        if (!node.children.empty()) {
          report.add(path, "a software unit is atomic and has no children");
        }
        break;
    }

    for (std::size_t i = 0; i < node.children.size(); ++i) {
      check(node.children[i], path + ".children[" + std::to_string(i) + "]");
    }
  }
};

template <typename T>
std::set<std::string> ids_of(const std::vector<T>& xs) {
  std::set<std::string> out;
  for (const T& x : xs) {
    out.insert(x.id);
  }
  return out;
}

}  // namespace

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::system: return "system";
    case NodeKind::component: return "component";
    case NodeKind::hardware_component: return "hardware_component";
    case NodeKind::software_component: return "software_component";
    case NodeKind::hardware_part: return "hardware_part";
    case NodeKind::hardware_subpart: return "hardware_subpart";
    case NodeKind::hardware_elementary_subpart:
      return "hardware_elementary_subpart";
    case NodeKind::software_unit: return "software_unit";
  }
  return "?";
}

ValidationReport validate_decomposition(const DecompositionNode& root) {
  TreeChecker checker;
  checker.check(root, root.id.empty() ? "(root)" : root.id);
  return checker.report;
}

ValidationReport validate_product_model(const ProductModel& m) {
  ValidationReport report;

  std::set<std::string> item_ids = ids_of(m.items);
  std::set<std::string> def_ids = ids_of(m.definitions);
  std::set<std::string> root_ids = ids_of(m.decompositions);

  for (std::size_t i = 0; i < m.functions.size(); ++i) {
    const VehicleFunction& f = m.functions[i];
    const std::string path = "vehicle_functions[" + std::to_string(i) + "]";
    if (f.implemented_by.empty()) {
      report.add(path + ".implemented_by",
                 "a vehicle function is implemented by one or more items");
    }
    for (const std::string& id : f.implemented_by) {
      if (!item_ids.count(id)) {
        report.add(path + ".implemented_by", "unknown item '" + id + "'");
      }
    }
  }

  for (std::size_t i = 0; i < m.definitions.size(); ++i) {
    if (m.definitions[i].functionality.empty()) {
      report.add("item_definitions[" + std::to_string(i) + "].functionality",
                 "functionality must be non-empty");
    }
  }

  for (std::size_t i = 0; i < m.items.size(); ++i) {
    const Item& item = m.items[i];
    const std::string path = "items[" + std::to_string(i) + "]";
    if (item.systems.empty()) {
      report.add(path + ".systems", "an item consists of one or more systems");
    }
    for (const std::string& id : item.systems) {
      if (!root_ids.count(id)) {
        report.add(path + ".systems", "unknown system '" + id + "'");
      }
    }
    if (!item.definition.empty() && !def_ids.count(item.definition)) {
      report.add(path + ".definition",
                 "unknown item definition '" + item.definition + "'");
    }
  }

  for (std::size_t i = 0; i < m.requirements.size(); ++i) {
    if (m.requirements[i].statement.empty()) {
      report.add("requirements[" + std::to_string(i) + "].statement",
                 "a requirement statement must be non-empty");
    }
  }

  for (const DecompositionNode& root : m.decompositions) {
    ValidationReport sub = validate_decomposition(root);
    report.merge("decompositions", sub);
    if (root.kind != NodeKind::system) {
      report.add("decompositions",
                 "decomposition root '" + root.id + "' must be a system");
    }
  }
  return report;
}

}  // namespace scentest::product
