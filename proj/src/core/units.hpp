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
#include <string_view>

namespace scentest::units {

// Canonical internal units are SI: m, s, m/s, m/s^2, 1/m, degC.
// Files may carry any registered tag; conversion happens at the parse
// boundary.
enum class Dimension {
  dimensionless,
  length,
  time,
  speed,
  acceleration,
  curvature,
  temperature,
  per_time,
  fraction,
};

struct UnitDef {
  std::string_view tag;
  Dimension dim;
  // si = (value * num) / den. Expressed as a division so that e.g.
  // 150 km/h converts as 150/3.6 with no extra rounding step.
  double num;
  double den;
};

// nullptr when the tag is unknown.
const UnitDef* find_unit(std::string_view tag);

std::string_view si_unit(Dimension dim);

double to_si(double value, std::string_view unit);    // throws Error{unit}
double from_si(double si_value, std::string_view unit);
Dimension dimension_of(std::string_view unit);
bool same_dimension(std::string_view a, std::string_view b);

/// A number with the unit tag it was written in. `si()` converts on demand.
struct Quantity {
  double value = 0.0;
  std::string unit;

  double si() const { return to_si(value, unit); }
  Dimension dimension() const { return dimension_of(unit); }

  bool operator==(const Quantity&) const = default;
};

}  // namespace scentest::units
