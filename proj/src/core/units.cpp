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

#include "core/units.hpp"

#include <array>

#include "core/errors.hpp"

namespace scentest::units {

namespace {

constexpr std::array<UnitDef, 13> kUnits{{
    {"", Dimension::dimensionless, 1.0, 1.0},
    {"m", Dimension::length, 1.0, 1.0},
    {"km", Dimension::length, 1000.0, 1.0},
    {"s", Dimension::time, 1.0, 1.0},
    {"ms", Dimension::time, 1.0, 1000.0},
    {"min", Dimension::time, 60.0, 1.0},
    {"m/s", Dimension::speed, 1.0, 1.0},
    {"km/h", Dimension::speed, 1.0, 3.6},
    {"m/s^2", Dimension::acceleration, 1.0, 1.0},
    {"1/m", Dimension::curvature, 1.0, 1.0},
    {"degC", Dimension::temperature, 1.0, 1.0},
    {"1/s", Dimension::per_time, 1.0, 1.0},
    {"%", Dimension::fraction, 1.0, 1.0},
}};

const UnitDef& require(std::string_view tag) {
  if (const UnitDef* u = find_unit(tag)) {
    return *u;
  }
  throw Error(ErrorCode::unit, "unknown unit tag '" + std::string(tag) + "'");
}

}  // namespace

const UnitDef* find_unit(std::string_view tag) {
  for (const UnitDef& u : kUnits) {
    if (u.tag == tag) {
      return &u;
    }
  }
  return nullptr;
}

std::string_view si_unit(Dimension dim) {
  switch (dim) {
    case Dimension::dimensionless: return "";
    case Dimension::length: return "m";
    case Dimension::time: return "s";
    case Dimension::speed: return "m/s";
    case Dimension::acceleration: return "m/s^2";
    case Dimension::curvature: return "1/m";
    case Dimension::temperature: return "degC";
    case Dimension::per_time: return "1/s";
    case Dimension::fraction: return "%";
  }
  return "";
}

double to_si(double value, std::string_view unit) {
  const UnitDef& u = require(unit);
  return (value * u.num) / u.den;
}

double from_si(double si_value, std::string_view unit) {
  const UnitDef& u = require(unit);
  return (si_value * u.den) / u.num;
}

Dimension dimension_of(std::string_view unit) { return require(unit).dim; }

bool same_dimension(std::string_view a, std::string_view b) {
  return dimension_of(a) == dimension_of(b);
}

}  // namespace scentest::units
