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

#include "core/concretizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/errors.hpp"
#include "core/random.hpp"
#include "core/text.hpp"

namespace scentest::concretizer {

namespace {

struct Correlation {
  std::string lhs;
  std::string op;
  bool rhs_is_param = false;
  std::string rhs_param;
  double rhs_number = 0.0;
};

bool parse_correlation(const std::string& text, Correlation* out,
                       std::string* error) {
  std::istringstream in(text);
  Correlation c;
  std::string rhs;
  if (!(in >> c.lhs >> c.op >> rhs)) {
    if (error) *error = "correlation must be 'NAME OP (NAME|NUMBER)'";
    return false;
  }
  std::string extra;
  if (in >> extra) {
    if (error) *error = "trailing tokens in correlation '" + text + "'";
    return false;
  }
  static const char* ops[] = {"<", "<=", "==", ">=", ">"};
  if (std::find_if(std::begin(ops), std::end(ops), [&](const char* o) {
        return c.op == o;
      }) == std::end(ops)) {
    if (error) *error = "unknown operator '" + c.op + "' in correlation";
    return false;
  }
  if (auto v = parse_double(rhs)) {
    c.rhs_number = *v;
  } else {
    c.rhs_is_param = true;
    c.rhs_param = rhs;
  }
  *out = c;
  return true;
}

bool compare(double a, const std::string& op, double b) {
  if (op == "<") return a < b;
  if (op == "<=") return a <= b;
  if (op == "==") return a == b;
  if (op == ">=") return a >= b;
  return a > b;
}

double resolve_si(const model::ScalarOrParam& f,
                  const std::map<std::string, units::Quantity>& values) {
  if (f.is_param()) {
    return values.at(f.param).si();
  }
  return f.fixed->si();
}

// Values sampled per parameter, expressed in the range's declared unit.
using Assignment = std::map<std::string, units::Quantity>;

model::ConcreteScenario instantiate(const model::LogicalScenario& l,
                                    const Assignment& values,
                                    std::string id) {
  model::ConcreteScenario c;
  c.id = std::move(id);
  c.parent_logical = l.id;
  c.parameter_values = values;
  c.duration = resolve_si(l.duration, values);

  c.scenery.lane_count = l.scenery.lane_count;
  c.scenery.lane_width = resolve_si(l.scenery.lane_width, values);
  c.scenery.curvature = resolve_si(l.scenery.curvature, values);
  c.scenery.ambient_temperature =
      resolve_si(l.scenery.ambient_temperature, values);
  c.scenery.stationary = l.scenery.stationary;

  for (const model::MovableObjectTemplate& t : l.objects) {
    model::MovableObject o;
    o.id = t.id;
    o.kind = t.kind;
    o.behavior = t.behavior;
    o.initial.position = resolve_si(t.position, values);
    o.initial.lane_index = t.lane_index;
    o.initial.speed = resolve_si(t.speed, values);
    c.objects.push_back(std::move(o));
  }
  for (const model::ScenarioEventTemplate& t : l.events) {
    model::ScenarioEvent e;
    e.id = t.id;
    e.trigger_time = resolve_si(t.trigger_time, values);
    e.effect.type = t.type;
    if (t.type == model::EventEffect::Type::activate_acc) {
      e.effect.set_speed = resolve_si(t.set_speed, values);
    } else if (t.type == model::EventEffect::Type::set_object_speed) {
      e.effect.object_id = t.object_id;
      e.effect.speed = resolve_si(t.speed, values);
    }
    c.events.push_back(std::move(e));
  }
  c.goals_values = l.goals_values;
  c.self_representations = l.self_representations;
  return c;
}

std::string padded_index(std::size_t i, std::size_t total) {
  std::size_t width = 1;
  for (std::size_t n = total > 0 ? total - 1 : 0; n >= 10; n /= 10) {
    ++width;
  }
  std::string digits = std::to_string(i);
  return std::string(width > digits.size() ? width - digits.size() : 0, '0') +
         digits;
}

/// Grid points in the declared unit; degenerate ranges collapse to one value
/// so strategy products count distinct scenarios only.
std::vector<double> grid_values(const model::ParameterRange& p, int n) {
  if (p.min == p.max) {
    return {p.min};
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    if (k == 0) {
      out.push_back(p.min);
    } else if (k == n - 1) {
      out.push_back(p.max);
    } else {
      out.push_back(p.min + (p.max - p.min) * static_cast<double>(k) /
                                static_cast<double>(n - 1));
    }
  }
  return out;
}

std::vector<double> boundary_values(const model::ParameterRange& p,
                                    bool include_center) {
  if (p.min == p.max) {
    return {p.min};
  }
  if (include_center) {
    return {p.min, p.min + (p.max - p.min) * 0.5, p.max};
  }
  return {p.min, p.max};
}

bool correlations_hold(const model::LogicalScenario& l,
                       const Assignment& values) {
  for (const model::ParameterRange& p : l.parameters) {
    for (const std::string& c : p.correlations) {
      if (!correlation_holds(c, values)) {
        return false;
      }
    }
  }
  return true;
}

bool has_correlations(const model::LogicalScenario& l) {
  return std::any_of(l.parameters.begin(), l.parameters.end(),
                     [](const model::ParameterRange& p) {
                       return !p.correlations.empty();
                     });
}

std::vector<model::ConcreteScenario> enumerate_product(
    const model::LogicalScenario& l, const ConcretizationConfig& cfg,
    const std::vector<std::vector<double>>& values_per_param) {
  std::size_t total = 1;
  for (const auto& vs : values_per_param) {
    total *= vs.size();
  }
  std::vector<model::ConcreteScenario> out;
  out.reserve(total);
  const bool flag_correlations = has_correlations(l);
  // Odometer order: the last declared parameter varies fastest.
  std::vector<std::size_t> cursor(values_per_param.size(), 0);
  for (std::size_t i = 0; i < total; ++i) {
    Assignment values;
    for (std::size_t p = 0; p < l.parameters.size(); ++p) {
      values[l.parameters[p].name] =
          units::Quantity{values_per_param[p][cursor[p]], l.parameters[p].unit};
    }
    model::ConcreteScenario c =
        instantiate(l, values, cfg.id_prefix + "-" + padded_index(i, total));
    if (flag_correlations && !correlations_hold(l, values)) {
      c.notes.push_back("correlations_not_enforced");
    }
    out.push_back(std::move(c));
    for (std::size_t p = values_per_param.size(); p-- > 0;) {
      if (++cursor[p] < values_per_param[p].size()) {
        break;
      }
      cursor[p] = 0;
    }
  }
  return out;
}

double draw(const model::ParameterRange& p, SplitMix64& rng) {
  if (p.distribution && p.distribution->type == model::Distribution::Type::normal) {
    // Truncate by rejection with a bounded number of attempts, then clamp.
    for (int attempt = 0; attempt < 1000; ++attempt) {
      double v = rng.normal(p.distribution->mean, p.distribution->stddev);
      if (v >= p.min && v <= p.max) {
        return v;
      }
    }
    double v = rng.normal(p.distribution->mean, p.distribution->stddev);
    return std::clamp(v, p.min, p.max);
  }
  if (p.min == p.max) {
    return p.min;
  }
  return rng.uniform(p.min, p.max);
}

std::vector<model::ConcreteScenario> sample_random(
    const model::LogicalScenario& l, const ConcretizationConfig& cfg) {
  SplitMix64 rng(cfg.seed);
  std::vector<model::ConcreteScenario> out;
  out.reserve(static_cast<std::size_t>(cfg.count));
  const bool correlated = has_correlations(l);
  for (int i = 0; i < cfg.count; ++i) {
    Assignment values;
    bool accepted = false;
    for (int attempt = 0; attempt < 1000 && !accepted; ++attempt) {
      values.clear();
      for (const model::ParameterRange& p : l.parameters) {
        values[p.name] = units::Quantity{draw(p, rng), p.unit};
      }
      accepted = !correlated || correlations_hold(l, values);
    }
    model::ConcreteScenario c = instantiate(
        l, values,
        cfg.id_prefix + "-" + padded_index(static_cast<std::size_t>(i),
                                           static_cast<std::size_t>(cfg.count)));
    if (!accepted) {
      c.notes.push_back("correlations_not_enforced");
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

bool correlation_syntax_ok(const std::string& text,
                           const std::set<std::string>& known_params,
                           const std::vector<model::ParameterRange>& ranges,
                           std::string* error) {
  (void)ranges;
  Correlation c;
  if (!parse_correlation(text, &c, error)) {
    return false;
  }
  if (!known_params.count(c.lhs)) {
    if (error) *error = "correlation references unknown parameter '" + c.lhs + "'";
    return false;
  }
  if (c.rhs_is_param && !known_params.count(c.rhs_param)) {
    if (error) {
      *error = "correlation references unknown parameter '" + c.rhs_param + "'";
    }
    return false;
  }
  return true;
}

bool correlation_holds(const std::string& text,
                       const std::map<std::string, units::Quantity>& values) {
  Correlation c;
  if (!parse_correlation(text, &c, nullptr)) {
    return true;  // unparseable correlations are a validation concern
  }
  auto lhs_it = values.find(c.lhs);
  if (lhs_it == values.end()) {
    return true;
  }
  double lhs = lhs_it->second.si();
  double rhs;
  if (c.rhs_is_param) {
    auto rhs_it = values.find(c.rhs_param);
    if (rhs_it == values.end()) {
      return true;
    }
    rhs = rhs_it->second.si();
  } else {
    // A bare number is read in the left parameter's declared unit.
    rhs = units::to_si(c.rhs_number, lhs_it->second.unit);
  }
  return compare(lhs, c.op, rhs);
}

std::vector<model::ConcreteScenario> concretize(const model::LogicalScenario& l,
                                                const ConcretizationConfig& cfg) {
  ValidationReport report = model::validate_logical(l);
  if (!report.ok()) {
    throw Error(ErrorCode::invalid_logical,
                "logical scenario '" + l.id + "' is invalid:\n" +
                    report.to_string());
  }
  switch (cfg.strategy) {
    case ConcretizationConfig::Strategy::grid: {
      if (cfg.points_per_parameter < 2) {
        throw Error(ErrorCode::config, "grid requires points_per_parameter >= 2");
      }
      std::vector<std::vector<double>> values;
      values.reserve(l.parameters.size());
      for (const model::ParameterRange& p : l.parameters) {
        values.push_back(grid_values(p, cfg.points_per_parameter));
      }
      return enumerate_product(l, cfg, values);
    }
    case ConcretizationConfig::Strategy::boundary: {
      std::vector<std::vector<double>> values;
      values.reserve(l.parameters.size());
      for (const model::ParameterRange& p : l.parameters) {
        values.push_back(boundary_values(p, cfg.include_center));
      }
      return enumerate_product(l, cfg, values);
    }
    case ConcretizationConfig::Strategy::uniform_random: {
      if (cfg.count < 1) {
        throw Error(ErrorCode::config, "uniform_random requires count >= 1");
      }
      return sample_random(l, cfg);
    }
  }
  throw Error(ErrorCode::config, "unknown concretization strategy");
}

std::map<std::string, std::vector<std::string>> assign_drive(
    const model::RealWorldTestDrive& d,
    const std::vector<model::LogicalScenario>& catalog) {
  std::map<std::string, std::vector<std::string>> out;
  for (const model::ConcreteScenario& c : d.recorded) {
    std::vector<std::string>& assigned = out[c.id];
    for (const model::LogicalScenario& l : catalog) {
      bool member;
      try {
        member = model::is_member(c, l);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::missing_parameter) {
          member = false;  // recordings may lack values for unrelated catalogs
        } else {
          throw;
        }
      }
      if (member) {
        assigned.push_back(l.id);
      }
    }
  }
  return out;
}

}  // namespace scentest::concretizer
