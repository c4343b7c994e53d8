#pragma once

#include <string>

#include "ksc/scenarios.hpp"

namespace ksc {

/// Parses a scenario document:
///   {"name": ..., "dimension": d,
///    "measurements": [{"label": ..., "matrix": [[[re,im], ...], ...]}, ...],
///    "contexts": [[indices], ...],
///    "inequality": {"gamma": [...], "bound": b, "direction": "<="|">="}}
/// Every Scenario invariant is enforced; violations raise std::runtime_error
/// with a message naming the offending field or pair.
Scenario parse_scenario_json(const std::string& text);
Scenario load_scenario_file(const std::string& path);

/// Parses a state document {"dimension": d, "matrix": [[[re,im], ...], ...]}
/// and validates Hermiticity, unit trace and positivity.
CMat parse_state_json(const std::string& text);
CMat load_state_file(const std::string& path);

std::string scenario_to_json(const Scenario& s);
std::string state_to_json(const CMat& rho);

/// Locale-independent rendering with the requested number of significant
/// digits, trailing zeros kept (always '.' as the decimal separator).
std::string format_significant(double v, int digits);

/// Locale-independent fixed-point rendering with the requested number of
/// decimal places.
std::string format_fixed(double v, int decimals);

}  // namespace ksc
