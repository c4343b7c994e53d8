#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ksc/scenarios.hpp"

namespace ksc {

struct SweepPoint {
    double p = 0.0;
    double value = 0.0;
    bool violated = false;
};

struct SweepSeries {
    std::string scenario;
    NoisePlacement placement = NoisePlacement::None;
    std::string state;
    std::vector<SweepPoint> points;  // strictly increasing in p
    std::optional<double> analytic_threshold;
    std::optional<double> numeric_threshold;
    double bound = 0.0;
    Direction direction = Direction::LessEq;
};

/// Evaluates the inequality (both pictures, which must agree) at `steps`
/// uniformly spaced depolarizing strengths covering [p_min, p_max]. Requires
/// 0 <= p_min < p_max <= 1 and steps >= 2. Thresholds are attached when
/// available: the closed-form value for configurations with a known law, and
/// the bisection result when the sweep crosses the bound.
SweepSeries sweep(const Scenario& s, const CMat& rho, NoisePlacement placement, double p_min,
                  double p_max, std::size_t steps, std::string_view state_desc = "");

struct ThresholdResult {
    enum class Kind { Crossing, NeverViolates, AlwaysViolates };
    Kind kind = Kind::NeverViolates;
    double p = 0.0;  // meaningful only for Kind::Crossing
};

/// Locates the depolarizing strength where the inequality value crosses the
/// classical bound, by bisection on p in [0,1] to within tol (at most 64
/// iterations). When the endpoints do not bracket a crossing, an interior
/// scan either confirms the sentinel outcome (never/always violates) or
/// raises a "non-monotone" error rather than silently bisecting.
ThresholdResult find_threshold(const Scenario& s, const CMat& rho, NoisePlacement placement,
                               double tol = 1e-8);

/// Closed-form threshold for the configurations whose noisy law is known:
/// the cyclic qutrit scenario with noise before the first measurement
/// (critical p of the prepared state) and the two-qubit square with noise
/// before each measurement (bound/6 under the p^2 shrinkage). Empty
/// otherwise.
std::optional<double> analytic_threshold(const Scenario& s, const CMat& rho,
                                         NoisePlacement placement);

/// Noisy square-scenario value 6*p^2; handy for checking reported
/// experimental values against a survival probability.
double experiment_consistency(double p);

}  // namespace ksc
