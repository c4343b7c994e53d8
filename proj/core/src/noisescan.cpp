#include "ksc/noisescan.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ksc {

namespace {

struct Evaluation {
    double value;
    bool violated;
};

Evaluation eval_at(const Scenario& s, const CMat& rho, NoisePlacement placement, double p,
                   std::string_view state_desc) {
    const Channel noise = Channel::depolarizing(p, s.dimension);
    const EvalReport report =
        evaluate_inequality(s, rho, &noise, placement, Picture::Both, state_desc);
    return {report.value, report.violated};
}

}  // namespace

std::optional<double> analytic_threshold(const Scenario& s, const CMat& rho,
                                         NoisePlacement placement) {
    if (s.name == "kcbs" && placement == NoisePlacement::BeforeFirstOnly) {
        const EvalReport ideal =
            evaluate_inequality(s, rho, nullptr, NoisePlacement::None, Picture::Schrodinger);
        if (ideal.value < -3.0) return kcbs_p_crit(ideal.value);
        return std::nullopt;
    }
    if (s.name == "peres-mermin" && placement == NoisePlacement::BeforeEach) {
        // Value 6 p^2 for every state; crosses the bound at sqrt(bound/6).
        return std::sqrt(s.inequality.bound / 6.0);
    }
    return std::nullopt;
}

SweepSeries sweep(const Scenario& s, const CMat& rho, NoisePlacement placement, double p_min,
                  double p_max, std::size_t steps, std::string_view state_desc) {
    if (!(p_min >= 0.0 && p_min < p_max && p_max <= 1.0)) {
        throw std::invalid_argument("sweep: need 0 <= p_min < p_max <= 1, got [" +
                                    std::to_string(p_min) + ", " + std::to_string(p_max) + "]");
    }
    if (steps < 2) {
        throw std::invalid_argument("sweep: steps must be >= 2, got " + std::to_string(steps));
    }

    SweepSeries series;
    series.scenario = s.name;
    series.placement = placement;
    series.state = std::string(state_desc);
    series.bound = s.inequality.bound;
    series.direction = s.inequality.direction;

    for (std::size_t i = 0; i < steps; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(steps - 1);
        const double p = p_min + (p_max - p_min) * frac;
        const Evaluation e = eval_at(s, rho, placement, p, state_desc);
        series.points.push_back({p, e.value, e.violated});
    }

    series.analytic_threshold = analytic_threshold(s, rho, placement);
    try {
        const ThresholdResult numeric = find_threshold(s, rho, placement);
        if (numeric.kind == ThresholdResult::Kind::Crossing) series.numeric_threshold = numeric.p;
    } catch (const std::runtime_error&) {
        // Non-monotone profile: the sweep itself is still well defined.
    }
    return series;
}

ThresholdResult find_threshold(const Scenario& s, const CMat& rho, NoisePlacement placement,
                               double tol) {
    if (!(tol > 0.0)) throw std::domain_error("find_threshold: tol must be > 0");

    const Evaluation at0 = eval_at(s, rho, placement, 0.0, "");
    const Evaluation at1 = eval_at(s, rho, placement, 1.0, "");

    if (at0.violated == at1.violated) {
        // No crossing at the endpoints: scan the interior before concluding.
        constexpr int kScanPoints = 33;
        for (int i = 1; i + 1 < kScanPoints; ++i) {
            const double p = static_cast<double>(i) / (kScanPoints - 1);
            if (eval_at(s, rho, placement, p, "").violated != at0.violated) {
                throw std::runtime_error(
                    "find_threshold: non-monotone violation profile (interior point p = " +
                    std::to_string(p) + " disagrees with the endpoints); refusing to bisect");
            }
        }
        return {at0.violated ? ThresholdResult::Kind::AlwaysViolates
                             : ThresholdResult::Kind::NeverViolates,
                0.0};
    }

    // Bisect the flip point of the violation indicator.
    double lo = 0.0, hi = 1.0;
    bool lo_violated = at0.violated;
    constexpr int kMaxIter = 64;
    for (int it = 0; it < kMaxIter && (hi - lo) > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (eval_at(s, rho, placement, mid, "").violated == lo_violated) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {ThresholdResult::Kind::Crossing, 0.5 * (lo + hi)};
}

double experiment_consistency(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("experiment_consistency: p outside [0, 1]");
    }
    return 6.0 * p * p;
}

}  // namespace ksc
