#include "ksc/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ksc {

std::array<std::array<double, 3>, 5> kcbs_vectors() {
    std::array<std::array<double, 3>, 5> v{};
    const double first = 1.0 / std::pow(5.0, 0.25);
    const double radial = std::sqrt(1.0 - 1.0 / std::sqrt(5.0));
    for (int i = 0; i < 5; ++i) {
        const double angle = 4.0 * std::numbers::pi * static_cast<double>(i) / 5.0;
        v[i] = {first, radial * std::cos(angle), radial * std::sin(angle)};
    }
    return v;
}

Scenario kcbs_scenario() {
    Scenario s;
    s.name = "kcbs";
    s.dimension = 3;
    const auto vectors = kcbs_vectors();
    for (int i = 0; i < 5; ++i) {
        std::vector<cplx> v = {cplx(vectors[i][0], 0.0), cplx(vectors[i][1], 0.0),
                               cplx(vectors[i][2], 0.0)};
        const CMat a = sub(scale(cplx(2.0, 0.0), outer(v)), identity(3));
        s.measurements.emplace_back("A" + std::to_string(i), a);
    }
    for (std::size_t i = 0; i < 5; ++i) s.contexts.push_back({i, (i + 1) % 5});
    s.inequality = Inequality{std::vector<double>(5, 1.0), -3.0, Direction::GreaterEq};
    return s;
}

CMat kcbs_optimal_state() {
    return outer({cplx(1.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0)});
}

Scenario peres_mermin_scenario() {
    Scenario s;
    s.name = "peres-mermin";
    s.dimension = 4;
    const CMat x = sigma_x(), y = sigma_y(), z = sigma_z();
    const struct {
        const char* label;
        CMat matrix;
    } grid[9] = {
        {"A11", kron(y, z)}, {"A12", kron(z, y)}, {"A13", kron(x, x)},
        {"A21", kron(z, x)}, {"A22", kron(x, z)}, {"A23", kron(y, y)},
        {"A31", kron(x, y)}, {"A32", kron(y, x)}, {"A33", kron(z, z)},
    };
    for (const auto& cell : grid) s.measurements.emplace_back(cell.label, cell.matrix);
    // Rows first, then columns; the inequality weights rows +1 and columns -1.
    for (std::size_t r = 0; r < 3; ++r) s.contexts.push_back({3 * r, 3 * r + 1, 3 * r + 2});
    for (std::size_t c = 0; c < 3; ++c) s.contexts.push_back({c, c + 3, c + 6});
    s.inequality = Inequality{{1.0, 1.0, 1.0, -1.0, -1.0, -1.0}, 4.0, Direction::LessEq};
    return s;
}

namespace {

double context_correlator(const Scenario& s, const CMat& rho, const std::vector<std::size_t>& ctx,
                          const Channel* noise, NoisePlacement placement, Picture picture) {
    std::vector<Observable> obs;
    obs.reserve(ctx.size());
    for (std::size_t idx : ctx) obs.push_back(s.measurements.at(idx));
    switch (picture) {
        case Picture::Schrodinger:
            return sequential_correlator(rho, obs, noise, placement);
        case Picture::Heisenberg:
            return sequential_correlator_heisenberg(rho, obs, noise, placement);
        case Picture::Both: {
            const double forward = sequential_correlator(rho, obs, noise, placement);
            const double pulled_back = sequential_correlator_heisenberg(rho, obs, noise, placement);
            if (std::abs(forward - pulled_back) >= kPictureTol) {
                throw std::logic_error("evaluate_inequality: picture disagreement " +
                                       std::to_string(std::abs(forward - pulled_back)));
            }
            return forward;
        }
    }
    throw std::logic_error("evaluate_inequality: unknown picture");
}

}  // namespace

EvalReport evaluate_inequality(const Scenario& s, const CMat& rho, const Channel* noise,
                               NoisePlacement placement, Picture picture,
                               std::string_view state_desc) {
    if (s.contexts.size() != s.inequality.gamma.size()) {
        throw std::invalid_argument("evaluate_inequality: coefficient count " +
                                    std::to_string(s.inequality.gamma.size()) +
                                    " does not match context count " +
                                    std::to_string(s.contexts.size()));
    }
    validate_state(rho, s.dimension);

    EvalReport report;
    report.scenario = s.name;
    report.state = std::string(state_desc);
    report.placement = placement;
    report.picture = picture;
    if (noise != nullptr && noise->is_depolarizing()) report.noise_p = noise->depolarizing_p();

    double value = 0.0;
    for (std::size_t k = 0; k < s.contexts.size(); ++k) {
        const double c = context_correlator(s, rho, s.contexts[k], noise, placement, picture);
        report.correlators.push_back(c);
        value += s.inequality.gamma[k] * c;
    }
    report.value = value;
    report.bound = s.inequality.bound;
    report.direction = s.inequality.direction;
    report.violated = s.inequality.direction == Direction::LessEq
                          ? value > s.inequality.bound + kViolationEps
                          : value < s.inequality.bound - kViolationEps;
    return report;
}

double kcbs_noisy_value(double s_rho, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("kcbs_noisy_value: p outside [0, 1]");
    }
    return p * s_rho - (1.0 - p) * 5.0 / 3.0;
}

double kcbs_p_crit(double s_rho) {
    if (!(s_rho < -3.0)) {
        throw std::domain_error("kcbs_p_crit: state does not violate; threshold undefined");
    }
    return (-4.0 / 3.0) / (s_rho + 5.0 / 3.0);
}

Diagnostics validate_scenario(const Scenario& s) {
    Diagnostics diag;
    auto fail = [&](std::string msg) {
        diag.pass = false;
        diag.failures.push_back(std::move(msg));
    };

    if (s.dimension == 0) fail("dimension must be positive");
    for (const Observable& obs : s.measurements) {
        if (obs.dim() != s.dimension) {
            fail("measurement '" + obs.label() + "' has dimension " + std::to_string(obs.dim()) +
                 ", scenario declares " + std::to_string(s.dimension));
        }
        // Hermiticity and involution hold by Observable construction; recheck
        // the derived projector algebra so corrupted data cannot slip through.
        const CMat& pp = obs.proj_plus();
        const CMat& pm = obs.proj_minus();
        if (frob_dist(matmul(pp, pp), pp) > kInvolutionTol ||
            frob_dist(matmul(pm, pm), pm) > kInvolutionTol ||
            frob_norm(matmul(pp, pm)) > kInvolutionTol) {
            fail("measurement '" + obs.label() + "' has invalid outcome projectors");
        }
    }

    if (s.inequality.gamma.size() != s.contexts.size()) {
        fail("inequality has " + std::to_string(s.inequality.gamma.size()) +
             " coefficients for " + std::to_string(s.contexts.size()) + " contexts");
    }

    std::vector<bool> used(s.measurements.size(), false);
    for (std::size_t k = 0; k < s.contexts.size(); ++k) {
        const auto& ctx = s.contexts[k];
        if (ctx.empty()) fail("context " + std::to_string(k) + " is empty");
        for (std::size_t idx : ctx) {
            if (idx >= s.measurements.size()) {
                fail("context " + std::to_string(k) + " references measurement " +
                     std::to_string(idx) + " out of range");
                continue;
            }
            used[idx] = true;
        }
        for (std::size_t a = 0; a < ctx.size(); ++a) {
            for (std::size_t b = a + 1; b < ctx.size(); ++b) {
                if (ctx[a] >= s.measurements.size() || ctx[b] >= s.measurements.size()) continue;
                const Observable& oa = s.measurements[ctx[a]];
                const Observable& ob = s.measurements[ctx[b]];
                if (ctx[a] == ctx[b] || frob_dist(oa.matrix(), ob.matrix()) <= kCommuteTol) {
                    fail("context " + std::to_string(k) + ": duplicate measurement pair ('" +
                         oa.label() + "', '" + ob.label() + "')");
                    continue;
                }
                const double residual = commutator_norm(oa.matrix(), ob.matrix());
                if (residual > kCommuteTol) {
                    fail("context " + std::to_string(k) + ": non-commuting pair ('" + oa.label() +
                         "', '" + ob.label() + "'), ||[A,B]||_F = " + std::to_string(residual));
                }
            }
        }
    }
    for (std::size_t i = 0; i < used.size(); ++i) {
        if (!used[i]) {
            fail("measurement '" + s.measurements[i].label() + "' appears in no context");
        }
    }
    return diag;
}

std::string_view to_string(Direction d) {
    return d == Direction::LessEq ? "<=" : ">=";
}

std::string_view to_string(NoisePlacement p) {
    switch (p) {
        case NoisePlacement::None: return "none";
        case NoisePlacement::BeforeFirstOnly: return "before-first";
        case NoisePlacement::BeforeEach: return "before-each";
    }
    return "?";
}

std::string_view to_string(Picture p) {
    switch (p) {
        case Picture::Schrodinger: return "schrodinger";
        case Picture::Heisenberg: return "heisenberg";
        case Picture::Both: return "both-agree";
    }
    return "?";
}

}  // namespace ksc
