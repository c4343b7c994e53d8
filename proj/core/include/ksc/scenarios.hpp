#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ksc/measure.hpp"

namespace ksc {

/// Violations must exceed the classical bound by more than this to count;
/// touching the bound exactly is classically attainable.
inline constexpr double kViolationEps = 1e-10;
/// Agreement demanded between the two pictures when both are evaluated.
inline constexpr double kPictureTol = 1e-10;

enum class Direction { LessEq, GreaterEq };

struct Inequality {
    std::vector<double> gamma;  // one coefficient per context
    double bound = 0.0;
    Direction direction = Direction::LessEq;
};

/// A contextuality scenario: dichotomic measurements, the compatibility
/// contexts (index lists into measurements, evaluated in listed order), and
/// one noncontextuality inequality over the full-context correlators.
struct Scenario {
    std::string name;
    std::size_t dimension = 0;
    std::vector<Observable> measurements;
    std::vector<std::vector<std::size_t>> contexts;
    Inequality inequality;
};

enum class Picture { Schrodinger, Heisenberg, Both };

struct EvalReport {
    std::string scenario;
    std::string state;
    std::optional<double> noise_p;  // set when the noise channel is depolarizing
    NoisePlacement placement = NoisePlacement::None;
    std::vector<double> correlators;  // one per context, in context order
    double value = 0.0;               // sum of gamma_k * correlator_k
    double bound = 0.0;
    Direction direction = Direction::LessEq;
    bool violated = false;
    Picture picture = Picture::Schrodinger;
};

/// The five-measurement cyclic scenario on a qutrit. Observables are built at
/// runtime from the closed-form rank-1 vectors; neighbouring vectors are
/// orthogonal, so adjacent observables commute. Inequality:
/// sum of the five cyclic pair correlators >= -3.
Scenario kcbs_scenario();

/// The five defining qutrit vectors, one per measurement (all real).
std::array<std::array<double, 3>, 5> kcbs_vectors();

/// Rank-1 state (1,0,0) that maximizes the violation of the cyclic
/// inequality, reaching 5 - 4*sqrt(5).
CMat kcbs_optimal_state();

/// The nine two-qubit Pauli products on a 3x3 grid; six contexts (three rows
/// with coefficient +1, three columns with -1), bound 4, direction <=. Row
/// products equal +1, column products equal -1, so the quantum value is 6 for
/// every state.
Scenario peres_mermin_scenario();

/// Evaluates the scenario's inequality on rho with optional noise. Each
/// context correlator is computed sequentially in the requested picture;
/// Picture::Both computes both and insists they agree within kPictureTol.
EvalReport evaluate_inequality(const Scenario& s, const CMat& rho, const Channel* noise,
                               NoisePlacement placement, Picture picture,
                               std::string_view state_desc = "");

/// Closed-form noisy cyclic-scenario value p*s_rho - (1-p)*5/3 for noise that
/// strikes once before the measurements.
double kcbs_noisy_value(double s_rho, double p);

/// Critical survival probability (-4/3)/(s_rho + 5/3) below which a state
/// with ideal value s_rho stops violating. Requires s_rho < -3.
double kcbs_p_crit(double s_rho);

struct Diagnostics {
    bool pass = true;
    std::vector<std::string> failures;  // first entry names the first violated invariant
};

/// Checks every Scenario invariant: valid dichotomic observables, pairwise
/// commutation and no duplicates inside each context, index ranges,
/// coefficient count, and that every measurement appears in some context.
Diagnostics validate_scenario(const Scenario& s);

std::string_view to_string(Direction d);
std::string_view to_string(NoisePlacement p);
std::string_view to_string(Picture p);

}  // namespace ksc
