#pragma once

#include <optional>
#include <span>
#include <string>

#include "ksc/channels.hpp"
#include "ksc/linalg.hpp"

namespace ksc {

/// Tolerance on the involution property A^2 = 1 of a dichotomic observable.
inline constexpr double kInvolutionTol = 1e-9;
/// Commutation tolerance ||[A,B]||_F used for joint-measurability checks.
inline constexpr double kCommuteTol = 1e-9;
/// Imaginary residue allowed on traces that are real by Hermiticity.
inline constexpr double kImagTol = 1e-10;

/// A labelled dichotomic (+1/-1 outcome) observable: a Hermitian involution
/// together with its derived outcome projectors (1 +- A)/2. Construction
/// validates Hermiticity and the involution property.
class Observable {
public:
    Observable(std::string label, CMat matrix);

    const std::string& label() const { return label_; }
    const CMat& matrix() const { return matrix_; }
    const CMat& proj_plus() const { return proj_plus_; }
    const CMat& proj_minus() const { return proj_minus_; }
    std::size_t dim() const { return matrix_.rows(); }

private:
    std::string label_;
    CMat matrix_;
    CMat proj_plus_;
    CMat proj_minus_;
};

/// Where depolarizing noise strikes in a sequential run of a context.
enum class NoisePlacement {
    None,             // ideal sequence
    BeforeFirstOnly,  // one noisy interval between preparation and the test
    BeforeEach,       // a noisy interval before every measurement
};

/// Lueders score map P+ rho P+ - P- rho P-. Not a state: its trace is the
/// expectation value of the observable on rho.
CMat luders_score(const Observable& obs, const CMat& rho);

struct LudersBranch {
    double prob = 0.0;
    std::optional<CMat> state;  // empty when prob <= 1e-12 (post-state undefined)
};
struct LudersBranches {
    LudersBranch plus;
    LudersBranch minus;
};

/// Outcome probabilities and Lueders post-states of a single measurement.
LudersBranches luders_branch(const Observable& obs, const CMat& rho);

/// Expectation of the product of outcomes when the observables are measured
/// one after another in list order, with the noise channel inserted according
/// to the placement (BeforeEach puts it before the first measurement too).
/// Evolves the state forward through score maps; the imaginary part of the
/// final trace must vanish within kImagTol and is asserted, not returned.
double sequential_correlator(const CMat& rho, std::span<const Observable> obs_list,
                             const Channel* noise, NoisePlacement placement);

/// Same quantity computed in the dual picture: the identity operator is
/// pulled back through dual score maps in reverse list order, interleaved
/// with dual noise, and paired with rho at the end.
double sequential_correlator_heisenberg(const CMat& rho, std::span<const Observable> obs_list,
                                        const Channel* noise, NoisePlacement placement);

/// Re tr(rho * A_1 A_2 ...) for pairwise commuting observables; equals the
/// ideal sequential correlator. Throws std::invalid_argument naming the first
/// non-commuting pair.
double product_correlator(const CMat& rho, std::span<const Observable> obs_list);

/// Re tr(rho * A) with the imaginary-residue assertion.
double expectation(const CMat& rho, const CMat& obs);

}  // namespace ksc
