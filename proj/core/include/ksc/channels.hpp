#pragma once

#include <variant>
#include <vector>

#include "ksc/linalg.hpp"

namespace ksc {

/// Tolerance on the Kraus completeness relation sum K_i^dag K_i = 1.
inline constexpr double kCompletenessTol = 1e-9;
/// Tolerance on state preconditions (trace one, Hermiticity, positivity).
inline constexpr double kStateTol = 1e-9;

/// A CPTP map, stored either as an explicit Kraus operator list or in the
/// structured depolarizing form (p, dim), which acts as
///   rho -> p*rho + (1-p)*tr(rho)*1/dim.
/// The structured form is exact in every dimension; Kraus expansions are
/// constructed only where a closed operator list is wanted (see
/// qubit_depolarizing_kraus and two_qubit_pauli_twirl_kraus).
class Channel {
public:
    struct Depolarizing {
        double p;
        std::size_t dim;
    };
    struct Kraus {
        std::vector<CMat> ops;
        std::size_t dim;
    };

    /// Structured depolarizing channel; throws std::domain_error unless
    /// 0 <= p <= 1 and dim >= 1.
    static Channel depolarizing(double p, std::size_t dim);

    /// Kraus channel from an explicit operator list. Validates squareness,
    /// equal dimensions and the completeness relation within kCompletenessTol.
    static Channel kraus(std::vector<CMat> ops);

    std::size_t dim() const;
    bool is_depolarizing() const { return std::holds_alternative<Depolarizing>(form_); }
    bool is_kraus() const { return std::holds_alternative<Kraus>(form_); }

    /// Survival probability of the structured form; throws std::logic_error
    /// for a Kraus channel.
    double depolarizing_p() const;

    /// Operator list of the Kraus form; throws std::logic_error for a
    /// structured channel.
    const std::vector<CMat>& kraus_ops() const;

    const std::variant<Depolarizing, Kraus>& form() const { return form_; }

private:
    explicit Channel(std::variant<Depolarizing, Kraus> form) : form_(std::move(form)) {}
    std::variant<Depolarizing, Kraus> form_;
};

/// Forward (Schrodinger) action on a state. Validates that rho is a square
/// matrix of the channel dimension, Hermitian, unit trace and positive within
/// kStateTol, then applies the map.
CMat apply(const Channel& ch, const CMat& rho);

/// The channel as a linear map on arbitrary operators, without the state
/// preconditions of apply(). For the structured form this is
/// p*X + (1-p)*tr(X)*1/dim; for Kraus, sum K_i X K_i^dag. Sequential
/// measurement engines need this because score-map outputs are Hermitian
/// operators but not states.
CMat act(const Channel& ch, const CMat& op);

/// Dual (Heisenberg) action on an observable: p*A + (1-p)*(tr A / dim)*1 for
/// the structured form, sum K_i^dag A K_i for Kraus.
CMat apply_dual(const Channel& ch, const CMat& obs);

/// True when sum K_i K_i^dag = 1 within tol (always true for depolarizing).
bool unital(const Channel& ch, double tol = kCompletenessTol);

/// Composition c with c(rho) = a(b(rho)). Dimensions must match. Two
/// structured channels compose to Depolarizing(a.p * b.p); otherwise the
/// result is a Kraus channel, expanding a structured factor through its
/// closed operator list (available for dim 2 and 4 only).
Channel compose(const Channel& a, const Channel& b);

/// Four-operator Kraus form of the qubit depolarizing channel:
/// {sqrt(kappa)*1, sqrt(iota)*sigma_i} with kappa = (1+3p)/4, iota = (1-p)/4.
Channel qubit_depolarizing_kraus(double p);

/// Seventeen-operator two-qubit form: sqrt(p)*1 plus the sixteen Pauli-twirl
/// terms sqrt((1-p)/16) * sigma_i (x) sigma_j.
Channel two_qubit_pauli_twirl_kraus(double p);

/// Survival probability exp(-4*gamma*t) of the isotropic qubit noise
/// generator after time t. Throws std::domain_error on negative inputs.
double lindblad_p(double gamma, double t);

/// Throws std::invalid_argument unless rho is a dim x dim Hermitian,
/// unit-trace, positive (eigenvalues >= -tol) matrix with finite entries.
void validate_state(const CMat& rho, std::size_t dim, double tol = kStateTol);

}  // namespace ksc
