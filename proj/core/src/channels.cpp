#include "ksc/channels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ksc {

namespace {

void require_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error(std::string(what) + ": p = " + std::to_string(p) +
                                " outside [0, 1]");
    }
}

}  // namespace

Channel Channel::depolarizing(double p, std::size_t dim) {
    require_probability(p, "Channel::depolarizing");
    if (dim < 1) throw std::domain_error("Channel::depolarizing: dimension must be >= 1");
    return Channel(Depolarizing{p, dim});
}

Channel Channel::kraus(std::vector<CMat> ops) {
    if (ops.empty()) throw std::invalid_argument("Channel::kraus: empty operator list");
    const std::size_t d = ops.front().rows();
    for (const CMat& k : ops) {
        if (!k.is_square() || k.rows() != d) {
            throw std::invalid_argument("Channel::kraus: operators must all be square of one dimension");
        }
    }
    CMat completeness(d, d);
    for (const CMat& k : ops) completeness = add(completeness, matmul(dagger(k), k));
    const double residual = frob_dist(completeness, identity(d));
    if (residual > kCompletenessTol) {
        throw std::invalid_argument("Channel::kraus: completeness relation violated, residual " +
                                    std::to_string(residual));
    }
    return Channel(Kraus{std::move(ops), d});
}

std::size_t Channel::dim() const {
    if (const auto* dep = std::get_if<Depolarizing>(&form_)) return dep->dim;
    return std::get<Kraus>(form_).dim;
}

double Channel::depolarizing_p() const {
    if (const auto* dep = std::get_if<Depolarizing>(&form_)) return dep->p;
    throw std::logic_error("Channel::depolarizing_p: channel is in Kraus form");
}

const std::vector<CMat>& Channel::kraus_ops() const {
    if (const auto* kr = std::get_if<Kraus>(&form_)) return kr->ops;
    throw std::logic_error("Channel::kraus_ops: channel is in structured depolarizing form");
}

void validate_state(const CMat& rho, std::size_t dim, double tol) {
    if (!rho.is_square() || rho.rows() != dim) {
        throw std::invalid_argument("state: expected " + std::to_string(dim) + "x" +
                                    std::to_string(dim) + ", got " + std::to_string(rho.rows()) +
                                    "x" + std::to_string(rho.cols()));
    }
    if (!is_finite(rho)) throw std::invalid_argument("state: non-finite entries");
    if (!is_hermitian(rho, tol)) throw std::invalid_argument("state: not Hermitian within tolerance");
    const cplx t = trace(rho);
    if (std::abs(t - cplx(1.0, 0.0)) > tol) {
        throw std::invalid_argument("state: trace " + std::to_string(t.real()) + "+" +
                                    std::to_string(t.imag()) + "i is not 1");
    }
    const std::vector<double> evals = hermitian_eigenvalues(rho, tol);
    if (evals.front() < -tol) {
        throw std::invalid_argument("state: negative eigenvalue " + std::to_string(evals.front()));
    }
}

CMat act(const Channel& ch, const CMat& op) {
    if (!op.is_square() || op.rows() != ch.dim()) {
        throw std::invalid_argument("act: operator dimension " + std::to_string(op.rows()) +
                                    " does not match channel dimension " + std::to_string(ch.dim()));
    }
    if (ch.is_depolarizing()) {
        const double p = ch.depolarizing_p();
        const cplx t = trace(op);
        return add(scale(cplx(p, 0.0), op),
                   scale((1.0 - p) * t / static_cast<double>(ch.dim()), identity(ch.dim())));
    }
    CMat out(ch.dim(), ch.dim());
    for (const CMat& k : ch.kraus_ops()) out = add(out, matmul(matmul(k, op), dagger(k)));
    return out;
}

CMat apply(const Channel& ch, const CMat& rho) {
    validate_state(rho, ch.dim());
    return act(ch, rho);
}

CMat apply_dual(const Channel& ch, const CMat& obs) {
    if (!obs.is_square() || obs.rows() != ch.dim()) {
        throw std::invalid_argument("apply_dual: observable dimension " + std::to_string(obs.rows()) +
                                    " does not match channel dimension " + std::to_string(ch.dim()));
    }
    if (ch.is_depolarizing()) {
        const double p = ch.depolarizing_p();
        const cplx t = trace(obs);
        return add(scale(cplx(p, 0.0), obs),
                   scale((1.0 - p) * t / static_cast<double>(ch.dim()), identity(ch.dim())));
    }
    CMat out(ch.dim(), ch.dim());
    for (const CMat& k : ch.kraus_ops()) out = add(out, matmul(matmul(dagger(k), obs), k));
    return out;
}

bool unital(const Channel& ch, double tol) {
    if (ch.is_depolarizing()) return true;
    const std::size_t d = ch.dim();
    CMat sum(d, d);
    for (const CMat& k : ch.kraus_ops()) sum = add(sum, matmul(k, dagger(k)));
    return frob_dist(sum, identity(d)) <= tol;
}

namespace {

std::vector<CMat> kraus_expansion(const Channel& ch) {
    if (ch.is_kraus()) return ch.kraus_ops();
    const double p = ch.depolarizing_p();
    switch (ch.dim()) {
        case 2:
            return qubit_depolarizing_kraus(p).kraus_ops();
        case 4:
            return two_qubit_pauli_twirl_kraus(p).kraus_ops();
        default:
            throw std::invalid_argument(
                "compose: no Kraus expansion of the depolarizing channel in dimension " +
                std::to_string(ch.dim()) + "; only 2 and 4 carry one");
    }
}

}  // namespace

Channel compose(const Channel& a, const Channel& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("compose: dimension mismatch (" + std::to_string(a.dim()) +
                                    " vs " + std::to_string(b.dim()) + ")");
    }
    if (a.is_depolarizing() && b.is_depolarizing()) {
        return Channel::depolarizing(a.depolarizing_p() * b.depolarizing_p(), a.dim());
    }
    std::vector<CMat> outer = kraus_expansion(a);
    std::vector<CMat> inner = kraus_expansion(b);
    std::vector<CMat> ops;
    ops.reserve(outer.size() * inner.size());
    for (const CMat& ka : outer)
        for (const CMat& kb : inner) ops.push_back(matmul(ka, kb));
    return Channel::kraus(std::move(ops));
}

Channel qubit_depolarizing_kraus(double p) {
    require_probability(p, "qubit_depolarizing_kraus");
    const double kappa = (1.0 + 3.0 * p) / 4.0;
    const double iota = (1.0 - p) / 4.0;
    std::vector<CMat> ops;
    ops.push_back(scale(cplx(std::sqrt(kappa), 0.0), identity(2)));
    ops.push_back(scale(cplx(std::sqrt(iota), 0.0), sigma_x()));
    ops.push_back(scale(cplx(std::sqrt(iota), 0.0), sigma_y()));
    ops.push_back(scale(cplx(std::sqrt(iota), 0.0), sigma_z()));
    return Channel::kraus(std::move(ops));
}

Channel two_qubit_pauli_twirl_kraus(double p) {
    require_probability(p, "two_qubit_pauli_twirl_kraus");
    const CMat paulis[4] = {identity(2), sigma_x(), sigma_y(), sigma_z()};
    std::vector<CMat> ops;
    ops.reserve(17);
    ops.push_back(scale(cplx(std::sqrt(p), 0.0), identity(4)));
    const double w = std::sqrt((1.0 - p) / 16.0);
    for (const CMat& si : paulis) {
        for (const CMat& sj : paulis) {
            ops.push_back(scale(cplx(w, 0.0), kron(si, sj)));
        }
    }
    return Channel::kraus(std::move(ops));
}

double lindblad_p(double gamma, double t) {
    if (gamma < 0.0) throw std::domain_error("lindblad_p: gamma must be >= 0");
    if (t < 0.0) throw std::domain_error("lindblad_p: t must be >= 0");
    return std::exp(-4.0 * gamma * t);
}

}  // namespace ksc
