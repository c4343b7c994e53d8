#include "ksc/measure.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ksc {

namespace {

double checked_real_trace(const CMat& m, const char* what) {
    const cplx t = trace(m);
    if (std::abs(t.imag()) >= kImagTol) {
        throw std::logic_error(std::string(what) + ": imaginary trace residue " +
                               std::to_string(t.imag()) + " exceeds tolerance");
    }
    return t.real();
}

void require_dim(const Observable& obs, std::size_t dim, const char* what) {
    if (obs.dim() != dim) {
        throw std::invalid_argument(std::string(what) + ": observable '" + obs.label() +
                                    "' has dimension " + std::to_string(obs.dim()) +
                                    ", expected " + std::to_string(dim));
    }
}

void require_noise(const Channel* noise, std::size_t dim, NoisePlacement placement) {
    if (placement == NoisePlacement::None) return;
    if (noise == nullptr) {
        throw std::invalid_argument("sequential_correlator: placement requires a noise channel");
    }
    if (noise->dim() != dim) {
        throw std::invalid_argument("sequential_correlator: noise channel dimension " +
                                    std::to_string(noise->dim()) + " does not match state dimension " +
                                    std::to_string(dim));
    }
}

}  // namespace

Observable::Observable(std::string label, CMat matrix)
    : label_(std::move(label)), matrix_(std::move(matrix)) {
    if (!matrix_.is_square()) {
        throw std::invalid_argument("Observable '" + label_ + "': matrix is not square");
    }
    if (!is_hermitian(matrix_, kHermitianTol)) {
        throw std::invalid_argument("Observable '" + label_ + "': matrix is not Hermitian");
    }
    const double inv_residual = frob_dist(matmul(matrix_, matrix_), identity(matrix_.rows()));
    if (inv_residual > kInvolutionTol) {
        throw std::invalid_argument("Observable '" + label_ + "': A^2 != 1, residual " +
                                    std::to_string(inv_residual));
    }
    const CMat half_id = scale(cplx(0.5, 0.0), identity(matrix_.rows()));
    const CMat half_a = scale(cplx(0.5, 0.0), matrix_);
    proj_plus_ = add(half_id, half_a);
    proj_minus_ = sub(half_id, half_a);
}

CMat luders_score(const Observable& obs, const CMat& rho) {
    if (rho.rows() != obs.dim() || !rho.is_square()) {
        throw std::invalid_argument("luders_score: state dimension mismatch for '" + obs.label() + "'");
    }
    const CMat plus = matmul(matmul(obs.proj_plus(), rho), obs.proj_plus());
    const CMat minus = matmul(matmul(obs.proj_minus(), rho), obs.proj_minus());
    return sub(plus, minus);
}

LudersBranches luders_branch(const Observable& obs, const CMat& rho) {
    validate_state(rho, obs.dim());
    constexpr double kBranchEps = 1e-12;
    LudersBranches out;
    const CMat* projs[2] = {&obs.proj_plus(), &obs.proj_minus()};
    LudersBranch* branches[2] = {&out.plus, &out.minus};
    for (int k = 0; k < 2; ++k) {
        const CMat post = matmul(matmul(*projs[k], rho), *projs[k]);
        const double prob = checked_real_trace(post, "luders_branch");
        branches[k]->prob = prob;
        if (prob > kBranchEps) {
            branches[k]->state = scale(cplx(1.0 / prob, 0.0), post);
        }
    }
    return out;
}

double sequential_correlator(const CMat& rho, std::span<const Observable> obs_list,
                             const Channel* noise, NoisePlacement placement) {
    if (obs_list.empty()) {
        throw std::invalid_argument("sequential_correlator: empty observable list");
    }
    const std::size_t d = obs_list.front().dim();
    for (const Observable& obs : obs_list) require_dim(obs, d, "sequential_correlator");
    validate_state(rho, d);
    require_noise(noise, d, placement);

    CMat op = rho;
    bool first = true;
    for (const Observable& obs : obs_list) {
        const bool noisy_step = placement == NoisePlacement::BeforeEach ||
                                (placement == NoisePlacement::BeforeFirstOnly && first);
        if (noisy_step) op = act(*noise, op);
        op = luders_score(obs, op);
        first = false;
    }
    return checked_real_trace(op, "sequential_correlator");
}

double sequential_correlator_heisenberg(const CMat& rho, std::span<const Observable> obs_list,
                                        const Channel* noise, NoisePlacement placement) {
    if (obs_list.empty()) {
        throw std::invalid_argument("sequential_correlator_heisenberg: empty observable list");
    }
    const std::size_t d = obs_list.front().dim();
    for (const Observable& obs : obs_list) require_dim(obs, d, "sequential_correlator_heisenberg");
    validate_state(rho, d);
    require_noise(noise, d, placement);

    // Dual score map has the same projector sandwich form as the forward one.
    CMat op = identity(d);
    for (std::size_t i = obs_list.size(); i-- > 0;) {
        const Observable& obs = obs_list[i];
        op = sub(matmul(matmul(obs.proj_plus(), op), obs.proj_plus()),
                 matmul(matmul(obs.proj_minus(), op), obs.proj_minus()));
        const bool noisy_step = placement == NoisePlacement::BeforeEach ||
                                (placement == NoisePlacement::BeforeFirstOnly && i == 0);
        if (noisy_step) op = apply_dual(*noise, op);
    }
    return checked_real_trace(matmul(rho, op), "sequential_correlator_heisenberg");
}

double product_correlator(const CMat& rho, std::span<const Observable> obs_list) {
    if (obs_list.empty()) {
        throw std::invalid_argument("product_correlator: empty observable list");
    }
    const std::size_t d = obs_list.front().dim();
    for (const Observable& obs : obs_list) require_dim(obs, d, "product_correlator");
    validate_state(rho, d);
    for (std::size_t i = 0; i < obs_list.size(); ++i) {
        for (std::size_t j = i + 1; j < obs_list.size(); ++j) {
            const double residual = commutator_norm(obs_list[i].matrix(), obs_list[j].matrix());
            if (residual > kCommuteTol) {
                throw std::invalid_argument("product_correlator: '" + obs_list[i].label() +
                                            "' and '" + obs_list[j].label() +
                                            "' do not commute, ||[A,B]||_F = " +
                                            std::to_string(residual));
            }
        }
    }
    CMat prod = obs_list.front().matrix();
    for (std::size_t i = 1; i < obs_list.size(); ++i) prod = matmul(prod, obs_list[i].matrix());
    return checked_real_trace(matmul(rho, prod), "product_correlator");
}

double expectation(const CMat& rho, const CMat& obs) {
    return checked_real_trace(matmul(rho, obs), "expectation");
}

}  // namespace ksc
