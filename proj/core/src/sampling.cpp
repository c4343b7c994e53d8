#include "ksc/sampling.hpp"

namespace ksc {

namespace {

CMat gaussian_matrix(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMat m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            m(i, j) = cplx(re, im);
        }
    }
    return m;
}

}  // namespace

CMat random_state(std::size_t dim, std::mt19937_64& rng) {
    const CMat m = gaussian_matrix(dim, rng);
    CMat rho = matmul(m, dagger(m));
    const double t = trace(rho).real();
    return scale(cplx(1.0 / t, 0.0), rho);
}

CMat random_hermitian(std::size_t dim, std::mt19937_64& rng) {
    const CMat m = gaussian_matrix(dim, rng);
    return scale(cplx(0.5, 0.0), add(m, dagger(m)));
}

}  // namespace ksc
