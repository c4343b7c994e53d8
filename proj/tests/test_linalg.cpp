#include <doctest.h>

#include <cmath>
#include <random>

#include "ksc/linalg.hpp"
#include "ksc/sampling.hpp"

using namespace ksc;

namespace {

CMat random_cmat(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = cplx(gauss(rng), gauss(rng));
    return m;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("identity basics") {
    const CMat id2 = identity(2);
    CHECK(id2(0, 0) == cplx(1, 0));
    CHECK(id2(0, 1) == cplx(0, 0));
    CHECK(trace(identity(3)) == cplx(3, 0));
    CHECK(frob_dist(identity(4), kron(identity(2), identity(2))) == 0.0);
}

TEST_CASE("matmul Pauli products") {
    CHECK(frob_dist(matmul(sigma_x(), sigma_x()), identity(2)) == 0.0);
    // sigma_y * sigma_z multiplied out by hand: i * sigma_x.
    const CMat expected = CMat::from_rows({{0, cplx(0, 1)}, {cplx(0, 1), 0}});
    CHECK(frob_dist(matmul(sigma_y(), sigma_z()), expected) == 0.0);
}

TEST_CASE("matmul identity and mismatch") {
    std::mt19937_64 rng(11);
    const CMat a = random_cmat(3, 3, rng);
    CHECK(frob_dist(matmul(a, identity(3)), a) == 0.0);
    CHECK_THROWS_AS(matmul(random_cmat(2, 3, rng), random_cmat(2, 2, rng)),
                    std::invalid_argument);
}

TEST_CASE("kron block layout") {
    const CMat zz = kron(sigma_z(), sigma_z());
    CHECK(zz(0, 0) == cplx(1, 0));
    CHECK(zz(1, 1) == cplx(-1, 0));
    CHECK(zz(2, 2) == cplx(-1, 0));
    CHECK(zz(3, 3) == cplx(1, 0));
    CHECK(frob_norm(sub(zz, dagger(zz))) == 0.0);
}

TEST_CASE("kron trace factorizes") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 50; ++i) {
        const CMat a = random_cmat(2, 2, rng);
        const CMat b = random_cmat(3, 3, rng);
        const cplx lhs = trace(kron(a, b));
        const cplx rhs = trace(a) * trace(b);
        CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("dagger") {
    CHECK(frob_dist(dagger(sigma_y()), sigma_y()) == 0.0);
    CHECK(frob_dist(dagger(CMat::from_rows({{0, 1}, {0, 0}})),
                    CMat::from_rows({{0, 0}, {1, 0}})) == 0.0);
    std::mt19937_64 rng(13);
    for (int i = 0; i < 20; ++i) {
        const CMat a = random_cmat(4, 3, rng);
        CHECK(frob_dist(dagger(dagger(a)), a) == 0.0);
    }
}

TEST_CASE("trace basics") {
    CHECK(trace(sigma_x()) == cplx(0, 0));
    const CMat proj = outer({cplx(0.6, 0), cplx(0, 0.8)});
    CHECK(std::abs(trace(proj) - cplx(1, 0)) < 1e-15);
    CHECK_THROWS_AS(trace(CMat(2, 3)), std::invalid_argument);
}

TEST_CASE("add scale frob_dist") {
    CHECK(frob_dist(sigma_x(), sigma_x()) == 0.0);
    CHECK(trace(scale(cplx(2, 0), identity(2))) == cplx(4, 0));
    CHECK(frob_norm(add(sigma_x(), scale(cplx(-1, 0), sigma_x()))) == 0.0);
    CHECK_THROWS_AS(add(identity(2), identity(3)), std::invalid_argument);
    CHECK_THROWS_AS(frob_dist(identity(2), CMat(2, 3)), std::invalid_argument);
}

TEST_CASE("hermitian_eigenvalues known spectra") {
    const auto id_evals = hermitian_eigenvalues(identity(3));
    REQUIRE(id_evals.size() == 3);
    for (double v : id_evals) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

    const auto z_evals = hermitian_eigenvalues(sigma_z());
    CHECK(z_evals[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(z_evals[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hermitian_eigenvalues of a depolarized pure qubit") {
    // Bloch-vector oracle: p * |psi><psi| + (1-p)/2 has eigenvalues (1 +- p)/2.
    std::mt19937_64 rng(14);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> v = {cplx(gauss(rng), gauss(rng)), cplx(gauss(rng), gauss(rng))};
    const double norm = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
    for (auto& entry : v) entry /= norm;
    const double p = 0.5;
    const CMat rho = add(scale(cplx(p, 0), outer(v)), scale(cplx((1 - p) / 2, 0), identity(2)));
    const auto evals = hermitian_eigenvalues(rho);
    CHECK(evals[0] == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(evals[1] == doctest::Approx(0.75).epsilon(1e-10));
}

TEST_CASE("hermitian_eigenvalues rejects non-Hermitian input") {
    CHECK_THROWS_AS(hermitian_eigenvalues(CMat::from_rows({{0, 1}, {0, 0}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(hermitian_eigenvalues(CMat(2, 3)), std::invalid_argument);
}

TEST_CASE("matmul associativity and kron mixed product") {
    std::mt19937_64 rng(15);
    for (int i = 0; i < 40; ++i) {
        const CMat a = random_cmat(2, 2, rng), b = random_cmat(2, 2, rng);
        const CMat c = random_cmat(2, 2, rng), d = random_cmat(2, 2, rng);
        CHECK(frob_dist(matmul(matmul(a, b), c), matmul(a, matmul(b, c))) < 1e-12);
        CHECK(frob_dist(matmul(kron(a, b), kron(c, d)), kron(matmul(a, c), matmul(b, d))) < 1e-12);
    }
}

TEST_CASE("trace cyclicity") {
    std::mt19937_64 rng(16);
    for (int i = 0; i < 40; ++i) {
        const CMat a = random_cmat(4, 4, rng), b = random_cmat(4, 4, rng);
        CHECK(std::abs(trace(matmul(a, b)) - trace(matmul(b, a))) < 1e-12 * frob_norm(a) *
                                                                        frob_norm(b));
    }
}

TEST_CASE("projector eigenvalues are 0 or 1") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t dim : {2, 3, 4}) {
        std::vector<cplx> v(dim);
        double norm2 = 0.0;
        for (auto& entry : v) {
            entry = cplx(gauss(rng), gauss(rng));
            norm2 += std::norm(entry);
        }
        for (auto& entry : v) entry /= std::sqrt(norm2);
        for (const CMat& proj : {outer(v), sub(identity(dim), outer(v))}) {
            for (double ev : hermitian_eigenvalues(proj)) {
                CHECK(std::min(std::abs(ev), std::abs(ev - 1.0)) < 1e-9);
            }
        }
    }
}

TEST_CASE("exported operations keep entries finite") {
    std::mt19937_64 rng(18);
    for (int i = 0; i < 20; ++i) {
        const CMat a = random_cmat(4, 4, rng), b = random_cmat(4, 4, rng);
        CHECK(is_finite(matmul(a, b)));
        CHECK(is_finite(kron(a, b)));
        CHECK(is_finite(add(a, b)));
        CHECK(is_finite(scale(cplx(3.5, -2.0), a)));
        CHECK(is_finite(dagger(a)));
    }
}

}  // TEST_SUITE
