#include "ksc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ksc {

namespace {

std::string shape_str(const CMat& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const CMat& a, const CMat& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument(std::string(op) + ": shape mismatch (" + shape_str(a) +
                                    " vs " + shape_str(b) + ")");
    }
}

}  // namespace

CMat::CMat(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, cplx(0.0, 0.0)) {}

CMat::CMat(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw std::invalid_argument("CMat: entry count " + std::to_string(entries_.size()) +
                                    " does not match shape " + shape_str(*this));
    }
}

CMat CMat::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    CMat m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) {
            throw std::invalid_argument("CMat::from_rows: ragged row lengths");
        }
        std::size_t j = 0;
        for (const cplx& v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

CMat identity(std::size_t dim) {
    CMat m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = cplx(1.0, 0.0);
    return m;
}

CMat zeros(std::size_t rows, std::size_t cols) { return CMat(rows, cols); }

CMat matmul(const CMat& a, const CMat& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matmul: dimension mismatch (" + shape_str(a) + " * " +
                                    shape_str(b) + ")");
    }
    CMat out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

CMat dagger(const CMat& a) {
    CMat out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

cplx trace(const CMat& a) {
    if (!a.is_square()) {
        throw std::invalid_argument("trace: matrix is not square (" + shape_str(a) + ")");
    }
    cplx t(0.0, 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

CMat add(const CMat& a, const CMat& b) {
    require_same_shape(a, b, "add");
    CMat out = a;
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += b(i, j);
    return out;
}

CMat sub(const CMat& a, const CMat& b) {
    require_same_shape(a, b, "sub");
    CMat out = a;
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) -= b(i, j);
    return out;
}

CMat scale(cplx c, const CMat& a) {
    CMat out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) *= c;
    return out;
}

double frob_dist(const CMat& a, const CMat& b) {
    require_same_shape(a, b, "frob_dist");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx d = a(i, j) - b(i, j);
            sum += std::norm(d);
        }
    }
    return std::sqrt(sum);
}

double frob_norm(const CMat& a) {
    double sum = 0.0;
    for (const cplx& v : a.entries()) sum += std::norm(v);
    return std::sqrt(sum);
}

bool is_finite(const CMat& a) {
    for (const cplx& v : a.entries()) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

bool is_hermitian(const CMat& a, double tol) {
    if (!a.is_square()) return false;
    return frob_dist(a, dagger(a)) <= tol;
}

double commutator_norm(const CMat& a, const CMat& b) {
    return frob_dist(matmul(a, b), matmul(b, a));
}

std::vector<double> hermitian_eigenvalues(const CMat& a, double tol) {
    if (!a.is_square()) {
        throw std::invalid_argument("hermitian_eigenvalues: matrix is not square (" +
                                    shape_str(a) + ")");
    }
    const double herm_residual = frob_dist(a, dagger(a));
    if (herm_residual > tol) {
        throw std::invalid_argument("hermitian_eigenvalues: not Hermitian, ||a - a^dag||_F = " +
                                    std::to_string(herm_residual));
    }
    const std::size_t n = a.rows();

    // Work on the exactly Hermitian part; this only removes rounding noise.
    CMat h = scale(cplx(0.5, 0.0), add(a, dagger(a)));

    auto off_mass = [&]() {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) sum += std::norm(h(i, j));
        return std::sqrt(sum);
    };

    constexpr double kOffTol = 1e-14;
    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps && off_mass() > kOffTol; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx g = h(p, q);
                const double gm = std::abs(g);
                if (gm == 0.0) continue;
                // Phase factor u turns the (p,q) block real symmetric, then a
                // real Jacobi rotation annihilates it. Combined unitary:
                //   U[p][p] = u*c, U[p][q] = u*s, U[q][p] = -s, U[q][q] = c.
                const cplx u = g / gm;
                const double alpha = h(p, p).real();
                const double beta = h(q, q).real();
                const double tau = (beta - alpha) / (2.0 * gm);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const cplx upp = u * c, upq = u * s;
                const cplx uqp = cplx(-s, 0.0), uqq = cplx(c, 0.0);
                // h <- h * U
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx hkp = h(k, p), hkq = h(k, q);
                    h(k, p) = hkp * upp + hkq * uqp;
                    h(k, q) = hkp * upq + hkq * uqq;
                }
                // h <- U^dag * h
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx hpk = h(p, k), hqk = h(q, k);
                    h(p, k) = std::conj(upp) * hpk + std::conj(uqp) * hqk;
                    h(q, k) = std::conj(upq) * hpk + std::conj(uqq) * hqk;
                }
            }
        }
    }

    std::vector<double> evals(n);
    for (std::size_t i = 0; i < n; ++i) evals[i] = h(i, i).real();
    std::sort(evals.begin(), evals.end());
    return evals;
}

CMat outer(const std::vector<cplx>& v) {
    CMat m(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
}

CMat basis_projector(std::size_t dim, std::size_t k) {
    if (k >= dim) {
        throw std::invalid_argument("basis_projector: index " + std::to_string(k) +
                                    " out of range for dimension " + std::to_string(dim));
    }
    CMat m(dim, dim);
    m(k, k) = cplx(1.0, 0.0);
    return m;
}

CMat maximally_mixed(std::size_t dim) {
    return scale(cplx(1.0 / static_cast<double>(dim), 0.0), identity(dim));
}

CMat sigma_x() { return CMat::from_rows({{0, 1}, {1, 0}}); }
CMat sigma_y() { return CMat::from_rows({{0, cplx(0, -1)}, {cplx(0, 1), 0}}); }
CMat sigma_z() { return CMat::from_rows({{1, 0}, {0, -1}}); }

}  // namespace ksc
