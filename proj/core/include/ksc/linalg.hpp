#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace ksc {

using cplx = std::complex<double>;

/// Frobenius-distance tolerance below which a matrix counts as Hermitian.
inline constexpr double kHermitianTol = 1e-9;

/// Dense row-major complex matrix. Everything in this library lives in
/// dimension <= 4 (qutrit observables and two-qubit Pauli products), so the
/// storage is a plain vector and all operations are written for clarity.
class CMat {
public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols);
    CMat(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    /// Row-by-row construction: CMat::from_rows({{1, 0}, {0, -1}}).
    static CMat from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const std::vector<cplx>& entries() const { return entries_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> entries_;
};

CMat identity(std::size_t dim);
CMat zeros(std::size_t rows, std::size_t cols);

/// Standard complex matrix product; throws std::invalid_argument on a
/// dimension mismatch.
CMat matmul(const CMat& a, const CMat& b);

/// Kronecker product with block layout a(i,j) * b.
CMat kron(const CMat& a, const CMat& b);

/// Conjugate transpose.
CMat dagger(const CMat& a);

/// Sum of diagonal entries; throws std::invalid_argument if not square.
cplx trace(const CMat& a);

CMat add(const CMat& a, const CMat& b);
CMat sub(const CMat& a, const CMat& b);
CMat scale(cplx c, const CMat& a);

/// Frobenius norm of a - b; shapes must match.
double frob_dist(const CMat& a, const CMat& b);
double frob_norm(const CMat& a);

bool is_finite(const CMat& a);
bool is_hermitian(const CMat& a, double tol = kHermitianTol);

/// ||AB - BA||_F, the commutation residual of two square same-size matrices.
double commutator_norm(const CMat& a, const CMat& b);

/// Real eigenvalues of a Hermitian matrix, ascending. Uses cyclic Jacobi
/// rotations, sweeping until the off-diagonal Frobenius mass drops below
/// 1e-14. Throws std::invalid_argument when ||a - a^dag||_F > tol.
std::vector<double> hermitian_eigenvalues(const CMat& a, double tol = kHermitianTol);

/// Projector |v><v| onto a (not necessarily normalized) complex vector.
CMat outer(const std::vector<cplx>& v);

/// Computational-basis projector |k><k| in dimension dim.
CMat basis_projector(std::size_t dim, std::size_t k);

/// Maximally mixed state 1/dim.
CMat maximally_mixed(std::size_t dim);

CMat sigma_x();
CMat sigma_y();
CMat sigma_z();

inline CMat operator*(const CMat& a, const CMat& b) { return matmul(a, b); }
inline CMat operator*(cplx c, const CMat& a) { return scale(c, a); }
inline CMat operator*(double c, const CMat& a) { return scale(cplx(c, 0.0), a); }
inline CMat operator+(const CMat& a, const CMat& b) { return add(a, b); }
inline CMat operator-(const CMat& a, const CMat& b) { return sub(a, b); }

}  // namespace ksc
