#ifndef KCOMPAT_OPERATOR_CORE_HPP
#define KCOMPAT_OPERATOR_CORE_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace kc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Tolerances shared across the operator layer.
inline constexpr double tol_herm = 1e-12;
inline constexpr double tol_eig = 1e-10;

/// A dense Hermitian operator on a finite-dimensional Hilbert space.
/// Construction symmetrizes (A + A*)/2 when the anti-Hermitian drift is
/// below tol_herm and throws otherwise.
class HermitianOperator {
public:
    explicit HermitianOperator(Matrix entries);

    static HermitianOperator identity(int dim);
    static HermitianOperator zero(int dim);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Matrix& matrix() const { return mat_; }

    Complex entry(int i, int j) const { return mat_(i, j); }
    double trace() const { return mat_.trace().real(); }

    HermitianOperator operator+(const HermitianOperator& o) const;
    HermitianOperator operator-(const HermitianOperator& o) const;
    HermitianOperator operator-() const;
    HermitianOperator scaled(double s) const;

    /// Conjugation U * A * U^dagger; U need not be Hermitian.
    HermitianOperator conjugated_by(const Matrix& u) const;

    double hs_norm() const;

private:
    Matrix mat_;
};

/// Kronecker product; Hermitian whenever both inputs are.
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);
Matrix kron(const Matrix& a, const Matrix& b);

/// tr[a* b]; real for Hermitian arguments.
double hs_inner(const HermitianOperator& a, const HermitianOperator& b);

double min_eigenvalue(const HermitianOperator& a);

/// Nearest PSD operator in Hilbert-Schmidt norm (eigenvalue clipping).
HermitianOperator psd_project(const HermitianOperator& a);

/// Orthonormal traceless Hermitian basis of dimension d^2 - 1
/// (generalized Gell-Mann operators, tr[T_r T_s] = delta_rs).
/// For d = 2 this is {sigma_x, sigma_y, sigma_z} / sqrt(2).
std::vector<HermitianOperator> traceless_basis(int d);

}  // namespace kc

#endif
