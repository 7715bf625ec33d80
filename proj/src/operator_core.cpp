#include "kcompat/operator_core.hpp"

#include <cmath>
#include <stdexcept>

namespace kc {

HermitianOperator::HermitianOperator(Matrix entries) {
    if (entries.rows() < 1 || entries.rows() != entries.cols())
        throw std::invalid_argument("HermitianOperator: matrix must be square, dim >= 1");
    const double drift = (entries - entries.adjoint().eval()).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, entries.cwiseAbs().maxCoeff());
    if (drift > tol_herm * scale * 16)
        throw std::invalid_argument("HermitianOperator: input is not Hermitian (drift " +
                                    std::to_string(drift) + ")");
    mat_ = 0.5 * (entries + entries.adjoint().eval());
}

HermitianOperator HermitianOperator::identity(int dim) {
    return HermitianOperator(Matrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::zero(int dim) {
    return HermitianOperator(Matrix::Zero(dim, dim));
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
    return HermitianOperator(mat_ + o.mat_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& o) const {
    return HermitianOperator(mat_ - o.mat_);
}

HermitianOperator HermitianOperator::operator-() const {
    return HermitianOperator(-mat_);
}

HermitianOperator HermitianOperator::scaled(double s) const {
    return HermitianOperator(s * mat_);
}

HermitianOperator HermitianOperator::conjugated_by(const Matrix& u) const {
    return HermitianOperator(u * mat_ * u.adjoint());
}

double HermitianOperator::hs_norm() const { return mat_.norm(); }

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
    return HermitianOperator(kron(a.matrix(), b.matrix()));
}

double hs_inner(const HermitianOperator& a, const HermitianOperator& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("hs_inner: dimension mismatch");
    return (a.matrix().adjoint() * b.matrix()).trace().real();
}

double min_eigenvalue(const HermitianOperator& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix(), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

HermitianOperator psd_project(const HermitianOperator& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix());
    Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0);
    return HermitianOperator(es.eigenvectors() * vals.asDiagonal() *
                             es.eigenvectors().adjoint());
}

std::vector<HermitianOperator> traceless_basis(int d) {
    if (d < 2) throw std::invalid_argument("traceless_basis: d must be >= 2");
    std::vector<HermitianOperator> basis;
    basis.reserve(static_cast<std::size_t>(d) * d - 1);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            Matrix sym = Matrix::Zero(d, d);
            sym(i, j) = inv_sqrt2;
            sym(j, i) = inv_sqrt2;
            basis.emplace_back(sym);
            Matrix asym = Matrix::Zero(d, d);
            asym(i, j) = Complex(0, -inv_sqrt2);
            asym(j, i) = Complex(0, inv_sqrt2);
            basis.emplace_back(asym);
        }
    }
    for (int l = 1; l < d; ++l) {
        Matrix diag = Matrix::Zero(d, d);
        const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
        for (int m = 0; m < l; ++m) diag(m, m) = norm;
        diag(l, l) = -l * norm;
        basis.emplace_back(diag);
    }
    return basis;
}

}  // namespace kc
