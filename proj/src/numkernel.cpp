#include "shs/numkernel.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>

namespace shs {

HermitianEigen herm_eig(const ComplexMatrix& m, double herm_tol) {
    require_finite(m, "herm_eig");
    require_square(m, "herm_eig");
    double defect = hermitian_defect(m);
    if (defect > herm_tol)
        throw Error(errc::not_hermitian, "relative asymmetry exceeds tolerance", defect);

    // Work on the Hermitian part so tiny asymmetries cannot leak into the
    // factorization.
    ComplexMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success)
        throw Error(errc::no_convergence, "Hermitian eigensolver failed");
    return HermitianEigen{solver.eigenvalues(), solver.eigenvectors()};
}

GeneralEigenvalues general_eig(const ComplexMatrix& m) {
    require_finite(m, "general_eig");
    require_square(m, "general_eig");

    // Hessenberg reduction + shifted QR; cap at 100 sweeps per row.
    Eigen::ComplexSchur<ComplexMatrix> schur;
    schur.setMaxIterations(100);
    schur.compute(m, /*computeU=*/false);
    if (schur.info() != Eigen::Success)
        throw Error(errc::no_convergence, "QR iteration exceeded the sweep cap");

    GeneralEigenvalues out;
    out.values.reserve(static_cast<size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        out.values.push_back(schur.matrixT()(i, i));
    return out;
}

SvdResult svd(const ComplexMatrix& m) {
    require_finite(m, "svd");
    Eigen::JacobiSVD<ComplexMatrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return SvdResult{solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

ComplexMatrix pinv(const ComplexMatrix& m, double tol_rank) {
    require_finite(m, "pinv");
    if (!(tol_rank > 0.0))
        throw Error(errc::bad_input, "pinv: tol_rank must be positive");
    SvdResult f = svd(m);
    const Eigen::Index k = f.singular_values.size();
    RealVector inv = RealVector::Zero(k);
    double cutoff = k > 0 ? tol_rank * f.singular_values(0) : 0.0;
    for (Eigen::Index i = 0; i < k; ++i)
        if (f.singular_values(i) > cutoff) inv(i) = 1.0 / f.singular_values(i);
    return f.v * inv.asDiagonal() * f.u.adjoint();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& a, double psd_tol) {
    HermitianEigen f = herm_eig(a);
    double scale = std::max(std::abs(f.values(0)), std::abs(f.values(f.values.size() - 1)));
    RealVector roots = RealVector::Zero(f.values.size());
    for (Eigen::Index i = 0; i < f.values.size(); ++i) {
        double lambda = f.values(i);
        if (lambda < -psd_tol * scale)
            throw Error(errc::not_psd, "negative eigenvalue beyond tolerance", -lambda);
        roots(i) = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
    }
    return f.vectors * roots.asDiagonal() * f.vectors.adjoint();
}

LstsqResult lstsq_min_norm(const ComplexMatrix& coefficient, const ComplexMatrix& rhs) {
    require_finite(coefficient, "lstsq_min_norm");
    require_finite(rhs, "lstsq_min_norm");
    if (coefficient.rows() != rhs.rows())
        throw Error(errc::dimension_mismatch, "lstsq_min_norm: row counts differ");

    // Rank-revealing complete orthogonal decomposition: the solve is both
    // least-squares and minimum-norm, at QR cost instead of SVD cost.
    Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> solver(coefficient);
    solver.setThreshold(kDefaultRankTol);
    ComplexMatrix x = solver.solve(rhs);
    double residual = (coefficient * x - rhs).norm();
    return LstsqResult{std::move(x), residual};
}

ComplexMatrix orth_range(const ComplexMatrix& m, double tol_rank) {
    require_finite(m, "orth_range");
    if (!(tol_rank > 0.0))
        throw Error(errc::bad_input, "orth_range: tol_rank must be positive");
    SvdResult f = svd(m);
    Eigen::Index rank = 0;
    double cutoff = f.singular_values.size() > 0 ? tol_rank * f.singular_values(0) : 0.0;
    for (Eigen::Index i = 0; i < f.singular_values.size(); ++i)
        if (f.singular_values(i) > cutoff) ++rank;
    return f.u.leftCols(rank);
}

double spectral_norm(const ComplexMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> solver(m);
    return solver.singularValues().size() > 0 ? solver.singularValues()(0) : 0.0;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexVector vec_cols(const ComplexMatrix& m) {
    return ComplexVector(Eigen::Map<const ComplexVector>(m.data(), m.size()));
}

double spectral_radius(const ComplexMatrix& m) {
    if (m.rows() == 0) return 0.0;
    GeneralEigenvalues eig = general_eig(m);
    double r = 0.0;
    for (const Complex& lambda : eig.values) r = std::max(r, std::abs(lambda));
    return r;
}

} // namespace shs
